#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "liftpa/bigraph.hpp"
#include "liftpa/duality.hpp"
#include "liftpa/generators.hpp"
#include "liftpa/json_io.hpp"
#include "liftpa/tangle_dsl.hpp"
#include "liftpa/ty.hpp"

using namespace liftpa;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

/// Raised for bad command-line values; maps to exit code 2.
struct UsageError : Error {
  using Error::Error;
};

enum class Format { Text, Json, Dot };

struct Globals {
  std::string format = "text";
  bool json = false;
  unsigned threads = 1;
  std::uint64_t seed = 1;

  Format resolved() const {
    if (json) return Format::Json;
    if (format == "json") return Format::Json;
    if (format == "dot") return Format::Dot;
    if (format == "text") return Format::Text;
    throw UsageError("unknown format '" + format + "' (text, json, dot)");
  }
};

std::vector<std::string> split(const std::string& s, const std::string& seps) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (seps.find(c) != std::string::npos) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

int parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("bad " + what + " '" + s + "'");
  }
}

GroupPtr parse_group(const std::string& spec) {
  if (spec.empty() || spec == "trivial" || spec == "1") return make_group({});
  std::vector<int> factors;
  for (const auto& part : split(spec, ",x ")) factors.push_back(parse_int(part, "cyclic factor"));
  return make_group(factors);
}

/// "i,j=num/den" entries separated by ';' or whitespace; unset entries are 0.
Bicharacter parse_chi(const GroupPtr& g, const std::string& text) {
  std::map<std::pair<int, int>, Rational> entries;
  for (const auto& item : split(text, "; ")) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("bicharacter entry '" + item + "' needs the form i,j=num/den");
    const auto idx = split(item.substr(0, eq), ",");
    if (idx.size() != 2) throw UsageError("bicharacter entry '" + item + "' needs two indices");
    Rational q;
    try {
      q = Rational(item.substr(eq + 1));
      q.canonicalize();
    } catch (const std::exception&) {
      throw UsageError("bad phase '" + item.substr(eq + 1) + "'");
    }
    entries[{parse_int(idx[0], "index"), parse_int(idx[1], "index")}] = q;
  }
  return bicharacter_from_entries(g, entries);
}

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// A tangle from a DSL file, a JSON file (*.json), or a generator name "gen:<name>".
TangleSpec load_tangle_spec(const std::string& source) {
  if (source.rfind("gen:", 0) == 0) {
    for (const auto& n : gen::library())
      if (n.name == source.substr(4)) return n.tangle.spec();
    throw UsageError("unknown generator '" + source.substr(4) + "'");
  }
  const std::string text = read_file(source);
  if (source.size() > 5 && source.substr(source.size() - 5) == ".json") {
    try {
      return tangle_spec_from_json(Json::parse(text));
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("bad tangle JSON: ") + e.what());
    }
  }
  return tangle_spec_parse(text);
}

/// "P(1,0)" or "Q(2)": a basis 2-box; "@file.json" reads a JSON 2-box.
TwoBox parse_box(const GroupPtr& g, const std::string& s) {
  if (!s.empty() && s[0] == '@') return two_box_from_json(Json::parse(read_file(s.substr(1))));
  if (s.size() < 2 || (s[0] != 'P' && s[0] != 'Q')) throw UsageError("2-box '" + s + "' must look like P(1,0) or Q(2)");
  const Shade side = s[0] == 'P' ? Shade::Unshaded : Shade::Shaded;
  for (Element x = 0; x < g->order(); ++x)
    if (g->element_string(x) == s.substr(1)) return TwoBox::basis(g, side, x);
  throw UsageError("no element " + s.substr(1) + " in " + g->to_string());
}

std::string format_norm(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  std::string s = buf;
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

void emit_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

Json header(const std::string& command) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

const char* yes_no(bool b) { return b ? "pass" : "FAIL"; }

// ---------------------------------------------------------------------------

int cmd_classify(const Globals& gl, const std::string& group, const std::string& filter_name) {
  BicharFilter filter = BicharFilter::All;
  if (filter_name == "all") filter = BicharFilter::All;
  else if (filter_name == "symmetric") filter = BicharFilter::Symmetric;
  else if (filter_name == "nondegenerate") filter = BicharFilter::Nondegenerate;
  else if (filter_name == "symmetric-nondegenerate") filter = BicharFilter::SymmetricNondegenerate;
  else throw UsageError("unknown filter '" + filter_name + "'");
  BicharLimits limits;
  limits.threads = gl.threads;
  const auto g = parse_group(group);
  const auto cl = bichar_enumerate_classify(g, filter, limits);
  if (gl.resolved() == Format::Json) {
    Json j = classification_json(cl);
    j["command"] = "classify-bicharacters";
    emit_json(j);
    return kExitOk;
  }
  std::cout << "group " << g->to_string() << "  filter " << to_string(filter) << "\n";
  std::cout << "bicharacters " << cl.total << "  matching " << cl.members.size() << "  automorphisms "
            << cl.automorphisms << "  orbits " << cl.representatives.size() << "\n";
  for (std::size_t k = 0; k < cl.representatives.size(); ++k)
    std::cout << "orbit " << k + 1 << ": " << cl.representatives[k].to_string() << "\n";
  return kExitOk;
}

int cmd_verify(const Globals& gl, const std::string& group, const std::string& chi_text, const std::string& check) {
  if (check != "star" && check != "symmetric" && check != "all") throw UsageError("--check must be star, symmetric or all");
  const auto g = parse_group(group);
  const auto chi = parse_chi(g, chi_text);
  const auto props = bichar_props(chi);
  const SelfDuality phi(phi_matrix_from_chi(chi));
  const auto star = verify_star_iso(phi);
  const bool sym = phi.symmetric();
  const bool square = phi_squares_to_identity(phi);
  bool ok = props.nondegenerate && star.all();
  if (check != "star") ok = ok && sym;
  if (check == "all") ok = ok && square;
  if (gl.resolved() == Format::Json) {
    Json j = header("verify-duality");
    j["bicharacter"] = to_json(chi);
    j["nondegenerate"] = props.nondegenerate;
    j["bicharacter_symmetric"] = props.symmetric;
    j["star_iso"] = {{"adjoint", star.adjoint},
                     {"trace", star.trace},
                     {"contragredient", star.contragredient},
                     {"multiplication", star.multiplication},
                     {"coproduct", star.coproduct}};
    j["symmetric"] = sym;
    j["phi_squared_identity"] = square;
    j["check"] = check;
    j["ok"] = ok;
    emit_json(j);
  } else {
    std::cout << "bicharacter " << chi.to_string() << " on " << g->to_string() << "\n";
    std::cout << "non-degenerate " << (props.nondegenerate ? "yes" : "no") << "\n";
    std::cout << "adjoint        " << yes_no(star.adjoint) << "\n";
    std::cout << "trace          " << yes_no(star.trace) << "\n";
    std::cout << "contragredient " << yes_no(star.contragredient) << "\n";
    std::cout << "multiplication " << yes_no(star.multiplication) << "\n";
    std::cout << "coproduct      " << yes_no(star.coproduct) << "\n";
    std::cout << "symmetric = " << (sym ? "true" : "false") << "\n";
    std::cout << "phi^2 = 1: " << (square ? "true" : "false") << "\n";
    std::cout << (ok ? "OK" : "FAILED") << "\n";
  }
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_lift(const Globals& gl, const std::string& group, const std::string& chi_text, std::size_t trials) {
  const auto g = parse_group(group);
  std::vector<Bicharacter> chis;
  if (!chi_text.empty()) {
    chis.push_back(parse_chi(g, chi_text));
  } else {
    BicharLimits limits;
    limits.threads = gl.threads;
    chis = bichar_enumerate_classify(g, BicharFilter::SymmetricNondegenerate, limits).representatives;
  }
  if (chis.empty()) throw UsageError(g->to_string() + " has no symmetric non-degenerate bicharacter");
  const auto model = spin_model(g);
  bool ok = true;
  Json runs = Json::array();
  for (std::size_t k = 0; k < chis.size(); ++k) {
    const auto phi = phi_from_chi(chis[k]);
    if (!phi.symmetric()) throw UsageError("bicharacter " + chis[k].to_string() + " is not symmetric");
    const auto rep = check_functoriality(phi, model, trials, gl.seed + k);
    const bool pass = rep.failures == 0;
    ok = ok && pass;
    Json failures = Json::array();
    for (const auto& c : rep.cases)
      if (!c.equal) failures.push_back({{"u", c.u}, {"disk", c.disk}, {"v", c.v}});
    runs.push_back({{"bicharacter", to_json(chis[k])},
                    {"trials", trials},
                    {"seed", gl.seed + k},
                    {"plus_cases", rep.plus_cases},
                    {"minus_cases", rep.minus_cases},
                    {"failures", failures}});
    if (gl.resolved() != Format::Json)
      std::cout << "chi " << chis[k].to_string() << ": " << trials << " trials, sign + " << rep.plus_cases
                << ", sign - " << rep.minus_cases << ", failures " << rep.failures << "\n";
  }
  if (gl.resolved() == Format::Json) {
    Json j = header("lift-check");
    j["group"] = group_json(*g);
    j["runs"] = runs;
    j["ok"] = ok;
    emit_json(j);
  } else {
    std::cout << (ok ? "OK" : "FAILED") << "\n";
  }
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_ty_classify(const Globals& gl, const std::string& group) {
  const auto g = parse_group(group);
  BicharLimits limits;
  limits.threads = gl.threads;
  const auto data = ty_classify(g, limits);
  if (gl.resolved() == Format::Json) {
    Json j = header("ty classify");
    j["group"] = group_json(*g);
    j["count"] = data.size();
    Json items = Json::array();
    for (const auto& d : data) items.push_back({{"bicharacter", to_json(d.chi)}, {"sign", d.sign > 0 ? "+" : "-"}});
    j["categories"] = items;
    emit_json(j);
    return kExitOk;
  }
  std::cout << "TY(" << g->to_string() << ", chi, +-): " << data.size() << " inequivalent categories\n";
  for (const auto& d : data) std::cout << "  chi " << d.chi.to_string() << "  sign " << (d.sign > 0 ? '+' : '-') << "\n";
  return kExitOk;
}

int cmd_ty_indicators(const Globals& gl, const std::string& group, const std::string& chi_text, const std::string& sign) {
  if (sign != "+" && sign != "-") throw UsageError("--sign must be + or -");
  const auto g = parse_group(group);
  const Bicharacter chi = chi_text.empty() ? ty_classify(g).front().chi : parse_chi(g, chi_text);
  const TYDatum d(chi, sign == "+" ? 1 : -1);
  const auto ind = fs_indicators(d);
  const FusionRing ring(g);
  if (gl.resolved() == Format::Json) {
    Json j = header("ty indicators");
    j["group"] = group_json(*g);
    j["bicharacter"] = to_json(chi);
    j["sign"] = sign;
    Json nu = Json::object();
    for (std::size_t x = 0; x < ind.nu2.size(); ++x) nu[ring.object_name(x)] = ind.nu2[x];
    j["nu2"] = nu;
    j["factor_planar_algebra_admissible"] = ind.factor_planar_algebra_admissible;
    emit_json(j);
    return kExitOk;
  }
  for (std::size_t x = 0; x < ind.nu2.size(); ++x) std::cout << "nu2 " << ring.object_name(x) << " = " << ind.nu2[x] << "\n";
  std::cout << "factor planar algebra admissible: " << (ind.factor_planar_algebra_admissible ? "yes" : "no") << "\n";
  return kExitOk;
}

int cmd_bigraph(const Globals& gl, const std::string& action, const std::string& code) {
  const Bigraph g = bigraph_parse(code);
  const Format f = gl.resolved();
  if (action == "parse") {
    if (f == Format::Dot) {
      std::cout << bigraph_dot(g);
    } else if (f == Format::Json) {
      Json j = header("bigraph parse");
      j["bigraph"] = to_json(g);
      emit_json(j);
    } else {
      std::cout << "depth " << g.depth() << "\nlevels";
      for (auto l : g.levels) std::cout << " " << l;
      std::cout << "\nvertices " << g.vertex_count() << "\nserialized " << bigraph_serialize(g) << "\n";
    }
    return kExitOk;
  }
  const auto fp = bigraph_fp_norm(g);
  if (f == Format::Json) {
    Json j = header("bigraph norm");
    j["code"] = code;
    j["norm"] = fp.norm;
    j["index"] = fp.index;
    emit_json(j);
  } else {
    std::cout << format_norm(fp.norm) << "\n";
  }
  return kExitOk;
}

int cmd_tangle_validate(const Globals& gl, const std::string& source) {
  const auto report = validate(load_tangle_spec(source));
  if (gl.resolved() == Format::Json) {
    Json j = header("tangle validate");
    j["valid"] = report.ok();
    j["report"] = report.to_string();
    emit_json(j);
  } else {
    std::cout << (report.ok() ? "valid" : report.to_string()) << "\n";
  }
  return report.ok() ? kExitOk : kExitCheckFailed;
}

int cmd_tangle_shade(const Globals& gl, const std::string& source) {
  const ShadedTangle s = shade(Tangle::build(load_tangle_spec(source)));
  if (gl.resolved() == Format::Json) {
    Json j = header("tangle shade");
    std::string shades, signs;
    for (auto x : s.shades()) shades += sign_char(x);
    for (auto x : s.signs()) signs += sign_char(x);
    j["face_shades"] = shades;
    j["disk_signs"] = signs;
    emit_json(j);
    return kExitOk;
  }
  for (int f = 0; f < s.base().face_count(); ++f)
    std::cout << "face " << f << " " << (s.face_shade(f) == Shade::Unshaded ? "unshaded" : "shaded") << "\n";
  for (int d = 0; d < s.base().disk_count(); ++d) std::cout << "disk " << d << " sign " << sign_char(s.sign(d)) << "\n";
  return kExitOk;
}

int cmd_tangle_compose(const Globals& gl, const std::string& u_src, int i, const std::string& v_src) {
  const Tangle u = Tangle::build(load_tangle_spec(u_src));
  const Tangle v = Tangle::build(load_tangle_spec(v_src));
  if (i < 1 || i > u.input_count()) throw UsageError("disk index out of range");
  const Tangle w = compose(u, i, v);
  if (gl.resolved() == Format::Json) {
    Json j = header("tangle compose");
    j["tangle"] = to_json(w.spec());
    emit_json(j);
  } else {
    std::cout << tangle_serialize(w);
  }
  return kExitOk;
}

int cmd_tangle_eval(const Globals& gl, const std::string& source, const std::string& group,
                    const std::vector<std::string>& inputs) {
  const auto g = parse_group(group);
  const ShadedTangle s = shade(Tangle::build(load_tangle_spec(source)));
  const auto model = spin_model(g);
  const int n = s.base().input_count();
  if (static_cast<int>(inputs.size()) != n)
    throw UsageError("tangle has " + std::to_string(n) + " input disks, got " + std::to_string(inputs.size()) + " inputs");
  std::vector<SpinVector> spins;
  for (int d = 1; d <= n; ++d) {
    const int k = s.base().points(d);
    const std::string& text = inputs[static_cast<std::size_t>(d - 1)];
    if (k == 4) {
      const TwoBox x = parse_box(g, text);
      if (x.side() != s.sign(d)) throw UsageError("disk " + std::to_string(d) + " needs a side " + sign_char(s.sign(d)) + " box");
      spins.push_back(model.to_spin(x));
    } else if (k <= 2) {
      Rational q;
      try {
        q = Rational(text);
        q.canonicalize();
      } catch (const std::exception&) {
        throw UsageError("input for a " + std::to_string(k) + "-point disk must be a rational constant");
      }
      spins.push_back(model.constant(k, s.sign(d), Scalar::from_rational(g->field(), q)));
    } else {
      throw UsageError("only 0-, 1- and 2-box inputs are supported");
    }
  }
  const SpinVector out = model.eval(s, spins);
  const bool json = gl.resolved() == Format::Json;
  Json j = header("tangle eval");
  if (s.base().points(0) == 4) {
    const TwoBox b = model.to_box(out);
    if (json) j["result"] = to_json(b);
    else std::cout << b.to_string() << "\n";
  } else if (s.base().points(0) <= 2) {
    const Scalar c = model.to_constant(out);
    if (json) j["result"] = to_json(c);
    else std::cout << c.to_string() << "\n";
  } else {
    throw UsageError("only 0-, 1- and 2-box outputs are supported");
  }
  if (json) emit_json(j);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"liftpa: self-dualities of group planar algebras and their lifts"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals gl;
  app.add_option("--format", gl.format, "Output format: text, json or dot")->envname("LIFTPA_FORMAT");
  app.add_flag("--json", gl.json, "Shorthand for --format json");
  app.add_option("--threads", gl.threads, "Worker threads for enumeration")->check(CLI::Range(1u, 256u));
  app.add_option("--seed", gl.seed, "Seed for randomized trials");

  std::string group, chi, filter = "all", check = "all", sign = "+", code, source, u_src, v_src;
  std::size_t trials = 200;
  int disk = 1;
  std::vector<std::string> inputs;
  std::function<int()> run;

  auto* classify = app.add_subcommand("classify-bicharacters", "Enumerate bicharacters and their automorphism orbits");
  classify->add_option("--group", group, "Cyclic factors, e.g. 2,2")->required();
  classify->add_option("--filter", filter, "all, symmetric, nondegenerate or symmetric-nondegenerate");
  classify->callback([&] { run = [&] { return cmd_classify(gl, group, filter); }; });

  auto* verify = app.add_subcommand("verify-duality", "Check the self-duality built from a bicharacter");
  verify->add_option("--group", group)->required();
  verify->add_option("--chi", chi, "Generator phases, e.g. \"1,1=1/4\"")->required();
  verify->add_option("--check", check, "star, symmetric or all");
  verify->callback([&] { run = [&] { return cmd_verify(gl, group, chi, check); }; });

  auto* lift = app.add_subcommand("lift-check", "Randomized functoriality suite for the lifted action");
  lift->add_option("--group", group)->required();
  lift->add_option("--chi", chi, "Bicharacter; default: one per orbit");
  lift->add_option("--trials", trials, "Trials per bicharacter");
  lift->callback([&] { run = [&] { return cmd_lift(gl, group, chi, trials); }; });

  auto* ty = app.add_subcommand("ty", "Tambara-Yamagami data");
  ty->require_subcommand(1);
  auto* ty_cl = ty->add_subcommand("classify", "Inequivalent TY(A, chi, +-)");
  ty_cl->add_option("--group", group)->required();
  ty_cl->callback([&] { run = [&] { return cmd_ty_classify(gl, group); }; });
  auto* ty_ind = ty->add_subcommand("indicators", "Frobenius-Schur indicators");
  ty_ind->add_option("--group", group)->required();
  ty_ind->add_option("--chi", chi, "Bicharacter; default: first orbit representative");
  ty_ind->add_option("--sign", sign, "+ or -");
  ty_ind->callback([&] { run = [&] { return cmd_ty_indicators(gl, group, chi, sign); }; });

  auto* bg = app.add_subcommand("bigraph", "Principal-graph codes");
  bg->require_subcommand(1);
  auto* bg_parse = bg->add_subcommand("parse", "Parse a code");
  bg_parse->add_option("code", code)->required();
  bg_parse->callback([&] { run = [&] { return cmd_bigraph(gl, "parse", code); }; });
  auto* bg_norm = bg->add_subcommand("norm", "Perron-Frobenius norm");
  bg_norm->add_option("code", code)->required();
  bg_norm->callback([&] { run = [&] { return cmd_bigraph(gl, "norm", code); }; });

  auto* tg = app.add_subcommand("tangle", "Planar tangles (file, file.json, - or gen:<name>)");
  tg->require_subcommand(1);
  auto* tg_val = tg->add_subcommand("validate", "Report planarity violations");
  tg_val->add_option("tangle", source)->required();
  tg_val->callback([&] { run = [&] { return cmd_tangle_validate(gl, source); }; });
  auto* tg_shade = tg->add_subcommand("shade", "Checkerboard shading");
  tg_shade->add_option("tangle", source)->required();
  tg_shade->callback([&] { run = [&] { return cmd_tangle_shade(gl, source); }; });
  auto* tg_comp = tg->add_subcommand("compose", "U o_i V");
  tg_comp->add_option("u", u_src)->required();
  tg_comp->add_option("disk", disk)->required();
  tg_comp->add_option("v", v_src)->required();
  tg_comp->callback([&] { run = [&] { return cmd_tangle_compose(gl, u_src, disk, v_src); }; });
  auto* tg_eval = tg->add_subcommand("eval", "Evaluate in the group planar algebra");
  tg_eval->add_option("tangle", source)->required();
  tg_eval->add_option("--group", group)->required();
  tg_eval->add_option("--input", inputs, "Per input disk: P(g), Q(g), @box.json or a rational constant");
  tg_eval->callback([&] { run = [&] { return cmd_tangle_eval(gl, source, group, inputs); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code_ = app.exit(e);
    return code_ == 0 ? kExitOk : kExitUsage;
  }
  try {
    return run();
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
  } catch (const BoundError& e) {
    std::cerr << "bound exceeded: " << e.what() << "\n";
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}
