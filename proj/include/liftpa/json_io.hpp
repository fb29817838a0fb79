#pragma once

// JSON forms of the library's values.  Every top-level report carries
// "schema": kSchemaVersion.

#include <json.hpp>

#include <string>
#include <vector>

#include "liftpa/bicharacter.hpp"
#include "liftpa/bigraph.hpp"
#include "liftpa/error.hpp"
#include "liftpa/scalar.hpp"
#include "liftpa/tangle.hpp"
#include "liftpa/two_box.hpp"

namespace liftpa {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "liftpa/1";

namespace detail {

inline Json big_integer(const mpz_class& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

inline mpz_class json_integer(const Json& j) {
  if (j.is_number_integer()) return mpz_class(j.get<long>());
  if (j.is_string()) return mpz_class(j.get<std::string>());
  throw DomainError("expected an integer in JSON");
}

inline Rational json_rational(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw DomainError("expected a rational string like \"1/4\"");
  Rational q(j.get<std::string>());
  q.canonicalize();
  return q;
}

}  // namespace detail

/// {"N": conductor, "order": |A|, "terms": [[k, eps, num, den], ...]}: sum of num/den zeta_N^k delta^eps.
inline Json to_json(const Scalar& s) {
  Json j;
  j["N"] = s.is_rational_only() ? 1 : s.field()->conductor();
  j["order"] = s.is_rational_only() ? 1 : s.field()->order();
  Json terms = Json::array();
  auto emit = [&](const RationalPoly& p, int eps) {
    for (std::size_t k = 0; k < p.size(); ++k)
      if (p[k] != 0)
        terms.push_back({static_cast<long>(k), eps, detail::big_integer(p[k].get_num()), detail::big_integer(p[k].get_den())});
  };
  emit(s.zeta_part(), 0);
  emit(s.delta_part(), 1);
  j["terms"] = terms;
  return j;
}

inline Scalar scalar_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("N") || !j.contains("order") || !j.contains("terms"))
    throw DomainError("scalar JSON needs N, order and terms");
  const int n = j["N"].get<int>();
  const long order = j["order"].get<long>();
  if (n == 1 && order == 1) {
    Scalar s(Rational(0));
    for (const auto& t : j["terms"]) {
      if (!t.is_array() || t.size() != 4 || t[0].get<long>() != 0 || t[1].get<int>() != 0)
        throw DomainError("a rational scalar has only [0, 0, num, den] terms");
      s += Scalar(Rational(detail::json_integer(t[2]), detail::json_integer(t[3])));
    }
    return s;
  }
  const FieldPtr f = Field::get(n, order);
  std::vector<std::tuple<long, int, Rational>> terms;
  for (const auto& t : j["terms"]) {
    if (!t.is_array() || t.size() != 4) throw DomainError("scalar term must be [k, eps, num, den]");
    Rational c(detail::json_integer(t[2]), detail::json_integer(t[3]));
    c.canonicalize();
    terms.emplace_back(t[0].get<long>(), t[1].get<int>(), c);
  }
  return Scalar::from_terms(f, terms);
}

inline Json group_json(const AbelianGroup& a) { return a.factors(); }

/// {"side": "+", "group": [2,2], "coeffs": {"(0,1)": Scalar, ...}}; zero coefficients are omitted.
inline Json to_json(const TwoBox& x) {
  Json j;
  j["side"] = std::string(1, sign_char(x.side()));
  j["group"] = group_json(*x.group());
  Json coeffs = Json::object();
  for (Element g = 0; g < x.size(); ++g)
    if (!x[g].is_zero()) coeffs[x.group()->element_string(g)] = to_json(x[g].embed(x.group()->field()));
  j["coeffs"] = coeffs;
  return j;
}

inline TwoBox two_box_from_json(const Json& j) {
  const auto group = make_group(j.at("group").get<std::vector<int>>());
  const std::string side = j.at("side").get<std::string>();
  if (side != "+" && side != "-") throw DomainError("side must be \"+\" or \"-\"");
  TwoBox x(group, side == "+" ? Shade::Unshaded : Shade::Shaded);
  for (const auto& [name, value] : j.at("coeffs").items()) {
    bool found = false;
    for (Element g = 0; g < group->order() && !found; ++g)
      if (group->element_string(g) == name) {
        x[g] = scalar_from_json(value).embed(group->field());
        found = true;
      }
    if (!found) throw DomainError("unknown group element '" + name + "'");
  }
  return x;
}

/// {"group": [n1, ...], "phases": [["a/b", ...], ...]}, phases reduced mod 1.
inline Json to_json(const Bicharacter& chi) {
  Json j;
  j["group"] = group_json(*chi.group());
  Json rows = Json::array();
  for (const auto& row : chi.phases()) {
    Json r = Json::array();
    for (const auto& q : row) r.push_back(q.get_str());
    rows.push_back(r);
  }
  j["phases"] = rows;
  return j;
}

inline Bicharacter bicharacter_from_json(const Json& j) {
  const auto group = make_group(j.at("group").get<std::vector<int>>());
  std::vector<std::vector<Rational>> phases;
  for (const auto& row : j.at("phases")) {
    phases.emplace_back();
    for (const auto& q : row) phases.back().push_back(detail::json_rational(q));
  }
  return Bicharacter(group, std::move(phases));
}

/// Mirrors the text form: disks, arcs, loops and joins.
inline Json to_json(const TangleSpec& s) {
  Json j;
  Json disks = Json::array();
  for (const auto& d : s.disks) disks.push_back({{"points", d.points}, {"star", d.star}});
  j["disks"] = disks;
  Json arcs = Json::array();
  for (const auto& [a, b] : s.arcs) arcs.push_back({{a.disk, a.point}, {b.disk, b.point}});
  j["arcs"] = arcs;
  j["loops"] = s.loops;
  Json joins = Json::array();
  auto side = [](const SideRef& r) {
    return Json{{"kind", r.kind == SideRef::Kind::Loop ? "loop" : "corner"}, {"index", r.index}, {"slot", r.slot}};
  };
  for (const auto& [a, b] : s.joins) joins.push_back({side(a), side(b)});
  j["joins"] = joins;
  return j;
}

inline TangleSpec tangle_spec_from_json(const Json& j) {
  TangleSpec s;
  for (const auto& d : j.at("disks")) s.disks.push_back({d.at("points").get<int>(), d.at("star").get<int>()});
  for (const auto& a : j.at("arcs"))
    s.arcs.push_back({{a.at(0).at(0).get<int>(), a.at(0).at(1).get<int>()}, {a.at(1).at(0).get<int>(), a.at(1).at(1).get<int>()}});
  s.loops = j.value("loops", 0);
  auto side = [](const Json& r) {
    const std::string kind = r.at("kind").get<std::string>();
    if (kind != "loop" && kind != "corner") throw DomainError("side kind must be corner or loop");
    return SideRef{kind == "loop" ? SideRef::Kind::Loop : SideRef::Kind::Corner, r.at("index").get<int>(),
                   r.at("slot").get<int>()};
  };
  if (j.contains("joins"))
    for (const auto& p : j.at("joins")) s.joins.push_back({side(p.at(0)), side(p.at(1))});
  return s;
}

inline Json to_json(const Bigraph& g) {
  Json j;
  j["code"] = bigraph_serialize(g);
  j["depth"] = g.depth();
  j["levels"] = g.levels;
  j["edges"] = g.edges;
  Json duals = Json::array();
  for (const auto& block : g.duals) {
    Json b = Json::array();
    for (auto v : block) b.push_back(v + 1);
    duals.push_back(b);
  }
  j["duals"] = duals;
  return j;
}

inline Json classification_json(const BicharClassification& cl) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["group"] = group_json(*cl.group);
  j["filter"] = to_string(cl.filter);
  j["total"] = cl.total;
  j["members"] = cl.members.size();
  j["automorphisms"] = cl.automorphisms;
  j["orbits"] = cl.representatives.size();
  Json reps = Json::array();
  for (const auto& r : cl.representatives) reps.push_back(to_json(r));
  j["representatives"] = reps;
  return j;
}

}  // namespace liftpa
