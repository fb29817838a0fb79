// Acceptance criteria; prints one PASS/FAIL line per criterion.

#include <Eigen/Dense>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "liftpa/bigraph.hpp"
#include "liftpa/duality.hpp"
#include "liftpa/generators.hpp"
#include "liftpa/ty.hpp"

using namespace liftpa;

namespace {

constexpr double kLimit1 = 5.0;     // seconds
constexpr double kLimit2 = 60.0;    // seconds
constexpr double kLimit5 = 120.0;   // seconds
constexpr double kNormTolerance = 1e-10;
constexpr std::size_t kLiftTrials = 200;
constexpr std::size_t kLiftMinimumPerCase = 50;
constexpr int kShadingTangles = 100;
constexpr std::uint64_t kSeed = 20240601;

const Shade kPlus = Shade::Unshaded, kMinus = Shade::Shaded;

const std::vector<std::vector<int>> kOrderAtMost9 = {{},  {2}, {3}, {4},    {2, 2},    {5}, {6},
                                                     {7}, {8}, {2, 4}, {2, 2, 2}, {9}, {3, 3}};

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int failures = 0;

void report(int n, const std::function<Outcome()>& run) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = run();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  std::printf("criterion %2d: %s  %s (%.2f s)\n", n, o.pass ? "PASS" : "FAIL", o.detail.c_str(), seconds_since(t0));
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::size_t orbit_count(const std::vector<int>& f) {
  return bichar_enumerate_classify(make_group(f), BicharFilter::SymmetricNondegenerate, {}).representatives.size();
}

Outcome criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t o22 = orbit_count({2, 2}), o4 = orbit_count({4});
  const std::size_t t22 = ty_classify(make_group({2, 2})).size(), t4 = ty_classify(make_group({4})).size();
  const double t = seconds_since(t0);
  const bool ok = o22 == 2 && o4 == 2 && t22 == 4 && t4 == 4 && t < kLimit1;
  return {ok, "orbits Z2xZ2=" + std::to_string(o22) + " Z4=" + std::to_string(o4) + ", TY Z2xZ2=" +
                  std::to_string(t22) + " Z4=" + std::to_string(t4)};
}

// Runs f on every non-degenerate bicharacter of every group of order <= 9.
template <class F>
std::size_t for_each_nondegenerate(F&& f) {
  std::size_t n = 0;
  for (const auto& factors : kOrderAtMost9) {
    const auto g = make_group(factors);
    for (const auto& chi : bichar_enumerate_classify(g, BicharFilter::Nondegenerate, {}).members) {
      f(chi);
      ++n;
    }
  }
  return n;
}

Outcome criterion2() {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t bad = 0;
  const std::size_t n = for_each_nondegenerate([&](const Bicharacter& chi) {
    if (!verify_star_iso(phi_from_chi(chi)).all()) ++bad;
  });
  const double t = seconds_since(t0);
  return {bad == 0 && t < kLimit2, std::to_string(n) + " bicharacters, " + std::to_string(bad) + " failing"};
}

Outcome criterion3() {
  std::size_t bad = 0;
  const std::size_t n = for_each_nondegenerate([&](const Bicharacter& chi) {
    const auto phi = phi_from_chi(chi);
    if (!is_bimultiplicative(*chi.group(), chi_table_from_phi(phi)) || !(chi_from_phi(phi) == chi)) ++bad;
  });
  return {bad == 0, std::to_string(n) + " round trips, " + std::to_string(bad) + " failing"};
}

Outcome criterion4() {
  std::size_t bad = 0, symmetric = 0;
  const std::size_t n = for_each_nondegenerate([&](const Bicharacter& chi) {
    const auto phi = phi_from_chi(chi);
    const bool sym = bichar_props(chi).symmetric;
    if (check_symmetric_duality(phi) != sym) ++bad;
    if (!sym) return;
    ++symmetric;
    const GroupPtr& g = chi.group();
    for (Element x = 0; x < g->order(); ++x) {
      const TwoBox once = phi.phi_minus().apply(fs(TwoBox::basis(g, kPlus, x)));
      const TwoBox twice = phi.phi_minus().apply(fs(once));
      if (twice != TwoBox::basis(g, kPlus, g->inverse(x))) ++bad;
    }
  });
  return {bad == 0, std::to_string(n) + " bicharacters (" + std::to_string(symmetric) + " symmetric), " +
                        std::to_string(bad) + " mismatches"};
}

Outcome criterion5() {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t reps = 0, failures5 = 0, min_case = SIZE_MAX;
  bool rotation_ok = true;
  for (const auto& factors : std::vector<std::vector<int>>{{2}, {3}, {4}, {2, 2}}) {
    const auto g = make_group(factors);
    const auto model = spin_model(g);
    for (const auto& chi : bichar_enumerate_classify(g, BicharFilter::SymmetricNondegenerate, {}).representatives) {
      const auto phi = phi_from_chi(chi);
      const auto r = check_functoriality(phi, model, kLiftTrials, kSeed + reps);
      failures5 += r.failures;
      min_case = std::min({min_case, r.plus_cases, r.minus_cases});
      const auto f = gen::rotation();
      if (!check_functoriality_once(f, 1, f, phi, model).equal) rotation_ok = false;
      ++reps;
    }
  }
  const double t = seconds_since(t0);
  const bool ok = failures5 == 0 && min_case >= kLiftMinimumPerCase && rotation_ok && t < kLimit5;
  return {ok, std::to_string(reps) + " representatives x " + std::to_string(kLiftTrials) + " trials, " +
                  std::to_string(failures5) + " failures, fewest cases per sign " + std::to_string(min_case) +
                  ", F o F " + (rotation_ok ? "ok" : "FAILED")};
}

// Oracle: all proper 2-colorings of the face adjacency graph, by exhaustion.
std::vector<std::vector<Shade>> all_colorings(const Tangle& t) {
  std::vector<std::pair<int, int>> edges;
  for (int d = 0; d < t.disk_count(); ++d)
    for (int p = 0; p < t.points(d); ++p) {
      const auto f = t.faces_beside({d, p});
      edges.push_back({f[0], f[1]});
    }
  for (int l = 0; l < t.loops(); ++l) edges.push_back({t.face_of_loop(l)[0], t.face_of_loop(l)[1]});
  const int nf = t.face_count();
  std::vector<std::vector<Shade>> out;
  for (unsigned long mask = 0; mask < (1ul << nf); ++mask) {
    bool ok = true;
    for (const auto& [a, b] : edges)
      if (((mask >> a) & 1) == ((mask >> b) & 1)) ok = false;
    if (!ok) continue;
    std::vector<Shade> c;
    for (int f = 0; f < nf; ++f) c.push_back((mask >> f) & 1 ? kMinus : kPlus);
    out.push_back(c);
  }
  return out;
}

Outcome criterion6() {
  std::mt19937_64 rng(kSeed);
  int bad_count = 0, bad_member = 0, bad_rule = 0, composed = 0;
  for (int k = 0; k < kShadingTangles; ++k) {
    const Tangle u = gen::random_tangle(rng);
    const ShadedTangle su = shade(u);
    const auto colorings = all_colorings(u);
    if (colorings.size() != 2) ++bad_count;
    if (std::find(colorings.begin(), colorings.end(), su.shades()) == colorings.end()) ++bad_member;
    if (u.input_count() == 0) continue;
    const int i = 1 + static_cast<int>(rng() % static_cast<unsigned>(u.input_count()));
    gen::RandomTangleLimits lim;
    lim.output_points = u.points(i);
    const Tangle v = gen::random_tangle(rng, lim);
    const ShadedTangle sv = shade(v);
    const ShadedTangle expect = compose(su, i, su.sign(i) == kPlus ? sv : reverse_shading(sv));
    if (shade(compose(u, i, v)) != expect) ++bad_rule;
    ++composed;
  }
  const bool ok = bad_count == 0 && bad_member == 0 && bad_rule == 0;
  return {ok, std::to_string(kShadingTangles) + " tangles, " + std::to_string(composed) + " compositions; " +
                  "coloring-count failures " + std::to_string(bad_count) + ", membership " +
                  std::to_string(bad_member) + ", case rule " + std::to_string(bad_rule)};
}

Outcome criterion7() {
  const auto& cal = calibrate();
  std::string failure;
  for (const auto& factors : std::vector<std::vector<int>>{{}, {2}, {3}, {4}, {2, 2}}) {
    const auto g = make_group(factors);
    if (auto f = calibration_failure(g, cal.chosen)) failure += g->to_string() + ": " + *f + "; ";
    const auto m = spin_model(g);
    const Scalar d = loop_parameter(*g);
    for (Element x = 0; x < g->order(); ++x) {
      const auto Px = TwoBox::basis(g, kPlus, x);
      const Scalar tr = m.eval_scalar(reverse_shading(shade(gen::trace())), {fs(Px)});
      if (tr != (x == g->identity() ? d : Scalar::zero(g->field()))) failure += "Tr(FS(P_g)); ";
      for (Element y = 0; y < g->order(); ++y) {
        const auto Py = TwoBox::basis(g, kPlus, y);
        if (d * m.eval_box(shade(gen::coproduct()), {Px, Py}) != TwoBox::basis(g, kPlus, g->op(x, y)))
          failure += "d P_g * P_h; ";
      }
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "normalization (%d, %d, %d), %zu passing assignments", cal.chosen.unshaded,
                cal.chosen.shaded, cal.chosen.basis, cal.passing.size());
  return {failure.empty(), failure.empty() ? buf : failure};
}

Outcome criterion8() {
  std::size_t checks = 0, bad = 0;
  for (const auto& factors : kOrderAtMost9) {
    const auto g = make_group(factors);
    for (Shade side : {kPlus, kMinus})
      for (Element x = 0; x < g->order(); ++x) {
        const auto bx = TwoBox::basis(g, side, x);
        if (fs(fs(bx)) != box_contragredient(bx)) ++bad;
        if (fs(fs(fs(fs(bx)))) != bx) ++bad;
        for (Element y = 0; y < g->order(); ++y) {
          const auto by = TwoBox::basis(g, side, y);
          if (fs(box_mul(bx, by)) != box_coprod(fs(bx), fs(by))) ++bad;
          if (fs(box_coprod(bx, by)) != box_mul(fs(bx), fs(by))) ++bad;
          ++checks;
        }
      }
  }
  return {bad == 0, std::to_string(checks) + " basis pairs, " + std::to_string(bad) + " failures"};
}

double dense_norm(const Bigraph& g) {
  const auto a = bigraph_adjacency(g);
  const auto n = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues().cwiseAbs().maxCoeff();
}

Outcome criterion9() {
  const std::vector<std::pair<std::string, std::string>> codes = {
      {"4442", "bwd1v1v1v1v1p1p1v1x0x0p0x1x0p0x0x1v1x0x0p0x1x0v1x0p0x1duals1v1v1v2x1x3v2x1"},
      {"3333", "bwd1v1v1v1p1p1v1x0x0p0x1x0p0x0x1v1x0x0p0x1x0p0x0x1duals1v1v1x2x3v1x2x3"},
      {"2221", "bwd1v1v1p1p1v1x0x0p0x1x0duals1v1v2x1"},
      {"22221a", "bwd1v1p1v1x0p1x1p0x1v0x1x0duals1v1x2v1"},
      {"22221b", "bwd1v1p1v1x0p1x1p0x1v0x1x0duals1v2x1v1"},
  };
  bool ok = true;
  std::string detail;
  for (const auto& [name, code] : codes) {
    const auto g = bigraph_parse(code);
    const bool round = bigraph_serialize(g) == code;
    const double fp = bigraph_fp_norm(g).norm, oracle = dense_norm(g);
    const bool close = std::abs(fp - oracle) < kNormTolerance;
    ok = ok && round && close;
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s%s %.12f%s", detail.empty() ? "" : ", ", name.c_str(), fp,
                  round && close ? "" : " (mismatch)");
    detail += buf;
  }
  return {ok, detail};
}

Outcome criterion10() {
  const auto klein = make_group({2, 2});
  const auto chi22 = ty_classify(klein).front().chi;
  const auto z4 = make_group({4});
  const auto chi4 = ty_classify(z4).front().chi;
  const auto a = fs_indicators(TYDatum(chi22, 1));
  const auto b = fs_indicators(TYDatum(chi4, 1));
  const auto c = fs_indicators(TYDatum(chi4, -1));
  const bool ok = std::vector<int>(a.nu2.begin(), a.nu2.end() - 1) == std::vector<int>{1, 1, 1, 1} &&
                  std::vector<int>(b.nu2.begin(), b.nu2.end() - 1) == std::vector<int>{1, 0, 1, 0} &&
                  a.nu2.back() == 1 && c.nu2.back() == -1 && a.factor_planar_algebra_admissible &&
                  b.factor_planar_algebra_admissible && !c.factor_planar_algebra_admissible;
  return {ok, "Z2xZ2 (1,1,1,1), Z4 (1,0,1,0), admissible iff sign +"};
}

}  // namespace

int main() {
  report(1, criterion1);
  report(2, criterion2);
  report(3, criterion3);
  report(4, criterion4);
  report(5, criterion5);
  report(6, criterion6);
  report(7, criterion7);
  report(8, criterion8);
  report(9, criterion9);
  report(10, criterion10);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
