#include <catch_amalgamated.hpp>

#include <complex>
#include <random>

#include "liftpa/two_box.hpp"

using namespace liftpa;
using cd = std::complex<double>;

namespace {

const Shade kPlus = Shade::Unshaded, kMinus = Shade::Shaded;

// Oracle: P_{2,+} as functions on A, P_g the indicator of g.
// Product is pointwise, coproduct is convolution over d, trace is the sum.
std::vector<cd> numeric(const TwoBox& x) {
  std::vector<cd> v;
  for (const auto& c : x.coeffs()) v.push_back(c.to_complex());
  return v;
}

bool close(const std::vector<cd>& a, const std::vector<cd>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > 1e-9) return false;
  return true;
}

TwoBox random_box(const GroupPtr& g, Shade side, std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-3, 3);
  TwoBox x(g, side);
  for (Element a = 0; a < g->order(); ++a)
    x[a] = Scalar::from_rational(g->field(), coef(rng)) + Scalar::zeta(g->field(), coef(rng)) * Scalar(coef(rng));
  return x;
}

}  // namespace

TEST_CASE("closed forms on basis elements") {
  const auto g = make_group({2, 2});
  const Scalar d = loop_parameter(*g);
  const Scalar inv_d = Scalar::one(g->field()) / d;
  for (Element a = 0; a < g->order(); ++a) {
    const auto Pa = TwoBox::basis(g, kPlus, a), Qa = TwoBox::basis(g, kMinus, a);
    CHECK(box_trace(Pa) == Scalar::one(g->field()));
    CHECK(box_trace(Qa) == (a == g->identity() ? d : Scalar::zero(g->field())));
    CHECK(box_adjoint(Pa) == Pa);
    CHECK(box_adjoint(Qa) == TwoBox::basis(g, kMinus, g->inverse(a)));
    CHECK(fs(Pa) == Qa);
    CHECK(fs(Qa) == TwoBox::basis(g, kPlus, g->inverse(a)));
    CHECK(fs_inverse(fs(Pa)) == Pa);
    CHECK(fs(fs_inverse(Qa)) == Qa);
    for (Element b = 0; b < g->order(); ++b) {
      const auto Pb = TwoBox::basis(g, kPlus, b), Qb = TwoBox::basis(g, kMinus, b);
      CHECK(box_mul(Pa, Pb) == (a == b ? Pa : TwoBox(g, kPlus)));
      CHECK(box_coprod(Pa, Pb) == inv_d * TwoBox::basis(g, kPlus, g->op(a, b)));
      CHECK(box_mul(Qa, Qb) == inv_d * TwoBox::basis(g, kMinus, g->op(a, b)));
      CHECK(box_coprod(Qa, Qb) == (a == b ? Qa : TwoBox(g, kMinus)));
    }
  }
}

TEST_CASE("side + operations against the function-algebra oracle") {
  std::mt19937 rng(7);
  for (auto factors : std::vector<std::vector<int>>{{3}, {4}, {2, 2}, {5}}) {
    const auto g = make_group(factors);
    const double d = std::sqrt(static_cast<double>(g->order()));
    for (int trial = 0; trial < 10; ++trial) {
      const auto x = random_box(g, kPlus, rng), y = random_box(g, kPlus, rng);
      const auto nx = numeric(x), ny = numeric(y);
      std::vector<cd> prod(nx.size()), conv(nx.size(), 0.0);
      cd tr = 0.0;
      for (Element a = 0; a < g->order(); ++a) {
        prod[a] = nx[a] * ny[a];
        tr += nx[a];
        for (Element b = 0; b < g->order(); ++b) conv[g->op(a, b)] += nx[a] * ny[b] / d;
      }
      CHECK(close(numeric(box_mul(x, y)), prod));
      CHECK(close(numeric(box_coprod(x, y)), conv));
      CHECK(std::abs(box_trace(x).to_complex() - tr) < 1e-9);
    }
  }
}

TEST_CASE("adjoint is antilinear and involutive") {
  std::mt19937 rng(11);
  const auto g = make_group({4});
  for (int trial = 0; trial < 10; ++trial)
    for (Shade side : {kPlus, kMinus}) {
      const auto x = random_box(g, side, rng), y = random_box(g, side, rng);
      CHECK(box_adjoint(box_adjoint(x)) == x);
      CHECK(box_adjoint(box_mul(x, y)) == box_mul(box_adjoint(y), box_adjoint(x)));
      const Scalar z = Scalar::zeta(g->field(), 1);
      CHECK(box_adjoint(z * x) == z.conj() * box_adjoint(x));
    }
}

TEST_CASE("fourier directions") {
  const auto g = make_group({3});
  const auto P1 = TwoBox::basis(g, kPlus, 1);
  CHECK(fourier(P1, FourierDirection::Forward) == fs(P1));
  CHECK_THROWS_AS(fourier(P1, FourierDirection::Inverse), DomainError);
  CHECK_THROWS_AS(box_mul(P1, TwoBox::basis(g, kMinus, 1)), DomainError);
  CHECK_THROWS_AS(TwoBox(g, kPlus, {Scalar(1)}), DomainError);
}

TEST_CASE("box matrices compose") {
  const auto g = make_group({2, 2});
  const auto f = BoxMatrix::of(g, kPlus, kMinus, [](const TwoBox& x) { return fs(x); });
  const auto fi = BoxMatrix::of(g, kMinus, kPlus, [](const TwoBox& x) { return fs_inverse(x); });
  const auto id = BoxMatrix::of(g, kPlus, kPlus, [](const TwoBox& x) { return x; });
  CHECK(fi * f == id);
  CHECK_THROWS_AS(f * f, DomainError);
}
