#include <catch_amalgamated.hpp>

#include "liftpa/generators.hpp"
#include "liftpa/state_sum.hpp"

using namespace liftpa;

namespace {
const Shade kPlus = Shade::Unshaded, kMinus = Shade::Shaded;
}

TEST_CASE("calibration selects a unique minimal normalization") {
  const auto& cal = default_calibration();
  REQUIRE(!cal.passing.empty());
  CHECK(cal.passing.size() == 4);
  CHECK(cal.chosen.unshaded == -1);
  CHECK(cal.chosen.shaded == 0);
  CHECK(cal.chosen.basis == 0);
}

TEST_CASE("calibration rejects other normalizations") {
  const auto g = make_group({2});
  CHECK(calibration_failure(g, {0, 0, 0}).has_value());
  CHECK(!calibration_failure(g, default_calibration().chosen).has_value());
}

TEST_CASE("calibrated model holds on groups outside the calibration set") {
  for (auto factors : std::vector<std::vector<int>>{{5}, {2, 4}, {6}, {3, 3}}) {
    const auto g = make_group(factors);
    INFO(g->to_string());
    const auto failure = calibration_failure(g, default_calibration().chosen);
    CHECK(!failure.has_value());
  }
}

TEST_CASE("spin model round-trips 2-boxes") {
  const auto g = make_group({4});
  const auto m = spin_model(g);
  for (Element a = 0; a < g->order(); ++a)
    for (Shade side : {kPlus, kMinus}) {
      const auto x = TwoBox::basis(g, side, a);
      CHECK(m.to_box(m.to_spin(x)) == x);
    }
  SpinVector junk(g, 4, kPlus);
  junk[1] = Scalar::one(g->field());
  CHECK_THROWS_AS(m.to_box(junk), DomainError);
}

TEST_CASE("closed loops evaluate to d") {
  const auto g = make_group({3});
  const auto m = spin_model(g);
  const auto circle = shade(gen::with_loop(gen::empty(), SideRef::corner(0, 0)));
  CHECK(m.to_constant(m.eval(circle, {})) == loop_parameter(*g));
  CHECK(m.to_constant(m.eval(reverse_shading(circle), {})) == loop_parameter(*g));
}

TEST_CASE("composite tangles agree with composed closed forms") {
  const auto g = make_group({2, 2});
  const auto m = spin_model(g);
  const Tangle mul = gen::multiplication();
  const Tangle mm = compose(mul, 1, mul);  // (x y) z
  for (Element a = 0; a < g->order(); ++a)
    for (Element b = 0; b < g->order(); ++b)
      for (Element c = 0; c < g->order(); ++c) {
        const auto P = [&](Element x) { return TwoBox::basis(g, kPlus, x); };
        const auto Q = [&](Element x) { return TwoBox::basis(g, kMinus, x); };
        CHECK(m.eval_box(shade(mm), {P(a), P(b), P(c)}) == box_mul(box_mul(P(a), P(b)), P(c)));
        CHECK(m.eval_box(reverse_shading(shade(mm)), {Q(a), Q(b), Q(c)}) == box_mul(box_mul(Q(a), Q(b)), Q(c)));
      }
}
