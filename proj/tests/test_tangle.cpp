#include <catch_amalgamated.hpp>

#include "liftpa/generators.hpp"
#include "liftpa/tangle.hpp"

using namespace liftpa;

namespace {

TangleSpec identity_spec(int k) {
  TangleSpec s;
  s.disks = {{k, k - 1}, {k, k - 1}};
  for (int p = 0; p < k; ++p) s.arcs.push_back({{0, p}, {1, p}});
  return s;
}

}  // namespace

TEST_CASE("validation") {
  CHECK(validate(identity_spec(2)).ok());
  TangleSpec dangling;
  dangling.disks = {{2, 1}};
  CHECK(validate(dangling).has(ViolationKind::DanglingPoint));
  TangleSpec crossing;
  crossing.disks = {{4, 3}};
  crossing.arcs = {{{0, 0}, {0, 2}}, {{0, 1}, {0, 3}}};
  CHECK(validate(crossing).has(ViolationKind::NonPlanar));
  TangleSpec odd;
  odd.disks = {{3, 0}, {1, 0}};
  odd.arcs = {{{0, 0}, {0, 1}}, {{0, 2}, {1, 0}}};
  CHECK(validate(odd).has(ViolationKind::OddBoundary));
}

TEST_CASE("identity composes to itself") {
  const Tangle id = Tangle::build(identity_spec(2));
  CHECK(compose(id, 1, id) == id);
  const Tangle id4 = Tangle::build(identity_spec(4));
  CHECK(compose(id4, 1, id4) == id4);
  CHECK(id.face_count() == 2);
}

TEST_CASE("cap into cup closes a loop") {
  TangleSpec cap;
  cap.disks = {{0, 0}, {2, 1}};
  cap.arcs = {{{1, 0}, {1, 1}}};
  TangleSpec cup;
  cup.disks = {{2, 1}};
  cup.arcs = {{{0, 0}, {0, 1}}};
  const Tangle t = compose(Tangle::build(cap), 1, Tangle::build(cup));
  CHECK(t.input_count() == 0);
  CHECK(t.loops() == 1);
  CHECK(t.face_count() == 2);
  const auto s = shade(t);
  CHECK(s.face_shade(t.face_of_loop(0)[0]) == Shade::Unshaded);
  CHECK(s.face_shade(t.face_of_loop(0)[1]) == Shade::Shaded);
}

TEST_CASE("shading of the 1-box identity and the 2-box unit") {
  const ShadedTangle id = shade(gen::identity(2));
  CHECK(id.base().face_count() == 2);
  CHECK(id.signs() == std::vector<Shade>{Shade::Unshaded, Shade::Unshaded});
  const ShadedTangle u = shade(gen::unit2());
  CHECK(u.base().face_count() == 3);
  CHECK(u.face_shade(u.base().face_of_corner(0, 3)) == Shade::Unshaded);
}
