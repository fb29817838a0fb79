#include <catch_amalgamated.hpp>

#include "liftpa/ty.hpp"

using namespace liftpa;

namespace {

Bicharacter z4_chi(const GroupPtr& g, long num) { return bicharacter_from_entries(g, {{{1, 1}, Rational(num, 4)}}); }

}  // namespace

TEST_CASE("fusion ring rules") {
  const auto z3 = make_group({3});
  const FusionRing r(z3);
  REQUIRE(r.size() == 4);
  const auto mm = r.fuse(r.m(), r.m());
  REQUIRE(mm.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) CHECK(mm[k] == std::pair<std::size_t, int>{k, 1});
  for (Element a = 0; a < 3; ++a) {
    CHECK(r.fuse(a, r.m()) == std::vector<std::pair<std::size_t, int>>{{r.m(), 1}});
    CHECK(r.fuse(r.m(), a) == std::vector<std::pair<std::size_t, int>>{{r.m(), 1}});
  }
  CHECK(r.associative());
  CHECK(r.has_unit());
  CHECK(r.graded());
  CHECK(r.even_part_is_group_ring());

  const FusionRing ising(make_group({}));
  CHECK(ising.size() == 2);
  CHECK(ising.fuse(1, 1) == std::vector<std::pair<std::size_t, int>>{{0, 1}});
}

TEST_CASE("fusion dimensions") {
  for (auto factors : std::vector<std::vector<int>>{{}, {2}, {3}, {4}, {2, 2}, {5}, {2, 4}}) {
    const auto g = make_group(factors);
    const FusionRing r(g);
    Scalar sum = Scalar::zero(g->field());
    for (Element a = 0; a < g->order(); ++a) sum = sum + r.dims()[a];
    CHECK(r.dims()[r.m()] * r.dims()[r.m()] == sum);
    CHECK(sum == Scalar::from_rational(g->field(), static_cast<long>(g->order())));
  }
}

TEST_CASE("indicators") {
  const auto klein = make_group({2, 2});
  const auto chi = bicharacter_from_entries(klein, {{{1, 1}, Rational(1, 2)}, {{2, 2}, Rational(1, 2)}});
  const auto ind = fs_indicators(TYDatum(chi, 1));
  CHECK(ind.nu2 == std::vector<int>{1, 1, 1, 1, 1});
  CHECK(ind.factor_planar_algebra_admissible);

  const auto z4 = make_group({4});
  const auto ind4 = fs_indicators(TYDatum(z4_chi(z4, 1), -1));
  CHECK(ind4.nu2 == std::vector<int>{1, 0, 1, 0, -1});
  CHECK_FALSE(ind4.factor_planar_algebra_admissible);
}

TEST_CASE("TY datum rejects bad bicharacters") {
  const auto z2 = make_group({2});
  CHECK_THROWS_AS(TYDatum(Bicharacter::trivial(z2), 1), DomainError);
  const auto z4 = make_group({4});
  CHECK_THROWS_AS(TYDatum(z4_chi(z4, 2), 1), DomainError);
  CHECK_THROWS_AS(TYDatum(z4_chi(z4, 1), 0), DomainError);
}

TEST_CASE("TY equivalence") {
  const auto z4 = make_group({4});
  const TYDatum a(z4_chi(z4, 1), 1), b(z4_chi(z4, 3), 1), a_minus(z4_chi(z4, 1), -1);
  const auto self = ty_equivalent(a, a);
  REQUIRE(self);
  CHECK(!ty_equivalent(a, b));
  CHECK(!ty_equivalent(a, a_minus));

  // Brute-force oracle: ℤ/4 automorphisms are x -> x and x -> 3x.
  for (long u : {1L, 3L}) CHECK((u * u) % 4 == 1);
}

TEST_CASE("TY equivalence is an equivalence relation") {
  for (auto factors : std::vector<std::vector<int>>{{2, 2}, {4}}) {
    const auto g = make_group(factors);
    const auto cl = bichar_enumerate_classify(g, BicharFilter::SymmetricNondegenerate, {});
    std::vector<TYDatum> data;
    for (const auto& chi : cl.members)
      for (int s : {1, -1}) data.emplace_back(chi, s);
    const std::size_t n = data.size();
    std::vector<std::vector<char>> eq(n, std::vector<char>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) eq[i][j] = ty_equivalent(data[i], data[j]).has_value();
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(eq[i][i]);
      for (std::size_t j = 0; j < n; ++j) {
        CHECK(eq[i][j] == eq[j][i]);
        for (std::size_t k = 0; k < n; ++k)
          if (eq[i][j] && eq[j][k]) CHECK(eq[i][k]);
      }
    }
  }
}

TEST_CASE("TY classification counts") {
  CHECK(ty_classify(make_group({2, 2})).size() == 4);
  CHECK(ty_classify(make_group({4})).size() == 4);
  CHECK(ty_classify(make_group({2})).size() == 2);
  for (auto factors : std::vector<std::vector<int>>{{}, {3}, {5}, {2, 4}, {3, 3}, {8}, {2, 2, 2}, {4, 4}}) {
    const auto g = make_group(factors);
    const auto cl = bichar_enumerate_classify(g, BicharFilter::SymmetricNondegenerate, {});
    const auto ty = ty_classify(g);
    CHECK(ty.size() == 2 * cl.representatives.size());
    for (const auto& d : ty) {
      if (d.sign != 1) continue;
      const FusionRing r(d.group());
      CHECK(r.graded());
      CHECK(r.even_part_is_group_ring());
    }
  }
}
