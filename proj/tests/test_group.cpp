#include <catch_amalgamated.hpp>

#include "liftpa/group.hpp"

using namespace liftpa;

TEST_CASE("group construction") {
  const AbelianGroup trivial;
  CHECK(trivial.order() == 1);
  const AbelianGroup klein({2, 2});
  CHECK(klein.order() == 4);
  CHECK(klein.exponent() == 2);
  const AbelianGroup z4({4});
  CHECK(z4.op(3, 2) == 1);
  CHECK(z4.inverse(1) == 3);
  CHECK_THROWS_AS(AbelianGroup({1}), DomainError);
  CHECK(AbelianGroup({2, 3}).element_order(AbelianGroup({2, 3}).index_of({1, 1})) == 6);
}

TEST_CASE("automorphism counts") {
  CHECK(automorphisms(AbelianGroup()).size() == 1);
  CHECK(automorphisms(AbelianGroup({2})).size() == 1);
  CHECK(automorphisms(AbelianGroup({4})).size() == 2);
  CHECK(automorphisms(AbelianGroup({2, 2})).size() == 6);
  CHECK(automorphisms(AbelianGroup({3, 3})).size() == 48);
  CHECK(automorphisms(AbelianGroup({2, 4})).size() == 8);
  CHECK(automorphisms(AbelianGroup({9})).size() == 6);
}

TEST_CASE("isomorphisms are homomorphic bijections") {
  const AbelianGroup a({2, 4}), b({4, 2});
  std::size_t n = for_each_isomorphism(a, b, [&](const ElementMap& m) {
    std::vector<char> seen(b.order(), 0);
    for (Element g = 0; g < a.order(); ++g) {
      CHECK(!seen[m[g]]);
      seen[m[g]] = 1;
      for (Element h = 0; h < a.order(); ++h) CHECK(m[a.op(g, h)] == b.op(m[g], m[h]));
    }
    return true;
  });
  CHECK(n == 8);
  CHECK(for_each_isomorphism(AbelianGroup({4}), AbelianGroup({2, 2}), [](const ElementMap&) { return true; }) == 0);
}
