#include <catch_amalgamated.hpp>

#include <complex>
#include <random>

#include "liftpa/scalar.hpp"

using namespace liftpa;

namespace {

Scalar random_scalar(const FieldPtr& f, std::mt19937& rng) {
  std::uniform_int_distribution<int> coeff(-5, 5), den(1, 4);
  std::vector<std::tuple<long, int, Rational>> terms;
  for (int i = 0; i < 4; ++i)
    terms.emplace_back(static_cast<long>(rng() % static_cast<unsigned>(f->conductor())), static_cast<int>(rng() % 2),
                       Rational(coeff(rng), den(rng)));
  return Scalar::from_terms(f, terms);
}

}  // namespace

TEST_CASE("roots of unity") {
  auto f4 = Field::get(4, 1);
  CHECK(Scalar::zeta(f4, 1) * Scalar::zeta(f4, 1) == Scalar(-1L));
  auto f12 = Field::get(12, 3);
  const Scalar w = Scalar::zeta(f12, 4);
  CHECK((Scalar::one(f12) + w + w * w).is_zero());
  auto f20 = Field::get(20, 5);
  Scalar s = Scalar::zero(f20);
  for (int k = 0; k < 5; ++k) s += Scalar::zeta(f20, 4 * k);
  CHECK(s.is_zero());
  CHECK(std::abs(s.to_complex()) < 1e-12);
}

TEST_CASE("delta squares to the group order") {
  for (long order : {1L, 2L, 3L, 4L, 6L, 8L, 9L}) {
    auto f = Field::get(default_conductor(order), order);
    const Scalar d = Scalar::delta(f);
    CHECK(d * d == Scalar(order));
    CHECK(d.conj() == d);
    CHECK(std::abs(d.to_complex() - std::sqrt(static_cast<double>(order))) < 1e-12);
    CHECK(Scalar::delta_power(f, -1) * d == Scalar(1L));
    CHECK(Scalar::delta_power(f, 3) == d * d * d);
  }
}

TEST_CASE("conjugation") {
  auto f8 = Field::get(8, 2);
  CHECK(Scalar::zeta(f8, 1).conj() == Scalar::zeta(f8, 7));
  CHECK(std::abs(Scalar::zeta(f8, 1).to_complex() - std::polar(1.0, 2 * 3.14159265358979323846 / 8)) < 1e-12);
  std::mt19937 rng(7);
  for (int i = 0; i < 100; ++i) {
    const Scalar a = random_scalar(f8, rng), b = random_scalar(f8, rng);
    CHECK(a.conj().conj() == a);
    CHECK((a * b).conj() == a.conj() * b.conj());
  }
}

TEST_CASE("field axioms and canonical zero test") {
  for (auto [n, order] : {std::pair{12, 3L}, std::pair{8, 2L}, std::pair{4, 4L}, std::pair{24, 6L}}) {
    auto f = Field::get(n, order);
    std::mt19937 rng(static_cast<unsigned>(n));
    for (int i = 0; i < 50; ++i) {
      const Scalar a = random_scalar(f, rng), b = random_scalar(f, rng), c = random_scalar(f, rng);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      if (!b.is_zero()) CHECK((a / b) * b == a);
      const bool equal = a == b;
      const bool close = std::abs(a.to_complex() - b.to_complex()) < 1e-9;
      CHECK(equal == close);
      CHECK((a - a).is_zero());
    }
  }
}

TEST_CASE("division by zero throws") {
  auto f = Field::get(4, 2);
  CHECK_THROWS_AS(Scalar::one(f) / Scalar::zero(f), DomainError);
}

TEST_CASE("rational scalars promote") {
  auto f = Field::get(12, 3);
  const Scalar half = Scalar(Rational(1, 2));
  CHECK(half + Scalar::one(f) == Scalar::from_rational(f, Rational(3, 2)));
  CHECK(Scalar(2L) * Scalar::delta(f) == Scalar::delta(f) + Scalar::delta(f));
}
