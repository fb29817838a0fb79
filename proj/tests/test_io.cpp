#include <catch_amalgamated.hpp>

#include "liftpa/generators.hpp"
#include "liftpa/json_io.hpp"
#include "liftpa/tangle_dsl.hpp"

using namespace liftpa;

TEST_CASE("tangle text round-trips the generator library") {
  for (const auto& t : gen::library()) {
    INFO(t.name);
    const std::string text = tangle_serialize(t.tangle);
    const Tangle back = tangle_parse(text);
    CHECK(back == t.tangle);
    CHECK(tangle_serialize(back) == text);
  }
}

TEST_CASE("tangle text with comments and loops") {
  const std::string text =
      "# identity with a loop\n"
      "disk 0 points 2 star 0\n"
      "disk 1 points 2 star 0   # input\n"
      "arc 0.0 1.0\n"
      "arc 0.1 1.1\n"
      "loop 0:0\n";
  const Tangle t = tangle_parse(text);
  CHECK(t.loops() == 1);
  CHECK(t.input_count() == 1);
}

TEST_CASE("tangle text errors carry positions") {
  auto error_at = [](const std::string& text) -> std::pair<std::size_t, std::size_t> {
    try {
      tangle_spec_parse(text);
    } catch (const ParseError& e) {
      return {e.line(), e.column()};
    }
    return {0, 0};
  };
  CHECK(error_at("disk 0 points 4 star 0\nbox 1\n") == std::pair<std::size_t, std::size_t>{2, 1});
  CHECK(error_at("disk 0 points x star 0\n") == std::pair<std::size_t, std::size_t>{1, 15});
  CHECK(error_at("disk 0 points 4 star 0\narc 0.1 0-2\n") == std::pair<std::size_t, std::size_t>{2, 9});
  CHECK(error_at("disk 1 points 4 star 0\n") == std::pair<std::size_t, std::size_t>{1, 6});
  CHECK(error_at("disk 0 points 4 star 0\njoin 0:1 L0:2\n") == std::pair<std::size_t, std::size_t>{2, 13});
  CHECK(error_at("disk 0 points 4 star 0 extra\n") == std::pair<std::size_t, std::size_t>{1, 24});
  CHECK_THROWS_AS(tangle_parse("disk 0 points 2 star 0\narc 0.0 0.0\n"), DomainError);
}

TEST_CASE("tangle JSON mirrors the text form") {
  for (const auto& t : gen::library()) {
    const TangleSpec s = t.tangle.spec();
    const Json j = to_json(s);
    CHECK(Tangle::build(tangle_spec_from_json(Json::parse(j.dump()))) == t.tangle);
  }
}

TEST_CASE("scalar JSON round-trips") {
  const FieldPtr f = Field::get(12, 12);
  const Scalar s = Scalar::zeta(f, 5) * Scalar(Rational(3, 7)) + Scalar::delta(f) * Scalar::zeta(f, 1) - Scalar(2);
  const Json j = to_json(s);
  CHECK(j["N"] == 12);
  CHECK(j["order"] == 12);
  CHECK(scalar_from_json(Json::parse(j.dump())) == s);
  CHECK(scalar_from_json(to_json(Scalar::zero(f))) == Scalar::zero(f));
  CHECK_THROWS_AS(scalar_from_json(Json{{"N", 4}}), DomainError);
}

TEST_CASE("two-box and bicharacter JSON round-trip") {
  const auto g = make_group({2, 2});
  TwoBox x(g, Shade::Shaded);
  x[1] = Scalar::delta(g->field());
  x[3] = Scalar(Rational(-1, 2));
  const Json jx = to_json(x);
  CHECK(jx["side"] == "-");
  CHECK(two_box_from_json(Json::parse(jx.dump())) == x);

  const auto chi = bicharacter_from_entries(g, {{{1, 1}, Rational(1, 2)}, {{1, 2}, Rational(1, 2)}, {{2, 1}, Rational(1, 2)}});
  const Json jc = to_json(chi);
  CHECK(jc["phases"][0][0] == "1/2");
  CHECK(bicharacter_from_json(Json::parse(jc.dump())) == chi);
}

TEST_CASE("classification report JSON") {
  const auto cl = bichar_enumerate_classify(make_group({2, 2}), BicharFilter::SymmetricNondegenerate, {});
  const Json j = classification_json(cl);
  CHECK(j["schema"] == kSchemaVersion);
  CHECK(j["orbits"] == 2);
  CHECK(j["members"] == 4);
}

TEST_CASE("random tangles round-trip through text and JSON") {
  std::mt19937_64 rng(42);
  for (int k = 0; k < 50; ++k) {
    const Tangle t = gen::random_tangle(rng);
    CHECK(tangle_parse(tangle_serialize(t)) == t);
    CHECK(Tangle::build(tangle_spec_from_json(to_json(t.spec()))) == t);
  }
}
