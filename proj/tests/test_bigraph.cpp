#include <catch_amalgamated.hpp>

#include <Eigen/Dense>

#include "liftpa/bigraph.hpp"

using namespace liftpa;

namespace {

const std::vector<std::string> kCodes = {
    "bwd1v1v1v1v1p1p1v1x0x0p0x1x0p0x0x1v1x0x0p0x1x0v1x0p0x1duals1v1v1v2x1x3v2x1",
    "bwd1v1v1v1p1p1v1x0x0p0x1x0p0x0x1v1x0x0p0x1x0p0x0x1duals1v1v1x2x3v1x2x3",
    "bwd1v1v1p1p1v1x0x0p0x1x0duals1v1v2x1",
    "bwd1v1p1v1x0p1x1p0x1v0x1x0duals1v1x2v1",
    "bwd1v1p1v1x0p1x1p0x1v0x1x0duals1v2x1v1",
};

double eigen_norm(const Bigraph& g) {
  const auto a = bigraph_adjacency(g);
  const auto n = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a[i][j];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("2221 structure") {
  const auto g = bigraph_parse(kCodes[2]);
  CHECK(g.levels == std::vector<std::size_t>{1, 1, 1, 3, 2});
  CHECK(g.depth() == 4);
  REQUIRE(g.duals.size() == 3);
  CHECK(g.duals[2] == std::vector<std::size_t>{1, 0});
  CHECK(g.edges[3][1] == std::vector<int>{0, 1, 0});
}

TEST_CASE("level sizes of the spoke codes") {
  CHECK(bigraph_parse(kCodes[0]).levels == std::vector<std::size_t>{1, 1, 1, 1, 1, 3, 3, 2, 2});
  CHECK(bigraph_parse(kCodes[1]).levels == std::vector<std::size_t>{1, 1, 1, 1, 3, 3, 3});
  CHECK(bigraph_parse(kCodes[3]).levels == std::vector<std::size_t>{1, 1, 2, 3, 1});
}

TEST_CASE("codes round-trip") {
  for (const auto& c : kCodes) CHECK(bigraph_serialize(bigraph_parse(c)) == c);
  CHECK(bigraph_serialize(bigraph_parse("bwd1duals1")) == "bwd1duals1");
  CHECK(bigraph_serialize(bigraph_parse("bwd1v1")) == "bwd1v1");
}

TEST_CASE("small norms") {
  CHECK(bigraph_fp_norm(bigraph_parse("bwd1duals1")).norm == Catch::Approx(1.0).margin(1e-12));
  const auto p = bigraph_fp_norm(bigraph_parse("bwd1v1"));
  CHECK(p.norm == Catch::Approx(std::sqrt(2.0)).margin(1e-12));
  CHECK(p.index == Catch::Approx(2.0).margin(1e-11));
  CHECK(bigraph_fp_norm(bigraph_parse("bwd2")).norm == Catch::Approx(2.0).margin(1e-12));
}

TEST_CASE("norms agree with a dense eigenvalue oracle") {
  for (const auto& c : kCodes) {
    const auto g = bigraph_parse(c);
    const auto fp = bigraph_fp_norm(g);
    CHECK(std::abs(fp.norm - eigen_norm(g)) < 1e-10);
    CHECK(fp.norm > 2.0);
  }
}

TEST_CASE("parse errors carry positions") {
  try {
    bigraph_parse("bwd1v1x1");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.column() == 6);
  }
  CHECK_THROWS_AS(bigraph_parse("abc"), ParseError);
  CHECK_THROWS_AS(bigraph_parse("bwd"), ParseError);
  CHECK_THROWS_AS(bigraph_parse("bwd1duals1v1"), ParseError);
  CHECK_THROWS_AS(bigraph_parse("bwd1v1p1duals1v1x1"), ParseError);
  CHECK_THROWS_AS(bigraph_parse("bwd1v1p1duals1v2x2"), ParseError);
  CHECK_THROWS_AS(bigraph_parse("bwd1duals1z"), ParseError);
}

TEST_CASE("disconnected graphs are rejected") {
  CHECK_THROWS_AS(bigraph_fp_norm(bigraph_parse("bwd1v1p0")), DomainError);
}

TEST_CASE("dot export") {
  const auto dot = bigraph_dot(bigraph_parse(kCodes[2]));
  CHECK(dot.find("graph bigraph {") == 0);
  CHECK(dot.find("v4_0 -- v4_1 [style=dashed]") != std::string::npos);
}
