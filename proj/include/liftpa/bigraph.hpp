#pragma once

// Principal-graph code strings.
//
//   code   := "bwd" levels ["duals" duals]
//   levels := level ("v" level)*          depth 1, 2, ...; depth 0 is the root
//   level  := vertex ("p" vertex)*
//   vertex := int ("x" int)*              edge multiplicities to the previous depth
//   duals  := block ("v" block)*          one block per even depth 0, 2, 4, ...
//   block  := int ("x" int)*              1-based image of each vertex

#include <cctype>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "liftpa/error.hpp"

namespace liftpa {

struct Bigraph {
  std::string code;
  std::vector<std::size_t> levels;  // vertex count per depth, depth 0 first
  /// edges[k][v][u]: multiplicity between vertex v at depth k+1 and vertex u at depth k.
  std::vector<std::vector<std::vector<int>>> edges;
  /// duals[j][v]: 0-based image of vertex v at depth 2j.
  std::vector<std::vector<std::size_t>> duals;
  bool has_duals = false;

  std::size_t depth() const { return levels.size() - 1; }
  std::size_t vertex_count() const {
    std::size_t n = 0;
    for (auto l : levels) n += l;
    return n;
  }
};

namespace detail {

class CodeReader {
 public:
  explicit CodeReader(const std::string& s) : s_(s) {}
  bool done() const { return pos_ >= s_.size(); }
  char peek() const { return done() ? '\0' : s_[pos_]; }
  std::size_t column() const { return pos_ + 1; }
  bool starts_with(const std::string& w) const { return s_.compare(pos_, w.size(), w) == 0; }
  void expect(const std::string& w) {
    if (!starts_with(w)) fail("expected '" + w + "'");
    pos_ += w.size();
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  long integer() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a digit");
    long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (peek() - '0');
      if (v > 1000000) fail("number too large");
      ++pos_;
    }
    return v;
  }
  std::vector<long> int_list() {
    std::vector<long> out{integer()};
    while (peek() == 'x') {
      ++pos_;
      out.push_back(integer());
    }
    return out;
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, 1, column()); }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Bigraph bigraph_parse(const std::string& code) {
  detail::CodeReader r(code);
  Bigraph g;
  g.code = code;
  g.levels.push_back(1);
  r.expect("bwd");
  while (true) {
    const std::size_t col = r.column();
    std::vector<std::vector<int>> level;
    do {
      const auto mult = r.int_list();
      if (mult.size() != g.levels.back())
        throw ParseError("vertex at depth " + std::to_string(g.levels.size()) + " lists " +
                             std::to_string(mult.size()) + " multiplicities, previous depth has " +
                             std::to_string(g.levels.back()) + " vertices",
                         1, col);
      level.emplace_back(mult.begin(), mult.end());
    } while (r.accept('p'));
    g.levels.push_back(level.size());
    g.edges.push_back(std::move(level));
    if (r.accept('v')) continue;
    break;
  }
  if (r.starts_with("duals")) {
    r.expect("duals");
    g.has_duals = true;
    std::size_t depth = 0;
    do {
      const std::size_t col = r.column();
      if (depth >= g.levels.size()) throw ParseError("more dual blocks than even depths", 1, col);
      const auto images = r.int_list();
      if (images.size() != g.levels[depth])
        throw ParseError("dual block for depth " + std::to_string(depth) + " has " + std::to_string(images.size()) +
                             " entries, depth has " + std::to_string(g.levels[depth]) + " vertices",
                         1, col);
      std::vector<std::size_t> block;
      for (long v : images) {
        if (v < 1 || static_cast<std::size_t>(v) > images.size())
          throw ParseError("dual image " + std::to_string(v) + " out of range", 1, col);
        block.push_back(static_cast<std::size_t>(v - 1));
      }
      for (std::size_t k = 0; k < block.size(); ++k)
        if (block[block[k]] != k) throw ParseError("duality map is not an involution", 1, col);
      g.duals.push_back(std::move(block));
      depth += 2;
    } while (r.accept('v'));
    const std::size_t expected = g.depth() / 2 + 1;
    if (g.duals.size() != expected)
      throw ParseError("expected " + std::to_string(expected) + " dual blocks, found " +
                           std::to_string(g.duals.size()),
                       1, r.column());
  }
  if (!r.done()) r.fail("unexpected character '" + std::string(1, r.peek()) + "'");
  return g;
}

inline std::string bigraph_serialize(const Bigraph& g) {
  std::ostringstream os;
  os << "bwd";
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    if (k) os << 'v';
    for (std::size_t v = 0; v < g.edges[k].size(); ++v) {
      if (v) os << 'p';
      for (std::size_t u = 0; u < g.edges[k][v].size(); ++u) os << (u ? "x" : "") << g.edges[k][v][u];
    }
  }
  if (g.has_duals) {
    os << "duals";
    for (std::size_t j = 0; j < g.duals.size(); ++j) {
      if (j) os << 'v';
      for (std::size_t v = 0; v < g.duals[j].size(); ++v) os << (v ? "x" : "") << g.duals[j][v] + 1;
    }
  }
  return os.str();
}

/// Dense symmetric adjacency matrix; vertices ordered by depth.
inline std::vector<std::vector<double>> bigraph_adjacency(const Bigraph& g) {
  std::vector<std::size_t> offset{0};
  for (auto l : g.levels) offset.push_back(offset.back() + l);
  const std::size_t n = offset.back();
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (std::size_t k = 0; k < g.edges.size(); ++k)
    for (std::size_t v = 0; v < g.edges[k].size(); ++v)
      for (std::size_t u = 0; u < g.edges[k][v].size(); ++u) {
        const std::size_t x = offset[k + 1] + v, y = offset[k] + u;
        a[x][y] = a[y][x] = g.edges[k][v][u];
      }
  return a;
}

struct FpNorm {
  double norm = 0.0;
  double index = 0.0;  // norm squared
  std::size_t iterations = 0;
};

/// Largest adjacency eigenvalue by power iteration on A + I.
inline FpNorm bigraph_fp_norm(const Bigraph& g, double tolerance = 1e-12, std::size_t max_iterations = 1000000) {
  const auto a = bigraph_adjacency(g);
  const std::size_t n = a.size();
  // connectivity
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    const std::size_t x = stack.back();
    stack.pop_back();
    for (std::size_t y = 0; y < n; ++y)
      if (a[x][y] != 0.0 && !seen[y]) {
        seen[y] = 1;
        stack.push_back(y);
      }
  }
  for (char s : seen)
    if (!s) throw DomainError("bigraph is disconnected");

  std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n))), w(n);
  double lambda = 0.0;
  FpNorm out;
  for (std::size_t it = 1; it <= max_iterations; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = v[i];
      for (std::size_t j = 0; j < n; ++j) s += a[i][j] * v[j];
      w[i] = s;
    }
    double norm = 0.0;
    for (double x : w) norm += x * x;
    norm = std::sqrt(norm);
    double rayleigh = 0.0;
    for (std::size_t i = 0; i < n; ++i) rayleigh += v[i] * w[i];
    for (std::size_t i = 0; i < n; ++i) w[i] /= norm;
    v.swap(w);
    out.iterations = it;
    if (std::abs(rayleigh - lambda) < tolerance * std::max(1.0, std::abs(rayleigh)) && it > 2) {
      lambda = rayleigh;
      break;
    }
    lambda = rayleigh;
  }
  out.norm = lambda - 1.0;
  out.index = out.norm * out.norm;
  return out;
}

inline std::string bigraph_dot(const Bigraph& g) {
  std::ostringstream os;
  os << "graph bigraph {\n  rankdir=LR;\n";
  for (std::size_t k = 0; k < g.levels.size(); ++k) {
    os << "  { rank=same;";
    for (std::size_t v = 0; v < g.levels[k]; ++v) os << " v" << k << "_" << v << ";";
    os << " }\n";
  }
  for (std::size_t j = 0; j < g.duals.size(); ++j)
    for (std::size_t v = 0; v < g.duals[j].size(); ++v)
      if (g.duals[j][v] > v)
        os << "  v" << 2 * j << "_" << v << " -- v" << 2 * j << "_" << g.duals[j][v] << " [style=dashed];\n";
  for (std::size_t k = 0; k < g.edges.size(); ++k)
    for (std::size_t v = 0; v < g.edges[k].size(); ++v)
      for (std::size_t u = 0; u < g.edges[k][v].size(); ++u)
        for (int m = 0; m < g.edges[k][v][u]; ++m) os << "  v" << k << "_" << u << " -- v" << k + 1 << "_" << v << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace liftpa
