#pragma once

// Generator library of unshaded tangles.  Four-point disks number their
// points top-left, top-right, bottom-right, bottom-left (0..3) with the
// distinguished interval on the left (interval 3); two-point disks have
// points top, bottom and the distinguished interval on the left (interval 1).

#include <random>
#include <string>
#include <vector>

#include "liftpa/tangle.hpp"

namespace liftpa::gen {

inline Tangle identity(int k) {
  TangleSpec s;
  s.disks = {{k, k > 0 ? k - 1 : 0}, {k, k > 0 ? k - 1 : 0}};
  for (int p = 0; p < k; ++p) s.arcs.push_back({{0, p}, {1, p}});
  return Tangle::build(s);
}

/// x (disk 1) stacked above y (disk 2).
inline Tangle multiplication() {
  TangleSpec s;
  s.disks = {{4, 3}, {4, 3}, {4, 3}};
  s.arcs = {{{0, 0}, {1, 0}}, {{0, 1}, {1, 1}}, {{1, 2}, {2, 1}},
            {{1, 3}, {2, 0}}, {{2, 2}, {0, 2}}, {{2, 3}, {0, 3}}};
  return Tangle::build(s);
}

/// x (disk 1) beside y (disk 2), joined through the middle.
inline Tangle coproduct() {
  TangleSpec s;
  s.disks = {{4, 3}, {4, 3}, {4, 3}};
  s.arcs = {{{0, 0}, {1, 0}}, {{1, 1}, {2, 0}}, {{2, 1}, {0, 1}},
            {{2, 2}, {0, 2}}, {{2, 3}, {1, 2}}, {{1, 3}, {0, 3}}};
  return Tangle::build(s);
}

/// Closure to the right; the output sits in the region left of the box.
inline Tangle trace() {
  TangleSpec s;
  s.disks = {{0, 0}, {4, 3}};
  s.arcs = {{{1, 0}, {1, 3}}, {{1, 1}, {1, 2}}};
  s.joins = {{SideRef::corner(0, 0), SideRef::corner(1, 3)}};
  return Tangle::build(s);
}

/// One-click rotation: output point p meets input point p+1.
inline Tangle rotation(int k = 4) {
  TangleSpec s;
  s.disks = {{k, k - 1}, {k, k - 1}};
  for (int p = 0; p < k; ++p) s.arcs.push_back({{0, p}, {1, (p + 1) % k}});
  return Tangle::build(s);
}

/// One-click rotation the other way: output point p meets input point p-1.
inline Tangle rotation_inverse(int k = 4) {
  TangleSpec s;
  s.disks = {{k, k - 1}, {k, k - 1}};
  for (int p = 0; p < k; ++p) s.arcs.push_back({{0, p}, {1, (p + k - 1) % k}});
  return Tangle::build(s);
}

/// Inclusion of 1-boxes into 2-boxes: a through-strand added on the right.
inline Tangle inclusion() {
  TangleSpec s;
  s.disks = {{4, 3}, {2, 1}};
  s.arcs = {{{0, 0}, {1, 0}}, {{0, 3}, {1, 1}}, {{0, 1}, {0, 2}}};
  return Tangle::build(s);
}

/// Capping of 2-boxes to 1-boxes: the right strand closed up.
inline Tangle capping() {
  TangleSpec s;
  s.disks = {{2, 1}, {4, 3}};
  s.arcs = {{{1, 0}, {0, 0}}, {{1, 3}, {0, 1}}, {{1, 1}, {1, 2}}};
  return Tangle::build(s);
}

/// A single strand with no input disks (the 1-box unit).
inline Tangle unit1() {
  TangleSpec s;
  s.disks = {{2, 1}};
  s.arcs = {{{0, 0}, {0, 1}}};
  return Tangle::build(s);
}

/// Two vertical strands with no input disks (the 2-box unit).
inline Tangle unit2() {
  TangleSpec s;
  s.disks = {{4, 3}};
  s.arcs = {{{0, 0}, {0, 3}}, {{0, 1}, {0, 2}}};
  return Tangle::build(s);
}

/// The empty tangle with no boundary.
inline Tangle empty() {
  TangleSpec s;
  s.disks = {{0, 0}};
  return Tangle::build(s);
}

/// Adds a closed loop in the face of the given side.
inline Tangle with_loop(const Tangle& t, SideRef host) {
  TangleSpec s = t.spec();
  s.joins.push_back({host, SideRef::loop_side(s.loops, 0)});
  ++s.loops;
  return Tangle::build(s);
}

struct Named {
  std::string name;
  Tangle tangle;
};

/// The 2-box generators used by the splicing and lifting suites.
inline std::vector<Named> library() {
  return {{"id", identity(4)},          {"mul", multiplication()}, {"coprod", coproduct()},
          {"trace", trace()},           {"rot", rotation()},       {"rot_inv", rotation_inverse()},
          {"incl", inclusion()},        {"cap", capping()},        {"id1", identity(2)},
          {"unit1", unit1()},           {"unit2", unit2()}};
}


struct RandomTangleLimits {
  int max_inputs = 4;
  int max_points = 12;  // over all disks, output included
  int max_loops = 2;
  int output_points = -1;  // fixed output size when >= 0
};

namespace detail {

inline void random_noncrossing(std::vector<int>& mate, int lo, int hi, std::mt19937_64& rng) {
  while (lo < hi) {
    std::vector<int> choices;
    for (int j = lo + 1; j <= hi; j += 2) choices.push_back(j);
    const int j = choices[rng() % choices.size()];
    mate[lo] = j;
    mate[j] = lo;
    random_noncrossing(mate, lo + 1, j - 1, rng);
    lo = j + 1;
  }
}

}  // namespace detail

/// A uniformly seeded random planar tangle with even boundaries.  Input disks
/// are pushed against the output circle, so a non-crossing matching of the
/// cyclic boundary word is a planar tangle.
inline Tangle random_tangle(std::mt19937_64& rng, const RandomTangleLimits& lim = {}) {
  if (lim.output_points % 2 != 0 && lim.output_points >= 0) throw DomainError("output size must be even");
  if (lim.output_points > lim.max_points) throw DomainError("output size exceeds the point budget");
  while (true) {
    const int inputs = static_cast<int>(rng() % static_cast<unsigned>(lim.max_inputs + 1));
    std::vector<int> pts(static_cast<std::size_t>(inputs + 1));
    int total = 0;
    for (auto& k : pts) {
      k = 2 * static_cast<int>(rng() % 4);
      total += k;
    }
    if (lim.output_points >= 0) {
      total += lim.output_points - pts[0];
      pts[0] = lim.output_points;
    }
    if (total > lim.max_points || total == 0) continue;
    TangleSpec s;
    for (int k : pts) s.disks.push_back({k, k ? static_cast<int>(rng() % static_cast<unsigned>(k)) : 0});
    // Boundary word: output points clockwise, each input block inserted at a
    // random gap and read counterclockwise from a random offset.
    std::vector<Endpoint> word;
    for (int p = 0; p < pts[0]; ++p) word.push_back({0, p});
    for (int d = 1; d <= inputs; ++d) {
      const int k = pts[static_cast<std::size_t>(d)];
      const std::size_t at = word.empty() ? 0 : rng() % (word.size() + 1);
      const int off = k ? static_cast<int>(rng() % static_cast<unsigned>(k)) : 0;
      std::vector<Endpoint> block;
      for (int q = 0; q < k; ++q) block.push_back({d, ((off - q) % k + k) % k});
      word.insert(word.begin() + static_cast<std::ptrdiff_t>(at), block.begin(), block.end());
    }
    std::vector<int> mate(word.size(), -1);
    detail::random_noncrossing(mate, 0, static_cast<int>(word.size()) - 1, rng);
    for (std::size_t a = 0; a < word.size(); ++a)
      if (static_cast<int>(a) < mate[a]) s.arcs.push_back({word[a], word[static_cast<std::size_t>(mate[a])]});
    Tangle t = Tangle::build(s);
    const int loops = static_cast<int>(rng() % static_cast<unsigned>(lim.max_loops + 1));
    for (int l = 0; l < loops; ++l) {
      const auto sides = t.face_sides();
      std::vector<SideRef> corners;
      for (const auto& f : sides)
        for (const auto& r : f)
          if (r.kind == SideRef::Kind::Corner) corners.push_back(r);
      if (corners.empty()) break;
      t = with_loop(t, corners[rng() % corners.size()]);
    }
    return t;
  }
}

}  // namespace liftpa::gen
