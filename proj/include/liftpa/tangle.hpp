#pragma once

// Combinatorial planar tangles.
//
// A tangle is a sphere carrying the output disk (disk 0) and input disks
// 1..t.  Boundary points of every disk are numbered clockwise as drawn in the
// plane; interval j of a disk with k points runs from point j to point j+1
// (mod k), and a disk with no points has the single interval 0.  Strands pair
// boundary points; closed strands are counted as loops.
//
// The embedding is recorded as a partition of "sides" into faces.  A side is
// either a disk interval (a corner of the combinatorial map) or one of the two
// sides of a loop.  The rotation system fixes which sides bound the same face
// within one connected component; the partition additionally records how
// components nest.  A partition is planar when every component has genus 0
// and the graph joining components to the faces they bound is a tree.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "liftpa/error.hpp"

namespace liftpa {

enum class Shade : std::uint8_t { Unshaded = 0, Shaded = 1 };

inline Shade flip(Shade s) { return s == Shade::Unshaded ? Shade::Shaded : Shade::Unshaded; }
inline char sign_char(Shade s) { return s == Shade::Unshaded ? '+' : '-'; }

struct Endpoint {
  int disk = 0;
  int point = 0;
  friend auto operator<=>(const Endpoint&, const Endpoint&) = default;
};

struct DiskSpec {
  int points = 0;
  int star = 0;
  friend bool operator==(const DiskSpec&, const DiskSpec&) = default;
};

struct SideRef {
  enum class Kind : std::uint8_t { Corner, Loop };
  Kind kind = Kind::Corner;
  int index = 0;  // disk id or loop id
  int slot = 0;   // interval index or loop side (0/1)

  static SideRef corner(int disk, int interval) { return {Kind::Corner, disk, interval}; }
  static SideRef loop_side(int loop, int side) { return {Kind::Loop, loop, side}; }
  friend auto operator<=>(const SideRef&, const SideRef&) = default;
};

/// Unchecked description of a tangle, as produced by the DSL parser or by hand.
struct TangleSpec {
  std::vector<DiskSpec> disks;  // disks[0] is the output disk
  std::vector<std::pair<Endpoint, Endpoint>> arcs;
  int loops = 0;
  /// Sides that lie in a common face.  Components (and loops) not mentioned in
  /// any join that links them to another component are placed in the face of
  /// the output disk's distinguished interval.
  std::vector<std::pair<SideRef, SideRef>> joins;
};

enum class ViolationKind {
  MissingOutputDisk,
  PointOutOfRange,
  DanglingPoint,
  RepeatedPoint,
  OddBoundary,
  BadStar,
  NonPlanar,
  BadEmbedding,
};

inline const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::MissingOutputDisk: return "missing output disk";
    case ViolationKind::PointOutOfRange: return "point out of range";
    case ViolationKind::DanglingPoint: return "dangling point";
    case ViolationKind::RepeatedPoint: return "point used twice";
    case ViolationKind::OddBoundary: return "odd boundary";
    case ViolationKind::BadStar: return "distinguished interval out of range";
    case ViolationKind::NonPlanar: return "non-planar";
    case ViolationKind::BadEmbedding: return "inconsistent embedding";
  }
  return "unknown";
}

struct Violation {
  ViolationKind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool has(ViolationKind k) const {
    return std::any_of(violations.begin(), violations.end(), [k](const Violation& v) { return v.kind == k; });
  }
  std::string to_string() const {
    std::string s;
    for (const auto& v : violations) s += std::string(liftpa::to_string(v.kind)) + ": " + v.message + "\n";
    return s;
  }
};

namespace detail {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    return true;
  }
};

inline int mod(int a, int n) { return ((a % n) + n) % n; }

// Fully paired tangle with faces given per side; the working form for all
// structural algorithms.
struct RawTangle {
  std::vector<DiskSpec> disks;
  std::vector<std::vector<Endpoint>> partner;
  int loops = 0;
  std::vector<std::vector<int>> face_of_corner;
  std::vector<std::array<int, 2>> face_of_loop;
  int face_count = 0;

  int corners(int d) const { return std::max(disks[static_cast<std::size_t>(d)].points, 1); }

  // Global side numbering: disk corners in order, then loop sides.
  std::vector<int> corner_base() const {
    std::vector<int> base(disks.size() + 1, 0);
    for (std::size_t d = 0; d < disks.size(); ++d) base[d + 1] = base[d] + corners(static_cast<int>(d));
    return base;
  }
};

struct CycleData {
  std::vector<std::vector<SideRef>> cycles;
  std::vector<int> component;     // component id per cycle
  int disk_components = 0;        // components [0, disk_components) contain disks
  std::vector<int> disk_component;  // per disk
  std::vector<int> comp_disks, comp_arcs;
};

// Face tracing.  Walking with the face on the left: an input-disk interval j
// is left through point j+1 and arriving at input point p enters interval p;
// on the output disk, interval j is left through point j and arriving at
// point p enters interval p-1.
inline CycleData trace_cycles(const RawTangle& t) {
  CycleData out;
  const auto base = t.corner_base();
  std::vector<char> seen(static_cast<std::size_t>(base.back()), 0);
  for (int d = 0; d < static_cast<int>(t.disks.size()); ++d) {
    for (int c = 0; c < t.corners(d); ++c) {
      if (seen[static_cast<std::size_t>(base[static_cast<std::size_t>(d)] + c)]) continue;
      std::vector<SideRef> cyc;
      int cd = d, cc = c;
      while (!seen[static_cast<std::size_t>(base[static_cast<std::size_t>(cd)] + cc)]) {
        seen[static_cast<std::size_t>(base[static_cast<std::size_t>(cd)] + cc)] = 1;
        cyc.push_back(SideRef::corner(cd, cc));
        const int k = t.disks[static_cast<std::size_t>(cd)].points;
        if (k == 0) break;
        const int exit = cd == 0 ? cc : mod(cc + 1, k);
        const Endpoint p = t.partner[static_cast<std::size_t>(cd)][static_cast<std::size_t>(exit)];
        const int kk = t.disks[static_cast<std::size_t>(p.disk)].points;
        cd = p.disk;
        cc = p.disk == 0 ? mod(p.point - 1, kk) : p.point;
      }
      out.cycles.push_back(std::move(cyc));
    }
  }
  for (int l = 0; l < t.loops; ++l) {
    out.cycles.push_back({SideRef::loop_side(l, 0)});
    out.cycles.push_back({SideRef::loop_side(l, 1)});
  }
  // Components.
  UnionFind uf(t.disks.size());
  std::size_t arc_count = 0;
  for (std::size_t d = 0; d < t.disks.size(); ++d)
    for (const auto& p : t.partner[d]) uf.unite(static_cast<int>(d), p.disk);
  std::map<int, int> comp_id;
  out.disk_component.resize(t.disks.size());
  for (std::size_t d = 0; d < t.disks.size(); ++d) {
    const int r = uf.find(static_cast<int>(d));
    auto it = comp_id.find(r);
    if (it == comp_id.end()) it = comp_id.emplace(r, static_cast<int>(comp_id.size())).first;
    out.disk_component[d] = it->second;
  }
  out.disk_components = static_cast<int>(comp_id.size());
  out.comp_disks.assign(static_cast<std::size_t>(out.disk_components), 0);
  out.comp_arcs.assign(static_cast<std::size_t>(out.disk_components), 0);
  for (std::size_t d = 0; d < t.disks.size(); ++d) {
    ++out.comp_disks[static_cast<std::size_t>(out.disk_component[d])];
    for (const auto& p : t.partner[d]) {
      (void)p;
      ++arc_count;
      ++out.comp_arcs[static_cast<std::size_t>(out.disk_component[d])];
    }
  }
  for (auto& a : out.comp_arcs) a /= 2;
  for (const auto& cyc : out.cycles) {
    const SideRef& s = cyc.front();
    out.component.push_back(s.kind == SideRef::Kind::Corner
                                ? out.disk_component[static_cast<std::size_t>(s.index)]
                                : out.disk_components + s.index);
  }
  return out;
}

inline int face_of(const RawTangle& t, const SideRef& s) {
  return s.kind == SideRef::Kind::Corner
             ? t.face_of_corner[static_cast<std::size_t>(s.index)][static_cast<std::size_t>(s.slot)]
             : t.face_of_loop[static_cast<std::size_t>(s.index)][static_cast<std::size_t>(s.slot)];
}

// Genus and nesting checks on a fully paired tangle with a face partition.
inline void check_embedding(const RawTangle& t, const CycleData& cd, ValidationReport& report) {
  const int ncomp = cd.disk_components + t.loops;
  std::vector<int> comp_cycles(static_cast<std::size_t>(ncomp), 0);
  for (std::size_t c = 0; c < cd.cycles.size(); ++c) {
    ++comp_cycles[static_cast<std::size_t>(cd.component[c])];
    const int f = face_of(t, cd.cycles[c].front());
    for (const auto& s : cd.cycles[c])
      if (face_of(t, s) != f) {
        report.violations.push_back({ViolationKind::BadEmbedding, "a boundary cycle is split across faces"});
        return;
      }
  }
  for (int c = 0; c < cd.disk_components; ++c) {
    const int euler = cd.comp_disks[static_cast<std::size_t>(c)] - cd.comp_arcs[static_cast<std::size_t>(c)] +
                      comp_cycles[static_cast<std::size_t>(c)];
    if (euler != 2) {
      report.violations.push_back(
          {ViolationKind::NonPlanar, "component has Euler characteristic " + std::to_string(euler) + " (expected 2)"});
    }
  }
  if (!report.ok()) return;
  // Component-face incidence must be a tree.
  std::vector<char> face_used(static_cast<std::size_t>(t.face_count), 0);
  UnionFind uf(static_cast<std::size_t>(t.face_count + ncomp));
  bool cycle_found = false;
  for (std::size_t c = 0; c < cd.cycles.size(); ++c) {
    const int f = face_of(t, cd.cycles[c].front());
    face_used[static_cast<std::size_t>(f)] = 1;
    if (!uf.unite(f, t.face_count + cd.component[c])) cycle_found = true;
  }
  bool connected = true;
  for (int n = 0; n < t.face_count + ncomp; ++n)
    if (uf.find(n) != uf.find(0)) connected = false;
  for (char u : face_used)
    if (!u) connected = false;
  if (cycle_found || !connected)
    report.violations.push_back(
        {ViolationKind::BadEmbedding, "components and faces do not nest as a planar arrangement"});
}

// Canonical renumbering of faces and loops.  Returns the old-to-new face map.
inline std::vector<int> canonicalize(RawTangle& t) {
  const CycleData cd = trace_cycles(t);
  const int nf = t.face_count;
  const int ncomp = cd.disk_components + t.loops;
  const int nodes = nf + ncomp;
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(nodes));  // (node, cycle)
  for (std::size_t c = 0; c < cd.cycles.size(); ++c) {
    const int f = face_of(t, cd.cycles[c].front());
    const int comp = nf + cd.component[c];
    adj[static_cast<std::size_t>(f)].push_back({comp, static_cast<int>(c)});
    adj[static_cast<std::size_t>(comp)].push_back({f, static_cast<int>(c)});
  }
  std::vector<std::string> label(static_cast<std::size_t>(nodes));
  for (int f = 0; f < nf; ++f) {
    std::optional<std::pair<int, int>> best;
    for (auto [n, c] : adj[static_cast<std::size_t>(f)]) {
      (void)n;
      for (const auto& s : cd.cycles[static_cast<std::size_t>(c)])
        if (s.kind == SideRef::Kind::Corner) {
          std::pair<int, int> key{s.index, s.slot};
          if (!best || key < *best) best = key;
        }
    }
    label[static_cast<std::size_t>(f)] =
        best ? "F" + std::to_string(best->first) + "." + std::to_string(best->second) : "F";
  }
  for (int c = 0; c < ncomp; ++c) {
    if (c < cd.disk_components) {
      int mind = -1;
      for (std::size_t d = 0; d < t.disks.size(); ++d)
        if (cd.disk_component[d] == c) {
          mind = static_cast<int>(d);
          break;
        }
      label[static_cast<std::size_t>(nf + c)] = "C" + std::to_string(mind);
    } else {
      label[static_cast<std::size_t>(nf + c)] = "L";
    }
  }
  const int root = nf + cd.disk_component[0];
  std::vector<std::string> enc(static_cast<std::size_t>(nodes));
  std::vector<int> parent_cycle(static_cast<std::size_t>(nodes), -1);
  std::function<void(int, int)> encode = [&](int node, int via) {
    parent_cycle[static_cast<std::size_t>(node)] = via;
    std::vector<std::string> kids;
    for (auto [n, c] : adj[static_cast<std::size_t>(node)]) {
      if (c == via) continue;
      encode(n, c);
      kids.push_back(enc[static_cast<std::size_t>(n)]);
    }
    std::sort(kids.begin(), kids.end());
    std::string s = label[static_cast<std::size_t>(node)] + "(";
    for (const auto& k : kids) s += k + ",";
    enc[static_cast<std::size_t>(node)] = s + ")";
  };
  encode(root, -1);

  std::vector<int> new_face(static_cast<std::size_t>(nf), -1);
  std::vector<int> new_loop(static_cast<std::size_t>(t.loops), -1);
  std::vector<int> loop_flip(static_cast<std::size_t>(t.loops), 0);
  int next_face = 0, next_loop = 0;
  std::function<void(int, int)> visit = [&](int node, int via) {
    if (node < nf) {
      new_face[static_cast<std::size_t>(node)] = next_face++;
    } else if (node - nf >= cd.disk_components) {
      const int l = node - nf - cd.disk_components;
      new_loop[static_cast<std::size_t>(l)] = next_loop++;
      // slot 0 faces the parent
      loop_flip[static_cast<std::size_t>(l)] = cd.cycles[static_cast<std::size_t>(via)].front().slot;
    }
    std::vector<std::pair<std::string, std::pair<int, int>>> kids;
    for (auto [n, c] : adj[static_cast<std::size_t>(node)])
      if (c != via) kids.push_back({enc[static_cast<std::size_t>(n)], {n, c}});
    std::stable_sort(kids.begin(), kids.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [e, nc] : kids) visit(nc.first, nc.second);
  };
  visit(root, -1);

  for (auto& row : t.face_of_corner)
    for (auto& f : row) f = new_face[static_cast<std::size_t>(f)];
  std::vector<std::array<int, 2>> loops(static_cast<std::size_t>(t.loops));
  for (int l = 0; l < t.loops; ++l) {
    auto sides = t.face_of_loop[static_cast<std::size_t>(l)];
    if (loop_flip[static_cast<std::size_t>(l)]) std::swap(sides[0], sides[1]);
    loops[static_cast<std::size_t>(new_loop[static_cast<std::size_t>(l)])] = {
        new_face[static_cast<std::size_t>(sides[0])], new_face[static_cast<std::size_t>(sides[1])]};
  }
  t.face_of_loop = std::move(loops);
  return new_face;
}

}  // namespace detail

/// Validate a spec: pairing, parity, distinguished intervals, genus and nesting.
ValidationReport validate(const TangleSpec& spec);

/// A valid tangle in canonical form.  Instances only come from build(),
/// compose() and the generator library, so every Tangle is valid.
class Tangle {
 public:
  static Tangle build(const TangleSpec& spec);

  int input_count() const { return static_cast<int>(raw_.disks.size()) - 1; }
  int disk_count() const { return static_cast<int>(raw_.disks.size()); }
  int points(int disk) const { return raw_.disks.at(static_cast<std::size_t>(disk)).points; }
  int star(int disk) const { return raw_.disks.at(static_cast<std::size_t>(disk)).star; }
  int corners(int disk) const { return raw_.corners(disk); }
  const std::vector<DiskSpec>& disks() const { return raw_.disks; }
  Endpoint partner(Endpoint e) const {
    return raw_.partner.at(static_cast<std::size_t>(e.disk)).at(static_cast<std::size_t>(e.point));
  }
  int loops() const { return raw_.loops; }
  int face_count() const { return raw_.face_count; }
  int face_of_corner(int disk, int corner) const {
    return raw_.face_of_corner.at(static_cast<std::size_t>(disk)).at(static_cast<std::size_t>(corner));
  }
  std::array<int, 2> face_of_loop(int l) const { return raw_.face_of_loop.at(static_cast<std::size_t>(l)); }
  int face_of(const SideRef& s) const { return detail::face_of(raw_, s); }

  /// Sides bounding each face.
  std::vector<std::vector<SideRef>> face_sides() const {
    std::vector<std::vector<SideRef>> out(static_cast<std::size_t>(raw_.face_count));
    for (int d = 0; d < disk_count(); ++d)
      for (int c = 0; c < corners(d); ++c)
        out[static_cast<std::size_t>(face_of_corner(d, c))].push_back(SideRef::corner(d, c));
    for (int l = 0; l < raw_.loops; ++l)
      for (int s = 0; s < 2; ++s)
        out[static_cast<std::size_t>(raw_.face_of_loop[static_cast<std::size_t>(l)][static_cast<std::size_t>(s)])]
            .push_back(SideRef::loop_side(l, s));
    return out;
  }

  /// Number of boundary cycles of each face (holes plus outer boundary).
  std::vector<int> face_cycle_counts() const {
    const auto cd = detail::trace_cycles(raw_);
    std::vector<int> out(static_cast<std::size_t>(raw_.face_count), 0);
    for (const auto& cyc : cd.cycles) ++out[static_cast<std::size_t>(face_of(cyc.front()))];
    return out;
  }

  /// Faces on either side of the strand ending at e.
  std::array<int, 2> faces_beside(Endpoint e) const {
    const int k = points(e.disk);
    return {face_of_corner(e.disk, detail::mod(e.point - 1, k)), face_of_corner(e.disk, e.point)};
  }

  /// Spec that rebuilds this exact tangle.
  TangleSpec spec() const;

  friend bool operator==(const Tangle& a, const Tangle& b) {
    return a.raw_.disks == b.raw_.disks && a.raw_.partner == b.raw_.partner && a.raw_.loops == b.raw_.loops &&
           a.raw_.face_of_corner == b.raw_.face_of_corner && a.raw_.face_of_loop == b.raw_.face_of_loop;
  }
  friend bool operator!=(const Tangle& a, const Tangle& b) { return !(a == b); }

  const detail::RawTangle& raw() const { return raw_; }

  /// Assemble from a fully specified raw form; validates and canonicalizes.
  /// Returns the old-to-new face numbering through face_map when given.
  static Tangle from_raw(detail::RawTangle raw, std::vector<int>* face_map = nullptr) {
    ValidationReport report;
    const auto cd = detail::trace_cycles(raw);
    detail::check_embedding(raw, cd, report);
    if (!report.ok()) throw DomainError("invalid tangle: " + report.to_string());
    Tangle t;
    std::vector<int> map = detail::canonicalize(raw);
    if (face_map) *face_map = std::move(map);
    t.raw_ = std::move(raw);
    return t;
  }

 private:
  detail::RawTangle raw_;
};

namespace detail {

inline void check_pairing(const TangleSpec& spec, ValidationReport& report,
                          std::vector<std::vector<Endpoint>>* partner_out) {
  if (spec.disks.empty()) {
    report.violations.push_back({ViolationKind::MissingOutputDisk, "no disks declared"});
    return;
  }
  std::vector<std::vector<Endpoint>> partner(spec.disks.size());
  std::vector<std::vector<int>> uses(spec.disks.size());
  for (std::size_t d = 0; d < spec.disks.size(); ++d) {
    const auto& disk = spec.disks[d];
    if (disk.points < 0) {
      report.violations.push_back({ViolationKind::PointOutOfRange, "disk " + std::to_string(d) + " has negative size"});
      return;
    }
    if (disk.points % 2 != 0)
      report.violations.push_back({ViolationKind::OddBoundary,
                                   "disk " + std::to_string(d) + " has " + std::to_string(disk.points) + " points"});
    if (disk.star < 0 || disk.star >= std::max(disk.points, 1))
      report.violations.push_back({ViolationKind::BadStar, "disk " + std::to_string(d) + " star " +
                                                               std::to_string(disk.star)});
    partner[d].assign(static_cast<std::size_t>(disk.points), Endpoint{-1, -1});
    uses[d].assign(static_cast<std::size_t>(disk.points), 0);
  }
  auto in_range = [&](const Endpoint& e) {
    return e.disk >= 0 && e.disk < static_cast<int>(spec.disks.size()) && e.point >= 0 &&
           e.point < spec.disks[static_cast<std::size_t>(e.disk)].points;
  };
  auto name = [](const Endpoint& e) { return std::to_string(e.disk) + "." + std::to_string(e.point); };
  for (const auto& [a, b] : spec.arcs) {
    if (!in_range(a) || !in_range(b)) {
      report.violations.push_back({ViolationKind::PointOutOfRange, "arc " + name(a) + " " + name(b)});
      continue;
    }
    if (a == b) {
      report.violations.push_back({ViolationKind::RepeatedPoint, "arc joins " + name(a) + " to itself"});
      continue;
    }
    for (const auto& e : {a, b}) {
      if (++uses[static_cast<std::size_t>(e.disk)][static_cast<std::size_t>(e.point)] == 2)
        report.violations.push_back({ViolationKind::RepeatedPoint, "point " + name(e) + " is on two arcs"});
    }
    partner[static_cast<std::size_t>(a.disk)][static_cast<std::size_t>(a.point)] = b;
    partner[static_cast<std::size_t>(b.disk)][static_cast<std::size_t>(b.point)] = a;
  }
  for (std::size_t d = 0; d < spec.disks.size(); ++d)
    for (std::size_t p = 0; p < uses[d].size(); ++p)
      if (uses[d][p] == 0)
        report.violations.push_back(
            {ViolationKind::DanglingPoint, "point " + std::to_string(d) + "." + std::to_string(p) + " is unpaired"});
  if (partner_out) *partner_out = std::move(partner);
}

// Faces from rotation system, explicit joins and default placement.
inline std::optional<RawTangle> assemble(const TangleSpec& spec, ValidationReport& report) {
  RawTangle raw;
  check_pairing(spec, report, &raw.partner);
  if (spec.loops < 0) report.violations.push_back({ViolationKind::BadEmbedding, "negative loop count"});
  if (!report.ok()) return std::nullopt;
  raw.disks = spec.disks;
  raw.loops = spec.loops;
  const CycleData cd = trace_cycles(raw);
  const int ncyc = static_cast<int>(cd.cycles.size());
  std::map<SideRef, int> cycle_of;
  for (int c = 0; c < ncyc; ++c)
    for (const auto& s : cd.cycles[static_cast<std::size_t>(c)]) cycle_of[s] = c;
  UnionFind uf(static_cast<std::size_t>(ncyc));
  for (const auto& [a, b] : spec.joins) {
    auto ia = cycle_of.find(a), ib = cycle_of.find(b);
    if (ia == cycle_of.end() || ib == cycle_of.end()) {
      report.violations.push_back({ViolationKind::BadEmbedding, "join names a side that does not exist"});
      return std::nullopt;
    }
    uf.unite(ia->second, ib->second);
  }
  // A component is placed if one of its cycles shares a face with another component.
  const int ncomp = cd.disk_components + raw.loops;
  std::vector<char> placed(static_cast<std::size_t>(ncomp), 0);
  {
    std::map<int, std::vector<int>> comps_in_class;
    for (int c = 0; c < ncyc; ++c) comps_in_class[uf.find(c)].push_back(cd.component[static_cast<std::size_t>(c)]);
    for (auto& [cls, comps] : comps_in_class) {
      std::sort(comps.begin(), comps.end());
      comps.erase(std::unique(comps.begin(), comps.end()), comps.end());
      if (comps.size() > 1)
        for (int c : comps) placed[static_cast<std::size_t>(c)] = 1;
    }
  }
  const int root = cd.disk_component[0];
  const int host = cycle_of.at(SideRef::corner(0, spec.disks[0].star));
  for (int comp = 0; comp < ncomp; ++comp) {
    if (comp == root || placed[static_cast<std::size_t>(comp)]) continue;
    SideRef outer;
    if (comp < cd.disk_components) {
      int d = 0;
      while (cd.disk_component[static_cast<std::size_t>(d)] != comp) ++d;
      outer = SideRef::corner(d, spec.disks[static_cast<std::size_t>(d)].star);
    } else {
      outer = SideRef::loop_side(comp - cd.disk_components, 0);
    }
    uf.unite(cycle_of.at(outer), host);
  }
  std::map<int, int> face_id;
  std::vector<int> face_of_cycle(static_cast<std::size_t>(ncyc));
  for (int c = 0; c < ncyc; ++c) {
    const int r = uf.find(c);
    auto it = face_id.find(r);
    if (it == face_id.end()) it = face_id.emplace(r, static_cast<int>(face_id.size())).first;
    face_of_cycle[static_cast<std::size_t>(c)] = it->second;
  }
  raw.face_count = static_cast<int>(face_id.size());
  raw.face_of_corner.resize(raw.disks.size());
  for (std::size_t d = 0; d < raw.disks.size(); ++d)
    raw.face_of_corner[d].assign(static_cast<std::size_t>(raw.corners(static_cast<int>(d))), -1);
  raw.face_of_loop.assign(static_cast<std::size_t>(raw.loops), {-1, -1});
  for (int c = 0; c < ncyc; ++c)
    for (const auto& s : cd.cycles[static_cast<std::size_t>(c)]) {
      if (s.kind == SideRef::Kind::Corner)
        raw.face_of_corner[static_cast<std::size_t>(s.index)][static_cast<std::size_t>(s.slot)] =
            face_of_cycle[static_cast<std::size_t>(c)];
      else
        raw.face_of_loop[static_cast<std::size_t>(s.index)][static_cast<std::size_t>(s.slot)] =
            face_of_cycle[static_cast<std::size_t>(c)];
    }
  check_embedding(raw, cd, report);
  if (!report.ok()) return std::nullopt;
  return raw;
}

}  // namespace detail

inline ValidationReport validate(const TangleSpec& spec) {
  ValidationReport report;
  detail::assemble(spec, report);
  return report;
}

inline Tangle Tangle::build(const TangleSpec& spec) {
  ValidationReport report;
  auto raw = detail::assemble(spec, report);
  if (!raw) throw DomainError("invalid tangle: " + report.to_string());
  return from_raw(std::move(*raw));
}

inline TangleSpec Tangle::spec() const {
  TangleSpec s;
  s.disks = raw_.disks;
  s.loops = raw_.loops;
  for (int d = 0; d < disk_count(); ++d)
    for (int p = 0; p < points(d); ++p) {
      const Endpoint a{d, p};
      const Endpoint b = partner(a);
      if (a < b) s.arcs.push_back({a, b});
    }
  // Join every boundary cycle of a face to the first one listed.
  const auto cd = detail::trace_cycles(raw_);
  std::vector<std::optional<SideRef>> first(static_cast<std::size_t>(raw_.face_count));
  for (const auto& cyc : cd.cycles) {
    const int f = face_of(cyc.front());
    auto& slot = first[static_cast<std::size_t>(f)];
    if (!slot) slot = cyc.front();
    else s.joins.push_back({*slot, cyc.front()});
  }
  return s;
}

/// Result of gluing V into disk i of U, with the face provenance needed to
/// carry shadings across.
struct Composition {
  Tangle tangle;
  std::vector<int> u_faces;  // face of U -> face of the composite
  std::vector<int> v_faces;  // face of V -> face of the composite
};

/// U o_i V.  Disks are renumbered U's 1..i-1, V's 1..v, U's i+1..u.  V's
/// output interval star(V)+j is glued to interval star_i(U)+j of disk i.
inline Composition compose_with_provenance(const Tangle& u, int i, const Tangle& v) {
  if (i < 1 || i > u.input_count())
    throw DomainError("disk index " + std::to_string(i) + " out of range (tangle has " +
                      std::to_string(u.input_count()) + " inputs)");
  const int k = u.points(i);
  if (v.points(0) != k)
    throw DomainError("arity mismatch: disk " + std::to_string(i) + " has " + std::to_string(k) +
                      " points, inner tangle has " + std::to_string(v.points(0)));
  const int su = u.star(i), sv = v.star(0);
  const int nu = u.input_count(), nv = v.input_count();
  auto v_to_u = [&](int q) { return detail::mod(q - sv + su, std::max(k, 1)); };
  auto u_to_v = [&](int p) { return detail::mod(p - su + sv, std::max(k, 1)); };

  // Composite disk ids.
  auto new_u = [&](int d) { return d < i ? d : d + nv - 1; };
  auto new_v = [&](int d) { return i - 1 + d; };

  detail::RawTangle raw;
  raw.disks.resize(static_cast<std::size_t>(nu + nv));
  for (int d = 0; d <= nu; ++d)
    if (d != i) raw.disks[static_cast<std::size_t>(new_u(d))] = u.disks()[static_cast<std::size_t>(d)];
  for (int d = 1; d <= nv; ++d) raw.disks[static_cast<std::size_t>(new_v(d))] = v.disks()[static_cast<std::size_t>(d)];
  raw.partner.resize(raw.disks.size());
  for (std::size_t d = 0; d < raw.disks.size(); ++d)
    raw.partner[d].assign(static_cast<std::size_t>(raw.disks[d].points), Endpoint{-1, -1});

  // Follow a strand from a U or V endpoint through the glued circle.
  std::vector<char> glued_seen(static_cast<std::size_t>(k), 0);
  auto follow = [&](bool in_u, Endpoint e) -> Endpoint {
    while (true) {
      if (in_u) {
        const Endpoint p = u.partner(e);
        if (p.disk != i) return Endpoint{new_u(p.disk), p.point};
        glued_seen[static_cast<std::size_t>(p.point)] = 1;
        in_u = false;
        e = Endpoint{0, u_to_v(p.point)};
      } else {
        const Endpoint p = v.partner(e);
        if (p.disk != 0) return Endpoint{new_v(p.disk), p.point};
        glued_seen[static_cast<std::size_t>(v_to_u(p.point))] = 1;
        in_u = true;
        e = Endpoint{i, v_to_u(p.point)};
      }
    }
  };
  for (int d = 0; d <= nu; ++d) {
    if (d == i) continue;
    for (int p = 0; p < u.points(d); ++p)
      raw.partner[static_cast<std::size_t>(new_u(d))][static_cast<std::size_t>(p)] = follow(true, {d, p});
  }
  for (int d = 1; d <= nv; ++d)
    for (int p = 0; p < v.points(d); ++p)
      raw.partner[static_cast<std::size_t>(new_v(d))][static_cast<std::size_t>(p)] = follow(false, {d, p});

  // Faces: union of U faces and V faces glued along the circle.
  const int fu = u.face_count(), fv = v.face_count();
  detail::UnionFind uf(static_cast<std::size_t>(fu + fv));
  for (int j = 0; j < std::max(k, 1); ++j) uf.unite(u.face_of_corner(i, j), fu + v.face_of_corner(0, u_to_v(j)));

  // Closed strands created by gluing.
  std::vector<std::array<int, 2>> new_loops;
  for (int p = 0; p < k; ++p) {
    if (glued_seen[static_cast<std::size_t>(p)]) continue;
    const auto sides = u.faces_beside({i, p});
    new_loops.push_back({uf.find(sides[0]), uf.find(sides[1])});
    // mark the whole closed strand
    Endpoint e{i, p};
    do {
      glued_seen[static_cast<std::size_t>(e.point)] = 1;
      const Endpoint w = Endpoint{0, u_to_v(e.point)};
      const Endpoint pv = v.partner(w);
      const Endpoint back{i, v_to_u(pv.point)};
      glued_seen[static_cast<std::size_t>(back.point)] = 1;
      e = u.partner(back);
    } while (e.point != p);
  }

  std::map<int, int> face_id;
  auto id_of = [&](int cls) {
    auto it = face_id.find(cls);
    if (it == face_id.end()) it = face_id.emplace(cls, static_cast<int>(face_id.size())).first;
    return it->second;
  };
  raw.face_of_corner.resize(raw.disks.size());
  for (int d = 0; d <= nu; ++d) {
    if (d == i) continue;
    auto& row = raw.face_of_corner[static_cast<std::size_t>(new_u(d))];
    for (int c = 0; c < u.corners(d); ++c) row.push_back(id_of(uf.find(u.face_of_corner(d, c))));
  }
  for (int d = 1; d <= nv; ++d) {
    auto& row = raw.face_of_corner[static_cast<std::size_t>(new_v(d))];
    for (int c = 0; c < v.corners(d); ++c) row.push_back(id_of(uf.find(fu + v.face_of_corner(d, c))));
  }
  for (int l = 0; l < u.loops(); ++l) {
    const auto f = u.face_of_loop(l);
    raw.face_of_loop.push_back({id_of(uf.find(f[0])), id_of(uf.find(f[1]))});
  }
  for (int l = 0; l < v.loops(); ++l) {
    const auto f = v.face_of_loop(l);
    raw.face_of_loop.push_back({id_of(uf.find(fu + f[0])), id_of(uf.find(fu + f[1]))});
  }
  for (const auto& nl : new_loops) raw.face_of_loop.push_back({id_of(nl[0]), id_of(nl[1])});
  raw.loops = static_cast<int>(raw.face_of_loop.size());
  raw.face_count = static_cast<int>(face_id.size());

  std::vector<int> canon;
  Composition out{Tangle::from_raw(std::move(raw), &canon), {}, {}};
  for (int f = 0; f < fu; ++f) {
    auto it = face_id.find(uf.find(f));
    out.u_faces.push_back(it == face_id.end() ? -1 : canon[static_cast<std::size_t>(it->second)]);
  }
  for (int f = 0; f < fv; ++f) {
    auto it = face_id.find(uf.find(fu + f));
    out.v_faces.push_back(it == face_id.end() ? -1 : canon[static_cast<std::size_t>(it->second)]);
  }
  return out;
}

inline Tangle compose(const Tangle& u, int i, const Tangle& v) { return compose_with_provenance(u, i, v).tangle; }

// ---------------------------------------------------------------------------
// Shaded tangles

/// A tangle with a checkerboard shading of its faces.
class ShadedTangle {
 public:
  ShadedTangle(Tangle base, std::vector<Shade> shades) : base_(std::move(base)), shades_(std::move(shades)) {
    if (static_cast<int>(shades_.size()) != base_.face_count()) throw DomainError("shading has wrong face count");
    check_checkerboard();
  }

  const Tangle& base() const { return base_; }
  Shade face_shade(int f) const { return shades_.at(static_cast<std::size_t>(f)); }
  const std::vector<Shade>& shades() const { return shades_; }

  /// Shade of the face at the distinguished interval of disk i (0 = output).
  Shade sign(int disk) const { return face_shade(base_.face_of_corner(disk, base_.star(disk))); }
  std::vector<Shade> signs() const {
    std::vector<Shade> out;
    for (int d = 0; d < base_.disk_count(); ++d) out.push_back(sign(d));
    return out;
  }

  /// Shade of interval j of disk d.
  Shade interval_shade(int disk, int interval) const { return face_shade(base_.face_of_corner(disk, interval)); }

  friend bool operator==(const ShadedTangle& a, const ShadedTangle& b) {
    return a.base_ == b.base_ && a.shades_ == b.shades_;
  }
  friend bool operator!=(const ShadedTangle& a, const ShadedTangle& b) { return !(a == b); }

 private:
  void check_checkerboard() const {
    for (int d = 0; d < base_.disk_count(); ++d)
      for (int p = 0; p < base_.points(d); ++p) {
        const auto f = base_.faces_beside({d, p});
        if (shades_[static_cast<std::size_t>(f[0])] == shades_[static_cast<std::size_t>(f[1])])
          throw DomainError("shading is not a checkerboard coloring");
      }
    for (int l = 0; l < base_.loops(); ++l) {
      const auto f = base_.face_of_loop(l);
      if (shades_[static_cast<std::size_t>(f[0])] == shades_[static_cast<std::size_t>(f[1])])
        throw DomainError("shading is not a checkerboard coloring");
    }
  }

  Tangle base_;
  std::vector<Shade> shades_;
};

/// The checkerboard shading with the output distinguished interval unshaded.
inline ShadedTangle shade(const Tangle& t) {
  for (int d = 0; d < t.disk_count(); ++d)
    if (t.points(d) % 2 != 0) throw DomainError("tangle with odd boundary cannot be shaded");
  const int nf = t.face_count();
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(nf));
  for (int d = 0; d < t.disk_count(); ++d)
    for (int p = 0; p < t.points(d); ++p) {
      const auto f = t.faces_beside({d, p});
      adj[static_cast<std::size_t>(f[0])].push_back(f[1]);
    }
  for (int l = 0; l < t.loops(); ++l) {
    const auto f = t.face_of_loop(l);
    adj[static_cast<std::size_t>(f[0])].push_back(f[1]);
    adj[static_cast<std::size_t>(f[1])].push_back(f[0]);
  }
  std::vector<int> color(static_cast<std::size_t>(nf), -1);
  const int start = t.face_of_corner(0, t.star(0));
  color[static_cast<std::size_t>(start)] = 0;
  std::vector<int> queue{start};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const int f = queue[q];
    for (int g : adj[static_cast<std::size_t>(f)]) {
      if (color[static_cast<std::size_t>(g)] < 0) {
        color[static_cast<std::size_t>(g)] = 1 - color[static_cast<std::size_t>(f)];
        queue.push_back(g);
      } else if (color[static_cast<std::size_t>(g)] == color[static_cast<std::size_t>(f)]) {
        throw DomainError("tangle admits no checkerboard shading");
      }
    }
  }
  std::vector<Shade> shades(static_cast<std::size_t>(nf));
  for (int f = 0; f < nf; ++f) {
    if (color[static_cast<std::size_t>(f)] < 0) throw DomainError("internal: face unreachable while shading");
    shades[static_cast<std::size_t>(f)] = color[static_cast<std::size_t>(f)] == 0 ? Shade::Unshaded : Shade::Shaded;
  }
  return ShadedTangle(t, std::move(shades));
}

inline ShadedTangle reverse_shading(const ShadedTangle& s) {
  std::vector<Shade> flipped;
  for (Shade x : s.shades()) flipped.push_back(flip(x));
  return ShadedTangle(s.base(), std::move(flipped));
}

inline const Tangle& forget(const ShadedTangle& s) { return s.base(); }

/// Gluing of shaded tangles; the shades along the glued circle must agree.
inline ShadedTangle compose(const ShadedTangle& u, int i, const ShadedTangle& v) {
  const Composition c = compose_with_provenance(u.base(), i, v.base());
  for (int j = 0; j < u.base().corners(i); ++j) {
    const int jv = detail::mod(j - u.base().star(i) + v.base().star(0), v.base().corners(0));
    if (u.interval_shade(i, j) != v.interval_shade(0, jv))
      throw DomainError("shadings disagree on the glued boundary of disk " + std::to_string(i));
  }
  std::vector<Shade> shades(static_cast<std::size_t>(c.tangle.face_count()));
  for (std::size_t f = 0; f < c.u_faces.size(); ++f)
    if (c.u_faces[f] >= 0) shades[static_cast<std::size_t>(c.u_faces[f])] = u.face_shade(static_cast<int>(f));
  for (std::size_t f = 0; f < c.v_faces.size(); ++f)
    if (c.v_faces[f] >= 0) shades[static_cast<std::size_t>(c.v_faces[f])] = v.face_shade(static_cast<int>(f));
  return ShadedTangle(c.tangle, std::move(shades));
}

struct Region {
  int face = 0;
  Shade shade = Shade::Unshaded;
  std::vector<SideRef> sides;
  int cycles = 0;          // boundary components
  int euler = 0;           // 2 - cycles
  int output_intervals = 0;
};

struct RegionsAndSigns {
  std::vector<Region> regions;
  std::vector<Shade> signs;  // disk 0 first
};

inline RegionsAndSigns regions_and_signs(const ShadedTangle& s) {
  RegionsAndSigns out;
  const auto sides = s.base().face_sides();
  const auto cycles = s.base().face_cycle_counts();
  for (int f = 0; f < s.base().face_count(); ++f) {
    Region r;
    r.face = f;
    r.shade = s.face_shade(f);
    r.sides = sides[static_cast<std::size_t>(f)];
    r.cycles = cycles[static_cast<std::size_t>(f)];
    r.euler = 2 - r.cycles;
    for (const auto& side : r.sides)
      if (side.kind == SideRef::Kind::Corner && side.index == 0) ++r.output_intervals;
    out.regions.push_back(std::move(r));
  }
  out.signs = s.signs();
  return out;
}

}  // namespace liftpa
