#pragma once

// Spin-model state sum for the group planar algebra P^A.
//
// Unshaded regions carry labels in A.  A box with 2k boundary points (or one
// boundary interval when k = 0) is a function of the labels on its unshaded
// boundary intervals, read clockwise starting from the distinguished interval.
// A shaded tangle acts by summing over labels of unshaded regions not touching
// the output disk, multiplying the input functions, and weighting each region
// R by d^{c(R) (chi(R) - m(R))}, where chi(R) is the Euler characteristic of R,
// m(R) the number of output intervals on R, and c(R) one of two exponents
// depending on the shade of R.  The exponents and the scale of the spin basis
// P_g(l, r) = d^b [r = l g] are fixed by calibrate().

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <optional>
#include <functional>
#include <string>
#include <vector>

#include "liftpa/error.hpp"
#include "liftpa/generators.hpp"
#include "liftpa/group.hpp"
#include "liftpa/scalar.hpp"
#include "liftpa/tangle.hpp"
#include "liftpa/two_box.hpp"

namespace liftpa {

struct Normalization {
  int unshaded = 0;    // c(R) for unshaded regions
  int shaded = 0;      // c(R) for shaded regions
  int basis = 0;       // scale exponent b of the spin basis
  friend auto operator<=>(const Normalization&, const Normalization&) = default;
  std::string to_string() const {
    return "(" + std::to_string(unshaded) + "," + std::to_string(shaded) + "," + std::to_string(basis) + ")";
  }
};

/// Number of unshaded boundary intervals of a box.
inline int spin_slots(int points, Shade side) {
  if (points == 0) return side == Shade::Unshaded ? 1 : 0;
  return points / 2;
}

class SpinVector {
 public:
  SpinVector(GroupPtr group, int points, Shade side)
      : group_(std::move(group)), points_(points), side_(side), slots_(spin_slots(points, side)) {
    std::size_t n = 1;
    for (int i = 0; i < slots_; ++i) n *= group_->order();
    values_.assign(n, Scalar::zero(group_->field()));
  }

  const GroupPtr& group() const noexcept { return group_; }
  int points() const noexcept { return points_; }
  Shade side() const noexcept { return side_; }
  int slots() const noexcept { return slots_; }
  std::size_t size() const noexcept { return values_.size(); }

  std::size_t index(const std::vector<Element>& labels) const {
    std::size_t idx = 0;
    for (Element l : labels) idx = idx * group_->order() + l;
    return idx;
  }
  std::vector<Element> labels(std::size_t idx) const {
    std::vector<Element> out(static_cast<std::size_t>(slots_));
    for (int s = slots_; s-- > 0;) {
      out[static_cast<std::size_t>(s)] = idx % group_->order();
      idx /= group_->order();
    }
    return out;
  }
  const Scalar& operator[](std::size_t i) const { return values_.at(i); }
  Scalar& operator[](std::size_t i) { return values_.at(i); }
  const std::vector<Scalar>& values() const noexcept { return values_; }

  friend bool operator==(const SpinVector& a, const SpinVector& b) {
    return a.points_ == b.points_ && a.side_ == b.side_ && *a.group_ == *b.group_ && a.values_ == b.values_;
  }
  SpinVector& operator*=(const Scalar& s) {
    for (auto& v : values_) v *= s;
    return *this;
  }
  SpinVector& operator+=(const SpinVector& o) {
    if (o.points_ != points_ || o.side_ != side_) throw DomainError("spin vectors of different shapes");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
  }

 private:
  GroupPtr group_;
  int points_;
  Shade side_;
  int slots_;
  std::vector<Scalar> values_;
};

namespace detail {

// Faces on the unshaded boundary intervals of disk d, in slot order.
inline std::vector<int> slot_faces(const ShadedTangle& s, int d) {
  const Tangle& t = s.base();
  std::vector<int> out;
  const int n = t.corners(d);
  for (int step = 0; step < n; ++step) {
    const int j = (t.star(d) + step) % n;
    if (s.interval_shade(d, j) == Shade::Unshaded) out.push_back(t.face_of_corner(d, j));
  }
  return out;
}

}  // namespace detail

/// Evaluate a shaded tangle on spin-vector inputs.
inline SpinVector state_sum_spin(const ShadedTangle& s, const std::vector<SpinVector>& inputs,
                                 const GroupPtr& group, const Normalization& norm) {
  const Tangle& t = s.base();
  if (static_cast<int>(inputs.size()) != t.input_count())
    throw DomainError("tangle has " + std::to_string(t.input_count()) + " inputs, got " +
                      std::to_string(inputs.size()));
  for (int i = 1; i <= t.input_count(); ++i) {
    const SpinVector& v = inputs[static_cast<std::size_t>(i - 1)];
    if (v.points() != t.points(i))
      throw DomainError("input " + std::to_string(i) + " has " + std::to_string(v.points()) + " points, disk has " +
                        std::to_string(t.points(i)));
    if (v.side() != s.sign(i))
      throw DomainError("input " + std::to_string(i) + " is on side " + sign_char(v.side()) + ", disk expects " +
                        sign_char(s.sign(i)));
    if (*v.group() != *group) throw DomainError("input " + std::to_string(i) + " is over a different group");
  }
  const FieldPtr field = group->field();
  const std::size_t order = group->order();

  // Region weight.
  long exponent = 0;
  const auto regions = regions_and_signs(s).regions;
  for (const auto& r : regions) {
    const int c = r.shade == Shade::Unshaded ? norm.unshaded : norm.shaded;
    exponent += static_cast<long>(c) * (r.euler - r.output_intervals);
  }
  const Scalar weight = Scalar::delta_power(field, exponent);

  std::vector<std::vector<int>> disk_faces;
  for (int d = 0; d <= t.input_count(); ++d) disk_faces.push_back(detail::slot_faces(s, d));
  std::vector<char> touches_output(static_cast<std::size_t>(t.face_count()), 0);
  for (int f : disk_faces[0]) touches_output[static_cast<std::size_t>(f)] = 1;
  int free_internal = 0;
  {
    std::vector<char> used(static_cast<std::size_t>(t.face_count()), 0);
    for (int d = 1; d <= t.input_count(); ++d)
      for (int f : disk_faces[static_cast<std::size_t>(d)]) used[static_cast<std::size_t>(f)] = 1;
    for (const auto& r : regions)
      if (r.shade == Shade::Unshaded && !touches_output[static_cast<std::size_t>(r.face)] &&
          !used[static_cast<std::size_t>(r.face)])
        ++free_internal;
  }
  Scalar free_factor = Scalar::one(field);
  for (int i = 0; i < free_internal; ++i) free_factor *= Scalar(static_cast<long>(order));

  // Nonzero entries of each input.
  std::vector<std::vector<std::pair<std::vector<Element>, Scalar>>> sparse;
  for (const auto& v : inputs) {
    std::vector<std::pair<std::vector<Element>, Scalar>> entries;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!v[i].is_zero()) entries.push_back({v.labels(i), v[i]});
    sparse.push_back(std::move(entries));
  }

  SpinVector out(group, t.points(0), s.sign(0));
  std::vector<long> label(static_cast<std::size_t>(t.face_count()), -1);
  const auto& out_faces = disk_faces[0];

  auto emit = [&](const Scalar& value) {
    // Enumerate labels of output faces not fixed by the inputs.
    std::vector<int> open;
    for (int f : out_faces)
      if (label[static_cast<std::size_t>(f)] < 0 &&
          std::find(open.begin(), open.end(), f) == open.end())
        open.push_back(f);
    std::size_t combos = 1;
    for (std::size_t i = 0; i < open.size(); ++i) combos *= order;
    for (std::size_t c = 0; c < combos; ++c) {
      std::size_t rest = c;
      for (int f : open) {
        label[static_cast<std::size_t>(f)] = static_cast<long>(rest % order);
        rest /= order;
      }
      std::vector<Element> slots;
      for (int f : out_faces) slots.push_back(static_cast<Element>(label[static_cast<std::size_t>(f)]));
      out[out.index(slots)] += value;
    }
    for (int f : open) label[static_cast<std::size_t>(f)] = -1;
  };

  std::function<void(std::size_t, const Scalar&)> join = [&](std::size_t i, const Scalar& acc) {
    if (i == sparse.size()) {
      emit(acc);
      return;
    }
    const auto& faces = disk_faces[i + 1];
    for (const auto& [labels, value] : sparse[i]) {
      std::vector<int> set_here;
      bool ok = true;
      for (std::size_t k = 0; k < faces.size(); ++k) {
        long& cur = label[static_cast<std::size_t>(faces[k])];
        if (cur < 0) {
          cur = static_cast<long>(labels[k]);
          set_here.push_back(faces[k]);
        } else if (cur != static_cast<long>(labels[k])) {
          ok = false;
          break;
        }
      }
      if (ok) join(i + 1, acc * value);
      for (int f : set_here) label[static_cast<std::size_t>(f)] = -1;
    }
  };
  join(0, weight * free_factor);
  return out;
}

/// The state sum together with the spin realization of the 2-box bases.
class SpinModel {
 public:
  SpinModel(GroupPtr group, Normalization norm) : group_(std::move(group)), norm_(norm) {
    const FieldPtr f = group_->field();
    const Scalar scale = Scalar::delta_power(f, norm_.basis);
    for (Element g = 0; g < group_->order(); ++g) {
      SpinVector p(group_, 4, Shade::Unshaded);
      for (Element l = 0; l < group_->order(); ++l) p[p.index({l, group_->op(l, g)})] = scale;
      p_basis_.push_back(std::move(p));
    }
    const ShadedTangle forward = reverse_shading(shade(gen::rotation()));
    for (Element g = 0; g < group_->order(); ++g)
      q_basis_.push_back(state_sum_spin(forward, {p_basis_[g]}, group_, norm_));
    for (const auto* basis : {&p_basis_, &q_basis_}) {
      std::vector<std::size_t> pivots;
      for (const auto& b : *basis) {
        std::size_t i = 0;
        while (i < b.size() && b[i].is_zero()) ++i;
        if (i == b.size()) throw Error("spin basis vector vanishes");
        pivots.push_back(i);
      }
      for (std::size_t g = 0; g < basis->size(); ++g)
        for (std::size_t h = 0; h < basis->size(); ++h)
          if (g != h && !(*basis)[h][pivots[g]].is_zero()) throw Error("spin basis supports overlap");
      (basis == &p_basis_ ? p_pivot_ : q_pivot_) = std::move(pivots);
    }
  }

  const GroupPtr& group() const noexcept { return group_; }
  const Normalization& normalization() const noexcept { return norm_; }

  SpinVector to_spin(const TwoBox& x) const {
    const auto& basis = x.side() == Shade::Unshaded ? p_basis_ : q_basis_;
    SpinVector out(group_, 4, x.side());
    for (Element g = 0; g < group_->order(); ++g) {
      if (x[g].is_zero()) continue;
      SpinVector term = basis[g];
      term *= x[g];
      out += term;
    }
    return out;
  }

  TwoBox to_box(const SpinVector& v) const {
    if (v.points() != 4) throw DomainError("spin vector is not a 2-box");
    const auto& basis = v.side() == Shade::Unshaded ? p_basis_ : q_basis_;
    const auto& pivots = v.side() == Shade::Unshaded ? p_pivot_ : q_pivot_;
    TwoBox out(group_, v.side());
    for (Element g = 0; g < group_->order(); ++g) out[g] = v[pivots[g]] / basis[g][pivots[g]];
    if (!(to_spin(out) == v)) throw DomainError("spin vector does not lie in the 2-box space");
    return out;
  }

  /// Constant function with the given value on a box with at most one strand.
  SpinVector constant(int points, Shade side, const Scalar& value) const {
    if (points > 2) throw DomainError("constant boxes have at most two points");
    SpinVector out(group_, points, side);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = value;
    return out;
  }
  /// Value of a 0- or 1-box, which must be constant.
  Scalar to_constant(const SpinVector& v) const {
    if (v.points() > 2) throw DomainError("not a 0- or 1-box");
    for (std::size_t i = 1; i < v.size(); ++i)
      if (v[i] != v[0]) throw DomainError("0- or 1-box is not constant");
    return v[0];
  }

  SpinVector eval(const ShadedTangle& s, const std::vector<SpinVector>& inputs) const {
    return state_sum_spin(s, inputs, group_, norm_);
  }
  TwoBox eval_box(const ShadedTangle& s, const std::vector<TwoBox>& inputs) const {
    return to_box(eval(s, spins(inputs)));
  }
  Scalar eval_scalar(const ShadedTangle& s, const std::vector<TwoBox>& inputs) const {
    return to_constant(eval(s, spins(inputs)));
  }

 private:
  std::vector<SpinVector> spins(const std::vector<TwoBox>& xs) const {
    std::vector<SpinVector> out;
    for (const auto& x : xs) out.push_back(to_spin(x));
    return out;
  }

  GroupPtr group_;
  Normalization norm_;
  std::vector<SpinVector> p_basis_, q_basis_;
  std::vector<std::size_t> p_pivot_, q_pivot_;
};

/// Checks the calibration constraints for one group; returns the first failure.
inline std::optional<std::string> calibration_failure(const GroupPtr& group, const Normalization& norm) {
  std::optional<SpinModel> model;
  try {
    model.emplace(group, norm);
  } catch (const Error& e) {
    return std::string("basis: ") + e.what();
  }
  const SpinModel& m = *model;
  const FieldPtr f = group->field();
  const Scalar d = loop_parameter(*group);
  const Shade plus = Shade::Unshaded, minus = Shade::Shaded;
  auto P = [&](Element g) { return TwoBox::basis(group, plus, g); };
  auto Q = [&](Element g) { return TwoBox::basis(group, minus, g); };
  const std::size_t n = group->order();
  try {
    const ShadedTangle loop_u = shade(gen::with_loop(gen::identity(4), SideRef::corner(0, 3)));
    const ShadedTangle loop_s = shade(gen::with_loop(gen::identity(4), SideRef::corner(0, 0)));
    const ShadedTangle mul = shade(gen::multiplication()), coprod = shade(gen::coproduct());
    const ShadedTangle tr = shade(gen::trace());
    const ShadedTangle rot = shade(gen::rotation()), rot_inv = shade(gen::rotation_inverse());
    const ShadedTangle incl = shade(gen::inclusion()), cap = shade(gen::capping());
    const SpinVector one1 = m.eval(shade(gen::unit1()), {});
    for (Element g = 0; g < n; ++g) {
      for (const auto* loop : {&loop_u, &loop_s}) {
        if (m.eval_box(*loop, {P(g)}) != d * P(g)) return "loop scaling on side +";
        if (m.eval_box(reverse_shading(*loop), {Q(g)}) != d * Q(g)) return "loop scaling on side -";
      }
      for (Element h = 0; h < n; ++h) {
        if (m.eval_box(mul, {P(g), P(h)}) != box_mul(P(g), P(h))) return "multiplication on side +";
        if (m.eval_box(reverse_shading(mul), {Q(g), Q(h)}) != box_mul(Q(g), Q(h))) return "multiplication on side -";
        if (m.eval_box(coprod, {P(g), P(h)}) != box_coprod(P(g), P(h))) return "coproduct on side +";
        if (m.eval_box(reverse_shading(coprod), {Q(g), Q(h)}) != box_coprod(Q(g), Q(h))) return "coproduct on side -";
      }
      if (m.eval_scalar(tr, {P(g)}) != box_trace(P(g))) return "trace on side +";
      if (m.eval_scalar(reverse_shading(tr), {Q(g)}) != box_trace(Q(g))) return "trace on side -";
      if (m.eval_box(rot, {Q(g)}) != fs(Q(g))) return "one-click rotation";
      if (m.eval_box(rot_inv, {Q(g)}) != fs_inverse(Q(g))) return "inverse one-click rotation";
      if (m.eval_box(reverse_shading(rot_inv), {P(g)}) != fs_inverse(P(g))) return "inverse rotation on side +";
      const SpinVector capped = m.eval(cap, {m.to_spin(P(g))});
      SpinVector expect = one1;
      expect *= Scalar::delta_power(f, -1);
      if (!(capped == expect)) return "capping";
    }
    if (m.to_box(m.eval(incl, {one1})) != TwoBox::unit(group, plus)) return "inclusion";
    if (m.eval_box(shade(gen::unit2()), {}) != TwoBox::unit(group, plus)) return "unit on side +";
    if (m.eval_box(reverse_shading(shade(gen::unit2())), {}) != TwoBox::unit(group, minus)) return "unit on side -";
    if (m.to_constant(m.eval(shade(gen::empty()), {})) != Scalar::one(f)) return "empty tangle";
  } catch (const DomainError& e) {
    return std::string("evaluation: ") + e.what();
  }
  return std::nullopt;
}

struct Calibration {
  std::vector<Normalization> passing;  // every assignment satisfying all constraints
  Normalization chosen;
  std::vector<std::vector<int>> groups;
};

/// Solves the normalization by exhaustive search over exponents in [-range, range].
inline Calibration calibrate(const std::vector<std::vector<int>>& groups = {{}, {2}, {3}, {4}, {2, 2}},
                             int range = 2) {
  Calibration cal;
  cal.groups = groups;
  std::vector<GroupPtr> gs;
  for (const auto& g : groups) gs.push_back(make_group(g));
  for (int cu = -range; cu <= range; ++cu)
    for (int cs = -range; cs <= range; ++cs)
      for (int b = -range; b <= range; ++b) {
        const Normalization n{cu, cs, b};
        bool ok = true;
        for (const auto& g : gs)
          if (calibration_failure(g, n)) {
            ok = false;
            break;
          }
        if (ok) cal.passing.push_back(n);
      }
  if (cal.passing.empty()) throw Error("state-sum calibration failed: no normalization satisfies the constraints");
  cal.chosen = *std::min_element(cal.passing.begin(), cal.passing.end(), [](const auto& a, const auto& b) {
    const int na = std::abs(a.unshaded) + std::abs(a.shaded) + std::abs(a.basis);
    const int nb = std::abs(b.unshaded) + std::abs(b.shaded) + std::abs(b.basis);
    return na != nb ? na < nb : a < b;
  });
  return cal;
}

/// Calibrated normalization, computed once per process.
inline const Calibration& default_calibration() {
  static const Calibration cal = calibrate();
  return cal;
}

/// Spin model for a group with the calibrated normalization.
inline SpinModel spin_model(const GroupPtr& group) { return SpinModel(group, default_calibration().chosen); }

}  // namespace liftpa
