#pragma once

// The 2-box spaces of the group planar algebra P^A, A abelian.
// P_{2,+} has the minimal projections P_g; P_{2,-} is written in the basis
// Q_g := FS(P_g).  d = sqrt|A|.

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "liftpa/error.hpp"
#include "liftpa/group.hpp"
#include "liftpa/scalar.hpp"
#include "liftpa/tangle.hpp"

namespace liftpa {

using GroupPtr = std::shared_ptr<const AbelianGroup>;

inline GroupPtr make_group(const std::vector<int>& factors) { return std::make_shared<const AbelianGroup>(factors); }

/// Loop parameter d = sqrt|A| in the group's field.
inline Scalar loop_parameter(const AbelianGroup& a) { return Scalar::delta(a.field()); }

class TwoBox {
 public:
  TwoBox(GroupPtr group, Shade side) : group_(std::move(group)), side_(side) {
    coeffs_.assign(group_->order(), Scalar::zero(group_->field()));
  }
  TwoBox(GroupPtr group, Shade side, std::vector<Scalar> coeffs)
      : group_(std::move(group)), side_(side), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != group_->order()) throw DomainError("coefficient vector has wrong length");
  }

  /// P_g (side +) or Q_g (side -).
  static TwoBox basis(GroupPtr group, Shade side, Element g) {
    TwoBox b(std::move(group), side);
    b.coeffs_.at(g) = Scalar::one(b.group_->field());
    return b;
  }
  /// The unit: sum of all P_g on side +, d Q_e on side -.
  static TwoBox unit(GroupPtr group, Shade side) {
    TwoBox b(group, side);
    if (side == Shade::Unshaded)
      for (auto& c : b.coeffs_) c = Scalar::one(group->field());
    else
      b.coeffs_[group->identity()] = loop_parameter(*group);
    return b;
  }

  const GroupPtr& group() const noexcept { return group_; }
  Shade side() const noexcept { return side_; }
  const Scalar& operator[](Element g) const { return coeffs_.at(g); }
  Scalar& operator[](Element g) { return coeffs_.at(g); }
  const std::vector<Scalar>& coeffs() const noexcept { return coeffs_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (!c.is_zero()) return false;
    return true;
  }

  TwoBox& operator+=(const TwoBox& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  TwoBox& operator-=(const TwoBox& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  TwoBox& operator*=(const Scalar& s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  friend TwoBox operator+(TwoBox a, const TwoBox& b) { return a += b; }
  friend TwoBox operator-(TwoBox a, const TwoBox& b) { return a -= b; }
  friend TwoBox operator*(const Scalar& s, TwoBox a) { return a *= s; }
  friend TwoBox operator*(TwoBox a, const Scalar& s) { return a *= s; }

  friend bool operator==(const TwoBox& a, const TwoBox& b) {
    return a.side_ == b.side_ && *a.group_ == *b.group_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const TwoBox& a, const TwoBox& b) { return !(a == b); }

  void check_compatible(const TwoBox& o) const {
    if (side_ != o.side_) throw DomainError("2-boxes on different sides");
    if (*group_ != *o.group_) throw DomainError("2-boxes over different groups");
  }

  std::string to_string() const {
    std::string s;
    const char* name = side_ == Shade::Unshaded ? "P" : "Q";
    for (Element g = 0; g < coeffs_.size(); ++g) {
      if (coeffs_[g].is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += "(" + coeffs_[g].to_string() + ")" + name + group_->element_string(g);
    }
    return s.empty() ? "0" : s;
  }

 private:
  GroupPtr group_;
  Shade side_;
  std::vector<Scalar> coeffs_;
};

/// Stacking product.  P_g P_h = delta_{g,h} P_g;  Q_g Q_h = (1/d) Q_{gh}.
inline TwoBox box_mul(const TwoBox& x, const TwoBox& y) {
  x.check_compatible(y);
  const AbelianGroup& a = *x.group();
  TwoBox out(x.group(), x.side());
  if (x.side() == Shade::Unshaded) {
    for (Element g = 0; g < a.order(); ++g) out[g] = x[g] * y[g];
  } else {
    const Scalar inv_d = Scalar::delta_power(a.field(), -1);
    for (Element g = 0; g < a.order(); ++g) {
      if (x[g].is_zero()) continue;
      for (Element h = 0; h < a.order(); ++h)
        if (!y[h].is_zero()) out[a.op(g, h)] += x[g] * y[h] * inv_d;
    }
  }
  return out;
}

/// Coproduct.  P_g * P_h = (1/d) P_{gh};  Q_g * Q_h = delta_{g,h} Q_g.
inline TwoBox box_coprod(const TwoBox& x, const TwoBox& y) {
  x.check_compatible(y);
  const AbelianGroup& a = *x.group();
  TwoBox out(x.group(), x.side());
  if (x.side() == Shade::Shaded) {
    for (Element g = 0; g < a.order(); ++g) out[g] = x[g] * y[g];
  } else {
    const Scalar inv_d = Scalar::delta_power(a.field(), -1);
    for (Element g = 0; g < a.order(); ++g) {
      if (x[g].is_zero()) continue;
      for (Element h = 0; h < a.order(); ++h)
        if (!y[h].is_zero()) out[a.op(g, h)] += x[g] * y[h] * inv_d;
    }
  }
  return out;
}

/// Tr(P_g) = 1;  Tr(Q_g) = d delta_{g,e}.
inline Scalar box_trace(const TwoBox& x) {
  const AbelianGroup& a = *x.group();
  if (x.side() == Shade::Shaded) return x[a.identity()] * loop_parameter(a);
  Scalar s = Scalar::zero(a.field());
  for (const auto& c : x.coeffs()) s += c;
  return s;
}

/// Conjugate-linear adjoint: P_g^* = P_g, Q_g^* = Q_{g^{-1}}.
inline TwoBox box_adjoint(const TwoBox& x) {
  const AbelianGroup& a = *x.group();
  TwoBox out(x.group(), x.side());
  for (Element g = 0; g < a.order(); ++g) {
    const Element target = x.side() == Shade::Unshaded ? g : a.inverse(g);
    out[target] = x[g].conj();
  }
  return out;
}

/// Contragredient (rotation by pi): P_g -> P_{g^{-1}}, Q_g -> Q_{g^{-1}}.
inline TwoBox box_contragredient(const TwoBox& x) {
  const AbelianGroup& a = *x.group();
  TwoBox out(x.group(), x.side());
  for (Element g = 0; g < a.order(); ++g) out[a.inverse(g)] = x[g];
  return out;
}

struct StarBar {
  TwoBox adjoint;
  TwoBox contragredient;
};

inline StarBar box_star_bar(const TwoBox& x) { return {box_adjoint(x), box_contragredient(x)}; }

enum class FourierDirection { Forward, Inverse };

/// One-click rotation in the forward sense on either side:
/// P_g -> Q_g on side +, Q_g -> P_{g^{-1}} on side -.  fs^2 is the
/// contragredient and fs^4 the identity.
inline TwoBox fs(const TwoBox& x) {
  const AbelianGroup& a = *x.group();
  if (x.side() == Shade::Unshaded) return TwoBox(x.group(), Shade::Shaded, x.coeffs());
  TwoBox out(x.group(), Shade::Unshaded);
  for (Element g = 0; g < a.order(); ++g) out[a.inverse(g)] = x[g];
  return out;
}

/// Inverse one-click rotation: Q_g -> P_g on side -, P_g -> Q_{g^{-1}} on side +.
inline TwoBox fs_inverse(const TwoBox& x) {
  const AbelianGroup& a = *x.group();
  if (x.side() == Shade::Shaded) return TwoBox(x.group(), Shade::Unshaded, x.coeffs());
  TwoBox out(x.group(), Shade::Shaded);
  for (Element g = 0; g < a.order(); ++g) out[a.inverse(g)] = x[g];
  return out;
}

/// String Fourier transform.  Forward takes side + to side - (P_g -> Q_g);
/// Inverse takes side - to side + (Q_g -> P_g).
inline TwoBox fourier(const TwoBox& x, FourierDirection dir) {
  if (dir == FourierDirection::Forward) {
    if (x.side() != Shade::Unshaded) throw DomainError("forward Fourier transform expects a side + 2-box");
    return fs(x);
  }
  if (x.side() != Shade::Shaded) throw DomainError("inverse Fourier transform expects a side - 2-box");
  return fs_inverse(x);
}

/// Linear maps between 2-box spaces as |A| x |A| matrices: column g is the
/// image of the g-th basis element.
struct BoxMatrix {
  GroupPtr group;
  Shade from = Shade::Unshaded;
  Shade to = Shade::Unshaded;
  std::vector<std::vector<Scalar>> cols;

  TwoBox apply(const TwoBox& x) const {
    if (x.side() != from) throw DomainError("linear map applied to the wrong side");
    TwoBox out(group, to);
    for (std::size_t g = 0; g < cols.size(); ++g) {
      if (x[g].is_zero()) continue;
      for (std::size_t h = 0; h < cols.size(); ++h)
        if (!cols[g][h].is_zero()) out[h] += x[g] * cols[g][h];
    }
    return out;
  }

  static BoxMatrix of(GroupPtr group, Shade from, Shade to, const std::function<TwoBox(const TwoBox&)>& f) {
    BoxMatrix m{group, from, to, {}};
    for (Element g = 0; g < group->order(); ++g) m.cols.push_back(f(TwoBox::basis(group, from, g)).coeffs());
    return m;
  }

  friend BoxMatrix operator*(const BoxMatrix& a, const BoxMatrix& b) {
    if (b.to != a.from) throw DomainError("linear maps are not composable");
    return of(a.group, b.from, a.to, [&](const TwoBox& x) { return a.apply(b.apply(x)); });
  }
  friend bool operator==(const BoxMatrix& a, const BoxMatrix& b) {
    return a.from == b.from && a.to == b.to && a.cols == b.cols;
  }
};

}  // namespace liftpa
