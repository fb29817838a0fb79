#pragma once

// Tambara-Yamagami fusion data TY(A, chi, +-).

#include <optional>
#include <string>
#include <vector>

#include "liftpa/bicharacter.hpp"
#include "liftpa/error.hpp"
#include "liftpa/group.hpp"
#include "liftpa/scalar.hpp"
#include "liftpa/two_box.hpp"

namespace liftpa {

/// Fusion ring on the objects A + {m}; object index |A| is m.
class FusionRing {
 public:
  explicit FusionRing(GroupPtr group) : group_(std::move(group)) {
    const std::size_t n = group_->order();
    size_ = n + 1;
    table_.assign(size_ * size_ * size_, 0);
    const std::size_t m = n;
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b) at(a, b, group_->op(a, b)) = 1;
    for (Element a = 0; a < n; ++a) {
      at(a, m, m) = 1;
      at(m, a, m) = 1;
      at(m, m, a) = 1;
    }
    const FieldPtr f = group_->field();
    for (Element a = 0; a < n; ++a) dims_.push_back(Scalar::one(f));
    dims_.push_back(loop_parameter(*group_));
    if (!associative()) throw Error("internal: fusion table is not associative");
  }

  const GroupPtr& group() const noexcept { return group_; }
  std::size_t size() const noexcept { return size_; }
  std::size_t m() const noexcept { return size_ - 1; }
  int multiplicity(std::size_t x, std::size_t y, std::size_t z) const { return table_[(x * size_ + y) * size_ + z]; }
  const std::vector<Scalar>& dims() const noexcept { return dims_; }

  /// Decomposition of x (x) y as (object, multiplicity) pairs.
  std::vector<std::pair<std::size_t, int>> fuse(std::size_t x, std::size_t y) const {
    std::vector<std::pair<std::size_t, int>> out;
    for (std::size_t z = 0; z < size_; ++z)
      if (multiplicity(x, y, z)) out.push_back({z, multiplicity(x, y, z)});
    return out;
  }

  bool associative() const {
    for (std::size_t x = 0; x < size_; ++x)
      for (std::size_t y = 0; y < size_; ++y)
        for (std::size_t z = 0; z < size_; ++z)
          for (std::size_t v = 0; v < size_; ++v) {
            long l = 0, r = 0;
            for (std::size_t w = 0; w < size_; ++w) {
              l += static_cast<long>(multiplicity(x, y, w)) * multiplicity(w, z, v);
              r += static_cast<long>(multiplicity(y, z, w)) * multiplicity(x, w, v);
            }
            if (l != r) return false;
          }
    return true;
  }

  bool has_unit() const {
    const std::size_t e = group_->identity();
    for (std::size_t x = 0; x < size_; ++x)
      for (std::size_t y = 0; y < size_; ++y)
        if (multiplicity(e, x, y) != (x == y ? 1 : 0) || multiplicity(x, e, y) != (x == y ? 1 : 0)) return false;
    return true;
  }

  /// Group objects even, m odd, and fusion adds degrees mod 2.
  bool graded() const {
    auto degree = [&](std::size_t x) { return x == m() ? 1 : 0; };
    for (std::size_t x = 0; x < size_; ++x)
      for (std::size_t y = 0; y < size_; ++y)
        for (std::size_t z = 0; z < size_; ++z)
          if (multiplicity(x, y, z) && (degree(x) + degree(y)) % 2 != degree(z)) return false;
    return true;
  }

  /// The even part is the group ring of A and the odd part is {m}.
  bool even_part_is_group_ring() const {
    for (Element a = 0; a < group_->order(); ++a)
      for (Element b = 0; b < group_->order(); ++b) {
        const auto f = fuse(a, b);
        if (f.size() != 1 || f[0].first != group_->op(a, b) || f[0].second != 1) return false;
      }
    return true;
  }

  std::string object_name(std::size_t x) const { return x == m() ? "m" : group_->element_string(x); }

 private:
  int& at(std::size_t x, std::size_t y, std::size_t z) { return table_[(x * size_ + y) * size_ + z]; }

  GroupPtr group_;
  std::size_t size_ = 0;
  std::vector<int> table_;
  std::vector<Scalar> dims_;
};

inline FusionRing ty_fusion_ring(const GroupPtr& group) { return FusionRing(group); }

struct TYDatum {
  Bicharacter chi;
  int sign = 1;  // +1 or -1

  TYDatum(Bicharacter c, int s) : chi(std::move(c)), sign(s) {
    if (s != 1 && s != -1) throw DomainError("sign must be + or -");
    const auto p = bichar_props(chi);
    if (!p.symmetric || !p.nondegenerate)
      throw DomainError("Tambara-Yamagami data needs a symmetric non-degenerate bicharacter");
  }
  const GroupPtr& group() const { return chi.group(); }
};

struct Indicators {
  std::vector<int> nu2;  // per object, m last
  bool factor_planar_algebra_admissible = false;
};

/// nu_2(a) = [a^2 = e], nu_2(m) = sign.
inline Indicators fs_indicators(const TYDatum& d) {
  const AbelianGroup& a = *d.group();
  Indicators out;
  for (Element g = 0; g < a.order(); ++g) out.nu2.push_back(a.op(g, g) == a.identity() ? 1 : 0);
  out.nu2.push_back(d.sign);
  out.factor_planar_algebra_admissible = d.sign == 1;
  return out;
}

/// An isomorphism A -> A' carrying chi to chi', when the signs agree.
inline std::optional<ElementMap> ty_equivalent(const TYDatum& d1, const TYDatum& d2) {
  if (d1.sign != d2.sign) return std::nullopt;
  const AbelianGroup& a = *d1.group();
  const AbelianGroup& b = *d2.group();
  if (a.order() != b.order()) return std::nullopt;
  if (d1.chi.conductor() != d2.chi.conductor()) return std::nullopt;
  std::optional<ElementMap> witness;
  for_each_isomorphism(a, b, [&](const ElementMap& alpha) {
    for (Element g = 0; g < a.order(); ++g)
      for (Element h = 0; h < a.order(); ++h)
        if (d2.chi.exponent(alpha[g], alpha[h]) != d1.chi.exponent(g, h)) return true;
    witness = alpha;
    return false;
  });
  return witness;
}

/// One datum per (symmetric non-degenerate orbit, sign).
inline std::vector<TYDatum> ty_classify(const GroupPtr& group, const BicharLimits& limits = {}) {
  const auto cl = bichar_enumerate_classify(group, BicharFilter::SymmetricNondegenerate, limits);
  std::vector<TYDatum> out;
  for (const auto& chi : cl.representatives)
    for (int sign : {1, -1}) out.emplace_back(chi, sign);
  return out;
}

}  // namespace liftpa
