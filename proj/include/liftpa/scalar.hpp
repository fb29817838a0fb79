#pragma once

// Exact arithmetic in Q(zeta_N)[delta] / (delta^2 - |A|).
//
// A Scalar is a pair (a, b) of elements of Q(zeta_N) written in the power
// basis 1, x, ..., x^(phi(N)-1) modulo the N-th cyclotomic polynomial, and
// stands for a + b*delta with delta = +sqrt(order).  When sqrt(order) already
// lies in Q(zeta_N) the delta part is folded into a, so zero testing and
// equality are always decided by comparing coefficient vectors.

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "liftpa/error.hpp"

namespace liftpa {

using Rational = mpq_class;
using RationalPoly = std::vector<Rational>;

namespace detail {

inline std::vector<long> poly_mul_int(const std::vector<long>& a, const std::vector<long>& b) {
  std::vector<long> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// Exact division of integer polynomials by a monic divisor.
inline std::vector<long> poly_div_monic(std::vector<long> num, const std::vector<long>& den) {
  const std::size_t dn = den.size() - 1;
  std::vector<long> q(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    const long c = num[i];
    q[i - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return q;
}

inline std::vector<long> cyclotomic_polynomial(int n) {
  // x^n - 1 divided by every Phi_d with d | n, d < n.
  std::vector<long> p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(n)] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) p = poly_div_monic(p, cyclotomic_polynomial(d));
  return p;
}

inline bool is_zero(const RationalPoly& p) {
  for (const auto& c : p)
    if (c != 0) return false;
  return true;
}

inline void trim(RationalPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Remainder of a modulo b over Q (b nonzero, trimmed).
inline RationalPoly poly_rem(RationalPoly a, const RationalPoly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    const Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= f * b[j];
    trim(a);
  }
  return a;
}

inline RationalPoly poly_quot(RationalPoly a, const RationalPoly& b, RationalPoly& rem) {
  trim(a);
  RationalPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
  while (a.size() >= b.size() && !a.empty()) {
    const Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    q[shift] = f;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= f * b[j];
    trim(a);
  }
  rem = std::move(a);
  return q;
}

inline RationalPoly poly_sub_mul(const RationalPoly& a, const RationalPoly& q, const RationalPoly& b) {
  const std::size_t prod = q.empty() || b.empty() ? 0 : q.size() + b.size() - 1;
  RationalPoly out(std::max(a.size(), prod));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] -= q[i] * b[j];
  trim(out);
  return out;
}

inline long integer_sqrt(long n) {
  long r = static_cast<long>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

inline int legendre(int a, int p) {
  int r = 1;
  int base = ((a % p) + p) % p;
  if (base == 0) return 0;
  for (int e = (p - 1) / 2; e > 0; e >>= 1) {
    if (e & 1) r = static_cast<int>((static_cast<long>(r) * base) % p);
    base = static_cast<int>((static_cast<long>(base) * base) % p);
  }
  return r == 1 ? 1 : -1;
}

}  // namespace detail

/// The coefficient field Q(zeta_N) together with the symbol delta, delta^2 = order.
/// Instances are interned: Field::get returns the same object for the same key.
class Field {
 public:
  static std::shared_ptr<const Field> get(int conductor, long order) {
    if (conductor < 1) throw DomainError("conductor must be positive");
    if (order < 1) throw DomainError("group order must be positive");
    static std::mutex mutex;
    static std::map<std::pair<int, long>, std::shared_ptr<const Field>> registry;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = registry[{conductor, order}];
    if (!slot) slot = std::shared_ptr<const Field>(new Field(conductor, order));
    return slot;
  }

  int conductor() const noexcept { return conductor_; }
  long order() const noexcept { return order_; }
  std::size_t degree() const noexcept { return degree_; }

  /// True when sqrt(order) lies in Q(zeta_N); delta is then stored inside the a-part.
  bool delta_folded() const noexcept { return delta_.has_value(); }
  const RationalPoly& delta_embedding() const { return *delta_; }

  /// zeta_N^k in the power basis, any integer k.
  const RationalPoly& zeta_power(long k) const {
    const long n = conductor_;
    return powers_[static_cast<std::size_t>(((k % n) + n) % n)];
  }

  /// Product of two reduced polynomials, reduced again.
  RationalPoly multiply(const RationalPoly& a, const RationalPoly& b) const {
    RationalPoly full(2 * degree_ - 1);
    for (std::size_t i = 0; i < degree_; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < degree_; ++j)
        if (b[j] != 0) full[i + j] += a[i] * b[j];
    }
    return reduce(full);
  }

  /// Reduce a polynomial of any length modulo Phi_N.
  RationalPoly reduce(const RationalPoly& p) const {
    RationalPoly out(degree_);
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] == 0) continue;
      if (i < degree_) {
        out[i] += p[i];
      } else {
        const RationalPoly& r = high_power(i);
        for (std::size_t j = 0; j < degree_; ++j)
          if (r[j] != 0) out[j] += p[i] * r[j];
      }
    }
    return out;
  }

  RationalPoly conjugate(const RationalPoly& a) const {
    RationalPoly out(degree_);
    for (std::size_t i = 0; i < degree_; ++i) {
      if (a[i] == 0) continue;
      const RationalPoly& r = zeta_power(-static_cast<long>(i));
      for (std::size_t j = 0; j < degree_; ++j)
        if (r[j] != 0) out[j] += a[i] * r[j];
    }
    return out;
  }

  /// Multiplicative inverse in Q(zeta_N) via the extended Euclidean algorithm.
  RationalPoly inverse(const RationalPoly& a) const {
    RationalPoly r0(cyclo_.begin(), cyclo_.end());
    RationalPoly r1 = a;
    detail::trim(r1);
    if (r1.empty()) throw DomainError("division by zero");
    RationalPoly s0;            // coefficient of a for r0
    RationalPoly s1{Rational(1)};  // coefficient of a for r1
    while (r1.size() > 1) {
      RationalPoly rem;
      RationalPoly q = detail::poly_quot(r0, r1, rem);
      RationalPoly s2 = detail::poly_sub_mul(s0, q, s1);
      r0 = std::move(r1);
      r1 = std::move(rem);
      s0 = std::move(s1);
      s1 = std::move(s2);
      if (r1.empty()) throw DomainError("element is not invertible");
    }
    RationalPoly out = reduce(s1);
    for (auto& c : out) c /= r1[0];
    return out;
  }

  std::complex<double> evaluate(const RationalPoly& a) const {
    std::complex<double> s{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != 0) s += a[i].get_d() * roots_[i];
    return s;
  }

 private:
  Field(int conductor, long order) : conductor_(conductor), order_(order) {
    cyclo_ = detail::cyclotomic_polynomial(conductor);
    degree_ = cyclo_.size() - 1;
    // x^k reduced for k < max(N, 2*degree).
    const std::size_t limit = std::max<std::size_t>(static_cast<std::size_t>(conductor), 2 * degree_);
    std::vector<RationalPoly> pw;
    pw.reserve(limit);
    RationalPoly cur(degree_);
    cur[0] = 1;
    for (std::size_t k = 0; k < limit; ++k) {
      pw.push_back(cur);
      // multiply by x
      RationalPoly next(degree_);
      Rational carry = cur[degree_ - 1];
      for (std::size_t j = degree_ - 1; j > 0; --j) next[j] = cur[j - 1];
      next[0] = 0;
      for (std::size_t j = 0; j < degree_; ++j) next[j] -= carry * cyclo_[j];
      cur = std::move(next);
    }
    all_powers_ = std::move(pw);
    powers_.assign(all_powers_.begin(), all_powers_.begin() + conductor);
    roots_.resize(degree_);
    for (std::size_t j = 0; j < degree_; ++j) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / conductor;
      roots_[j] = {std::cos(angle), std::sin(angle)};
    }
    delta_ = find_delta();
  }

  const RationalPoly& high_power(std::size_t k) const { return all_powers_.at(k); }

  // sqrt(order) in Q(zeta_N) when it exists, built from quadratic Gauss sums.
  std::optional<RationalPoly> find_delta() const {
    long square = 1;
    long free = order_;
    for (long p = 2; p * p <= free; ++p)
      while (free % (p * p) == 0) {
        free /= p * p;
        square *= p;
      }
    RationalPoly out(degree_);
    if (free == 1) {
      out[0] = square;
      return out;
    }
    if (free % 2 == 0 && conductor_ % 8 != 0) return std::nullopt;
    if (conductor_ % 4 != 0) return std::nullopt;
    for (long p = 3; p <= free; p += 2)
      if (free % p == 0 && conductor_ % p != 0) return std::nullopt;

    RationalPoly g(degree_);
    g[0] = 1;
    long square_of_g = 1;
    long rest = free;
    if (rest % 2 == 0) {
      // sqrt(2) = zeta_8 + zeta_8^{-1}
      const long step = conductor_ / 8;
      RationalPoly s2(degree_);
      const RationalPoly& a = zeta_power(step);
      const RationalPoly& b = zeta_power(-step);
      for (std::size_t j = 0; j < degree_; ++j) s2[j] = a[j] + b[j];
      g = multiply(g, s2);
      square_of_g *= 2;
      rest /= 2;
    }
    for (long p = 3; p <= rest; p += 2) {
      if (rest % p != 0) continue;
      const long step = conductor_ / p;
      RationalPoly gauss(degree_);
      for (long a = 1; a < p; ++a) {
        const int sign = detail::legendre(static_cast<int>(a), static_cast<int>(p));
        const RationalPoly& z = zeta_power(a * step);
        for (std::size_t j = 0; j < degree_; ++j) gauss[j] += sign * z[j];
      }
      g = multiply(g, gauss);
      square_of_g *= (p % 4 == 1) ? p : -p;
    }
    if (square_of_g < 0) g = multiply(g, zeta_power(conductor_ / 4));
    RationalPoly sq = multiply(g, g);
    RationalPoly expect(degree_);
    expect[0] = free;
    if (sq != expect) throw Error("internal: Gauss sum square mismatch");
    if (evaluate(g).real() < 0)
      for (auto& c : g) c = -c;
    for (auto& c : g) c *= square;
    return g;
  }

  int conductor_;
  long order_;
  std::size_t degree_ = 0;
  std::vector<long> cyclo_;
  std::vector<RationalPoly> all_powers_;
  std::vector<RationalPoly> powers_;
  std::vector<std::complex<double>> roots_;
  std::optional<RationalPoly> delta_;
};

using FieldPtr = std::shared_ptr<const Field>;

/// Conductor used for a group of the given exponent: lcm(exponent, 4).
inline int default_conductor(long exponent) {
  return static_cast<int>(std::lcm(exponent, 4L));
}

class Scalar {
 public:
  Scalar() : a_{Rational(0)} {}
  Scalar(long v) : a_{Rational(v)} {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational v) : a_{std::move(v)} { a_[0].canonicalize(); }  // NOLINT(google-explicit-constructor)

  static Scalar zero(const FieldPtr& f) { return Scalar(f, RationalPoly(f->degree()), {}); }
  static Scalar one(const FieldPtr& f) { return from_rational(f, 1); }
  static Scalar from_rational(const FieldPtr& f, const Rational& r) {
    RationalPoly a(f->degree());
    a[0] = r;
    a[0].canonicalize();
    return Scalar(f, std::move(a), {});
  }
  static Scalar zeta(const FieldPtr& f, long k) { return Scalar(f, f->zeta_power(k), {}); }
  /// delta = +sqrt(order).
  static Scalar delta(const FieldPtr& f) {
    RationalPoly b(f->degree());
    b[0] = 1;
    return Scalar(f, RationalPoly(f->degree()), std::move(b));
  }
  /// delta^e for any integer e.
  static Scalar delta_power(const FieldPtr& f, long e) {
    const long half = e >= 0 ? e / 2 : -((-e + 1) / 2);
    const long odd = e - 2 * half;
    const mpz_class q(f->order());
    mpz_class p;
    mpz_pow_ui(p.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(half >= 0 ? half : -half));
    const Rational r = half >= 0 ? Rational(p) : Rational(1) / Rational(p);
    Scalar s = from_rational(f, r);
    if (odd) s *= delta(f);
    return s;
  }
  /// Build from explicit (k, eps) -> coefficient terms, reducing to normal form.
  static Scalar from_terms(const FieldPtr& f, const std::vector<std::tuple<long, int, Rational>>& terms) {
    Scalar s = zero(f);
    for (const auto& [k, eps, c] : terms) {
      Scalar t = zeta(f, k) * Scalar(c);
      if (eps == 1) t *= delta(f);
      else if (eps != 0) throw DomainError("delta exponent must be 0 or 1");
      s += t;
    }
    return s;
  }

  const FieldPtr& field() const noexcept { return field_; }
  bool is_rational_only() const noexcept { return !field_; }
  /// Coefficients of the delta^0 part (power basis), length degree() or 1.
  const RationalPoly& zeta_part() const noexcept { return a_; }
  /// Coefficients of the delta^1 part; empty when zero.
  const RationalPoly& delta_part() const noexcept { return b_; }

  bool is_zero() const { return detail::is_zero(a_) && b_.empty(); }

  /// Value as a rational number if it is one.
  std::optional<Rational> as_rational() const {
    if (!b_.empty()) return std::nullopt;
    for (std::size_t i = 1; i < a_.size(); ++i)
      if (a_[i] != 0) return std::nullopt;
    return a_[0];
  }

  Scalar conj() const {
    if (!field_) return *this;
    return Scalar(field_, field_->conjugate(a_), b_.empty() ? RationalPoly{} : field_->conjugate(b_));
  }

  std::complex<double> to_complex() const {
    if (!field_) return {a_[0].get_d(), 0.0};
    std::complex<double> v = field_->evaluate(a_);
    if (!b_.empty()) v += std::sqrt(static_cast<double>(field_->order())) * field_->evaluate(b_);
    return v;
  }

  Scalar& operator+=(const Scalar& o) {
    unify(o, [this](const Scalar& rhs) {
      for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += rhs.a_[i];
      add_delta(rhs.b_, 1);
    });
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    unify(o, [this](const Scalar& rhs) {
      for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= rhs.a_[i];
      add_delta(rhs.b_, -1);
    });
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    if (!field_ && !o.field_) {
      a_[0] *= o.a_[0];
      return *this;
    }
    if (!o.field_) {
      scale(o.a_[0]);
      return *this;
    }
    if (!field_) {
      const Rational r = a_[0];
      *this = o;
      scale(r);
      return *this;
    }
    unify(o, [this](const Scalar& rhs) {
      const Field& f = *field_;
      RationalPoly a = f.multiply(a_, rhs.a_);
      RationalPoly b;
      if (!b_.empty() || !rhs.b_.empty()) {
        b = RationalPoly(f.degree());
        if (!b_.empty()) {
          const RationalPoly t = f.multiply(b_, rhs.a_);
          for (std::size_t i = 0; i < b.size(); ++i) b[i] += t[i];
        }
        if (!rhs.b_.empty()) {
          const RationalPoly t = f.multiply(a_, rhs.b_);
          for (std::size_t i = 0; i < b.size(); ++i) b[i] += t[i];
        }
        if (!b_.empty() && !rhs.b_.empty()) {
          const RationalPoly t = f.multiply(b_, rhs.b_);
          for (std::size_t i = 0; i < a.size(); ++i) a[i] += t[i] * f.order();
        }
      }
      a_ = std::move(a);
      b_ = std::move(b);
      normalize();
    });
    return *this;
  }
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

  Scalar inverse() const {
    if (is_zero()) throw DomainError("division by zero");
    if (!field_) return Scalar(Rational(1) / a_[0]);
    const Field& f = *field_;
    if (b_.empty()) return Scalar(field_, f.inverse(a_), {});
    // (a + b delta)^{-1} = (a - b delta) / (a^2 - order b^2)
    RationalPoly norm = f.multiply(a_, a_);
    const RationalPoly bb = f.multiply(b_, b_);
    for (std::size_t i = 0; i < norm.size(); ++i) norm[i] -= bb[i] * f.order();
    const RationalPoly inv = f.inverse(norm);
    RationalPoly nb = b_;
    for (auto& c : nb) c = -c;
    Scalar out(field_, f.multiply(a_, inv), f.multiply(nb, inv));
    return out;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend Scalar operator-(Scalar a) {
    for (auto& c : a.a_) c = -c;
    for (auto& c : a.b_) c = -c;
    return a;
  }

  friend bool operator==(const Scalar& x, const Scalar& y) {
    if (x.field_ == y.field_) return x.a_ == y.a_ && x.b_ == y.b_;
    Scalar d = x;
    d -= y;
    return d.is_zero();
  }
  friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

  /// Re-express this value in a (refined) field with the same order.
  Scalar embed(const FieldPtr& target) const {
    if (field_ == target) return *this;
    if (!field_) return from_rational(target, a_[0]);
    if (field_->order() != target->order())
      throw DomainError("scalars over different group orders cannot be combined");
    const int n = field_->conductor();
    const int m = target->conductor();
    if (m % n != 0) throw DomainError("conductor mismatch without a common refinement");
    const long step = m / n;
    auto lift = [&](const RationalPoly& p) {
      Scalar s = zero(target);
      for (std::size_t j = 0; j < p.size(); ++j)
        if (p[j] != 0) s += zeta(target, static_cast<long>(j) * step) * Scalar(p[j]);
      return s;
    };
    Scalar out = lift(a_);
    if (!b_.empty()) out += lift(b_) * delta(target);
    return out;
  }

  std::string to_string() const;

 private:
  Scalar(FieldPtr f, RationalPoly a, RationalPoly b) : field_(std::move(f)), a_(std::move(a)), b_(std::move(b)) {
    normalize();
  }

  void scale(const Rational& r) {
    for (auto& c : a_) c *= r;
    for (auto& c : b_) c *= r;
    normalize();
  }

  void add_delta(const RationalPoly& other, int sign) {
    if (other.empty()) return;
    if (b_.empty()) b_ = RationalPoly(a_.size());
    for (std::size_t i = 0; i < b_.size(); ++i) b_[i] += sign * other[i];
    normalize();
  }

  template <class Op>
  void unify(const Scalar& o, Op op) {
    if (field_ == o.field_) {
      op(o);
      return;
    }
    if (!o.field_) {
      op(o.embed(field_));
      return;
    }
    if (!field_) {
      *this = embed(o.field_);
      op(o);
      return;
    }
    if (field_->order() != o.field_->order())
      throw DomainError("scalars over different group orders cannot be combined");
    const FieldPtr common =
        Field::get(std::lcm(field_->conductor(), o.field_->conductor()), field_->order());
    *this = embed(common);
    op(o.embed(common));
  }

  void normalize() {
    if (!field_) return;
    if (!b_.empty() && field_->delta_folded()) {
      const RationalPoly t = field_->multiply(b_, field_->delta_embedding());
      for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += t[i];
      b_.clear();
    }
    if (!b_.empty() && detail::is_zero(b_)) b_.clear();
  }

  FieldPtr field_;
  RationalPoly a_;
  RationalPoly b_;
};

inline std::string Scalar::to_string() const {
  auto poly = [](const RationalPoly& p, const char* var) {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] == 0) continue;
      std::string term = p[i].get_str();
      if (i > 0) term += "*" + std::string(var) + (i > 1 ? "^" + std::to_string(i) : "");
      if (!s.empty() && term[0] != '-') s += " + ";
      else if (!s.empty()) s += " ";
      s += term;
    }
    return s;
  };
  const std::string var = field_ ? "z" + std::to_string(field_->conductor()) : "z";
  std::string out = poly(a_, var.c_str());
  if (!b_.empty()) {
    std::string d = "(" + poly(b_, var.c_str()) + ")*d";
    out = out.empty() ? d : out + " + " + d;
  }
  return out.empty() ? "0" : out;
}

}  // namespace liftpa
