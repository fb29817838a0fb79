#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "liftpa/error.hpp"
#include "liftpa/group.hpp"
#include "liftpa/scalar.hpp"
#include "liftpa/two_box.hpp"

namespace liftpa {

/// chi(e_i, e_j) = exp(2 pi i q_ij), extended bimultiplicatively.
class Bicharacter {
 public:
  Bicharacter(GroupPtr group, std::vector<std::vector<Rational>> phases)
      : group_(std::move(group)), phases_(std::move(phases)) {
    const std::size_t r = group_->rank();
    if (phases_.size() != r) throw DomainError("phase matrix must be " + std::to_string(r) + "x" + std::to_string(r));
    for (auto& row : phases_) {
      if (row.size() != r) throw DomainError("phase matrix must be square");
      for (auto& q : row) {
        q.canonicalize();
        q -= Rational(mpz_class(floor_of(q)));
      }
    }
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        const long g = std::gcd(group_->factors()[i], group_->factors()[j]);
        const Rational t = phases_[i][j] * g;
        if (t.get_den() != 1)
          throw DomainError("phase " + phases_[i][j].get_str() + " at (" + std::to_string(i + 1) + "," +
                            std::to_string(j + 1) + ") is incompatible with the cyclic orders");
      }
    conductor_ = group_->field()->conductor();
    build_table();
  }

  /// Trivial bicharacter (all phases 0).
  static Bicharacter trivial(GroupPtr group) {
    const std::size_t r = group->rank();
    return Bicharacter(group, std::vector<std::vector<Rational>>(r, std::vector<Rational>(r, Rational(0))));
  }

  const GroupPtr& group() const noexcept { return group_; }
  const std::vector<std::vector<Rational>>& phases() const noexcept { return phases_; }
  int conductor() const noexcept { return conductor_; }

  /// chi(g, h) = zeta_N^exponent(g, h).
  long exponent(Element g, Element h) const { return table_[g * group_->order() + h]; }
  Scalar value(Element g, Element h) const { return Scalar::zeta(group_->field(), exponent(g, h)); }

  friend bool operator==(const Bicharacter& a, const Bicharacter& b) {
    return *a.group_ == *b.group_ && a.phases_ == b.phases_;
  }
  friend bool operator<(const Bicharacter& a, const Bicharacter& b) { return a.phases_ < b.phases_; }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < phases_.size(); ++i) {
      s += i ? ", [" : "[";
      for (std::size_t j = 0; j < phases_[i].size(); ++j) s += (j ? ", " : "") + phases_[i][j].get_str();
      s += "]";
    }
    return s + "]";
  }

 private:
  static mpz_class floor_of(const Rational& q) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return f;
  }

  void build_table() {
    const std::size_t n = group_->order(), r = group_->rank();
    std::vector<std::vector<long>> e(r, std::vector<long>(r));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        const Rational k = phases_[i][j] * conductor_;
        e[i][j] = k.get_num().get_si();  // denominators divide the exponent, hence N
      }
    table_.assign(n * n, 0);
    for (Element g = 0; g < n; ++g)
      for (Element h = 0; h < n; ++h) {
        long s = 0;
        const auto& tg = group_->tuple(g);
        const auto& th = group_->tuple(h);
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j) s += static_cast<long>(tg[i]) * th[j] * e[i][j];
        table_[g * n + h] = ((s % conductor_) + conductor_) % conductor_;
      }
  }

  GroupPtr group_;
  std::vector<std::vector<Rational>> phases_;
  int conductor_ = 4;
  std::vector<long> table_;
};

/// Builds a bicharacter from 1-based generator entries; unset entries are 0.
inline Bicharacter bicharacter_from_entries(GroupPtr group, const std::map<std::pair<int, int>, Rational>& entries) {
  const std::size_t r = group->rank();
  std::vector<std::vector<Rational>> phases(r, std::vector<Rational>(r, Rational(0)));
  for (const auto& [ij, q] : entries) {
    const auto [i, j] = ij;
    if (i < 1 || j < 1 || static_cast<std::size_t>(i) > r || static_cast<std::size_t>(j) > r)
      throw DomainError("generator index (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
    phases[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = q;
  }
  return Bicharacter(std::move(group), std::move(phases));
}

struct BicharProps {
  bool symmetric = false;
  bool nondegenerate = false;
};

inline BicharProps bichar_props(const Bicharacter& chi) {
  const AbelianGroup& a = *chi.group();
  BicharProps p{true, true};
  for (Element g = 0; g < a.order(); ++g)
    for (Element h = g + 1; h < a.order(); ++h)
      if (chi.exponent(g, h) != chi.exponent(h, g)) p.symmetric = false;
  for (Element g = 1; g < a.order(); ++g) {
    bool trivial_row = true;
    for (Element h = 0; h < a.order() && trivial_row; ++h) trivial_row = chi.exponent(g, h) == 0;
    if (trivial_row) p.nondegenerate = false;
  }
  return p;
}

/// Whether a table of scalars is bimultiplicative with unit values at e.
inline bool is_bimultiplicative(const AbelianGroup& a, const std::vector<std::vector<Scalar>>& t) {
  for (Element g1 = 0; g1 < a.order(); ++g1)
    for (Element g2 = 0; g2 < a.order(); ++g2)
      for (Element h = 0; h < a.order(); ++h) {
        if (t[a.op(g1, g2)][h] != t[g1][h] * t[g2][h]) return false;
        if (t[h][a.op(g1, g2)] != t[h][g1] * t[h][g2]) return false;
      }
  return true;
}

enum class BicharFilter { All, Symmetric, Nondegenerate, SymmetricNondegenerate };

inline const char* to_string(BicharFilter f) {
  switch (f) {
    case BicharFilter::All: return "all";
    case BicharFilter::Symmetric: return "symmetric";
    case BicharFilter::Nondegenerate: return "nondegenerate";
    case BicharFilter::SymmetricNondegenerate: return "symmetric-nondegenerate";
  }
  return "all";
}

struct BicharLimits {
  std::size_t max_order = 64;
  std::size_t max_automorphisms = 200000;
  std::size_t max_candidates = 1u << 22;
  unsigned threads = 1;
};

struct BicharClassification {
  GroupPtr group;
  BicharFilter filter = BicharFilter::All;
  std::size_t total = 0;  // all bicharacters before filtering
  std::vector<Bicharacter> members;      // filtered, in enumeration order
  std::vector<std::size_t> orbit_of;     // orbit index per member
  std::vector<Bicharacter> representatives;  // lexicographically minimal, sorted
  std::size_t automorphisms = 0;
};

namespace detail {

// Candidate bicharacters are indexed by mixed-radix numerators a_ij over
// gcd(n_i, n_j).
struct PhaseSpace {
  std::vector<long> radix;  // per (i,j), row-major
  std::size_t rank = 0;
  std::size_t count = 1;

  explicit PhaseSpace(const AbelianGroup& a) : rank(a.rank()) {
    for (std::size_t i = 0; i < rank; ++i)
      for (std::size_t j = 0; j < rank; ++j) {
        radix.push_back(std::gcd(a.factors()[i], a.factors()[j]));
        count *= static_cast<std::size_t>(radix.back());
      }
  }
  std::vector<long> digits(std::size_t idx) const {
    std::vector<long> d(radix.size());
    for (std::size_t k = radix.size(); k-- > 0;) {
      d[k] = static_cast<long>(idx % static_cast<std::size_t>(radix[k]));
      idx /= static_cast<std::size_t>(radix[k]);
    }
    return d;
  }
  std::size_t index(const std::vector<long>& d) const {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < radix.size(); ++k) idx = idx * static_cast<std::size_t>(radix[k]) + static_cast<std::size_t>(d[k]);
    return idx;
  }
  std::vector<std::vector<Rational>> phases(const std::vector<long>& d) const {
    std::vector<std::vector<Rational>> p(rank, std::vector<Rational>(rank));
    for (std::size_t i = 0; i < rank; ++i)
      for (std::size_t j = 0; j < rank; ++j) {
        p[i][j] = Rational(d[i * rank + j], radix[i * rank + j]);
        p[i][j].canonicalize();
      }
    return p;
  }
};

}  // namespace detail

/// Automorphisms of a, failing with BoundError beyond the configured count.
inline std::vector<ElementMap> bounded_automorphisms(const AbelianGroup& a, std::size_t limit) {
  std::vector<ElementMap> out;
  bool exceeded = false;
  for_each_isomorphism(a, a, [&](const ElementMap& m) {
    if (out.size() >= limit) {
      exceeded = true;
      return false;
    }
    out.push_back(m);
    return true;
  });
  if (exceeded)
    throw BoundError("Aut(" + a.to_string() + ") has more than " + std::to_string(limit) + " elements");
  return out;
}

/// Enumerates all bicharacters of A passing the filter and splits them into
/// Aut(A)-orbits under chi^alpha(x, y) = chi(alpha x, alpha y).
inline BicharClassification bichar_enumerate_classify(const GroupPtr& group, BicharFilter filter,
                                                      const BicharLimits& limits = {}) {
  const AbelianGroup& a = *group;
  if (a.order() > limits.max_order)
    throw BoundError("group order " + std::to_string(a.order()) + " exceeds the bound " +
                     std::to_string(limits.max_order));
  const detail::PhaseSpace space(a);
  if (space.count > limits.max_candidates)
    throw BoundError(std::to_string(space.count) + " candidate bicharacters exceed the bound " +
                     std::to_string(limits.max_candidates));
  const auto autos = bounded_automorphisms(a, limits.max_automorphisms);

  BicharClassification out;
  out.group = group;
  out.filter = filter;
  out.total = space.count;
  out.automorphisms = autos.size();

  auto keep = [&](const BicharProps& p) {
    switch (filter) {
      case BicharFilter::All: return true;
      case BicharFilter::Symmetric: return p.symmetric;
      case BicharFilter::Nondegenerate: return p.nondegenerate;
      case BicharFilter::SymmetricNondegenerate: return p.symmetric && p.nondegenerate;
    }
    return true;
  };

  // Filtering is partitioned over threads; results are merged in index order.
  std::vector<char> passes(space.count, 0);
  const unsigned nthreads = std::max(1u, limits.threads);
  auto work = [&](unsigned t) {
    for (std::size_t idx = t; idx < space.count; idx += nthreads) {
      const Bicharacter chi(group, space.phases(space.digits(idx)));
      passes[idx] = keep(bichar_props(chi)) ? 1 : 0;
    }
  };
  if (nthreads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }

  const std::size_t r = a.rank();
  std::vector<Element> gens(r);
  for (std::size_t i = 0; i < r; ++i) gens[i] = a.generator(i);
  const int n = a.field()->conductor();

  std::vector<long> orbit_id(space.count, -1);
  std::vector<std::size_t> orbit_rep;  // minimal candidate index per orbit
  for (std::size_t idx = 0; idx < space.count; ++idx) {
    if (!passes[idx] || orbit_id[idx] >= 0) continue;
    const Bicharacter chi(group, space.phases(space.digits(idx)));
    const long id = static_cast<long>(orbit_rep.size());
    std::size_t best = idx;
    for (const auto& alpha : autos) {
      std::vector<long> d(r * r);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
          const long k = chi.exponent(alpha[gens[i]], alpha[gens[j]]);
          d[i * r + j] = k * space.radix[i * r + j] / n;
        }
      const std::size_t img = space.index(d);
      orbit_id[img] = id;
      best = std::min(best, img);
    }
    orbit_rep.push_back(best);
  }
  // Orbit ids ordered by representative.
  std::vector<std::size_t> order(orbit_rep.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return orbit_rep[x] < orbit_rep[y]; });
  std::vector<std::size_t> rank_of(orbit_rep.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    rank_of[order[k]] = k;
    out.representatives.emplace_back(group, space.phases(space.digits(orbit_rep[order[k]])));
  }
  for (std::size_t idx = 0; idx < space.count; ++idx) {
    if (!passes[idx]) continue;
    out.members.emplace_back(group, space.phases(space.digits(idx)));
    out.orbit_of.push_back(rank_of[static_cast<std::size_t>(orbit_id[idx])]);
  }
  return out;
}

/// Bicharacter whose values are the given roots of unity on generators.
/// Fails if some value is not a power of zeta_N.
inline Bicharacter bicharacter_from_values(const GroupPtr& group, const std::vector<std::vector<Scalar>>& table) {
  const AbelianGroup& a = *group;
  const FieldPtr f = a.field();
  const int n = f->conductor();
  std::vector<std::vector<Rational>> phases(a.rank(), std::vector<Rational>(a.rank()));
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = 0; j < a.rank(); ++j) {
      const Scalar& v = table[a.generator(i)][a.generator(j)];
      int found = -1;
      for (int k = 0; k < n && found < 0; ++k)
        if (v == Scalar::zeta(f, k)) found = k;
      if (found < 0) throw DomainError("extracted value is not a root of unity");
      phases[i][j] = Rational(found, n);
      phases[i][j].canonicalize();
    }
  return Bicharacter(group, std::move(phases));
}

}  // namespace liftpa
