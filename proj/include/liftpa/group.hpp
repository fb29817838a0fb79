#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "liftpa/error.hpp"
#include "liftpa/scalar.hpp"

namespace liftpa {

/// Index of a group element in the mixed-radix enumeration of its residue tuple
/// (first factor varies slowest).
using Element = std::size_t;

/// A finite abelian group presented as Z/n_1 + ... + Z/n_r.
class AbelianGroup {
 public:
  AbelianGroup() : AbelianGroup(std::vector<int>{}) {}

  explicit AbelianGroup(std::vector<int> factors) : factors_(std::move(factors)) {
    order_ = 1;
    exponent_ = 1;
    for (int n : factors_) {
      if (n < 2) throw DomainError("cyclic factor must be at least 2, got " + std::to_string(n));
      order_ *= static_cast<std::size_t>(n);
      exponent_ = std::lcm(exponent_, static_cast<long>(n));
    }
    const std::size_t r = factors_.size();
    tuples_.resize(order_);
    for (Element g = 0; g < order_; ++g) {
      std::vector<int> t(r);
      std::size_t rest = g;
      for (std::size_t i = r; i-- > 0;) {
        t[i] = static_cast<int>(rest % static_cast<std::size_t>(factors_[i]));
        rest /= static_cast<std::size_t>(factors_[i]);
      }
      tuples_[g] = std::move(t);
    }
    add_.assign(order_ * order_, 0);
    for (Element g = 0; g < order_; ++g)
      for (Element h = 0; h < order_; ++h) {
        std::vector<int> t(r);
        for (std::size_t i = 0; i < r; ++i) t[i] = (tuples_[g][i] + tuples_[h][i]) % factors_[i];
        add_[g * order_ + h] = index_of(t);
      }
    inv_.resize(order_);
    for (Element g = 0; g < order_; ++g) {
      std::vector<int> t(r);
      for (std::size_t i = 0; i < r; ++i) t[i] = (factors_[i] - tuples_[g][i]) % factors_[i];
      inv_[g] = index_of(t);
    }
  }

  const std::vector<int>& factors() const noexcept { return factors_; }
  std::size_t rank() const noexcept { return factors_.size(); }
  std::size_t order() const noexcept { return order_; }
  long exponent() const noexcept { return exponent_; }
  Element identity() const noexcept { return 0; }

  Element op(Element g, Element h) const { return add_[g * order_ + h]; }
  Element inverse(Element g) const { return inv_[g]; }
  Element power(Element g, long k) const {
    const auto& t = tuples_[g];
    std::vector<int> out(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
      const long n = factors_[i];
      out[i] = static_cast<int>((((t[i] * k) % n) + n) % n);
    }
    return index_of(out);
  }
  const std::vector<int>& tuple(Element g) const { return tuples_[g]; }

  Element index_of(const std::vector<int>& t) const {
    if (t.size() != factors_.size()) throw DomainError("element tuple has wrong length");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const int n = factors_[i];
      idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(((t[i] % n) + n) % n);
    }
    return idx;
  }

  /// Generator e_i (1 in the i-th factor).
  Element generator(std::size_t i) const {
    std::vector<int> t(factors_.size(), 0);
    t.at(i) = 1;
    return index_of(t);
  }

  long element_order(Element g) const {
    long o = 1;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const long n = factors_[i];
      const long t = tuples_[g][i];
      o = std::lcm(o, n / std::gcd(n, t));
    }
    return o;
  }

  /// Field housing every value a bicharacter of this group can take.
  FieldPtr field() const { return Field::get(default_conductor(exponent_), static_cast<long>(order_)); }

  std::string element_string(Element g) const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < tuples_[g].size(); ++i) os << (i ? "," : "") << tuples_[g][i];
    os << ")";
    return os.str();
  }

  std::string to_string() const {
    if (factors_.empty()) return "trivial";
    std::ostringstream os;
    for (std::size_t i = 0; i < factors_.size(); ++i) os << (i ? "+" : "") << "Z/" << factors_[i];
    return os.str();
  }

  friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) { return a.factors_ == b.factors_; }
  friend bool operator!=(const AbelianGroup& a, const AbelianGroup& b) { return !(a == b); }

 private:
  std::vector<int> factors_;
  std::size_t order_ = 1;
  long exponent_ = 1;
  std::vector<std::vector<int>> tuples_;
  std::vector<Element> add_;
  std::vector<Element> inv_;
};

inline AbelianGroup group_make(const std::vector<int>& factors) { return AbelianGroup(factors); }

/// A homomorphism given by generator images, tabulated on all elements.
using ElementMap = std::vector<Element>;

/// Calls visit(map) for every isomorphism from `from` to `to`, enumerating
/// generator images with the partial image kept injective at each stage.
/// Stops early if visit returns false.  Returns the number of isomorphisms visited.
inline std::size_t for_each_isomorphism(const AbelianGroup& from, const AbelianGroup& to,
                                        const std::function<bool(const ElementMap&)>& visit) {
  if (from.order() != to.order()) return 0;
  const std::size_t r = from.rank();
  std::vector<Element> images(r);
  std::size_t count = 0;
  bool stop = false;

  // span[k] = table of the homomorphism on the subgroup generated by e_1..e_k,
  // indexed by elements of that subgroup's coordinate block.
  std::function<void(std::size_t, std::vector<char>&, std::size_t)> rec =
      [&](std::size_t k, std::vector<char>& hit, std::size_t hit_count) {
        if (stop) return;
        if (k == r) {
          ElementMap map(from.order());
          for (Element g = 0; g < from.order(); ++g) {
            Element img = to.identity();
            const auto& t = from.tuple(g);
            for (std::size_t i = 0; i < r; ++i) img = to.op(img, to.power(images[i], t[i]));
            map[g] = img;
          }
          ++count;
          if (!visit(map)) stop = true;
          return;
        }
        const int n = from.factors()[k];
        for (Element cand = 0; cand < to.order() && !stop; ++cand) {
          if (n % to.element_order(cand) != 0) continue;
          // New image set: hit + j*cand for j in 0..n-1; must stay injective.
          std::vector<char> next(to.order(), 0);
          bool ok = true;
          std::size_t next_count = 0;
          for (Element h = 0; h < to.order() && ok; ++h) {
            if (!hit[h]) continue;
            Element cur = h;
            for (int j = 0; j < n; ++j) {
              if (next[cur]) {
                ok = false;
                break;
              }
              next[cur] = 1;
              ++next_count;
              cur = to.op(cur, cand);
            }
          }
          if (!ok || next_count != hit_count * static_cast<std::size_t>(n)) continue;
          images[k] = cand;
          rec(k + 1, next, next_count);
        }
      };
  std::vector<char> hit(to.order(), 0);
  hit[to.identity()] = 1;
  rec(0, hit, 1);
  return count;
}

inline std::vector<ElementMap> automorphisms(const AbelianGroup& a) {
  std::vector<ElementMap> out;
  for_each_isomorphism(a, a, [&](const ElementMap& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

}  // namespace liftpa
