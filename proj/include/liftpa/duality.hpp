#pragma once

// Self-dualities of P^A from bicharacters, and the lift of a symmetric
// self-duality to an action of unshaded tangles.

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "liftpa/bicharacter.hpp"
#include "liftpa/generators.hpp"
#include "liftpa/state_sum.hpp"
#include "liftpa/tangle.hpp"
#include "liftpa/two_box.hpp"

namespace liftpa {

/// A pair (Phi_+, Phi_-) on 2-boxes; Phi_- : P_{2,-} -> P_{2,+} and
/// Phi_+ = FS^{-1} Phi_- FS : P_{2,+} -> P_{2,-}.
class SelfDuality {
 public:
  explicit SelfDuality(BoxMatrix phi_minus) : minus_(std::move(phi_minus)) {
    if (minus_.from != Shade::Shaded || minus_.to != Shade::Unshaded)
      throw DomainError("Phi_- must map side - to side +");
    const GroupPtr& g = minus_.group;
    plus_ = BoxMatrix::of(g, Shade::Unshaded, Shade::Shaded,
                          [&](const TwoBox& x) { return fs_inverse(minus_.apply(fs(x))); });
    const BoxMatrix a = BoxMatrix::of(g, Shade::Unshaded, Shade::Unshaded,
                                      [&](const TwoBox& x) { return minus_.apply(fs(x)); });
    const BoxMatrix fs2 =
        BoxMatrix::of(g, Shade::Unshaded, Shade::Unshaded, [](const TwoBox& x) { return fs(fs(x)); });
    symmetric_ = a * a == fs2;
  }

  const GroupPtr& group() const noexcept { return minus_.group; }
  const BoxMatrix& phi_minus() const noexcept { return minus_; }
  const BoxMatrix& phi_plus() const noexcept { return plus_; }
  /// Cached value of check_symmetric_duality.
  bool symmetric() const noexcept { return symmetric_; }

  /// Phi_- on side -, Phi_+ on side +.
  TwoBox operator()(const TwoBox& x) const { return x.side() == Shade::Shaded ? minus_.apply(x) : plus_.apply(x); }

 private:
  BoxMatrix minus_;
  BoxMatrix plus_;
  bool symmetric_ = false;
};

/// The matrix (1/d) chi(g,h) without the non-degeneracy check.
inline BoxMatrix phi_matrix_from_chi(const Bicharacter& chi) {
  const GroupPtr& g = chi.group();
  const Scalar inv_d = Scalar::delta_power(g->field(), -1);
  BoxMatrix m{g, Shade::Shaded, Shade::Unshaded, {}};
  for (Element x = 0; x < g->order(); ++x) {
    std::vector<Scalar> col;
    for (Element h = 0; h < g->order(); ++h) col.push_back(chi.value(x, h) * inv_d);
    m.cols.push_back(std::move(col));
  }
  return m;
}

/// Phi_-(Q_g) = sum_h (1/d) chi(g,h) P_h.
inline SelfDuality phi_from_chi(const Bicharacter& chi) {
  if (!bichar_props(chi).nondegenerate) throw DomainError("bicharacter is degenerate; Phi_- would be singular");
  return SelfDuality(phi_matrix_from_chi(chi));
}

/// chi(g,h) = d Tr(Phi_-(Q_g) P_h).
inline std::vector<std::vector<Scalar>> chi_table_from_phi(const SelfDuality& phi) {
  const GroupPtr& g = phi.group();
  const Scalar d = loop_parameter(*g);
  std::vector<std::vector<Scalar>> t(g->order());
  for (Element x = 0; x < g->order(); ++x) {
    const TwoBox img = phi(TwoBox::basis(g, Shade::Shaded, x));
    for (Element h = 0; h < g->order(); ++h)
      t[x].push_back(d * box_trace(box_mul(img, TwoBox::basis(g, Shade::Unshaded, h))));
  }
  return t;
}

/// Extracts the bicharacter of a self-duality; fails if the table is not one.
inline Bicharacter chi_from_phi(const SelfDuality& phi) {
  const auto t = chi_table_from_phi(phi);
  if (!is_bimultiplicative(*phi.group(), t)) throw DomainError("extracted table is not a bicharacter");
  Bicharacter chi = bicharacter_from_values(phi.group(), t);
  for (Element x = 0; x < phi.group()->order(); ++x)
    for (Element h = 0; h < phi.group()->order(); ++h)
      if (chi.value(x, h) != t[x][h]) throw DomainError("extracted table is not a bicharacter");
  return chi;
}

struct StarIsoReport {
  bool adjoint = true;
  bool trace = true;
  bool contragredient = true;
  bool multiplication = true;
  bool coproduct = true;
  bool all() const { return adjoint && trace && contragredient && multiplication && coproduct; }
};

/// The five 2-box checks on all basis elements and pairs of P_{2,-}.
inline StarIsoReport verify_star_iso(const SelfDuality& phi) {
  const GroupPtr& g = phi.group();
  StarIsoReport r;
  auto Q = [&](Element x) { return TwoBox::basis(g, Shade::Shaded, x); };
  for (Element x = 0; x < g->order(); ++x) {
    const TwoBox px = phi(Q(x));
    if (phi(box_adjoint(Q(x))) != box_adjoint(px)) r.adjoint = false;
    if (box_trace(px) != box_trace(Q(x))) r.trace = false;
    if (phi(box_contragredient(Q(x))) != box_contragredient(px)) r.contragredient = false;
    for (Element y = 0; y < g->order(); ++y) {
      const TwoBox py = phi(Q(y));
      if (phi(box_mul(Q(x), Q(y))) != box_mul(px, py)) r.multiplication = false;
      if (phi(box_coprod(Q(x), Q(y))) != box_coprod(px, py)) r.coproduct = false;
    }
  }
  return r;
}

inline BoxMatrix fs_matrix(const GroupPtr& g, Shade from) {
  return BoxMatrix::of(g, from, from == Shade::Unshaded ? Shade::Shaded : Shade::Unshaded,
                       [](const TwoBox& x) { return fs(x); });
}

/// (Phi_- FS)^2 = FS^2 on P_{2,+}.
inline bool check_symmetric_duality(const SelfDuality& phi) {
  const GroupPtr& g = phi.group();
  const BoxMatrix a = phi.phi_minus() * fs_matrix(g, Shade::Unshaded);
  const BoxMatrix fs2 = fs_matrix(g, Shade::Shaded) * fs_matrix(g, Shade::Unshaded);
  return a * a == fs2;
}

/// Phi^2 = 1 on both sides.
inline bool phi_squares_to_identity(const SelfDuality& phi) {
  const GroupPtr& g = phi.group();
  const auto id_plus = BoxMatrix::of(g, Shade::Unshaded, Shade::Unshaded, [](const TwoBox& x) { return x; });
  const auto id_minus = BoxMatrix::of(g, Shade::Shaded, Shade::Shaded, [](const TwoBox& x) { return x; });
  return phi.phi_minus() * phi.phi_plus() == id_plus && phi.phi_plus() * phi.phi_minus() == id_minus;
}

// ---------------------------------------------------------------------------
// Lifting

/// psi_i: identity on a disk with sign +, Phi_+ on a disk with sign -.
/// Boxes with at most two points are one-dimensional and carried by value.
inline SpinVector apply_psi(const SpinModel& model, const SelfDuality& phi, Shade sign, const SpinVector& x) {
  if (x.side() != Shade::Unshaded) throw DomainError("lifted inputs must be side + boxes");
  if (sign == Shade::Unshaded) return x;
  if (x.points() == 4) return model.to_spin(phi(model.to_box(x)));
  if (x.points() <= 2) return model.constant(x.points(), Shade::Shaded, model.to_constant(x));
  throw DomainError("lifting is implemented for boxes with at most four points");
}

/// unZ(U) = shZ(sh U) o (tensor of psi_i(sh U)).
inline SpinVector lift_action(const Tangle& u, const SelfDuality& phi, const SpinModel& model,
                              const std::vector<SpinVector>& inputs) {
  for (int d = 0; d < u.disk_count(); ++d)
    if (u.points(d) % 2 != 0) throw DomainError("odd-boundary tangles act by zero and are not lifted");
  if (!phi.symmetric()) throw DomainError("self-duality is not symmetric");
  const ShadedTangle s = shade(u);
  if (static_cast<int>(inputs.size()) != u.input_count()) throw DomainError("wrong number of inputs");
  std::vector<SpinVector> args;
  for (int i = 1; i <= u.input_count(); ++i)
    args.push_back(apply_psi(model, phi, s.sign(i), inputs[static_cast<std::size_t>(i - 1)]));
  return model.eval(s, args);
}

/// Basis inputs of a tangle's input disks: P_g on 2-boxes, 1 on smaller boxes.
inline std::vector<std::vector<SpinVector>> basis_inputs(const SpinModel& model, const Tangle& t) {
  std::vector<std::vector<SpinVector>> per_disk;
  for (int i = 1; i <= t.input_count(); ++i) {
    std::vector<SpinVector> opts;
    if (t.points(i) == 4) {
      for (Element g = 0; g < model.group()->order(); ++g)
        opts.push_back(model.to_spin(TwoBox::basis(model.group(), Shade::Unshaded, g)));
    } else if (t.points(i) <= 2) {
      opts.push_back(model.constant(t.points(i), Shade::Unshaded, Scalar::one(model.group()->field())));
    } else {
      throw DomainError("basis inputs are implemented for boxes with at most four points");
    }
    per_disk.push_back(std::move(opts));
  }
  std::vector<std::vector<SpinVector>> out{{}};
  for (const auto& opts : per_disk) {
    std::vector<std::vector<SpinVector>> next;
    for (const auto& prefix : out)
      for (const auto& o : opts) {
        auto v = prefix;
        v.push_back(o);
        next.push_back(std::move(v));
      }
    out = std::move(next);
  }
  return out;
}

struct FunctorialityCase {
  std::string u, v;
  int disk = 0;
  Shade sign = Shade::Unshaded;  // sign of disk i in sh U
  bool equal = true;
  std::size_t inputs_checked = 0;
};

/// unZ(U o_i V) = unZ(U) o_i unZ(V) on all basis inputs.
inline FunctorialityCase check_functoriality_once(const Tangle& u, int i, const Tangle& v, const SelfDuality& phi,
                                                  const SpinModel& model) {
  FunctorialityCase c;
  c.disk = i;
  c.sign = shade(u).sign(i);
  const Tangle w = compose(u, i, v);
  const int nv = v.input_count();
  for (const auto& in : basis_inputs(model, w)) {
    const SpinVector lhs = lift_action(w, phi, model, in);
    std::vector<SpinVector> v_in(in.begin() + (i - 1), in.begin() + (i - 1 + nv));
    std::vector<SpinVector> u_in(in.begin(), in.begin() + (i - 1));
    u_in.push_back(lift_action(v, phi, model, v_in));
    u_in.insert(u_in.end(), in.begin() + (i - 1 + nv), in.end());
    const SpinVector rhs = lift_action(u, phi, model, u_in);
    ++c.inputs_checked;
    if (!(lhs == rhs)) c.equal = false;
  }
  return c;
}

struct FunctorialityReport {
  std::vector<FunctorialityCase> cases;
  std::size_t plus_cases = 0, minus_cases = 0, failures = 0;
  bool both_cases_hit(std::size_t minimum = 1) const { return plus_cases >= minimum && minus_cases >= minimum; }
  bool ok(std::size_t minimum = 1) const { return failures == 0 && both_cases_hit(minimum); }
};

/// Generator terms: the generator library and all single splices of two generators.
inline std::vector<gen::Named> generator_terms() {
  const auto lib = gen::library();
  std::vector<gen::Named> out = lib;
  for (const auto& a : lib)
    for (int i = 1; i <= a.tangle.input_count(); ++i)
      for (const auto& b : lib)
        if (b.tangle.points(0) == a.tangle.points(i) && b.name != "id" && b.name != "id1")
          out.push_back({a.name + "(" + std::to_string(i) + ":" + b.name + ")", compose(a.tangle, i, b.tangle)});
  return out;
}

/// Seeded random composable pairs (U, i, V) over generator terms, drawn so
/// that disks of sign + and sign - are each chosen for half of the trials.
inline FunctorialityReport check_functoriality(const SelfDuality& phi, const SpinModel& model, std::size_t trials,
                                               std::uint64_t seed) {
  const auto terms = generator_terms();
  struct Slot {
    std::size_t u;
    int disk;
  };
  std::vector<Slot> plus, minus;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const ShadedTangle s = shade(terms[k].tangle);
    for (int i = 1; i <= terms[k].tangle.input_count(); ++i)
      (s.sign(i) == Shade::Unshaded ? plus : minus).push_back({k, i});
  }
  std::mt19937_64 rng(seed);
  FunctorialityReport report;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto& pool = (t % 2 == 0) ? plus : minus;
    const Slot slot = pool[rng() % pool.size()];
    const Tangle& u = terms[slot.u].tangle;
    std::vector<std::size_t> fits;
    for (std::size_t k = 0; k < terms.size(); ++k)
      if (terms[k].tangle.points(0) == u.points(slot.disk)) fits.push_back(k);
    const std::size_t vk = fits[rng() % fits.size()];
    FunctorialityCase c = check_functoriality_once(u, slot.disk, terms[vk].tangle, phi, model);
    c.u = terms[slot.u].name;
    c.v = terms[vk].name;
    (c.sign == Shade::Unshaded ? report.plus_cases : report.minus_cases) += 1;
    if (!c.equal) ++report.failures;
    report.cases.push_back(std::move(c));
  }
  return report;
}

/// Phi_{sign_j(V)} o psi_j(V) = psi_j(V^op) for every disk j, as matrices on P_{2,+}.
inline bool check_case2_kernel(const ShadedTangle& v, const SelfDuality& phi) {
  const GroupPtr& g = phi.group();
  const ShadedTangle vop = reverse_shading(v);
  auto psi = [&](Shade sign) {
    return BoxMatrix::of(g, Shade::Unshaded, sign == Shade::Unshaded ? Shade::Unshaded : Shade::Shaded,
                         [&](const TwoBox& x) { return sign == Shade::Unshaded ? x : phi(x); });
  };
  for (int j = 1; j <= v.base().input_count(); ++j) {
    if (v.base().points(j) != 4) continue;
    const Shade sj = v.sign(j);
    const BoxMatrix lhs = BoxMatrix::of(g, Shade::Unshaded, flip(sj),
                                        [&](const TwoBox& x) { return phi(psi(sj).apply(x)); });
    if (!(lhs == psi(vop.sign(j)))) return false;
  }
  return true;
}

}  // namespace liftpa
