#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "spectilt/error.hpp"
#include "spectilt/module_gb.hpp"
#include "spectilt/poly.hpp"

namespace spectilt {

inline ModuleOrder ideal_order(const PolyRing& ring) { return ModuleOrder(ring.order, {0}); }

inline Vec to_vec(const VecArith& ar, const Poly& p) { return ar.from_dense({p}); }

inline Poly from_vec(const VecArith& ar, const PolyRingPtr& ring, const Vec& v) { return ar.to_dense(v, ring, 1)[0]; }

/// Copy of `ring` with a different monomial order.
inline PolyRingPtr with_order(const PolyRingPtr& ring, MonomialOrder order) {
  return std::make_shared<const PolyRing>(ring->field, ring->vars, std::move(order));
}

/// Re-sorts a polynomial into another ring with the same variables.
inline Poly transfer(const Poly& p, const PolyRingPtr& target) {
  return Poly::from_terms(target, std::vector<Poly::Term>(p.terms().begin(), p.terms().end()));
}

/// Reduced Gröbner basis of `gens` under the ring's own order.
inline std::vector<Poly> groebner_basis(const std::vector<Poly>& gens, const PolyRingPtr& ring) {
  for (auto& g : gens)
    if (g.ring() && !g.ring()->same_as(*ring)) throw InputError("polycore.mismatch", "generators from different rings");
  VecArith ar(ring->field, ideal_order(*ring));
  std::vector<Vec> in;
  for (auto& g : gens) in.push_back(to_vec(ar, g));
  ModuleGB gb(ring->field, ar.order(), in);
  std::vector<Poly> out;
  for (auto& v : gb.basis()) out.push_back(from_vec(ar, ring, v));
  return out;
}

/// Reduced Gröbner basis with respect to an explicit order. The result
/// lives in a ring carrying that order.
inline std::vector<Poly> groebner_basis(const std::vector<Poly>& gens, const MonomialOrder& order) {
  if (gens.empty()) return {};
  PolyRingPtr ring;
  for (auto& g : gens)
    if (g.ring()) ring = g.ring();
  if (!ring) return {};
  for (auto& g : gens)
    if (g.ring() && (!(g.ring()->field == ring->field) || g.ring()->vars != ring->vars))
      throw InputError("polycore.mismatch", "generators over different fields or variable sets");
  auto target = with_order(ring, order);
  std::vector<Poly> moved;
  for (auto& g : gens) moved.push_back(transfer(g, target));
  return groebner_basis(moved, target);
}

/// Ideal of the ambient polynomial ring with a write-once cached reduced
/// Gröbner basis.
class Ideal {
 public:
  Ideal() = default;
  Ideal(PolyRingPtr ring, std::vector<Poly> gens) : ring_(std::move(ring)), gens_(), cache_(std::make_shared<Cache>()) {
    for (auto& g : gens) {
      if (g.ring() && !g.ring()->same_as(*ring_)) throw InputError("polycore.mismatch", "generator from a different ring");
      if (!g.is_zero()) gens_.push_back(std::move(g));
    }
  }

  static Ideal unit(PolyRingPtr ring) {
    auto one = Poly::one(ring);
    return Ideal(std::move(ring), {one});
  }

  const PolyRingPtr& ring() const { return ring_; }
  const std::vector<Poly>& generators() const { return gens_; }

  const std::vector<Poly>& gb() const {
    std::call_once(cache_->once, [this] {
      VecArith ar(ring_->field, ideal_order(*ring_));
      std::vector<Vec> in;
      for (auto& g : gens_) in.push_back(to_vec(ar, g));
      cache_->engine = std::make_unique<ModuleGB>(ring_->field, ar.order(), in);
      for (auto& v : cache_->engine->basis()) cache_->gb.push_back(from_vec(ar, ring_, v));
    });
    return cache_->gb;
  }

  Poly normal_form(const Poly& f) const {
    gb();
    const auto& ar = cache_->engine->arith();
    return from_vec(ar, ring_, cache_->engine->reduce(to_vec(ar, f)));
  }

  bool contains(const Poly& f) const { return normal_form(f).is_zero(); }

  /// J ⊆ *this.
  bool contains(const Ideal& j) const {
    for (auto& g : j.generators())
      if (!contains(g)) return false;
    return true;
  }

  bool is_zero() const { return gb().empty(); }
  bool is_unit() const { return gb().size() == 1 && gb()[0].is_unit(); }

  bool is_homogeneous() const {
    for (auto& g : gb())
      if (!g.is_homogeneous()) return false;
    return true;
  }

  friend bool operator==(const Ideal& a, const Ideal& b) { return a.gb() == b.gb(); }

  Ideal operator+(const Ideal& o) const {
    auto g = gens_;
    g.insert(g.end(), o.gens_.begin(), o.gens_.end());
    return Ideal(ring_, std::move(g));
  }

  Ideal operator*(const Ideal& o) const {
    std::vector<Poly> g;
    for (auto& a : gens_)
      for (auto& b : o.gens_) g.push_back(a * b);
    return Ideal(ring_, std::move(g));
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < gens_.size(); ++i) s += (i ? ", " : "") + gens_[i].to_string();
    return s + ")";
  }

 private:
  struct Cache {
    std::once_flag once;
    std::vector<Poly> gb;
    std::unique_ptr<ModuleGB> engine;
  };

  PolyRingPtr ring_;
  std::vector<Poly> gens_;
  std::shared_ptr<Cache> cache_;
};

/// Remainder of f modulo a reduced Gröbner basis G (ring order).
inline Poly normal_form(const Poly& f, const std::vector<Poly>& g) {
  if (f.is_zero()) return f;
  const auto& ring = f.ring();
  VecArith ar(ring->field, ideal_order(*ring));
  std::vector<Vec> basis;
  for (auto& p : g) basis.push_back(ar.monic(to_vec(ar, p)));
  // The basis is already a Gröbner basis; recomputing is cheap and keeps
  // the reducer's invariants local.
  ModuleGB engine(ring->field, ar.order(), basis);
  return from_vec(ar, ring, engine.reduce(to_vec(ar, f)));
}

inline bool ideal_membership(const Poly& f, const Ideal& i) { return i.contains(f); }

namespace detail {

/// k[t, x_1..x_m] with t eliminated first.
inline PolyRingPtr adjoin_elimination_variable(const PolyRingPtr& ring) {
  std::vector<std::string> vars{"_t"};
  vars.insert(vars.end(), ring->vars.begin(), ring->vars.end());
  int n = static_cast<int>(vars.size());
  return std::make_shared<const PolyRing>(ring->field, std::move(vars), MonomialOrder::block(n, 1));
}

inline Poly shift_up(const Poly& p, const PolyRingPtr& ext) {
  std::vector<Poly::Term> terms;
  for (auto& [m, c] : p.terms()) {
    Monomial s;
    for (int i = 0; i < p.ring()->nvars(); ++i) s.set(i + 1, m[i]);
    terms.emplace_back(s, c);
  }
  return Poly::from_terms(ext, std::move(terms));
}

inline Poly shift_down(const Poly& p, const PolyRingPtr& base) {
  std::vector<Poly::Term> terms;
  for (auto& [m, c] : p.terms()) {
    Monomial s;
    for (int i = 0; i < base->nvars(); ++i) s.set(i, m[i + 1]);
    terms.emplace_back(s, c);
  }
  return Poly::from_terms(base, std::move(terms));
}

/// Exact quotient g / f; throws if f does not divide g.
inline Poly divide_exact(const Poly& g, const Poly& f) {
  const auto& ring = g.ring();
  Poly q(ring), r = g;
  while (!r.is_zero()) {
    if (!f.lead_monomial().divides(r.lead_monomial())) throw InvariantError("polycore.divide", "inexact polynomial division");
    auto c = ring->field.div(r.lead_coeff(), f.lead_coeff());
    auto m = r.lead_monomial() / f.lead_monomial();
    q += Poly::term(ring, m, c);
    r -= f.mul_term(m, c);
  }
  return q;
}

}  // namespace detail

/// I ∩ J via t·I + (1 − t)·J and elimination of t.
inline Ideal intersect(const Ideal& i, const Ideal& j) {
  const auto& ring = i.ring();
  if (i.is_zero() || j.is_zero()) return Ideal(ring, {});
  auto ext = detail::adjoin_elimination_variable(ring);
  Poly t = Poly::variable(ext, 0);
  Poly one_minus_t = Poly::one(ext) - t;
  std::vector<Poly> gens;
  for (auto& g : i.generators()) gens.push_back(t * detail::shift_up(g, ext));
  for (auto& g : j.generators()) gens.push_back(one_minus_t * detail::shift_up(g, ext));
  std::vector<Poly> out;
  for (auto& g : groebner_basis(gens, ext))
    if (g.degree_in(0) == 0) out.push_back(detail::shift_down(g, ring));
  return Ideal(ring, std::move(out));
}

/// I : f = {g : g f ∈ I}, computed as (I ∩ ⟨f⟩) / f.
inline Ideal ideal_quotient(const Ideal& i, const Poly& f) {
  if (f.is_zero()) throw InputError("polycore.quotient", "ideal quotient by the zero polynomial");
  const auto& ring = i.ring();
  Ideal cap = intersect(i, Ideal(ring, {f}));
  std::vector<Poly> out;
  for (auto& g : cap.gb()) out.push_back(detail::divide_exact(g, f));
  return Ideal(ring, std::move(out));
}

/// I : J = ∩_{g ∈ gens J} (I : g).
inline Ideal ideal_quotient(const Ideal& i, const Ideal& j) {
  const auto& ring = i.ring();
  if (j.is_zero()) return Ideal::unit(ring);
  Ideal acc;
  bool first = true;
  for (auto& g : j.generators()) {
    Ideal q = ideal_quotient(i, g);
    acc = first ? q : intersect(acc, q);
    first = false;
  }
  return Ideal(ring, acc.gb());
}

struct SaturationResult {
  Ideal ideal;
  int iterations = 0;
};

/// I : J^∞ by iterating single quotients until the reduced basis is stable.
inline SaturationResult saturation(const Ideal& i, const Ideal& j, int cap = 64) {
  Ideal cur(i.ring(), i.gb());
  for (int k = 1; k <= cap; ++k) {
    Ideal next = ideal_quotient(cur, j);
    if (next == cur) return {cur, k};
    cur = next;
  }
  throw BudgetError("polycore.saturation", "saturation did not stabilise within " + std::to_string(cap) + " quotient steps");
}

/// Dimension of V(I) from the leading-term ideal: the largest variable set
/// containing the support of no leading monomial. -1 for the unit ideal.
inline int krull_dim(const Ideal& i) {
  const int n = i.ring()->nvars();
  std::vector<std::uint32_t> supports;
  for (auto& g : i.gb()) supports.push_back(g.lead_monomial().support());
  int best = -1;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    int size = __builtin_popcount(s);
    if (size <= best) continue;
    bool ok = true;
    for (auto sup : supports)
      if ((sup & ~s) == 0) {
        ok = false;
        break;
      }
    if (ok) best = size;
  }
  return best;
}

}  // namespace spectilt
