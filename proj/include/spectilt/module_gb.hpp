#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "spectilt/error.hpp"
#include "spectilt/field.hpp"
#include "spectilt/monomial.hpp"
#include "spectilt/poly.hpp"

namespace spectilt {

/// One term of an element of the free module A^r.
struct VTerm {
  Monomial mon;
  int comp = 0;
  FieldElem coef;
};

/// Sparse module element; terms strictly descending in a ModuleOrder.
using Vec = std::vector<VTerm>;

/// Term order on A^r. Components below `elim` dominate every other
/// component (an elimination order on positions); inside each block terms
/// compare by the underlying monomial order with per-component degree
/// shifts, then by position (lower index larger).
class ModuleOrder {
 public:
  ModuleOrder() = default;
  ModuleOrder(MonomialOrder mono, std::vector<int> shifts, int elim = 0)
      : mono_(std::move(mono)), shifts_(std::move(shifts)), elim_(elim) {}

  int rank() const { return static_cast<int>(shifts_.size()); }
  int elim() const { return elim_; }
  const std::vector<int>& shifts() const { return shifts_; }
  const MonomialOrder& mono() const { return mono_; }

  int cmp(const Monomial& a, int ca, const Monomial& b, int cb) const {
    if (elim_ > 0) {
      bool ea = ca < elim_, eb = cb < elim_;
      if (ea != eb) return ea ? 1 : -1;
    }
    int c = mono_.cmp_shifted(a, shifts_[ca], b, shifts_[cb]);
    if (c) return c;
    if (ca == cb) return 0;
    return ca < cb ? 1 : -1;
  }

  int cmp(const VTerm& a, const VTerm& b) const { return cmp(a.mon, a.comp, b.mon, b.comp); }

  int shifted_degree(const VTerm& t) const { return t.mon.degree() + shifts_[t.comp]; }

 private:
  MonomialOrder mono_;
  std::vector<int> shifts_;
  int elim_ = 0;
};

/// Arithmetic on sparse module elements for a fixed field and order.
class VecArith {
 public:
  VecArith(const Field& f, const ModuleOrder& o) : field_(f), order_(o) {}

  const Field& field() const { return field_; }
  const ModuleOrder& order() const { return order_; }

  Vec from_dense(const std::vector<Poly>& dense) const {
    Vec v;
    for (int c = 0; c < static_cast<int>(dense.size()); ++c)
      for (auto& [m, k] : dense[c].terms()) v.push_back({m, c, k});
    std::sort(v.begin(), v.end(), [&](const VTerm& a, const VTerm& b) { return order_.cmp(a, b) > 0; });
    return v;
  }

  std::vector<Poly> to_dense(const Vec& v, const PolyRingPtr& ring, int rank) const {
    std::vector<std::vector<Poly::Term>> parts(rank);
    for (auto& t : v) parts[t.comp].emplace_back(t.mon, t.coef);
    std::vector<Poly> out;
    out.reserve(rank);
    for (auto& p : parts) out.push_back(Poly::from_terms(ring, std::move(p)));
    return out;
  }

  /// a - c * m * b, where a starts at index `from`.
  Vec sub_mul(const Vec& a, std::size_t from, const FieldElem& c, const Monomial& m, const Vec& b, std::size_t bfrom) const {
    Vec out;
    out.reserve(a.size() - from + b.size() - bfrom);
    std::size_t i = from, j = bfrom;
    while (i < a.size() || j < b.size()) {
      int s;
      Monomial bm;
      if (j < b.size()) bm = b[j].mon * m;
      if (i == a.size()) s = -1;
      else if (j == b.size()) s = 1;
      else s = order_.cmp(a[i].mon, a[i].comp, bm, b[j].comp);
      if (s > 0) {
        out.push_back(a[i++]);
      } else if (s < 0) {
        out.push_back({bm, b[j].comp, field_.neg(field_.mul(c, b[j].coef))});
        ++j;
      } else {
        auto v = field_.sub(a[i].coef, field_.mul(c, b[j].coef));
        if (!v.is_zero()) out.push_back({a[i].mon, a[i].comp, std::move(v)});
        ++i;
        ++j;
      }
    }
    return out;
  }

  Vec add(const Vec& a, const Vec& b) const { return sub_mul(a, 0, field_.from_int(-1), Monomial(), b, 0); }
  Vec sub(const Vec& a, const Vec& b) const { return sub_mul(a, 0, field_.one(), Monomial(), b, 0); }

  Vec scale(Vec v, const FieldElem& c) const {
    if (c.is_zero()) return {};
    for (auto& t : v) t.coef = field_.mul(t.coef, c);
    return v;
  }

  Vec monic(Vec v) const {
    if (v.empty() || v[0].coef.is_one()) return v;
    return scale(std::move(v), field_.inv(v[0].coef));
  }

  int sugar(const Vec& v) const {
    int s = 0;
    for (auto& t : v) s = std::max(s, order_.shifted_degree(t));
    return s;
  }

  bool is_homogeneous(const Vec& v) const {
    for (auto& t : v)
      if (order_.shifted_degree(t) != order_.shifted_degree(v[0])) return false;
    return true;
  }

 private:
  Field field_;
  ModuleOrder order_;
};

/// Reduced Gröbner basis of a submodule of A^r (r = 1 gives ideals).
///
/// Buchberger's algorithm with the Gebauer–Möller installation of the
/// chain criterion, the coprime-leading-term criterion (ideals only) and
/// sugar-degree pair selection.
class ModuleGB {
 public:
  ModuleGB(const Field& f, const ModuleOrder& o) : ar_(f, o) {}

  ModuleGB(const Field& f, const ModuleOrder& o, const std::vector<Vec>& gens) : ar_(f, o) { compute(gens); }

  const VecArith& arith() const { return ar_; }
  const std::vector<Vec>& basis() const { return basis_; }
  bool is_zero() const { return basis_.empty(); }

  void compute(const std::vector<Vec>& gens) {
    elems_.clear();
    active_.clear();
    pairs_.clear();
    ideal_mode_ = ar_.order().rank() == 1;
    std::vector<Vec> input;
    for (auto& g : gens)
      if (!g.empty()) input.push_back(g);
    std::stable_sort(input.begin(), input.end(), [&](const Vec& a, const Vec& b) { return ar_.sugar(a) < ar_.sugar(b); });
    for (auto& g : input) {
      Vec h = reduce_with(g, elems_);
      if (!h.empty()) insert(ar_.monic(std::move(h)));
    }
    while (!pairs_.empty()) {
      std::size_t best = 0;
      for (std::size_t k = 1; k < pairs_.size(); ++k) {
        const auto& p = pairs_[k];
        const auto& q = pairs_[best];
        if (p.sugar < q.sugar || (p.sugar == q.sugar && ar_.order().cmp(p.lcm, p.comp, q.lcm, q.comp) < 0)) best = k;
      }
      Pair p = pairs_[best];
      pairs_.erase(pairs_.begin() + static_cast<std::ptrdiff_t>(best));
      Vec s = spoly(elems_[p.i], elems_[p.j], p.lcm);
      Vec h = reduce_with(s, elems_);
      if (!h.empty()) insert(ar_.monic(std::move(h)));
    }
    finalize();
  }

  /// Normal form: no remaining term is divisible by a leading term.
  Vec reduce(const Vec& v) const { return reduce_with(v, basis_); }

  bool reduces_to_zero(const Vec& v) const { return reduce(v).empty(); }

  /// True when the basis contains a unit vector leading term in component c.
  bool contains_unit_in(int comp) const {
    for (auto& g : basis_)
      if (g[0].comp == comp && g[0].mon.is_one()) return true;
    return false;
  }

 private:
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
    int comp;
    int sugar;
  };

  Vec spoly(const Vec& f, const Vec& g, const Monomial& l) const {
    Vec a = ar_.sub_mul(Vec{}, 0, ar_.field().from_int(-1), l / f[0].mon, f, 0);
    return ar_.sub_mul(a, 0, ar_.field().one(), l / g[0].mon, g, 0);
  }

  Vec reduce_with(const Vec& v, const std::vector<Vec>& by) const {
    Vec f = v;
    Vec rem;
    std::size_t start = 0;
    while (start < f.size()) {
      const VTerm& lt = f[start];
      const Vec* div = nullptr;
      for (auto& g : by) {
        if (g[0].comp == lt.comp && g[0].mon.divides(lt.mon)) {
          div = &g;
          break;
        }
      }
      if (!div) {
        rem.push_back(lt);
        ++start;
        continue;
      }
      FieldElem c = ar_.field().div(lt.coef, (*div)[0].coef);
      f = ar_.sub_mul(f, start + 1, c, lt.mon / (*div)[0].mon, *div, 1);
      start = 0;
    }
    return rem;
  }

  void insert(Vec h) {
    std::size_t hi = elems_.size();
    const Monomial& hm = h[0].mon;
    int hc = h[0].comp;
    int hs = ar_.sugar(h);

    struct Cand {
      std::size_t g;
      Monomial lcm;
    };
    std::vector<Cand> c, d;
    for (std::size_t g = 0; g < elems_.size(); ++g)
      if (active_[g] && elems_[g][0].comp == hc) c.push_back({g, Monomial::lcm(hm, elems_[g][0].mon)});

    for (std::size_t k = 0; k < c.size(); ++k) {
      bool coprime = ideal_mode_ && hm.coprime(elems_[c[k].g][0].mon);
      bool keep = coprime;
      if (!keep) {
        keep = true;
        for (std::size_t l = k + 1; l < c.size() && keep; ++l)
          if (c[l].lcm.divides(c[k].lcm)) keep = false;
        for (auto& e : d)
          if (keep && e.lcm.divides(c[k].lcm)) keep = false;
      }
      if (keep) d.push_back(c[k]);
    }

    std::vector<Pair> kept;
    for (auto& p : pairs_) {
      if (p.comp == hc && hm.divides(p.lcm) && !(Monomial::lcm(elems_[p.i][0].mon, hm) == p.lcm) &&
          !(Monomial::lcm(elems_[p.j][0].mon, hm) == p.lcm))
        continue;
      kept.push_back(p);
    }
    pairs_ = std::move(kept);

    for (auto& e : d) {
      if (ideal_mode_ && hm.coprime(elems_[e.g][0].mon)) continue;
      const Vec& g = elems_[e.g];
      int sg = ar_.sugar(g) + e.lcm.degree() - g[0].mon.degree();
      int sh = hs + e.lcm.degree() - hm.degree();
      pairs_.push_back({e.g, hi, e.lcm, hc, std::max(sg, sh)});
    }

    for (std::size_t g = 0; g < elems_.size(); ++g)
      if (active_[g] && elems_[g][0].comp == hc && hm.divides(elems_[g][0].mon)) active_[g] = false;

    elems_.push_back(std::move(h));
    active_.push_back(true);
  }

  void finalize() {
    std::vector<Vec> minimal;
    for (std::size_t a = 0; a < elems_.size(); ++a) {
      bool redundant = false;
      for (std::size_t b = 0; b < elems_.size() && !redundant; ++b) {
        if (a == b || elems_[b][0].comp != elems_[a][0].comp) continue;
        if (!elems_[b][0].mon.divides(elems_[a][0].mon)) continue;
        // equal leading terms: keep the earliest
        if (elems_[a][0].mon == elems_[b][0].mon) redundant = b < a;
        else redundant = true;
      }
      if (!redundant) minimal.push_back(elems_[a]);
    }
    std::sort(minimal.begin(), minimal.end(), [&](const Vec& a, const Vec& b) { return ar_.order().cmp(a[0], b[0]) < 0; });
    basis_.clear();
    for (std::size_t k = 0; k < minimal.size(); ++k) {
      std::vector<Vec> others;
      for (std::size_t l = 0; l < minimal.size(); ++l)
        if (l != k) others.push_back(minimal[l]);
      Vec tail(minimal[k].begin() + 1, minimal[k].end());
      Vec red = reduce_with(tail, others);
      Vec g;
      g.reserve(red.size() + 1);
      g.push_back(minimal[k][0]);
      g.insert(g.end(), red.begin(), red.end());
      basis_.push_back(ar_.monic(std::move(g)));
    }
    elems_.clear();
    active_.clear();
  }

  VecArith ar_;
  bool ideal_mode_ = false;
  std::vector<Vec> elems_;
  std::vector<bool> active_;
  std::vector<Pair> pairs_;
  std::vector<Vec> basis_;
};

}  // namespace spectilt
