#pragma once

#include <string>
#include <vector>

#include "spectilt/module.hpp"
#include "spectilt/ring.hpp"

namespace spectilt {

/// {p in W : ann(M) ⊆ p}.
inline PrimeSet supp_in_window(const FpModule& m, const Window& w) {
  if (m.is_zero()) return 0;
  Ideal ann = annihilator(m);
  PrimeSet s = 0;
  for (int i = 0; i < w.size(); ++i)
    if (w.prime(i).ideal.contains(ann)) s |= PrimeSet{1} << i;
  return s;
}

/// {p in W : mu_0(p, M) != 0}.
inline PrimeSet ass_in_window(const FpModule& m, const Window& w) {
  if (m.is_zero()) return 0;
  PrimeSet supp = supp_in_window(m, w);
  PrimeSet s = 0;
  for (int i = 0; i < w.size(); ++i)
    if (has(supp, i) && bass_invariant(0, w.prime(i), m) != 0) s |= PrimeSet{1} << i;
  return s;
}

/// p M = M, i.e. M / pM = 0.
inline bool is_divisible(const FpModule& m, const Prime& p) {
  const auto& a = m.ring()->ambient();
  Matrix rows = m.relations();
  for (int j = 0; j < m.ngens(); ++j)
    for (auto& g : p.ideal.generators()) rows.push_back(detail::unit_dvec(a, m.ngens(), j, g));
  return FpModule(m.ring(), m.degrees(), std::move(rows)).is_zero();
}

namespace detail {

/// Generators of (U : J) = {v in A^g : f v in U for all f in gens J},
/// read off the kernel of v -> (f_1 v, ..., f_s v) in (A^g / U)^s.
inline Matrix module_colon(const Ring& ring, const Matrix& u, const std::vector<int>& degs, const std::vector<Poly>& jgens) {
  const auto& a = ring.ambient();
  const int g = static_cast<int>(degs.size());
  const int s = static_cast<int>(jgens.size());
  std::vector<int> target;
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < g; ++j) target.push_back(degs[j] - jgens[i].degree());
  Matrix vs;
  for (int j = 0; j < g; ++j) {
    DVec v = zero_dvec(a, g * s);
    for (int i = 0; i < s; ++i) v[i * g + j] = jgens[i];
    vs.push_back(std::move(v));
  }
  Matrix zero;
  for (int i = 0; i < s; ++i)
    for (auto& r : u) {
      DVec v = zero_dvec(a, g * s);
      for (int j = 0; j < g; ++j) v[i * g + j] = r[j];
      zero.push_back(std::move(v));
    }
  Matrix out;
  for (auto& c : syzygies(a, vs, zero, target, degs)) {
    auto r = reduce_mod(ring, c);
    if (!is_zero(r)) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace detail

struct TorsionSplit {
  /// Gamma_J(M), generated by the images of `inclusion` rows in M.
  FpModule torsion;
  /// M / Gamma_J(M) on the generators of M; the projection is the identity
  /// on generators.
  FpModule torsion_free;
  Matrix inclusion;
  int saturation_steps = 0;
};

/// Intersection of the minimal primes of an upward-closed Y.
inline Ideal torsion_ideal(const Window& w, PrimeSet y) {
  const auto& a = w.ring()->ambient();
  PrimeSet mins = minimal_elements(w, y);
  if (mins == 0) return Ideal::unit(a);
  Ideal acc;
  bool first = true;
  for (int i = 0; i < w.size(); ++i)
    if (has(mins, i)) {
      acc = first ? w.prime(i).ideal : intersect(acc, w.prime(i).ideal);
      first = false;
    }
  return Ideal(a, acc.gb());
}

/// Torsion part for the hereditary torsion class of modules supported in Y:
/// the saturation (U :_{A^g} J^inf) of the relation module.
inline TorsionSplit torsion_part(const FpModule& m, const Window& w, PrimeSet y, int cap = 64) {
  const auto& ring = m.ring();
  const auto& a = ring->ambient();
  Ideal j = torsion_ideal(w, y);
  Matrix u = m.submodule_generators();
  TorsionSplit out;
  if (!j.is_unit() && m.ngens() > 0) {
    std::vector<Poly> jgens = j.gb();
    for (int step = 1;; ++step) {
      if (step > cap) throw BudgetError("ringspec.torsion", "module saturation did not stabilise within " + std::to_string(cap) + " steps");
      Matrix next = detail::module_colon(*ring, u, m.degrees(), jgens);
      auto block = detail::ideal_block(*ring, m.ngens());
      next.insert(next.end(), block.begin(), block.end());
      FpModule cur(ring, m.degrees(), u);
      bool grew = false;
      for (auto& v : next)
        if (!cur.vanishes(v)) {
          grew = true;
          break;
        }
      out.saturation_steps = step;
      if (!grew) break;
      u = std::move(next);
    }
  }
  // Gamma = U_inf / U, generated by the part of U_inf outside U.
  auto base = m.submodule_generators();
  auto keep = detail::minimal_subset(a, u, base, m.degrees());
  std::vector<int> tdegs;
  for (int i : keep) {
    out.inclusion.push_back(u[i]);
    tdegs.push_back(*detail::vec_degree(u[i], m.degrees()));
  }
  if (keep.empty()) {
    out.torsion = FpModule::zero(ring);
  } else {
    auto rel = detail::syzygies(a, out.inclusion, base, m.degrees(), tdegs);
    out.torsion = prune(FpModule(ring, tdegs, rel));
  }
  Matrix frel;
  for (auto& v : u)
    if (!detail::is_zero(v)) frel.push_back(v);
  out.torsion_free = FpModule(ring, m.degrees(), frel);
  return out;
}

}  // namespace spectilt
