#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "spectilt/module.hpp"
#include "spectilt/ring.hpp"

namespace spectilt {

/// Omega^i(M): the i-th kernel of the minimal free resolution, presented
/// by the next differential. Omega^0(M) = M.
inline FpModule syzygy_module(const FpModule& m, int i) {
  if (i < 0) throw InputError("abtranspose.syzygy", "syzygy index must be non-negative");
  if (i == 0) return m;
  auto res = free_resolution(m, i + 1, true, false);
  if (res.length() < i) return FpModule::zero(m.ring());
  Matrix rel = res.length() > i ? res.maps[i] : Matrix{};
  return FpModule(m.ring(), res.degrees[i], std::move(rel));
}

struct TransposeResult {
  FpModule module;
  /// Minimal presentation the transpose was read from.
  FpModule source;
  /// Always true in graded mode: the minimal presentation fixes Tr uniquely.
  bool canonical = true;
};

/// Cokernel of the dual of the minimal presentation map. A relation of
/// degree a becomes a generator of degree -a; each old generator gives the
/// column of the presentation matrix as a relation.
inline TransposeResult transpose(const FpModule& m) {
  FpModule p = prune(m);
  const auto& a = m.ring()->ambient();
  std::vector<int> degs;
  for (int d : p.relation_degrees()) degs.push_back(-d);
  Matrix rows;
  for (int j = 0; j < p.ngens(); ++j) {
    DVec col = detail::zero_dvec(a, p.nrels());
    for (int i = 0; i < p.nrels(); ++i) col[i] = p.relations()[i][j];
    rows.push_back(std::move(col));
  }
  return {FpModule(m.ring(), std::move(degs), std::move(rows)), p, true};
}

/// First i in [0, n] with Ext^i(U, R) != 0, if any.
inline std::optional<int> grade_obstruction(const FpModule& u, int n) {
  auto r = FpModule::free(u.ring(), 1);
  auto res = free_resolution(u, n + 1, true, false);
  for (int i = 0; i <= n; ++i)
    if (!ext_module(i, u, r, &res).is_zero()) return i;
  return std::nullopt;
}

inline std::string grade_hypothesis(int n) {
  return "grade hypothesis Ext^i(U, R) = 0 for all i = 0, ..., " + std::to_string(n);
}

/// L(p) = Tr(Omega^{ht p - 1}(R/p)), with pd L(p) = ht p checked.
inline FpModule lp_module(const Prime& p, const RingPtr& ring) {
  if (p.height < 1) throw InputError("abtranspose.lp", "L(" + p.name + ") needs a prime of height >= 1, got height " + std::to_string(p.height));
  auto u = FpModule::quotient(ring, p.ideal);
  const int k = p.height;
  if (auto bad = grade_obstruction(u, k - 1))
    throw InputError("abtranspose.grade", "L(" + p.name + "): Ext^" + std::to_string(*bad) + "(R/" + p.name + ", R) != 0, violating the " +
                                              grade_hypothesis(k - 1) + " for U = R/" + p.name);
  auto l = prune(transpose(syzygy_module(u, k - 1)).module);
  auto d = pd(l, std::max(k + 1, default_pd_cap(*ring)));
  if (!d.exact || d.value != k)
    throw InvariantError("abtranspose.lp", "pd L(" + p.name + ") = " + d.to_string() + ", expected height " + std::to_string(k));
  return l;
}

struct FunctorMismatch {
  int module_index;
  /// "ext-tor1" compares Ext^n(U,M) with Tor_1(Tr Omega^n U, M);
  /// "ext1-tor" compares Ext^1(Tr Omega^n U, M) with Tor_n(M, U).
  std::string pair;
  int degree;
  long lhs, rhs;
};

struct FunctorCheck {
  int n = 0;
  FpModule tr;  // Tr(Omega^n U)
  std::vector<FunctorMismatch> mismatches;
  int compared = 0;
  bool ok() const { return mismatches.empty(); }
};

namespace detail {

inline std::pair<int, int> hilbert_window(const FpModule& x, const FpModule& y, int bound) {
  int lo = 0, hi = bound;
  bool any = false;
  for (const FpModule* m : {&x, &y})
    for (int d : m->degrees()) {
      lo = any ? std::min(lo, d) : d;
      any = true;
    }
  return {std::min(lo, hi), hi};
}

inline void compare_hilbert(const FpModule& x, const FpModule& y, int bound, int idx, const char* pair, FunctorCheck& out) {
  auto [lo, hi] = hilbert_window(x, y, bound);
  auto hx = hilbert_values(x, lo, hi);
  auto hy = hilbert_values(y, lo, hi);
  for (std::size_t t = 0; t < hx.size(); ++t)
    if (hx[t] != hy[t]) out.mismatches.push_back({idx, pair, lo + static_cast<int>(t), hx[t], hy[t]});
}

}  // namespace detail

/// Degreewise Hilbert comparison of Ext^n(U,-) with Tor_1(Tr Omega^n U,-)
/// and of Ext^1(Tr Omega^n U,-) with Tor_n(-,U) on each suite member.
/// Degrees are compared from the lowest generator degree up to
/// max presentation degree + `extra`.
inline FunctorCheck functor_iso_check(const FpModule& u, int n, const std::vector<FpModule>& suite, int extra = 6) {
  if (auto bad = grade_obstruction(u, n))
    throw InputError("abtranspose.grade", "functor check: Ext^" + std::to_string(*bad) + "(U, R) != 0, violating the " + grade_hypothesis(n));
  FunctorCheck out;
  out.n = n;
  out.tr = transpose(syzygy_module(u, n)).module;
  auto res_u = free_resolution(u, n + 1, true, false);
  auto res_t = free_resolution(out.tr, 2, true, false);
  for (std::size_t k = 0; k < suite.size(); ++k) {
    const auto& m = suite[k];
    int bound = std::max({max_presentation_degree(m), max_presentation_degree(u), max_presentation_degree(out.tr)}) + extra;
    detail::compare_hilbert(ext_module(n, u, m, &res_u), tor_module(1, out.tr, m, &res_t), bound, static_cast<int>(k), "ext-tor1", out);
    detail::compare_hilbert(ext_module(1, out.tr, m, &res_t), tor_module(n, m, u), bound, static_cast<int>(k), "ext1-tor", out);
    ++out.compared;
  }
  return out;
}

}  // namespace spectilt
