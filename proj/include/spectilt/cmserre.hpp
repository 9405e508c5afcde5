#pragma once

#include <string>
#include <vector>

#include "spectilt/classify.hpp"

namespace spectilt {

/// depth M = dim M at the graded maximal ideal.
inline bool is_cohen_macaulay(const FpModule& m) {
  if (m.is_zero()) throw InputError("cmserre.cm", "the zero module is not Cohen-Macaulay by convention; pass a nonzero module");
  return depth(m) == dim_module(m);
}

namespace detail {

inline void require_regular(const Ring& r, const char* what) {
  if (!r.is_polynomial())
    throw InputError(std::string("cmserre.") + what, std::string(what) + " needs a regular ambient ring: declare the ring without relations");
}

}  // namespace detail

struct CmTranslateReport {
  std::string prime;
  PdResult pd;
  int height = 0;
  bool cohen_macaulay = false;
  /// pd >= ht, with equality exactly when R/p is Cohen-Macaulay.
  bool holds() const { return pd.exact && pd.value >= height && ((pd.value == height) == cohen_macaulay); }
};

inline CmTranslateReport cm_translate_check(const Prime& p, const RingPtr& ring) {
  detail::require_regular(*ring, "cm-translate");
  auto q = FpModule::quotient(ring, p.ideal);
  CmTranslateReport r;
  r.prime = p.name;
  r.pd = pd(q);
  r.height = p.height;
  r.cohen_macaulay = is_cohen_macaulay(q);
  return r;
}

struct ChiResult {
  long value = 0;
  std::vector<long> tor_lengths;  // length Tor_i(M, N), i = 0..dim R
};

/// Alternating sum of lengths of Tor_i(M, N); needs dim(M ⊗ N) <= 0.
inline ChiResult chi(const FpModule& m, const FpModule& n) {
  const auto& ring = m.ring();
  detail::require_regular(*ring, "chi");
  auto t0 = tensor(m, n);
  if (dim_module(t0) > 0)
    throw InputError("cmserre.chi", "chi undefined: M tensor N has dimension " + std::to_string(dim_module(t0)) + ", not finite length");
  ChiResult out;
  const int d = ring->nvars();
  auto res = free_resolution(m, d + 1, true, false);
  for (int i = 0; i <= d; ++i) {
    auto ti = i == 0 ? t0 : tor_module(i, m, n, &res);
    auto len = length(ti);
    if (!len) throw InvariantError("cmserre.chi", "Tor_" + std::to_string(i) + " has infinite length although M tensor N does not");
    out.tor_lengths.push_back(*len);
    out.value += (i % 2 ? -1 : 1) * *len;
  }
  return out;
}

struct SerreReport {
  int dim_m = 0, dim_n = 0, dim_r = 0;
  ChiResult chi;
  bool dimension_inequality = true;  // dim M + dim N <= dim R
  bool vanishing_case = false;       // dim M + dim N < dim R
  bool positivity_case = false;      // dim M + dim N = dim R
  bool passed() const {
    if (!dimension_inequality) return false;
    if (vanishing_case) return chi.value == 0;
    return chi.value > 0;
  }
};

inline SerreReport serre_check(const FpModule& m, const FpModule& n) {
  SerreReport r;
  r.chi = chi(m, n);
  r.dim_m = dim_module(m);
  r.dim_n = dim_module(n);
  r.dim_r = m.ring()->dim();
  r.dimension_inequality = r.dim_m + r.dim_n <= r.dim_r;
  r.vanishing_case = r.dim_m + r.dim_n < r.dim_r;
  r.positivity_case = r.dim_m + r.dim_n == r.dim_r;
  return r;
}

struct HochsterReport {
  std::string prime;
  PdResult pd;
  int height = 0;
  PrimeSet ass = 0;
  bool cohen_macaulay = false;
  bool pd_matches = false;
  bool ass_is_p = false;
  std::optional<ClassComparison> class_check;
  bool passed() const { return pd_matches && ass_is_p && cohen_macaulay && (!class_check || class_check->agree()); }
};

/// Checks a candidate K for p: pd K = ht p, Ass K = {p} in the window and
/// K Cohen-Macaulay; on success compares the classes L(p)^perp and K^perp
/// on the suite.
inline HochsterReport hochster_probe(int prime_index, const FpModule& k, const Window& w, const std::vector<FpModule>& suite, Workspace& ws) {
  const Prime& p = w.prime(prime_index);
  detail::require_regular(*ws.ring(), "hochster");
  if (k.is_zero()) throw InputError("cmserre.hochster", "candidate module is zero");
  if (!annihilator(k).contains(p.ideal))
    throw InputError("cmserre.hochster", p.name + " does not annihilate K; the hypothesis needs K to be an R/" + p.name + "-module with Ass K = {" +
                                             p.name + "}");
  HochsterReport r;
  r.prime = p.name;
  r.height = p.height;
  r.pd = pd(k);
  r.pd_matches = r.pd.exact && r.pd.value == p.height;
  r.ass = ass_in_window(k, w);
  r.ass_is_p = r.ass == (PrimeSet{1} << prime_index);
  r.cohen_macaulay = is_cohen_macaulay(k);
  if (r.pd_matches && r.ass_is_p && r.cohen_macaulay && p.height >= 1)
    r.class_check = same_class_check(ext_perp(ws.lp(p), p.height), ext_perp(k, p.height), suite, ws);
  return r;
}

}  // namespace spectilt
