#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spectilt/workspace.hpp"

namespace spectilt {

/// One offending (prime, index) pair behind a negative verdict.
struct Witness {
  std::string prime;
  int i = 0;
  std::string invariant;
  long value = 0;

  friend bool operator==(const Witness&, const Witness&) = default;
};

enum class CotiltMethod { bass, ext, tor_transpose, gorenstein_L };
enum class TiltMethod { tor, ext_transpose, divisibility, gorenstein_L };

inline std::string method_name(CotiltMethod m) {
  switch (m) {
    case CotiltMethod::bass: return "bass";
    case CotiltMethod::ext: return "ext";
    case CotiltMethod::tor_transpose: return "tor-transpose";
    case CotiltMethod::gorenstein_L: return "gorenstein-L";
  }
  return "?";
}

inline std::string method_name(TiltMethod m) {
  switch (m) {
    case TiltMethod::tor: return "tor";
    case TiltMethod::ext_transpose: return "ext-transpose";
    case TiltMethod::divisibility: return "divisibility";
    case TiltMethod::gorenstein_L: return "gorenstein-L";
  }
  return "?";
}

inline std::optional<CotiltMethod> parse_cotilt_method(const std::string& s) {
  for (auto m : {CotiltMethod::bass, CotiltMethod::ext, CotiltMethod::tor_transpose, CotiltMethod::gorenstein_L})
    if (method_name(m) == s) return m;
  return std::nullopt;
}

inline std::optional<TiltMethod> parse_tilt_method(const std::string& s) {
  for (auto m : {TiltMethod::tor, TiltMethod::ext_transpose, TiltMethod::divisibility, TiltMethod::gorenstein_L})
    if (method_name(m) == s) return m;
  return std::nullopt;
}

struct MembershipVerdict {
  bool member = true;
  std::string method;
  std::vector<Witness> witnesses;
  std::vector<std::string> caveats;
};

struct MembershipOptions {
  /// Test only the minimal primes of each Y_i. Ignored by the bass method,
  /// whose condition does not reduce to minimal primes.
  bool minimal_primes = false;
  /// Window index of a prime p: decide membership of M_p over R_p, i.e.
  /// only primes q ⊆ p are tested and a module counts as zero when its
  /// localization at p vanishes.
  std::optional<int> localize_at;
};

// ---------------------------------------------------------------------------
// Sequences

struct SequenceReport {
  bool specialization_closed = true;  // (i)
  bool descending = true;             // (ii)
  bool bass_condition = true;         // (iii): mu_{i-1}(p, R) = 0 on Y_i
  bool height_condition = true;       // (iii*): height i-1 primes avoid Y_i
  std::vector<Witness> witnesses;

  bool valid() const { return specialization_closed && descending && bass_condition; }
  /// Whether (iii) and (iii*) agreed; they always do over Gorenstein rings.
  bool gorenstein_diagnostic() const { return bass_condition == height_condition; }
};

inline SequenceReport validate_sequence(const SpecSeq& seq, const Window& w, Workspace& ws) {
  SequenceReport rep;
  auto r = FpModule::free(ws.ring(), 1);
  for (int i = 1; i <= seq.n(); ++i) {
    PrimeSet y = seq[i];
    if (y & ~w.all()) throw InputError("classify.sequence", "Y_" + std::to_string(i) + " refers to primes outside window " + w.name());
    if (!w.is_upward_closed(y)) {
      rep.specialization_closed = false;
      for (int a = 0; a < w.size(); ++a)
        for (int b = 0; b < w.size(); ++b)
          if (has(y, a) && !has(y, b) && w.leq(a, b)) rep.witnesses.push_back({w.prime(b).name, i, "missing specialization", 0});
    }
    if (i > 1 && (y & ~seq[i - 1])) {
      rep.descending = false;
      for (int a = 0; a < w.size(); ++a)
        if (has(y, a) && !has(seq[i - 1], a)) rep.witnesses.push_back({w.prime(a).name, i, "not in Y_" + std::to_string(i - 1), 0});
    }
    for (int a = 0; a < w.size(); ++a) {
      if (!has(y, a)) continue;
      int mu = ws.bass(i - 1, w.prime(a), r);
      if (mu != 0) {
        rep.bass_condition = false;
        rep.witnesses.push_back({w.prime(a).name, i, "mu_" + std::to_string(i - 1) + "(p,R)", mu});
      }
      if (w.prime(a).height == i - 1) rep.height_condition = false;
    }
  }
  return rep;
}

struct ClassEnumeration {
  int n = 0;
  std::string window;
  std::vector<SpecSeq> sequences;
  /// Number of sequences per choice of Y_n, keyed by the set.
  std::map<PrimeSet, int> counts_by_last;
};

/// Every valid sequence of length n over the window, sorted by
/// (|Y_1|, ..., |Y_n|) and then by the ascending index lists of the sets.
inline ClassEnumeration enumerate_sequences(int n, const Window& w, Workspace& ws) {
  if (n < 1) throw InputError("classify.enumerate", "sequence length must be at least 1");
  if (w.size() > 20) throw BudgetError("classify.enumerate", "window too large for subset enumeration (more than 20 primes)");
  auto table = ws.bass_table(w, FpModule::free(ws.ring(), 1), n - 1);
  std::vector<PrimeSet> closed;
  for (PrimeSet s = 0; s <= w.all(); ++s)
    if (w.is_upward_closed(s)) closed.push_back(s);
  // allowed[i]: closed sets admissible as Y_{i+1}.
  std::vector<std::vector<PrimeSet>> allowed(n);
  for (int i = 0; i < n; ++i)
    for (PrimeSet s : closed) {
      bool ok = true;
      for (int a = 0; a < w.size() && ok; ++a)
        if (has(s, a) && table[i][a] != 0) ok = false;
      if (ok) allowed[i].push_back(s);
    }
  ClassEnumeration out;
  out.n = n;
  out.window = w.name();
  std::vector<PrimeSet> cur;
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      out.sequences.push_back(SpecSeq{cur});
      return;
    }
    for (PrimeSet s : allowed[i])
      if (i == 0 || (s & ~cur.back()) == 0) {
        cur.push_back(s);
        rec(i + 1);
        cur.pop_back();
      }
  };
  rec(0);
  auto index_list = [](PrimeSet s) {
    std::vector<int> v;
    for (int a = 0; a < 64; ++a)
      if (has(s, a)) v.push_back(a);
    return v;
  };
  std::sort(out.sequences.begin(), out.sequences.end(), [&](const SpecSeq& x, const SpecSeq& y) {
    for (int i = 0; i < n; ++i)
      if (set_size(x.y[i]) != set_size(y.y[i])) return set_size(x.y[i]) < set_size(y.y[i]);
    for (int i = 0; i < n; ++i)
      if (x.y[i] != y.y[i]) return index_list(x.y[i]) < index_list(y.y[i]);
    return false;
  });
  for (auto& s : out.sequences) ++out.counts_by_last[s.y.back()];
  return out;
}

// ---------------------------------------------------------------------------
// Membership

namespace detail {

inline void require_valid(const SpecSeq& seq, const Window& w, Workspace& ws) {
  auto rep = validate_sequence(seq, w, ws);
  if (!rep.valid()) {
    std::string why = !rep.specialization_closed ? "a set is not closed under specialization"
                      : !rep.descending          ? "the sets are not descending"
                                                 : "some Y_i meets a prime with mu_{i-1}(p, R) != 0";
    throw InputError("classify.sequence", "sequence " + seq.to_string(w) + " is not valid: " + why);
  }
}

/// Window indices tested at level i.
inline PrimeSet tested_primes(const Window& w, PrimeSet y, bool minimal, const MembershipOptions& opt) {
  PrimeSet s = y;
  if (opt.localize_at) s &= w.below(*opt.localize_at);
  if (minimal) s = minimal_elements(w, spec_closure(w, s)) & s;
  return s;
}

/// Whether N, or N localized at the chosen prime, is nonzero.
inline bool survives(const FpModule& n, const Window& w, const MembershipOptions& opt) {
  if (n.is_zero()) return false;
  if (!opt.localize_at) return true;
  return w.prime(*opt.localize_at).ideal.contains(annihilator(n));
}

inline void common_caveats(const SpecSeq& seq, const Window& w, const MembershipOptions& opt, std::vector<std::string>& out) {
  out.push_back("f.p.-relative, window-relative");
  if (opt.localize_at) out.push_back("localized at " + w.prime(*opt.localize_at).name);
  PrimeSet used = 0;
  for (auto y : seq.y) used |= y;
  for (int a = 0; a < w.size(); ++a)
    if (has(used, a) && !w.prime(a).is_proven()) out.push_back("primality of " + w.prime(a).name + " asserted, not proven");
}

inline void require_gorenstein(Workspace& ws) {
  if (!ws.gorenstein())
    throw InputError("classify.gorenstein", "method gorenstein-L needs a Gorenstein ring; declare the ring with the gorenstein assertion");
}

}  // namespace detail

inline MembershipVerdict cotilting_membership(const FpModule& m, const SpecSeq& seq, const Window& w, CotiltMethod method, Workspace& ws,
                                              const MembershipOptions& opt = {}) {
  detail::require_valid(seq, w, ws);
  if (method == CotiltMethod::gorenstein_L) detail::require_gorenstein(ws);
  MembershipVerdict v;
  v.method = method_name(method);
  detail::common_caveats(seq, w, opt, v.caveats);
  const bool minimal = method == CotiltMethod::gorenstein_L || (opt.minimal_primes && method != CotiltMethod::bass);
  for (int i = 1; i <= seq.n(); ++i) {
    PrimeSet t = detail::tested_primes(w, seq[i], minimal, opt);
    for (int a = 0; a < w.size(); ++a) {
      if (!has(t, a)) continue;
      const Prime& p = w.prime(a);
      switch (method) {
        case CotiltMethod::bass: {
          int mu = ws.bass(i - 1, p, m);
          if (mu != 0) v.witnesses.push_back({p.name, i, "mu_" + std::to_string(i - 1), mu});
          break;
        }
        case CotiltMethod::ext: {
          auto e = ws.ext(i - 1, ws.quotient(p), m);
          if (detail::survives(e, w, opt)) v.witnesses.push_back({p.name, i, "Ext^" + std::to_string(i - 1) + "(R/p,M)", e.ngens()});
          if (dim_module(ws.quotient(p)) >= 2) {
            std::string c = "V(" + p.name + ") is not contained in the window";
            if (std::find(v.caveats.begin(), v.caveats.end(), c) == v.caveats.end()) v.caveats.push_back(c);
          }
          break;
        }
        case CotiltMethod::tor_transpose: {
          auto t1 = ws.tor(1, ws.tr_syzygy(p, i - 1), m);
          if (detail::survives(t1, w, opt))
            v.witnesses.push_back({p.name, i, "Tor_1(Tr Omega^" + std::to_string(i - 1) + "(R/p),M)", t1.ngens()});
          break;
        }
        case CotiltMethod::gorenstein_L: {
          const int k = p.height - i + 1;
          auto t = ws.tor(k, ws.lp(p), m);
          if (detail::survives(t, w, opt)) v.witnesses.push_back({p.name, i, "Tor_" + std::to_string(k) + "(L(p),M)", t.ngens()});
          break;
        }
      }
    }
  }
  v.member = v.witnesses.empty();
  return v;
}

inline MembershipVerdict tilting_membership(const FpModule& m, const SpecSeq& seq, const Window& w, TiltMethod method, Workspace& ws,
                                            const MembershipOptions& opt = {}) {
  detail::require_valid(seq, w, ws);
  if (method == TiltMethod::gorenstein_L) detail::require_gorenstein(ws);
  if (method == TiltMethod::divisibility && seq.n() != 1)
    throw InputError("classify.method", "the divisibility method applies to sequences of length 1 only");
  MembershipVerdict v;
  v.method = method_name(method);
  detail::common_caveats(seq, w, opt, v.caveats);
  const bool minimal = method == TiltMethod::gorenstein_L || (opt.minimal_primes && method != TiltMethod::divisibility);
  for (int i = 1; i <= seq.n(); ++i) {
    PrimeSet t = detail::tested_primes(w, seq[i], minimal, opt);
    for (int a = 0; a < w.size(); ++a) {
      if (!has(t, a)) continue;
      const Prime& p = w.prime(a);
      switch (method) {
        case TiltMethod::tor: {
          auto x = ws.tor(i - 1, ws.quotient(p), m);
          if (detail::survives(x, w, opt)) v.witnesses.push_back({p.name, i, "Tor_" + std::to_string(i - 1) + "(R/p,M)", x.ngens()});
          break;
        }
        case TiltMethod::ext_transpose: {
          auto x = ws.ext(1, ws.tr_syzygy(p, i - 1), m);
          if (detail::survives(x, w, opt))
            v.witnesses.push_back({p.name, i, "Ext^1(Tr Omega^" + std::to_string(i - 1) + "(R/p),M)", x.ngens()});
          break;
        }
        case TiltMethod::divisibility: {
          // M / pM, presented by adding p e_j to the relations.
          const auto& amb = ws.ring()->ambient();
          Matrix rows = m.relations();
          for (int j = 0; j < m.ngens(); ++j)
            for (auto& g : p.ideal.generators()) rows.push_back(detail::unit_dvec(amb, m.ngens(), j, g));
          FpModule q = prune(FpModule(ws.ring(), m.degrees(), std::move(rows)));
          if (detail::survives(q, w, opt)) v.witnesses.push_back({p.name, i, "M/pM", q.ngens()});
          break;
        }
        case TiltMethod::gorenstein_L: {
          const int k = p.height - i + 1;
          auto x = ws.ext(k, ws.lp(p), m);
          if (detail::survives(x, w, opt)) v.witnesses.push_back({p.name, i, "Ext^" + std::to_string(k) + "(L(p),M)", x.ngens()});
          break;
        }
      }
    }
  }
  v.member = v.witnesses.empty();
  return v;
}

// ---------------------------------------------------------------------------
// Derived checks

struct ShiftReport {
  int j = 1;
  MembershipVerdict syzygy_side;    // Omega^{j-1}(M) against the full sequence
  MembershipVerdict truncated_side;  // M against (Y_j, ..., Y_n)
  bool agree() const { return syzygy_side.member == truncated_side.member; }
};

inline ShiftReport shift_check(const FpModule& m, const SpecSeq& seq, int j, const Window& w, Workspace& ws,
                               CotiltMethod method = CotiltMethod::bass) {
  if (j < 1 || j > seq.n()) throw InputError("classify.shift", "shift index j must lie in 1.." + std::to_string(seq.n()));
  ShiftReport r;
  r.j = j;
  r.syzygy_side = cotilting_membership(ws.syzygy(m, j - 1), seq, w, method, ws);
  r.truncated_side = cotilting_membership(m, seq.truncate_from(j), w, method, ws);
  return r;
}

struct Generator {
  std::string label;  // "R" or "Tr Omega^{i-1}(R/p)"
  std::string prime;
  int i = 0;
  FpModule module;
  PdResult pd;
};

/// The set {Tr Omega^{i-1}(R/p) : p minimal in Y_i} together with R.
inline std::vector<Generator> resolving_generators(const SpecSeq& seq, const Window& w, Workspace& ws) {
  detail::require_valid(seq, w, ws);
  std::vector<Generator> out;
  for (int i = 1; i <= seq.n(); ++i) {
    PrimeSet mins = minimal_elements(w, seq[i]);
    for (int a = 0; a < w.size(); ++a) {
      if (!has(mins, a)) continue;
      const Prime& p = w.prime(a);
      Generator g;
      g.label = "Tr Omega^" + std::to_string(i - 1) + "(R/" + p.name + ")";
      g.prime = p.name;
      g.i = i;
      g.module = ws.tr_syzygy(p, i - 1);
      g.pd = pd(g.module, std::max(seq.n() + 1, default_pd_cap(*ws.ring())));
      if (!g.pd.exact || g.pd.value > seq.n())
        throw InvariantError("classify.generators", g.label + " has pd " + g.pd.to_string() + ", above the sequence length " + std::to_string(seq.n()));
      out.push_back(std::move(g));
    }
  }
  Generator r;
  r.label = "R";
  r.module = FpModule::free(ws.ring(), 1);
  r.pd = {0, true};
  out.push_back(std::move(r));
  return out;
}

/// A class described by Ext vanishing: M belongs iff Ext^e(G, M) = 0 for
/// every listed pair (G, e).
struct ExtClass {
  std::vector<std::pair<FpModule, int>> conditions;

  bool contains(const FpModule& m, Workspace& ws) const {
    for (auto& [g, e] : conditions)
      if (!ws.ext(e, g, m).is_zero()) return false;
    return true;
  }
};

struct ClassComparison {
  std::vector<bool> first, second;
  std::vector<int> mismatches;  // suite indices
  bool agree() const { return mismatches.empty(); }
};

inline ClassComparison same_class_check(const ExtClass& a, const ExtClass& b, const std::vector<FpModule>& suite, Workspace& ws) {
  ClassComparison c;
  c.first.resize(suite.size());
  c.second.resize(suite.size());
  std::vector<char> fa(suite.size()), fb(suite.size());
  parallel_for(ws.jobs(), static_cast<int>(suite.size()), [&](int k) {
    fa[k] = a.contains(suite[k], ws);
    fb[k] = b.contains(suite[k], ws);
  });
  for (std::size_t k = 0; k < suite.size(); ++k) {
    c.first[k] = fa[k];
    c.second[k] = fb[k];
    if (fa[k] != fb[k]) c.mismatches.push_back(static_cast<int>(k));
  }
  return c;
}

/// The perpendicular class {M : Ext^j(G, M) = 0 for 1 <= j <= top}.
inline ExtClass ext_perp(const FpModule& g, int top) {
  ExtClass c;
  for (int j = 1; j <= top; ++j) c.conditions.emplace_back(g, j);
  return c;
}

}  // namespace spectilt
