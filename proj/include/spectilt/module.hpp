#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "spectilt/error.hpp"
#include "spectilt/ideal.hpp"
#include "spectilt/module_gb.hpp"
#include "spectilt/ring.hpp"

namespace spectilt {

/// Dense vector over the ambient ring.
using DVec = std::vector<Poly>;
/// Row-major matrix; each row is one relation or one image vector.
using Matrix = std::vector<DVec>;

namespace detail {

inline Vec to_vec(const VecArith& ar, const DVec& v) { return ar.from_dense(v); }

inline DVec zero_dvec(const PolyRingPtr& a, int n) { return DVec(n, Poly(a)); }

inline DVec unit_dvec(const PolyRingPtr& a, int n, int j, const Poly& f) {
  DVec v = zero_dvec(a, n);
  v[j] = f;
  return v;
}

inline bool is_zero(const DVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Poly& p) { return p.is_zero(); });
}

/// Degree of a homogeneous vector under generator degrees `degs`; nullopt
/// for the zero vector.
inline std::optional<int> vec_degree(const DVec& v, const std::vector<int>& degs) {
  for (std::size_t j = 0; j < v.size(); ++j)
    if (!v[j].is_zero()) return v[j].terms()[0].first.degree() + degs[j];
  return std::nullopt;
}

/// The vectors f·e_k for f in the reduced basis of I: the relations every
/// presentation over R = A/I carries implicitly.
inline std::vector<DVec> ideal_block(const Ring& r, int n) {
  std::vector<DVec> out;
  for (int k = 0; k < n; ++k)
    for (auto& f : r.ideal().gb()) out.push_back(unit_dvec(r.ambient(), n, k, f));
  return out;
}

inline DVec reduce_mod(const Ring& r, DVec v) {
  for (auto& p : v) p = r.reduce(p);
  return v;
}

/// Gröbner basis of {c in A^s : sum c_j v_j lies in span(zero_vecs)} for
/// v_j in A^m, by an elimination basis of the vectors (v_j, e_j) in
/// A^(m+s) with the first m components eliminated.
inline std::vector<DVec> syzygies(const PolyRingPtr& a, const std::vector<DVec>& vs, const std::vector<DVec>& zero_vecs,
                                  const std::vector<int>& target_degs, const std::vector<int>& src_degs) {
  const int m = static_cast<int>(target_degs.size());
  const int s = static_cast<int>(vs.size());
  std::vector<int> shifts = target_degs;
  shifts.insert(shifts.end(), src_degs.begin(), src_degs.end());
  VecArith ar(a->field, ModuleOrder(a->order, shifts, m));
  std::vector<Vec> input;
  input.reserve(vs.size() + zero_vecs.size());
  for (int j = 0; j < s; ++j) {
    DVec full = vs[j];
    full.resize(m + s, Poly(a));
    full[m + j] = Poly::one(a);
    input.push_back(ar.from_dense(full));
  }
  for (auto& z : zero_vecs) {
    DVec full = z;
    full.resize(m + s, Poly(a));
    input.push_back(ar.from_dense(full));
  }
  ModuleGB gb(a->field, ar.order(), input);
  std::vector<DVec> out;
  for (auto& g : gb.basis()) {
    if (g[0].comp < m) continue;
    auto dense = ar.to_dense(g, a, m + s);
    out.emplace_back(dense.begin() + m, dense.end());
  }
  return out;
}

/// Indices of a minimal subset of `cands` whose images generate
/// (span(base) + span(cands)) / span(base). Graded Nakayama: walk degrees
/// upward; in each degree the normal form modulo a basis of base plus the
/// lower-degree choices is k-linear, so a k-rank computation decides.
inline std::vector<int> minimal_subset(const PolyRingPtr& a, const std::vector<DVec>& cands, const std::vector<DVec>& base,
                                       const std::vector<int>& degs) {
  VecArith ar(a->field, ModuleOrder(a->order, degs));
  std::vector<std::pair<int, int>> order;  // (degree, index)
  for (int i = 0; i < static_cast<int>(cands.size()); ++i)
    if (auto d = vec_degree(cands[i], degs)) order.emplace_back(*d, i);
  std::stable_sort(order.begin(), order.end(), [](auto& x, auto& y) { return x.first < y.first; });

  std::vector<Vec> pool;
  for (auto& b : base)
    if (!is_zero(b)) pool.push_back(ar.from_dense(b));
  std::vector<int> kept;
  std::size_t k = 0;
  while (k < order.size()) {
    int d = order[k].first;
    ModuleGB gb(a->field, ar.order(), pool);
    std::vector<Vec> echelon;
    std::vector<int> chosen;
    for (; k < order.size() && order[k].first == d; ++k) {
      Vec nf = gb.reduce(ar.from_dense(cands[order[k].second]));
      bool changed = true;
      while (!nf.empty() && changed) {
        changed = false;
        for (auto& e : echelon)
          if (e[0].comp == nf[0].comp && e[0].mon == nf[0].mon) {
            nf = ar.sub_mul(nf, 0, nf[0].coef, Monomial(), e, 0);
            changed = true;
            break;
          }
      }
      if (nf.empty()) continue;
      echelon.push_back(ar.monic(std::move(nf)));
      chosen.push_back(order[k].second);
    }
    for (int c : chosen) {
      pool.push_back(ar.from_dense(cands[c]));
      kept.push_back(c);
    }
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

}  // namespace detail

/// Finitely presented graded module coker(A^r -> A^g) over R = A/I, with
/// relations as rows and generators as columns. Entries are stored reduced
/// modulo I and every row is homogeneous for the generator degrees.
class FpModule {
 public:
  FpModule() = default;

  FpModule(RingPtr ring, std::vector<int> degrees, Matrix relations)
      : ring_(std::move(ring)), degs_(std::move(degrees)), cache_(std::make_shared<Cache>()) {
    const int g = ngens();
    for (std::size_t i = 0; i < relations.size(); ++i) {
      auto& row = relations[i];
      if (static_cast<int>(row.size()) != g)
        throw InputError("homalg.shape", "relation " + std::to_string(i + 1) + " has " + std::to_string(row.size()) +
                                             " entries, expected " + std::to_string(g));
      std::optional<int> rowdeg;
      for (int j = 0; j < g; ++j) {
        if (row[j].ring() && !row[j].ring()->same_as(*ring_->ambient()))
          throw InputError("homalg.ring", "relation entry from a different ring");
        if (!row[j].ring()) row[j] = Poly(ring_->ambient());
        row[j] = ring_->reduce(row[j]);
        if (row[j].is_zero()) continue;
        if (!row[j].is_homogeneous())
          throw InputError("homalg.degree", "relation " + std::to_string(i + 1) + ", column " + std::to_string(j + 1) + ": entry " +
                                                row[j].to_string() + " is not homogeneous");
        int d = row[j].degree() + degs_[j];
        if (!rowdeg) {
          rowdeg = d;
        } else if (*rowdeg != d) {
          throw InputError("homalg.degree", "relation " + std::to_string(i + 1) + ", column " + std::to_string(j + 1) + ": entry " +
                                                row[j].to_string() + " has degree " + std::to_string(row[j].degree()) + ", expected " +
                                                std::to_string(*rowdeg - degs_[j]) + " for the generator degrees given");
        }
      }
      if (rowdeg) {
        rels_.push_back(std::move(row));
        reldegs_.push_back(*rowdeg);
      }
    }
  }

  static FpModule free(RingPtr ring, std::vector<int> degrees) { return FpModule(std::move(ring), std::move(degrees), {}); }
  static FpModule free(RingPtr ring, int rank) { return free(std::move(ring), std::vector<int>(rank, 0)); }
  static FpModule zero(RingPtr ring) { return FpModule(std::move(ring), {}, {}); }

  /// R/(gens) generated in degree `deg`.
  static FpModule cyclic(RingPtr ring, const std::vector<Poly>& gens, int deg = 0) {
    Matrix rows;
    for (auto& g : gens) rows.push_back({g});
    return FpModule(std::move(ring), {deg}, std::move(rows));
  }

  static FpModule cyclic(const RingPtr& ring, const std::vector<std::string>& gens, int deg = 0) {
    std::vector<Poly> g;
    for (auto& s : gens) g.push_back(Poly::parse(ring->ambient(), s));
    return cyclic(ring, g, deg);
  }

  /// R/p for a prime (or any ideal) of the ambient ring.
  static FpModule quotient(const RingPtr& ring, const Ideal& p, int deg = 0) { return cyclic(ring, p.generators(), deg); }

  const RingPtr& ring() const { return ring_; }
  const std::vector<int>& degrees() const { return degs_; }
  const Matrix& relations() const { return rels_; }
  const std::vector<int>& relation_degrees() const { return reldegs_; }
  int ngens() const { return static_cast<int>(degs_.size()); }
  int nrels() const { return static_cast<int>(rels_.size()); }

  /// M(s): every generator degree decreases by s.
  FpModule twist(int s) const {
    auto d = degs_;
    for (auto& x : d) x -= s;
    return FpModule(ring_, d, rels_);
  }

  /// Relations plus the implicit I-multiples, as dense vectors.
  std::vector<DVec> submodule_generators() const {
    auto out = rels_;
    auto block = detail::ideal_block(*ring_, ngens());
    out.insert(out.end(), block.begin(), block.end());
    return out;
  }

  /// Reduced basis of the relation module plus I·A^g (cached).
  const ModuleGB& gb() const {
    std::call_once(cache_->once, [this] {
      VecArith ar(ring_->field(), ModuleOrder(ring_->ambient()->order, degs_));
      std::vector<Vec> in;
      for (auto& v : submodule_generators()) in.push_back(ar.from_dense(v));
      cache_->gb = std::make_unique<ModuleGB>(ring_->field(), ar.order(), in);
    });
    return *cache_->gb;
  }

  bool is_zero() const {
    for (int j = 0; j < ngens(); ++j)
      if (!gb().contains_unit_in(j)) return false;
    return true;
  }

  /// Whether a vector of A^g maps to zero in M.
  bool vanishes(const DVec& v) const { return gb().reduces_to_zero(gb().arith().from_dense(v)); }

  bool is_free() const { return rels_.empty(); }

  friend bool operator==(const FpModule& a, const FpModule& b) { return a.degs_ == b.degs_ && a.rels_ == b.rels_; }

  std::string to_string() const {
    std::string s = "coker [";
    for (std::size_t i = 0; i < rels_.size(); ++i) {
      s += i ? ", [" : "[";
      for (int j = 0; j < ngens(); ++j) s += (j ? ", " : "") + rels_[i][j].to_string();
      s += "]";
    }
    s += "] degrees [";
    for (int j = 0; j < ngens(); ++j) s += (j ? "," : "") + std::to_string(degs_[j]);
    return s + "]";
  }

 private:
  struct Cache {
    std::once_flag once;
    std::unique_ptr<ModuleGB> gb;
  };

  RingPtr ring_;
  std::vector<int> degs_;
  Matrix rels_;
  std::vector<int> reldegs_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// M ⊕ N.
inline FpModule direct_sum(const FpModule& m, const FpModule& n) {
  const auto& a = m.ring()->ambient();
  auto degs = m.degrees();
  degs.insert(degs.end(), n.degrees().begin(), n.degrees().end());
  Matrix rows;
  for (auto& r : m.relations()) {
    DVec v = r;
    v.resize(degs.size(), Poly(a));
    rows.push_back(std::move(v));
  }
  for (auto& r : n.relations()) {
    DVec v = detail::zero_dvec(a, m.ngens());
    v.insert(v.end(), r.begin(), r.end());
    rows.push_back(std::move(v));
  }
  return FpModule(m.ring(), std::move(degs), std::move(rows));
}

/// Minimal graded presentation: unit entries are eliminated together with
/// their generator, then redundant relations are dropped.
inline FpModule prune(const FpModule& m) {
  const auto& ring = *m.ring();
  const auto& a = ring.ambient();
  const auto& fld = ring.field();
  Matrix rows = m.relations();
  std::vector<int> degs = m.degrees();
  for (;;) {
    int pi = -1, pj = -1;
    for (int i = 0; i < static_cast<int>(rows.size()) && pi < 0; ++i)
      for (int j = 0; j < static_cast<int>(degs.size()); ++j)
        if (rows[i][j].is_unit()) {
          pi = i;
          pj = j;
          break;
        }
    if (pi < 0) break;
    const DVec pivot = rows[pi];
    auto cinv = fld.inv(pivot[pj].lead_coeff());
    Matrix next;
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == pi) continue;
      DVec r = rows[i];
      if (!r[pj].is_zero()) {
        Poly f = r[pj].scale(cinv);
        for (std::size_t k = 0; k < r.size(); ++k)
          if (!pivot[k].is_zero()) r[k] = ring.reduce(r[k] - f * pivot[k]);
      }
      r.erase(r.begin() + pj);
      if (!detail::is_zero(r)) next.push_back(std::move(r));
    }
    degs.erase(degs.begin() + pj);
    rows = std::move(next);
  }
  auto keep = detail::minimal_subset(a, rows, detail::ideal_block(ring, static_cast<int>(degs.size())), degs);
  Matrix minimal;
  for (int i : keep) minimal.push_back(rows[i]);
  return FpModule(m.ring(), degs, std::move(minimal));
}

/// Chain complex of graded free R-modules F_0 <- F_1 <- ...; maps[i] is
/// the matrix of F_{i+1} -> F_i with one row per generator of F_{i+1}.
struct Complex {
  RingPtr ring;
  std::vector<std::vector<int>> degrees;
  std::vector<Matrix> maps;
  /// True once some F_{k+1} = 0 was established (k <= length()).
  bool complete = false;

  int length() const { return static_cast<int>(degrees.size()) - 1; }
  int rank(int i) const { return i >= 0 && i <= length() ? static_cast<int>(degrees[i].size()) : 0; }

  std::vector<int> betti() const {
    std::vector<int> b;
    for (auto& d : degrees) b.push_back(static_cast<int>(d.size()));
    return b;
  }

  /// No entry of any differential is a unit.
  bool is_minimal() const {
    for (auto& m : maps)
      for (auto& row : m)
        for (auto& e : row)
          if (e.is_unit()) return false;
    return true;
  }

  /// d_i ∘ d_{i+1} = 0 modulo I for all consecutive maps.
  bool is_composable() const {
    for (std::size_t i = 0; i + 1 < maps.size(); ++i) {
      const auto& upper = maps[i + 1];  // F_{i+2} -> F_{i+1}
      const auto& lower = maps[i];      // F_{i+1} -> F_i
      for (auto& row : upper)
        for (std::size_t c = 0; c < degrees[i].size(); ++c) {
          Poly s(ring->ambient());
          for (std::size_t k = 0; k < row.size(); ++k)
            if (!row[k].is_zero() && !lower[k][c].is_zero()) s += row[k] * lower[k][c];
          if (!ring->reduce(s).is_zero()) return false;
        }
    }
    return true;
  }
};

/// Generators of the kernel of the map F -> G sending generator k to
/// rows[k], over R. Minimal when `minimal` is set.
inline Matrix kernel_generators(const Ring& ring, const Matrix& rows, const std::vector<int>& src_degs, const std::vector<int>& target_degs,
                                bool minimal) {
  const auto& a = ring.ambient();
  const int s = static_cast<int>(src_degs.size());
  auto syz = detail::syzygies(a, rows, detail::ideal_block(ring, static_cast<int>(target_degs.size())), target_degs, src_degs);
  Matrix cands;
  for (auto& v : syz) {
    auto r = detail::reduce_mod(ring, v);
    if (!detail::is_zero(r)) cands.push_back(std::move(r));
  }
  if (!minimal) return cands;
  auto keep = detail::minimal_subset(a, cands, detail::ideal_block(ring, s), src_degs);
  Matrix out;
  for (int i : keep) out.push_back(cands[i]);
  return out;
}

/// syzygy_matrix: generators of ker(A) for the map given by the rows of A.
inline Matrix syzygy_matrix(const RingPtr& ring, const Matrix& rows, const std::vector<int>& src_degs, const std::vector<int>& target_degs) {
  return kernel_generators(*ring, rows, src_degs, target_degs, true);
}

/// Free resolution F_0 <- ... <- F_len of M. With `probe_end`, one extra
/// kernel is computed so `complete` is exact at the cap.
inline Complex free_resolution(const FpModule& m, int len, bool minimal = true, bool probe_end = true) {
  Complex c;
  c.ring = m.ring();
  FpModule p = minimal ? prune(m) : m;
  c.degrees.push_back(p.degrees());
  if (p.nrels() == 0) {
    c.complete = true;
    return c;
  }
  if (len < 1) return c;
  c.maps.push_back(p.relations());
  c.degrees.push_back(p.relation_degrees());
  for (;;) {
    const int top = c.length();
    if (top >= len && !probe_end) break;
    auto next = kernel_generators(*c.ring, c.maps.back(), c.degrees[top], c.degrees[top - 1], minimal);
    if (next.empty()) {
      c.complete = true;
      break;
    }
    if (top >= len) break;
    std::vector<int> degs;
    for (auto& v : next) degs.push_back(*detail::vec_degree(v, c.degrees[top]));
    c.maps.push_back(std::move(next));
    c.degrees.push_back(std::move(degs));
  }
  return c;
}

struct PdResult {
  int value = 0;
  bool exact = true;

  std::string to_string() const { return exact ? std::to_string(value) : ">= " + std::to_string(value); }
  friend bool operator==(const PdResult& a, const PdResult& b) { return a.value == b.value && a.exact == b.exact; }
};

inline int default_pd_cap(const Ring& r) { return 2 * r.nvars() + 2; }

/// Projective dimension from the minimal resolution; -1 for the zero module.
inline PdResult pd(const FpModule& m, std::optional<int> cap = std::nullopt) {
  int c = cap.value_or(default_pd_cap(*m.ring()));
  if (m.is_zero()) return {-1, true};
  auto res = free_resolution(m, c, true, true);
  if (res.complete) return {res.length(), true};
  return {c, false};
}

namespace detail {

/// Homology at Q of P -> Q -> S, where Q = A^n / (q_rel + I A^n) and
/// S = A^p / (s_rel + I A^p). `alpha` lists images in A^n of generators of
/// P; `beta` lists images in A^p of the generators of Q (empty when the
/// outgoing map is zero).
inline FpModule homology(const RingPtr& ring, const std::vector<int>& q_degs, const Matrix& q_rel, const Matrix& alpha,
                         const Matrix& beta, const std::vector<int>& s_degs, const Matrix& s_rel) {
  const auto& a = ring->ambient();
  const int n = static_cast<int>(q_degs.size());
  if (n == 0) return FpModule::zero(ring);
  Matrix cands;
  bool beta_zero = beta.empty() || std::all_of(beta.begin(), beta.end(), [](const DVec& v) { return is_zero(v); });
  if (beta_zero) {
    for (int j = 0; j < n; ++j) cands.push_back(unit_dvec(a, n, j, Poly::one(a)));
  } else {
    Matrix zero_s = s_rel;
    auto block = ideal_block(*ring, static_cast<int>(s_degs.size()));
    zero_s.insert(zero_s.end(), block.begin(), block.end());
    for (auto& v : syzygies(a, beta, zero_s, s_degs, q_degs)) {
      auto r = reduce_mod(*ring, v);
      if (!is_zero(r)) cands.push_back(std::move(r));
    }
  }
  Matrix base = q_rel;
  base.insert(base.end(), alpha.begin(), alpha.end());
  auto block = ideal_block(*ring, n);
  base.insert(base.end(), block.begin(), block.end());
  auto keep = minimal_subset(a, cands, base, q_degs);
  if (keep.empty()) return FpModule::zero(ring);
  Matrix gens;
  std::vector<int> gdegs;
  for (int i : keep) {
    gens.push_back(cands[i]);
    gdegs.push_back(*vec_degree(cands[i], q_degs));
  }
  auto rel = syzygies(a, gens, base, q_degs, gdegs);
  return prune(FpModule(ring, gdegs, rel));
}

/// Block placement of N's relations in N^b.
inline Matrix block_relations(const FpModule& nmod, int b) {
  const auto& a = nmod.ring()->ambient();
  const int n = nmod.ngens();
  Matrix out;
  for (int k = 0; k < b; ++k)
    for (auto& r : nmod.relations()) {
      DVec v = zero_dvec(a, n * b);
      for (int j = 0; j < n; ++j) v[k * n + j] = r[j];
      out.push_back(std::move(v));
    }
  return out;
}

}  // namespace detail

/// Ext^i(M, N) via Hom(F_•, N) for a minimal resolution F of M. A caller
/// may pass a precomputed resolution of length >= i+1 (or complete).
inline FpModule ext_module(int i, const FpModule& m, const FpModule& n, const Complex* res = nullptr) {
  if (i < 0) throw InputError("homalg.ext", "negative Ext index");
  Complex local;
  if (!res || (res->length() < i + 1 && !res->complete)) {
    local = free_resolution(m, i + 1, true, false);
    res = &local;
  }
  const auto& ring = m.ring();
  const auto& a = ring->ambient();
  FpModule np = prune(n);
  const int ng = np.ngens();
  const int bi = res->rank(i);
  if (bi == 0 || ng == 0) return FpModule::zero(ring);
  auto hom_degs = [&](int level) {
    std::vector<int> d;
    for (int k = 0; k < res->rank(level); ++k)
      for (int j = 0; j < ng; ++j) d.push_back(np.degrees()[j] - res->degrees[level][k]);
    return d;
  };
  auto q_degs = hom_degs(i);
  Matrix q_rel = detail::block_relations(np, bi);
  Matrix beta, s_rel;
  std::vector<int> s_degs;
  const int bn = res->rank(i + 1);
  if (bn > 0) {
    const auto& d = res->maps[i];  // F_{i+1} -> F_i
    s_degs = hom_degs(i + 1);
    s_rel = detail::block_relations(np, bn);
    for (int k = 0; k < bi; ++k)
      for (int j = 0; j < ng; ++j) {
        DVec v = detail::zero_dvec(a, bn * ng);
        for (int mm = 0; mm < bn; ++mm) v[mm * ng + j] = d[mm][k];
        beta.push_back(std::move(v));
      }
  }
  Matrix alpha;
  if (i >= 1) {
    const auto& d = res->maps[i - 1];  // F_i -> F_{i-1}
    const int bp = res->rank(i - 1);
    for (int kp = 0; kp < bp; ++kp)
      for (int j = 0; j < ng; ++j) {
        DVec v = detail::zero_dvec(a, bi * ng);
        for (int k = 0; k < bi; ++k) v[k * ng + j] = d[k][kp];
        alpha.push_back(std::move(v));
      }
  }
  return detail::homology(ring, q_degs, q_rel, alpha, beta, s_degs, s_rel);
}

inline FpModule hom_module(const FpModule& m, const FpModule& n) { return ext_module(0, m, n); }

/// Tor_i(M, N) via F_• ⊗ N for a minimal resolution F of M.
inline FpModule tor_module(int i, const FpModule& m, const FpModule& n, const Complex* res = nullptr) {
  if (i < 0) throw InputError("homalg.tor", "negative Tor index");
  Complex local;
  if (!res || (res->length() < i + 1 && !res->complete)) {
    local = free_resolution(m, i + 1, true, false);
    res = &local;
  }
  const auto& ring = m.ring();
  const auto& a = ring->ambient();
  FpModule np = prune(n);
  const int ng = np.ngens();
  const int bi = res->rank(i);
  if (bi == 0 || ng == 0) return FpModule::zero(ring);
  auto tensor_degs = [&](int level) {
    std::vector<int> d;
    for (int k = 0; k < res->rank(level); ++k)
      for (int j = 0; j < ng; ++j) d.push_back(res->degrees[level][k] + np.degrees()[j]);
    return d;
  };
  auto q_degs = tensor_degs(i);
  Matrix q_rel = detail::block_relations(np, bi);
  Matrix beta, s_rel;
  std::vector<int> s_degs;
  if (i >= 1) {
    const auto& d = res->maps[i - 1];  // F_i -> F_{i-1}
    const int bp = res->rank(i - 1);
    s_degs = tensor_degs(i - 1);
    s_rel = detail::block_relations(np, bp);
    for (int k = 0; k < bi; ++k)
      for (int j = 0; j < ng; ++j) {
        DVec v = detail::zero_dvec(a, bp * ng);
        for (int l = 0; l < bp; ++l) v[l * ng + j] = d[k][l];
        beta.push_back(std::move(v));
      }
  }
  Matrix alpha;
  const int bn = res->rank(i + 1);
  if (bn > 0) {
    const auto& d = res->maps[i];  // F_{i+1} -> F_i
    for (int mm = 0; mm < bn; ++mm)
      for (int j = 0; j < ng; ++j) {
        DVec v = detail::zero_dvec(a, bi * ng);
        for (int k = 0; k < bi; ++k) v[k * ng + j] = d[mm][k];
        alpha.push_back(std::move(v));
      }
  }
  return detail::homology(ring, q_degs, q_rel, alpha, beta, s_degs, s_rel);
}

inline FpModule tensor(const FpModule& m, const FpModule& n) { return tor_module(0, m, n); }

/// dim_k M_d, counted as standard monomials of the relation module.
inline long hilbert_function(const FpModule& m, int d) {
  const int nv = m.ring()->nvars();
  const auto& basis = m.gb().basis();
  long count = 0;
  for (int j = 0; j < m.ngens(); ++j) {
    int t = d - m.degrees()[j];
    if (t < 0) continue;
    std::vector<Monomial> leads;
    for (auto& g : basis)
      if (g[0].comp == j) leads.push_back(g[0].mon);
    // enumerate exponent vectors of total degree t
    std::vector<int> e(nv, 0);
    auto visit = [&](auto&& self, int v, int left) -> void {
      if (v == nv - 1) {
        e[v] = left;
        Monomial mon = Monomial::from_exponents(e);
        for (auto& l : leads)
          if (l.divides(mon)) return;
        ++count;
        return;
      }
      for (int x = left; x >= 0; --x) {
        e[v] = x;
        self(self, v + 1, left - x);
      }
    };
    if (nv == 0) {
      if (t == 0 && leads.empty()) ++count;
      continue;
    }
    visit(visit, 0, t);
  }
  return count;
}

inline std::vector<long> hilbert_values(const FpModule& m, int lo, int hi) {
  std::vector<long> out;
  for (int d = lo; d <= hi; ++d) out.push_back(hilbert_function(m, d));
  return out;
}

/// ann(M) = ∩_j (U : e_j), each colon read off the syzygies of e_j
/// against the relation module.
inline Ideal annihilator(const FpModule& m) {
  const auto& ring = m.ring();
  const auto& a = ring->ambient();
  if (m.ngens() == 0) return Ideal::unit(a);
  auto zero = m.submodule_generators();
  Ideal acc;
  bool first = true;
  for (int j = 0; j < m.ngens(); ++j) {
    auto syz = detail::syzygies(a, {detail::unit_dvec(a, m.ngens(), j, Poly::one(a))}, zero, m.degrees(), {m.degrees()[j]});
    std::vector<Poly> gens;
    for (auto& v : syz) gens.push_back(v[0]);
    Ideal colon(a, gens);
    acc = first ? colon : intersect(acc, colon);
    first = false;
  }
  return Ideal(a, acc.gb());
}

/// Krull dimension of M; -1 for the zero module.
inline int dim_module(const FpModule& m) {
  if (m.is_zero()) return -1;
  return krull_dim(annihilator(m));
}

/// Total k-dimension when dim M <= 0; nullopt ("infinite") otherwise.
inline std::optional<long> length(const FpModule& m) {
  if (m.is_zero()) return 0;
  if (dim_module(m) > 0) return std::nullopt;
  int lo = *std::min_element(m.degrees().begin(), m.degrees().end());
  long total = 0;
  for (int d = lo;; ++d) {
    long h = hilbert_function(m, d);
    total += h;
    if (h == 0 && d > *std::max_element(m.degrees().begin(), m.degrees().end())) break;
  }
  return total;
}

/// Rank over Frac(A/p) of a matrix, by fraction-free elimination with
/// entries kept reduced modulo p.
inline int rank_mod_prime(Matrix rows, const Ideal& p) {
  for (auto& r : rows)
    for (auto& e : r) e = p.normal_form(e);
  int rank = 0;
  const int ncols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  std::vector<bool> used(rows.size(), false);
  for (int c = 0; c < ncols; ++c) {
    int piv = -1;
    for (int i = 0; i < static_cast<int>(rows.size()); ++i)
      if (!used[i] && !rows[i][c].is_zero()) {
        if (piv < 0 || rows[i][c].size() < rows[piv][c].size()) piv = i;
      }
    if (piv < 0) continue;
    used[piv] = true;
    ++rank;
    const Poly pv = rows[piv][c];
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (used[i] || rows[i][c].is_zero()) continue;
      const Poly f = rows[i][c];
      for (int k = 0; k < ncols; ++k) rows[i][k] = p.normal_form(pv * rows[i][k] - f * rows[piv][k]);
    }
  }
  return rank;
}

/// Generic rank over R/p of a module killed by p.
inline int rank_over_domain(const FpModule& n, const Prime& p) {
  if (n.ngens() == 0) return 0;
  if (!annihilator(n).contains(p.ideal))
    throw InputError("homalg.rank", "prime " + p.name + " does not annihilate the module, so its generic rank over R/" + p.name +
                                        " is undefined");
  return n.ngens() - rank_mod_prime(n.relations(), p.ideal);
}

/// mu_i(p, M) = rank over R/p of Ext^i(R/p, M).
inline int bass_invariant(int i, const Prime& p, const FpModule& m, const Complex* res_of_quotient = nullptr) {
  auto rp = FpModule::quotient(m.ring(), p.ideal);
  return rank_over_domain(ext_module(i, rp, m, res_of_quotient), p);
}

/// The residue field k = R/m_gr.
inline FpModule residue_field(const RingPtr& r) { return FpModule::quotient(r, r->irrelevant_ideal()); }

/// depth M = min { i : Ext^i(k, M) != 0 }.
inline int depth(const FpModule& m) {
  if (m.is_zero()) throw InputError("homalg.depth", "depth of the zero module is undefined");
  auto k = residue_field(m.ring());
  const int n = m.ring()->nvars();
  auto res = free_resolution(k, n + 1, true, false);
  for (int i = 0; i <= n; ++i)
    if (!ext_module(i, k, m, &res).is_zero()) return i;
  throw InvariantError("homalg.depth", "no nonvanishing Ext^i(k, M) for i <= number of variables");
}

/// Graded Betti numbers: for each homological degree, the sorted
/// generator degrees of F_i.
struct BettiTable {
  std::vector<std::vector<int>> degrees;
  bool complete = false;

  friend bool operator==(const BettiTable& a, const BettiTable& b) { return a.degrees == b.degrees && a.complete == b.complete; }
};

inline BettiTable betti_table(const FpModule& m, int len) {
  auto res = free_resolution(m, len, true, true);
  BettiTable t;
  t.complete = res.complete;
  for (auto d : res.degrees) {
    std::sort(d.begin(), d.end());
    t.degrees.push_back(std::move(d));
  }
  return t;
}

/// Isomorphism proxy: equal graded Betti tables (to `len`) and Hilbert
/// functions on [lo, hi]. With `up_to_twist`, N is first shifted so the
/// lowest generator degrees coincide.
inline bool betti_hilbert_equal(const FpModule& m, const FpModule& n, int len, int degree_bound, bool up_to_twist = false) {
  FpModule pm = prune(m), pn = prune(n);
  if (pm.ngens() == 0 || pn.ngens() == 0) return pm.ngens() == pn.ngens();
  int mm = *std::min_element(pm.degrees().begin(), pm.degrees().end());
  int nm = *std::min_element(pn.degrees().begin(), pn.degrees().end());
  if (up_to_twist && mm != nm) pn = pn.twist(nm - mm);
  if (!(betti_table(pm, len) == betti_table(pn, len))) return false;
  int lo = std::min(mm, up_to_twist ? mm : nm);
  return hilbert_values(pm, lo, degree_bound) == hilbert_values(pn, lo, degree_bound);
}

inline int max_presentation_degree(const FpModule& m) {
  int d = 0;
  for (int x : m.degrees()) d = std::max(d, x);
  for (int x : m.relation_degrees()) d = std::max(d, x);
  return d;
}

}  // namespace spectilt
