#pragma once

#include <bit>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "spectilt/error.hpp"
#include "spectilt/ideal.hpp"
#include "spectilt/irreducible.hpp"

namespace spectilt {

/// R = A / I for a homogeneous proper ideal I of the ambient ring A.
class Ring {
 public:
  Ring(PolyRingPtr ambient, std::vector<Poly> relations, std::string name = "R", bool gorenstein = false)
      : ambient_(std::move(ambient)), ideal_(ambient_, std::move(relations)), name_(std::move(name)), gorenstein_(gorenstein) {
    if (ideal_.is_unit()) throw InputError("ringspec.ring", "defining ideal of " + name_ + " is the unit ideal");
    if (!ideal_.is_homogeneous()) throw InputError("ringspec.ring", "defining ideal of " + name_ + " is not homogeneous");
    const auto& gb = ideal_.gb();
    if (gb.empty()) {
      domain_ = true;
    } else {
      bool linear = true;
      for (auto& g : gb) linear = linear && g.degree() == 1;
      domain_ = linear || (gb.size() == 1 && check_irreducible(gb[0]) == Irreducibility::irreducible);
    }
    dim_ = krull_dim(ideal_);
  }

  const PolyRingPtr& ambient() const { return ambient_; }
  const Ideal& ideal() const { return ideal_; }
  const std::string& name() const { return name_; }
  int nvars() const { return ambient_->nvars(); }
  const Field& field() const { return ambient_->field; }
  bool is_polynomial() const { return ideal_.is_zero(); }
  bool gorenstein_asserted() const { return gorenstein_; }
  /// I is zero or a certified prime, so R is a domain.
  bool is_certified_domain() const { return domain_; }
  int dim() const { return dim_; }

  Poly reduce(const Poly& f) const { return ideal_.is_zero() ? f : ideal_.normal_form(f); }

  Poly parse(std::string_view text) const { return reduce(Poly::parse(ambient_, text)); }

  /// The graded maximal ideal (x_1, ..., x_m).
  Ideal irrelevant_ideal() const {
    std::vector<Poly> v;
    for (int i = 0; i < nvars(); ++i) v.push_back(Poly::variable(ambient_, i));
    return Ideal(ambient_, v) + ideal_;
  }

  std::string to_string() const {
    std::string s = field().name() + "[";
    for (int i = 0; i < nvars(); ++i) s += (i ? "," : "") + ambient_->vars[i];
    s += "]";
    if (!ideal_.is_zero()) s += " / " + ideal_.to_string();
    return s;
  }

 private:
  PolyRingPtr ambient_;
  Ideal ideal_;
  std::string name_;
  bool gorenstein_ = false;
  bool domain_ = false;
  int dim_ = 0;
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(PolyRingPtr ambient, std::vector<Poly> relations = {}, std::string name = "R", bool gorenstein = false) {
  return std::make_shared<const Ring>(std::move(ambient), std::move(relations), std::move(name), gorenstein);
}

/// Convenience: QQ[vars] / (relations), relations given as text.
inline RingPtr make_ring(const Field& field, std::vector<std::string> vars, const std::vector<std::string>& relations = {},
                         std::string name = "R", bool gorenstein = false) {
  auto a = make_poly_ring(field, std::move(vars));
  std::vector<Poly> rel;
  for (auto& r : relations) rel.push_back(Poly::parse(a, r));
  return make_ring(a, std::move(rel), std::move(name), gorenstein);
}

enum class Certificate { monomial, linear, principal, zero_ideal, asserted };

inline const char* certificate_name(Certificate c) {
  switch (c) {
    case Certificate::monomial: return "monomial";
    case Certificate::linear: return "linear";
    case Certificate::principal: return "principal";
    case Certificate::zero_ideal: return "zero-ideal";
    case Certificate::asserted: return "asserted";
  }
  return "?";
}

enum class PrimeMode { prove, assert_prime };

/// A prime of R, stored as its preimage in the ambient ring.
struct Prime {
  std::string name;
  Ideal ideal;
  Certificate certificate = Certificate::asserted;
  int height = 0;
  bool height_overridden = false;

  bool is_proven() const { return certificate != Certificate::asserted; }
  std::string to_string() const { return ideal.to_string(); }
};

namespace detail {

inline std::optional<Certificate> prove_prime(const Ring& r, const Ideal& p) {
  const auto& gb = p.gb();
  if (gb.empty()) return r.is_certified_domain() ? std::optional(Certificate::zero_ideal) : std::nullopt;
  bool monomial = true, linear = true;
  for (auto& g : gb) {
    monomial = monomial && g.size() == 1 && g.degree() == 1;
    linear = linear && g.degree() == 1;
  }
  if (monomial) return Certificate::monomial;
  if (linear) return Certificate::linear;
  if (p == r.ideal() && r.is_certified_domain()) return Certificate::zero_ideal;
  if (gb.size() == 1 && check_irreducible(gb[0]) == Irreducibility::irreducible) return Certificate::principal;
  return std::nullopt;
}

}  // namespace detail

/// Declares the prime of R generated by `gens` (the ambient ideal is
/// gens + I). Prove mode fails unless a certificate applies; assert mode
/// still records a certificate when one is found.
inline Prime declare_prime(const RingPtr& r, const std::vector<Poly>& gens, PrimeMode mode, std::string name = "p",
                           std::optional<int> height_override = std::nullopt) {
  Ideal p = Ideal(r->ambient(), gens) + r->ideal();
  p = Ideal(r->ambient(), p.gb());
  if (p.is_unit()) throw InputError("ringspec.prime", "prime " + name + " is the unit ideal");
  if (!p.is_homogeneous()) throw InputError("ringspec.prime", "prime " + name + " is not homogeneous");
  Prime out;
  out.name = std::move(name);
  out.ideal = p;
  auto cert = detail::prove_prime(*r, p);
  if (!cert && mode == PrimeMode::prove)
    throw InputError("ringspec.certify", "no primality certificate applies to " + out.name + " = " + p.to_string() +
                                             " (monomial, linear, principal-irreducible or zero ideal of a domain); use 'assert'");
  out.certificate = cert.value_or(Certificate::asserted);
  if (height_override) {
    if (*height_override < 0) throw InputError("ringspec.prime", "negative height override");
    out.height = *height_override;
    out.height_overridden = true;
  } else {
    out.height = r->dim() - krull_dim(p);
  }
  return out;
}

inline Prime declare_prime(const RingPtr& r, const std::vector<std::string>& gens, PrimeMode mode = PrimeMode::prove,
                           std::string name = "p") {
  std::vector<Poly> g;
  for (auto& s : gens) g.push_back(Poly::parse(r->ambient(), s));
  return declare_prime(r, g, mode, std::move(name));
}

/// Subset of a window, one bit per prime.
using PrimeSet = std::uint64_t;

inline constexpr int kMaxWindow = 64;

inline int set_size(PrimeSet s) { return std::popcount(s); }
inline bool has(PrimeSet s, int i) { return (s >> i) & 1u; }

/// Finite set of primes of one ring with their inclusion order.
class Window {
 public:
  Window() = default;
  Window(RingPtr ring, std::vector<Prime> primes, std::string name = "W") : ring_(std::move(ring)), primes_(std::move(primes)), name_(std::move(name)) {
    const int n = size();
    if (n > kMaxWindow) throw InputError("ringspec.window", "windows hold at most 64 primes");
    leq_.assign(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) leq_[i][j] = (i == j) || primes_[j].ideal.contains(primes_[i].ideal);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (leq_[i][j] && leq_[j][i])
          throw InputError("ringspec.window", "primes " + primes_[i].name + " and " + primes_[j].name + " are equal");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && leq_[i][j] && primes_[i].height >= primes_[j].height)
          throw InputError("ringspec.window", "height is not strictly increasing along " + primes_[i].name + " < " + primes_[j].name +
                                                  "; override the height of a prime");
  }

  const RingPtr& ring() const { return ring_; }
  const std::string& name() const { return name_; }
  int size() const { return static_cast<int>(primes_.size()); }
  const Prime& prime(int i) const { return primes_[i]; }
  const std::vector<Prime>& primes() const { return primes_; }
  PrimeSet all() const { return size() == 64 ? ~PrimeSet{0} : (PrimeSet{1} << size()) - 1; }

  /// primes_[i] ⊆ primes_[j].
  bool leq(int i, int j) const { return leq_[i][j]; }

  int index_of(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
      if (primes_[i].name == name) return i;
    return -1;
  }

  bool is_upward_closed(PrimeSet s) const {
    for (int i = 0; i < size(); ++i)
      if (has(s, i))
        for (int j = 0; j < size(); ++j)
          if (leq_[i][j] && !has(s, j)) return false;
    return true;
  }

  /// Primes of the window contained in primes_[i] (the window of R_p).
  PrimeSet below(int i) const {
    PrimeSet s = 0;
    for (int j = 0; j < size(); ++j)
      if (leq_[j][i]) s |= PrimeSet{1} << j;
    return s;
  }

  std::string set_to_string(PrimeSet s) const {
    std::string out = "{";
    bool first = true;
    for (int i = 0; i < size(); ++i)
      if (has(s, i)) {
        out += (first ? "" : ", ") + primes_[i].name;
        first = false;
      }
    return out + "}";
  }

  std::vector<std::string> set_names(PrimeSet s) const {
    std::vector<std::string> out;
    for (int i = 0; i < size(); ++i)
      if (has(s, i)) out.push_back(primes_[i].name);
    return out;
  }

 private:
  RingPtr ring_;
  std::vector<Prime> primes_;
  std::string name_;
  std::vector<std::vector<bool>> leq_;
};

/// Smallest upward-closed subset containing s.
inline PrimeSet spec_closure(const Window& w, PrimeSet s) {
  PrimeSet out = s;
  for (int i = 0; i < w.size(); ++i)
    if (has(s, i))
      for (int j = 0; j < w.size(); ++j)
        if (w.leq(i, j)) out |= PrimeSet{1} << j;
  return out;
}

/// Inclusion-minimal members of an upward-closed subset.
inline PrimeSet minimal_elements(const Window& w, PrimeSet s) {
  if (!w.is_upward_closed(s)) throw InputError("ringspec.minimal", "subset " + w.set_to_string(s) + " is not closed under specialization");
  PrimeSet out = 0;
  for (int i = 0; i < w.size(); ++i) {
    if (!has(s, i)) continue;
    bool minimal = true;
    for (int j = 0; j < w.size() && minimal; ++j)
      if (j != i && has(s, j) && w.leq(j, i)) minimal = false;
    if (minimal) out |= PrimeSet{1} << i;
  }
  return out;
}

/// Descending sequence Y_1 ⊇ ... ⊇ Y_n of window subsets.
struct SpecSeq {
  std::vector<PrimeSet> y;

  int n() const { return static_cast<int>(y.size()); }
  PrimeSet operator[](int i) const { return y[i - 1]; }  // 1-based, matching Y_i
  friend bool operator==(const SpecSeq& a, const SpecSeq& b) { return a.y == b.y; }

  SpecSeq truncate_from(int j) const { return SpecSeq{std::vector<PrimeSet>(y.begin() + (j - 1), y.end())}; }

  std::string to_string(const Window& w) const {
    std::string s = "(";
    for (int i = 0; i < n(); ++i) s += (i ? ", " : "") + w.set_to_string(y[i]);
    return s + ")";
  }
};

/// Every prime of R generated by a subset of the variables, named by its
/// generators ("0", "(x)", "(x,y)", ...), ordered by size then index.
inline Window monomial_window(const RingPtr& r, std::string name = "W") {
  const int n = r->nvars();
  std::vector<std::uint32_t> masks;
  for (std::uint32_t s = 0; s < (1u << n); ++s) masks.push_back(s);
  std::stable_sort(masks.begin(), masks.end(), [](auto a, auto b) { return std::popcount(a) < std::popcount(b); });
  std::vector<Prime> primes;
  for (auto s : masks) {
    std::vector<Poly> gens;
    std::string label = "(";
    for (int v = 0; v < n; ++v)
      if (s & (1u << v)) {
        gens.push_back(Poly::variable(r->ambient(), v));
        label += (label.size() > 1 ? "," : "") + r->ambient()->vars[v];
      }
    label = s ? label + ")" : "0";
    if (!Ideal(r->ambient(), gens).contains(r->ideal())) continue;
    primes.push_back(declare_prime(r, gens, PrimeMode::prove, label));
  }
  return Window(r, std::move(primes), std::move(name));
}

}  // namespace spectilt
