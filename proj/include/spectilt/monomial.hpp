#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "spectilt/error.hpp"

namespace spectilt {

inline constexpr int kMaxVars = 16;

/// Exponent vector with a cached total degree. Slots past the ambient
/// variable count stay zero.
class Monomial {
 public:
  Monomial() { exp_.fill(0); }

  static Monomial from_exponents(std::span<const int> e) {
    if (e.size() > static_cast<std::size_t>(kMaxVars)) throw InputError("polycore.vars", "too many variables");
    Monomial m;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] < 0 || e[i] > 0xFFFF) throw InputError("polycore.exponent", "exponent out of range");
      m.exp_[i] = static_cast<std::uint16_t>(e[i]);
      m.deg_ += e[i];
    }
    return m;
  }

  static Monomial variable(int i, int power = 1) {
    Monomial m;
    m.exp_[i] = static_cast<std::uint16_t>(power);
    m.deg_ = power;
    return m;
  }

  int operator[](int i) const { return exp_[i]; }
  int degree() const { return deg_; }
  bool is_one() const { return deg_ == 0; }

  void set(int i, int e) {
    deg_ += e - exp_[i];
    exp_[i] = static_cast<std::uint16_t>(e);
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) r.exp_[i] = static_cast<std::uint16_t>(exp_[i] + o.exp_[i]);
    r.deg_ = deg_ + o.deg_;
    return r;
  }

  /// Requires o | *this.
  Monomial operator/(const Monomial& o) const {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) r.exp_[i] = static_cast<std::uint16_t>(exp_[i] - o.exp_[i]);
    r.deg_ = deg_ - o.deg_;
    return r;
  }

  bool divides(const Monomial& o) const {
    if (deg_ > o.deg_) return false;
    for (int i = 0; i < kMaxVars; ++i)
      if (exp_[i] > o.exp_[i]) return false;
    return true;
  }

  bool coprime(const Monomial& o) const {
    for (int i = 0; i < kMaxVars; ++i)
      if (exp_[i] != 0 && o.exp_[i] != 0) return false;
    return true;
  }

  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) {
      r.exp_[i] = std::max(a.exp_[i], b.exp_[i]);
      r.deg_ += r.exp_[i];
    }
    return r;
  }

  static Monomial gcd(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) {
      r.exp_[i] = std::min(a.exp_[i], b.exp_[i]);
      r.deg_ += r.exp_[i];
    }
    return r;
  }

  /// Bit set of variables with positive exponent.
  std::uint32_t support() const {
    std::uint32_t s = 0;
    for (int i = 0; i < kMaxVars; ++i)
      if (exp_[i]) s |= 1u << i;
    return s;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.deg_ == b.deg_ && a.exp_ == b.exp_; }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ULL;
    for (auto e : exp_) h = (h ^ e) * 1099511628211ULL;
    return h;
  }

 private:
  std::array<std::uint16_t, kMaxVars> exp_;
  int deg_ = 0;
};

/// Monomial order on a fixed number of variables.
///
/// `lex` and `degrevlex` follow the usual conventions with variable 0 the
/// largest (after applying `perm`). `block` weights the first `block_size`
/// variables before falling back to degrevlex; it is an elimination order
/// for those variables.
class MonomialOrder {
 public:
  enum class Kind { lex, degrevlex, block };

  MonomialOrder() = default;
  MonomialOrder(Kind kind, int nvars, int block_size = 0, std::vector<int> perm = {})
      : kind_(kind), nvars_(nvars), block_(block_size), perm_(std::move(perm)) {
    if (perm_.empty()) {
      perm_.resize(nvars);
      std::iota(perm_.begin(), perm_.end(), 0);
    }
    if (static_cast<int>(perm_.size()) != nvars) throw InputError("polycore.order", "permutation length mismatch");
    std::vector<int> check = perm_;
    std::sort(check.begin(), check.end());
    for (int i = 0; i < nvars; ++i)
      if (check[i] != i) throw InputError("polycore.order", "not a permutation");
  }

  static MonomialOrder degrevlex(int n) { return {Kind::degrevlex, n}; }
  static MonomialOrder lex(int n) { return {Kind::lex, n}; }
  static MonomialOrder block(int n, int k) { return {Kind::block, n, k}; }

  Kind kind() const { return kind_; }
  int nvars() const { return nvars_; }
  int block_size() const { return block_; }
  const std::vector<int>& perm() const { return perm_; }

  /// Compares monomials; >0 means a is larger.
  int cmp(const Monomial& a, const Monomial& b) const { return cmp_shifted(a, 0, b, 0); }

  /// Comparison with additive degree shifts, the building block for module
  /// orders. Equal shifts reduce to `cmp`.
  int cmp_shifted(const Monomial& a, int sa, const Monomial& b, int sb) const {
    switch (kind_) {
      case Kind::lex:
        for (int i = 0; i < nvars_; ++i) {
          int v = perm_[i];
          if (a[v] != b[v]) return a[v] > b[v] ? 1 : -1;
        }
        return 0;
      case Kind::block: {
        int wa = 0, wb = 0;
        for (int i = 0; i < block_; ++i) {
          wa += a[perm_[i]];
          wb += b[perm_[i]];
        }
        if (wa != wb) return wa > wb ? 1 : -1;
        [[fallthrough]];
      }
      case Kind::degrevlex: {
        int da = a.degree() + sa, db = b.degree() + sb;
        if (da != db) return da > db ? 1 : -1;
        for (int i = nvars_ - 1; i >= 0; --i) {
          int v = perm_[i];
          if (a[v] != b[v]) return a[v] < b[v] ? 1 : -1;
        }
        return 0;
      }
    }
    return 0;
  }

  std::string name() const {
    switch (kind_) {
      case Kind::lex: return "lex";
      case Kind::degrevlex: return "degrevlex";
      case Kind::block: return "block(" + std::to_string(block_) + ")";
    }
    return "?";
  }

  friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) {
    return a.kind_ == b.kind_ && a.nvars_ == b.nvars_ && a.block_ == b.block_ && a.perm_ == b.perm_;
  }

 private:
  Kind kind_ = Kind::degrevlex;
  int nvars_ = 0;
  int block_ = 0;
  std::vector<int> perm_;
};

}  // namespace spectilt

template <>
struct std::hash<spectilt::Monomial> {
  std::size_t operator()(const spectilt::Monomial& m) const noexcept { return m.hash(); }
};
