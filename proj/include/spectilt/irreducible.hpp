#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

#include "spectilt/poly.hpp"

namespace spectilt {

enum class Irreducibility { irreducible, reducible, unknown };

namespace detail {

/// Dense univariate polynomial over GF(p), low degree first, no trailing zeros.
class UniFp {
 public:
  using Coeffs = std::vector<std::uint64_t>;

  explicit UniFp(std::uint64_t p) : p_(p) {}

  void trim(Coeffs& a) const {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }

  std::uint64_t inv(std::uint64_t a) const { return pow(a, p_ - 2); }

  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    a %= p_;
    while (e) {
      if (e & 1) r = r * a % p_;
      a = a * a % p_;
      e >>= 1;
    }
    return r;
  }

  Coeffs mod(Coeffs a, const Coeffs& b) const {
    trim(a);
    std::uint64_t li = inv(b.back());
    while (a.size() >= b.size()) {
      std::uint64_t c = a.back() * li % p_;
      std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = (a[shift + i] + p_ - c * b[i] % p_) % p_;
      trim(a);
    }
    return a;
  }

  Coeffs mulmod(const Coeffs& a, const Coeffs& b, const Coeffs& m) const {
    if (a.empty() || b.empty()) return {};
    Coeffs r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p_;
    return mod(std::move(r), m);
  }

  Coeffs powmod(Coeffs a, std::uint64_t e, const Coeffs& m) const {
    Coeffs r{1};
    r = mod(r, m);
    while (e) {
      if (e & 1) r = mulmod(r, a, m);
      a = mulmod(a, a, m);
      e >>= 1;
    }
    return r;
  }

  Coeffs gcd(Coeffs a, Coeffs b) const {
    trim(a);
    trim(b);
    while (!b.empty()) {
      Coeffs r = mod(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return a;
  }

  /// Ben-Or: f of degree d is irreducible iff gcd(f, x^(p^i) - x) = 1 for
  /// every i <= d/2.
  bool irreducible(Coeffs f) const {
    trim(f);
    int d = static_cast<int>(f.size()) - 1;
    if (d <= 0) return false;
    if (d == 1) return true;
    Coeffs x{0, 1};
    Coeffs h = mod(x, f);
    for (int i = 1; i <= d / 2; ++i) {
      h = powmod(h, p_, f);
      Coeffs t = h;
      t.resize(std::max<std::size_t>(t.size(), 2), 0);
      t[1] = (t[1] + p_ - 1) % p_;
      trim(t);
      if (t.empty()) return false;
      if (gcd(f, t).size() > 1) return false;
    }
    return true;
  }

 private:
  std::uint64_t p_;
};

using UniQ = std::vector<mpq_class>;

inline void trim(UniQ& a) {
  while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

inline UniQ uni_mul(const UniQ& a, const UniQ& b) {
  if (a.empty() || b.empty()) return {};
  UniQ r(a.size() + b.size() - 1, mpq_class(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

/// Primitive integer polynomial proportional to a rational one.
inline std::vector<mpz_class> primitive_part(const UniQ& a) {
  mpz_class den = 1;
  for (auto& c : a) den = lcm(den, mpz_class(c.get_den()));
  std::vector<mpz_class> z;
  mpz_class g = 0;
  for (auto& c : a) {
    mpq_class s = c * den;
    z.push_back(s.get_num());
    g = gcd(g, z.back());
  }
  if (g != 0)
    for (auto& c : z) c /= g;
  return z;
}

inline std::vector<mpz_class> divisors(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> out;
  for (mpz_class d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  return out;
}

/// Decides degree <= 3 over QQ by searching for a rational root.
inline std::optional<bool> low_degree_irreducible_qq(const std::vector<mpz_class>& z) {
  int d = static_cast<int>(z.size()) - 1;
  if (d == 1) return true;
  if (sgn(z[0]) == 0) return false;
  if (abs(z[0]) > 1000000 || abs(z[d]) > 1000000) return std::nullopt;
  for (auto& num : divisors(z[0]))
    for (auto& den : divisors(z[d]))
      for (int s : {1, -1}) {
        mpq_class r(s * num, den);
        r.canonicalize();
        mpq_class v = 0;
        for (int i = d; i >= 0; --i) v = v * r + z[i];
        if (sgn(v) == 0) return false;
      }
  return true;
}

inline Irreducibility univariate_irreducible(const UniQ& f, const Field& field) {
  int d = static_cast<int>(f.size()) - 1;
  if (d <= 0) return Irreducibility::reducible;
  if (d == 1) return Irreducibility::irreducible;
  if (!field.is_rational()) {
    std::uint64_t p = field.characteristic();
    UniFp ar(p);
    UniFp::Coeffs c;
    for (auto& q : f) c.push_back(field.from_rational(q).value().get_num().get_ui());
    return ar.irreducible(c) ? Irreducibility::irreducible : Irreducibility::reducible;
  }
  auto z = primitive_part(f);
  if (d <= 3) {
    auto r = low_degree_irreducible_qq(z);
    if (r) return *r ? Irreducibility::irreducible : Irreducibility::reducible;
  }
  // A degree-preserving reduction that is irreducible mod p certifies
  // irreducibility over QQ.
  for (std::uint64_t p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97}) {
    mpz_class pz(static_cast<unsigned long>(p));
    if (z.back() % pz == 0) continue;
    UniFp ar(p);
    UniFp::Coeffs c;
    for (auto& v : z) {
      mpz_class r;
      mpz_mod(r.get_mpz_t(), v.get_mpz_t(), pz.get_mpz_t());
      c.push_back(r.get_ui());
    }
    if (ar.irreducible(c)) return Irreducibility::irreducible;
  }
  return Irreducibility::unknown;
}

/// f(a*t + b) as a univariate polynomial in t.
inline UniQ restrict_to_line(const Poly& f, const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) {
  UniQ acc;
  int n = f.ring()->nvars();
  for (auto& [m, c] : f.terms()) {
    UniQ t{c.value()};
    for (int v = 0; v < n; ++v)
      for (int e = 0; e < m[v]; ++e) t = uni_mul(t, UniQ{b[v], a[v]});
    if (acc.size() < t.size()) acc.resize(t.size(), mpq_class(0));
    for (std::size_t i = 0; i < t.size(); ++i) acc[i] += t[i];
  }
  for (auto& c : acc) c = f.ring()->field.from_rational(c).value();
  trim(acc);
  return acc;
}

}  // namespace detail

/// Sound irreducibility test. Univariate input is decided exactly except
/// for QQ polynomials of degree >= 4 with no irreducible reduction mod a
/// small prime. Multivariate input is certified by restricting to lines
/// that preserve total degree: any factorisation of f survives such a
/// restriction, so an irreducible restriction proves f irreducible.
inline Irreducibility check_irreducible(const Poly& f) {
  if (f.is_zero() || f.is_constant()) return Irreducibility::reducible;
  const auto& ring = f.ring();
  const int n = ring->nvars();
  const int d = f.degree();
  if (d == 1) return Irreducibility::irreducible;

  std::uint32_t sup = f.support();
  if (__builtin_popcount(sup) == 1) {
    int v = __builtin_ctz(sup);
    detail::UniQ u(d + 1, mpq_class(0));
    for (auto& [m, c] : f.terms()) u[m[v]] = c.value();
    return detail::univariate_irreducible(u, ring->field);
  }

  // Any monomial factor makes f reducible.
  Monomial common = f.terms()[0].first;
  for (auto& [m, c] : f.terms()) common = Monomial::gcd(common, m);
  if (!common.is_one()) return Irreducibility::reducible;

  std::uint64_t range = ring->field.is_rational() ? 7 : std::min<std::uint64_t>(ring->field.characteristic(), 7);
  std::uint64_t state = 0x9E3779B97F4A7C15ULL;
  auto next = [&]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  };
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<mpq_class> a(n), b(n);
    for (int v = 0; v < n; ++v) {
      a[v] = static_cast<long>(next() % range) - (ring->field.is_rational() ? 3 : 0);
      b[v] = static_cast<long>(next() % range) - (ring->field.is_rational() ? 3 : 0);
    }
    auto u = detail::restrict_to_line(f, a, b);
    if (static_cast<int>(u.size()) - 1 != d) continue;
    if (detail::univariate_irreducible(u, ring->field) == Irreducibility::irreducible) return Irreducibility::irreducible;
  }
  return Irreducibility::unknown;
}

}  // namespace spectilt
