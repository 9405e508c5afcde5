#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "spectilt/error.hpp"

namespace spectilt {

/// Coefficient value. Over QQ it is a reduced fraction with positive
/// denominator; over GF(p) it is an integer residue in [0, p).
class FieldElem {
 public:
  FieldElem() = default;
  explicit FieldElem(mpq_class v) : v_(std::move(v)) {}

  const mpq_class& value() const { return v_; }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }

  friend bool operator==(const FieldElem& a, const FieldElem& b) { return a.v_ == b.v_; }

 private:
  mpq_class v_;
};

/// The coefficient field: QQ (characteristic 0) or GF(p).
class Field {
 public:
  static Field rationals() { return Field(0); }

  static Field prime(std::uint64_t p) {
    if (p < 2 || !is_prime(p)) throw InputError("polycore.field", "GF(p) needs a prime modulus, got " + std::to_string(p));
    if (p > (1ULL << 31)) throw InputError("polycore.field", "GF(p) modulus must be below 2^31");
    return Field(p);
  }

  std::uint64_t characteristic() const { return p_; }
  bool is_rational() const { return p_ == 0; }

  FieldElem zero() const { return FieldElem(); }
  FieldElem one() const { return FieldElem(mpq_class(1)); }

  FieldElem from_int(long v) const { return normalize(mpq_class(v)); }

  FieldElem from_rational(const mpq_class& q) const { return normalize(q); }

  /// Parses "3", "-7", "3/2".
  FieldElem parse(std::string_view text) const {
    mpq_class q;
    if (q.set_str(std::string(text), 10) != 0) throw InputError("polycore.parse", "bad coefficient '" + std::string(text) + "'");
    q.canonicalize();
    return normalize(q);
  }

  FieldElem add(const FieldElem& a, const FieldElem& b) const { return normalize(a.value() + b.value()); }
  FieldElem sub(const FieldElem& a, const FieldElem& b) const { return normalize(a.value() - b.value()); }
  FieldElem mul(const FieldElem& a, const FieldElem& b) const { return normalize(a.value() * b.value()); }
  FieldElem neg(const FieldElem& a) const { return normalize(-a.value()); }

  FieldElem inv(const FieldElem& a) const {
    if (a.is_zero()) throw InvariantError("polycore.field", "division by zero");
    if (p_ == 0) return FieldElem(mpq_class(1) / a.value());
    mpz_class r;
    mpz_class m(static_cast<unsigned long>(p_));
    mpz_invert(r.get_mpz_t(), a.value().get_num_mpz_t(), m.get_mpz_t());
    return FieldElem(mpq_class(r));
  }

  FieldElem div(const FieldElem& a, const FieldElem& b) const { return mul(a, inv(b)); }

  std::string to_string(const FieldElem& a) const { return a.value().get_str(); }

  friend bool operator==(const Field& a, const Field& b) { return a.p_ == b.p_; }

  std::string name() const { return p_ == 0 ? "QQ" : "GF(" + std::to_string(p_) + ")"; }

  static bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

 private:
  explicit Field(std::uint64_t p) : p_(p) {}

  FieldElem normalize(mpq_class q) const {
    if (p_ == 0) {
      q.canonicalize();
      return FieldElem(std::move(q));
    }
    mpz_class m(static_cast<unsigned long>(p_));
    mpz_class num = q.get_num();
    mpz_class den = q.get_den();
    mpz_class r;
    mpz_mod(r.get_mpz_t(), num.get_mpz_t(), m.get_mpz_t());
    if (den != 1) {
      mpz_class dinv;
      if (mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0)
        throw InputError("polycore.field", "denominator divisible by the characteristic");
      r = r * dinv;
      mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
    }
    return FieldElem(mpq_class(r));
  }

  std::uint64_t p_ = 0;
};

}  // namespace spectilt
