#pragma once

#include <algorithm>
#include <cctype>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spectilt/error.hpp"
#include "spectilt/field.hpp"
#include "spectilt/monomial.hpp"

namespace spectilt {

/// Ambient polynomial ring k[x_1..x_m] with a fixed monomial order.
struct PolyRing {
  Field field = Field::rationals();
  std::vector<std::string> vars;
  MonomialOrder order;

  PolyRing(Field f, std::vector<std::string> v, MonomialOrder o) : field(f), vars(std::move(v)), order(std::move(o)) {
    if (vars.size() > static_cast<std::size_t>(kMaxVars)) throw InputError("polycore.vars", "at most 16 variables are supported");
    if (order.nvars() != nvars()) throw InputError("polycore.order", "order/variable count mismatch");
  }

  int nvars() const { return static_cast<int>(vars.size()); }

  int var_index(std::string_view name) const {
    for (int i = 0; i < nvars(); ++i)
      if (vars[i] == name) return i;
    return -1;
  }

  bool same_as(const PolyRing& o) const { return field == o.field && vars == o.vars && order == o.order; }
};

using PolyRingPtr = std::shared_ptr<const PolyRing>;

inline PolyRingPtr make_poly_ring(Field f, std::vector<std::string> vars,
                                  MonomialOrder::Kind kind = MonomialOrder::Kind::degrevlex) {
  int n = static_cast<int>(vars.size());
  return std::make_shared<const PolyRing>(f, std::move(vars), MonomialOrder(kind, n));
}

/// Sparse polynomial: terms strictly descending in the ring order, no zero
/// coefficients.
class Poly {
 public:
  using Term = std::pair<Monomial, FieldElem>;

  Poly() = default;
  explicit Poly(PolyRingPtr ring) : ring_(std::move(ring)) {}

  static Poly constant(PolyRingPtr ring, const FieldElem& c) {
    Poly p(std::move(ring));
    if (!c.is_zero()) p.terms_.emplace_back(Monomial(), c);
    return p;
  }
  static Poly constant(PolyRingPtr ring, long c) {
    auto f = ring->field.from_int(c);
    return constant(std::move(ring), f);
  }
  static Poly one(PolyRingPtr ring) { return constant(std::move(ring), 1); }
  static Poly term(PolyRingPtr ring, const Monomial& m, const FieldElem& c) {
    Poly p(std::move(ring));
    if (!c.is_zero()) p.terms_.emplace_back(m, c);
    return p;
  }
  static Poly variable(PolyRingPtr ring, int i) {
    auto one = ring->field.one();
    return term(std::move(ring), Monomial::variable(i), one);
  }

  /// Builds from unsorted, possibly duplicated terms.
  static Poly from_terms(PolyRingPtr ring, std::vector<Term> terms) {
    Poly p(std::move(ring));
    const auto& ord = p.ring_->order;
    std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) { return ord.cmp(a.first, b.first) > 0; });
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().first == t.first) {
        p.terms_.back().second = p.ring_->field.add(p.terms_.back().second, t.second);
        if (p.terms_.back().second.is_zero()) p.terms_.pop_back();
      } else if (!t.second.is_zero()) {
        p.terms_.push_back(std::move(t));
      }
    }
    return p;
  }

  const PolyRingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Monomial& lead_monomial() const { return terms_.front().first; }
  const FieldElem& lead_coeff() const { return terms_.front().second; }

  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
  bool is_unit() const { return terms_.size() == 1 && terms_[0].first.is_one(); }

  /// Largest total degree; -1 for zero.
  int degree() const {
    int d = -1;
    for (auto& t : terms_) d = std::max(d, t.first.degree());
    return d;
  }

  bool is_homogeneous() const {
    for (auto& t : terms_)
      if (t.first.degree() != terms_[0].first.degree()) return false;
    return true;
  }

  int degree_in(int var) const {
    int d = 0;
    for (auto& t : terms_) d = std::max(d, t.first[var]);
    return d;
  }

  std::uint32_t support() const {
    std::uint32_t s = 0;
    for (auto& t : terms_) s |= t.first.support();
    return s;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.second = ring_->field.neg(t.second);
    return r;
  }

  Poly operator+(const Poly& o) const { return combine(o, false); }
  Poly operator-(const Poly& o) const { return combine(o, true); }

  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }

  Poly scale(const FieldElem& c) const {
    if (c.is_zero()) return Poly(ring_);
    Poly r = *this;
    for (auto& t : r.terms_) t.second = ring_->field.mul(t.second, c);
    return r;
  }

  Poly mul_term(const Monomial& m, const FieldElem& c) const {
    if (c.is_zero()) return Poly(ring_);
    Poly r(ring_);
    r.terms_.reserve(terms_.size());
    for (auto& t : terms_) r.terms_.emplace_back(t.first * m, ring_->field.mul(t.second, c));
    return r;
  }

  Poly operator*(const Poly& o) const {
    const Poly& big = size() >= o.size() ? *this : o;
    const Poly& small = size() >= o.size() ? o : *this;
    Poly acc(ring_ ? ring_ : o.ring_);
    for (auto& t : small.terms_) acc += big.mul_term(t.first, t.second);
    return acc;
  }

  Poly pow(int e) const {
    Poly r = Poly::one(ring_);
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  Poly monic() const {
    if (is_zero() || lead_coeff().is_one()) return *this;
    return scale(ring_->field.inv(lead_coeff()));
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].first == b.terms_[i].first) || !(a.terms_[i].second == b.terms_[i].second)) return false;
    return true;
  }

  std::string to_string() const;

  /// Parses the plain-text grammar: sums of products of rational constants,
  /// variables, powers and parenthesised subexpressions.
  static Poly parse(const PolyRingPtr& ring, std::string_view text);

 private:
  Poly combine(const Poly& o, bool subtract) const {
    const auto& r = ring_ ? ring_ : o.ring_;
    Poly out(r);
    if (!r) return out;
    const auto& ord = r->order;
    const auto& fld = r->field;
    out.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
      int c;
      if (i == terms_.size()) c = -1;
      else if (j == o.terms_.size()) c = 1;
      else c = ord.cmp(terms_[i].first, o.terms_[j].first);
      if (c > 0) {
        out.terms_.push_back(terms_[i++]);
      } else if (c < 0) {
        out.terms_.emplace_back(o.terms_[j].first, subtract ? fld.neg(o.terms_[j].second) : o.terms_[j].second);
        ++j;
      } else {
        auto s = subtract ? fld.sub(terms_[i].second, o.terms_[j].second) : fld.add(terms_[i].second, o.terms_[j].second);
        if (!s.is_zero()) out.terms_.emplace_back(terms_[i].first, std::move(s));
        ++i;
        ++j;
      }
    }
    return out;
  }

  PolyRingPtr ring_;
  std::vector<Term> terms_;
};

inline std::string monomial_to_string(const PolyRing& ring, const Monomial& m) {
  std::string s;
  for (int i = 0; i < ring.nvars(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += ring.vars[i];
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

inline std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto& [m, c] : terms_) {
    bool negative = sgn(c.value()) < 0;
    mpq_class mag = negative ? mpq_class(-c.value()) : c.value();
    std::string coef = mag.get_str();
    std::string body;
    if (m.is_one()) body = coef;
    else if (mag == 1) body = monomial_to_string(*ring_, m);
    else body = coef + "*" + monomial_to_string(*ring_, m);
    if (first) out += negative ? "-" + body : body;
    else out += negative ? " - " + body : " + " + body;
    first = false;
  }
  return out;
}

namespace detail {

class PolyParser {
 public:
  PolyParser(const PolyRingPtr& ring, std::string_view text) : ring_(ring), s_(text) {}

  Poly run() {
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("polycore.parse", "polynomial '" + std::string(s_) + "' at column " + std::to_string(pos_ + 1) + ": " + msg);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly acc(ring_);
    bool neg = false;
    if (eat('-')) neg = true;
    else eat('+');
    Poly t = term();
    acc = neg ? -t : t;
    for (;;) {
      if (eat('+')) acc += term();
      else if (eat('-')) acc -= term();
      else break;
    }
    return acc;
  }

  Poly term() {
    Poly acc = factor();
    while (eat('*')) acc = acc * factor();
    return acc;
  }

  Poly factor() {
    Poly base = primary();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
      base = base.pow(e);
    }
    return base;
  }

  Poly primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (c == '-') {
      ++pos_;
      return -primary();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = digits();
      skip();
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        skip();
        std::string den = digits();
        if (den.empty()) fail("expected denominator");
        num += "/" + den;
      }
      return Poly::constant(ring_, ring_->field.parse(num));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      auto name = s_.substr(start, pos_ - start);
      int idx = ring_->var_index(name);
      if (idx < 0) {
        pos_ = start;
        fail("unknown variable '" + std::string(name) + "'");
      }
      return Poly::variable(ring_, idx);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  const PolyRingPtr& ring_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Poly Poly::parse(const PolyRingPtr& ring, std::string_view text) { return detail::PolyParser(ring, text).run(); }

}  // namespace spectilt
