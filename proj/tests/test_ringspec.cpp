#include <gtest/gtest.h>

#include "spectilt/ring.hpp"

using namespace spectilt;

namespace {

RingPtr qxy() { return make_ring(Field::rationals(), {"x", "y"}); }
RingPtr example_ring() { return make_ring(Field::rationals(), {"x", "y"}, {"x^2", "x*y"}); }

Poly P(const RingPtr& r, const char* s) { return Poly::parse(r->ambient(), s); }

// Up-closure by fixed-point iteration over the poset, independent of spec_closure.
PrimeSet oracle_closure(const Window& w, PrimeSet s) {
  PrimeSet cur = s;
  for (bool grew = true; grew;) {
    grew = false;
    for (int i = 0; i < w.size(); ++i)
      for (int j = 0; j < w.size(); ++j)
        if (has(cur, i) && w.leq(i, j) && !has(cur, j)) {
          cur |= PrimeSet{1} << j;
          grew = true;
        }
  }
  return cur;
}

}  // namespace

TEST(Irreducible, Univariate) {
  auto r = qxy()->ambient();
  EXPECT_EQ(check_irreducible(Poly::parse(r, "x^2 + 1")), Irreducibility::irreducible);
  EXPECT_EQ(check_irreducible(Poly::parse(r, "x^2 - 1")), Irreducibility::reducible);
  EXPECT_EQ(check_irreducible(Poly::parse(r, "x^2")), Irreducibility::reducible);
  EXPECT_EQ(check_irreducible(Poly::parse(r, "x^3 - 2")), Irreducibility::irreducible);
  EXPECT_EQ(check_irreducible(Poly::parse(r, "x^4 + 1")), Irreducibility::unknown);  // reducible mod every prime
  EXPECT_EQ(check_irreducible(Poly::parse(r, "x^5 - x - 1")), Irreducibility::irreducible);
  auto f2 = make_poly_ring(Field::prime(2), {"x"});
  EXPECT_EQ(check_irreducible(Poly::parse(f2, "x^2 + x + 1")), Irreducibility::irreducible);
  EXPECT_EQ(check_irreducible(Poly::parse(f2, "x^2 + 1")), Irreducibility::reducible);
}

TEST(Irreducible, MultivariateByLineRestriction) {
  auto r = make_poly_ring(Field::rationals(), {"x", "y", "z"});
  EXPECT_EQ(check_irreducible(Poly::parse(r, "x^2 + y^2")), Irreducibility::irreducible);
  EXPECT_EQ(check_irreducible(Poly::parse(r, "x*y - z^2")), Irreducibility::irreducible);
  EXPECT_EQ(check_irreducible(Poly::parse(r, "x + y + z")), Irreducibility::irreducible);
  EXPECT_NE(check_irreducible(Poly::parse(r, "x^2 - y^2")), Irreducibility::irreducible);
  EXPECT_NE(check_irreducible(Poly::parse(r, "x*y")), Irreducibility::irreducible);
  EXPECT_NE(check_irreducible(Poly::parse(r, "x*y*z + x^2*z")), Irreducibility::irreducible);
}

TEST(DeclarePrime, WorkedExamples) {
  auto r = qxy();
  auto p = declare_prime(r, {"x"});
  EXPECT_EQ(p.certificate, Certificate::monomial);
  EXPECT_EQ(p.height, 1);
  EXPECT_EQ(declare_prime(r, {"x", "y"}).height, 2);
  auto e = example_ring();
  auto q = declare_prime(e, {"x"});
  EXPECT_EQ(q.height, 0);
  EXPECT_EQ(declare_prime(e, {"x", "y"}).height, 1);
}

TEST(DeclarePrime, Certificates) {
  auto r = make_ring(Field::rationals(), {"x", "y", "z"});
  EXPECT_EQ(declare_prime(r, {"x*y - z^2"}).certificate, Certificate::principal);
  EXPECT_EQ(declare_prime(r, {"x*y - z^2"}).height, 1);
  EXPECT_EQ(declare_prime(r, {"x + y", "z"}).certificate, Certificate::linear);
  EXPECT_EQ(declare_prime(r, std::vector<std::string>{}).certificate, Certificate::zero_ideal);
  EXPECT_THROW(declare_prime(r, {"x*y"}), InputError);
  EXPECT_THROW(declare_prime(r, {"x", "1"}), InputError);
  auto asserted = declare_prime(r, {"x*y - z^2", "x^2 - y*z", "y^2 - x*z"}, PrimeMode::assert_prime);
  EXPECT_EQ(asserted.certificate, Certificate::asserted);
  EXPECT_FALSE(asserted.is_proven());
  auto cone = make_ring(Field::rationals(), {"x", "y", "z"}, {"x*y - z^2"});
  EXPECT_TRUE(cone->is_certified_domain());
  EXPECT_EQ(declare_prime(cone, std::vector<std::string>{}).certificate, Certificate::zero_ideal);
  EXPECT_FALSE(example_ring()->is_certified_domain());
  EXPECT_THROW(declare_prime(example_ring(), std::vector<std::string>{}), InputError);
}

TEST(Ring, RejectsBadDefiningIdeals) {
  EXPECT_THROW(make_ring(Field::rationals(), {"x"}, {"x - 1"}), InputError);
  EXPECT_THROW(make_ring(Field::rationals(), {"x"}, {"1"}), InputError);
}

TEST(Window, PosetAndHeights) {
  auto w = monomial_window(qxy());
  ASSERT_EQ(w.size(), 4);
  EXPECT_EQ(w.prime(0).name, "0");
  EXPECT_EQ(w.prime(3).name, "(x,y)");
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i != j && w.leq(i, j)) EXPECT_LT(w.prime(i).height, w.prime(j).height);
      for (int k = 0; k < 4; ++k)
        if (w.leq(i, j) && w.leq(j, k)) EXPECT_TRUE(w.leq(i, k));
    }
  auto r = qxy();
  EXPECT_THROW(Window(r, std::vector<Prime>{declare_prime(r, std::vector<std::string>{"x"}, PrimeMode::prove, "a"), declare_prime(r, std::vector<std::string>{"x"}, PrimeMode::prove, "b")}),
               InputError);
  auto p0 = declare_prime(r, std::vector<std::string>{}, PrimeMode::prove, "0");
  auto m = declare_prime(r, std::vector<std::string>{"x", "y"}, PrimeMode::prove, "m");
  m.height = 0;
  EXPECT_THROW(Window(r, {p0, m}), InputError);
}

TEST(Window, ExampleRingWindow) {
  auto w = monomial_window(example_ring());
  ASSERT_EQ(w.size(), 2);
  EXPECT_EQ(w.prime(0).name, "(x)");
  EXPECT_EQ(w.prime(1).name, "(x,y)");
  EXPECT_TRUE(w.leq(0, 1));
}

TEST(SpecClosure, WorkedExamples) {
  auto w = monomial_window(qxy());  // 0, (x), (y), (x,y)
  EXPECT_EQ(spec_closure(w, 0b0010), PrimeSet{0b1010});
  EXPECT_EQ(spec_closure(w, 0), PrimeSet{0});
  EXPECT_EQ(spec_closure(w, 0b1000), PrimeSet{0b1000});
}

TEST(SpecClosure, IsAClosureOperator) {
  auto w = monomial_window(make_ring(Field::rationals(), {"x", "y", "z"}));
  for (PrimeSet s = 0; s < (PrimeSet{1} << w.size()); s += 7) {
    PrimeSet c = spec_closure(w, s);
    EXPECT_EQ(c, oracle_closure(w, s));
    EXPECT_EQ(spec_closure(w, c), c);
    EXPECT_EQ(c & s, s);
    for (PrimeSet t = s; t < (PrimeSet{1} << w.size()); t = (t + 1) | s) EXPECT_EQ(spec_closure(w, t) & c, c);
  }
}

TEST(MinimalElements, WorkedExamples) {
  auto w = monomial_window(qxy());
  EXPECT_EQ(minimal_elements(w, 0b1010), PrimeSet{0b0010});
  EXPECT_EQ(minimal_elements(w, 0b1110), PrimeSet{0b0110});
  EXPECT_EQ(minimal_elements(w, 0), PrimeSet{0});
  EXPECT_THROW(minimal_elements(w, 0b0010), InputError);
}
