#include <gtest/gtest.h>

#include <random>

#include "spectilt/ideal.hpp"

using namespace spectilt;

namespace {

PolyRingPtr qq(std::vector<std::string> vars, MonomialOrder::Kind k = MonomialOrder::Kind::degrevlex) {
  return make_poly_ring(Field::rationals(), std::move(vars), k);
}

Poly P(const PolyRingPtr& r, const char* s) { return Poly::parse(r, s); }

Ideal I(const PolyRingPtr& r, std::initializer_list<const char*> gens) {
  std::vector<Poly> g;
  for (auto* s : gens) g.push_back(P(r, s));
  return Ideal(r, g);
}

// Plain multivariate division by a list, written against Poly only.
Poly naive_remainder(Poly f, const std::vector<Poly>& g) {
  Poly rem(f.ring());
  while (!f.is_zero()) {
    bool divided = false;
    for (auto& d : g) {
      if (d.lead_monomial().divides(f.lead_monomial())) {
        auto c = f.ring()->field.div(f.lead_coeff(), d.lead_coeff());
        f -= d.mul_term(f.lead_monomial() / d.lead_monomial(), c);
        divided = true;
        break;
      }
    }
    if (!divided) {
      rem += Poly::term(f.ring(), f.lead_monomial(), f.lead_coeff());
      f -= Poly::term(f.ring(), f.lead_monomial(), f.lead_coeff());
    }
  }
  return rem;
}

// Buchberger's criterion checked pairwise without the engine.
bool is_groebner(const std::vector<Poly>& g) {
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      auto l = Monomial::lcm(g[i].lead_monomial(), g[j].lead_monomial());
      const auto& fld = g[i].ring()->field;
      Poly s = g[i].mul_term(l / g[i].lead_monomial(), fld.inv(g[i].lead_coeff())) -
               g[j].mul_term(l / g[j].lead_monomial(), fld.inv(g[j].lead_coeff()));
      if (!naive_remainder(s, g).is_zero()) return false;
    }
  return true;
}

bool is_reduced(const std::vector<Poly>& g) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!g[i].lead_coeff().is_one()) return false;
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (i == j) continue;
      for (auto& [m, c] : g[i].terms())
        if (g[j].lead_monomial().divides(m)) return false;
    }
  }
  return true;
}

Poly random_poly(const PolyRingPtr& r, std::mt19937& rng, int terms, int maxdeg) {
  std::vector<Poly::Term> t;
  std::uniform_int_distribution<int> e(0, maxdeg), c(-5, 5);
  for (int k = 0; k < terms; ++k) {
    Monomial m;
    for (int v = 0; v < r->nvars(); ++v) m.set(v, e(rng) / r->nvars());
    t.emplace_back(m, r->field.from_int(c(rng)));
  }
  return Poly::from_terms(r, std::move(t));
}

}  // namespace

TEST(Field, RationalsStayReduced) {
  auto q = Field::rationals();
  auto a = q.parse("6/4");
  EXPECT_EQ(a.value(), mpq_class(3, 2));
  EXPECT_EQ(q.mul(a, q.parse("2/3")).value(), 1);
  EXPECT_THROW(q.inv(q.zero()), InvariantError);
}

TEST(Field, PrimeFieldResidues) {
  auto f = Field::prime(7);
  EXPECT_EQ(f.from_int(-1).value(), 6);
  EXPECT_EQ(f.parse("1/2").value(), 4);
  EXPECT_EQ(f.mul(f.from_int(3), f.inv(f.from_int(3))).value(), 1);
  EXPECT_THROW(Field::prime(8), InputError);
  EXPECT_THROW(f.parse("1/7"), InputError);
}

TEST(MonomialOrder, AxiomsOnRandomTriples) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> e(0, 4);
  for (auto kind : {MonomialOrder::Kind::lex, MonomialOrder::Kind::degrevlex}) {
    MonomialOrder o(kind, 3);
    for (int t = 0; t < 500; ++t) {
      Monomial a = Monomial::from_exponents(std::vector<int>{e(rng), e(rng), e(rng)});
      Monomial b = Monomial::from_exponents(std::vector<int>{e(rng), e(rng), e(rng)});
      Monomial c = Monomial::from_exponents(std::vector<int>{e(rng), e(rng), e(rng)});
      EXPECT_EQ(o.cmp(a, b), -o.cmp(b, a));
      EXPECT_EQ(o.cmp(a, b) == 0, a == b);
      EXPECT_EQ(o.cmp(a * c, b * c), o.cmp(a, b));
      EXPECT_GE(o.cmp(a, Monomial()), 0);
      if (o.cmp(a, b) > 0 && o.cmp(b, c) > 0) EXPECT_GT(o.cmp(a, c), 0);
    }
  }
}

TEST(Poly, ParsePrintRoundTrip) {
  auto r = qq({"x", "y", "z"});
  for (const char* s : {"3/2*x^2*y - x + 1", "x^3 - 7/3*y*z^2 + z", "-x*y", "0", "5"}) {
    Poly p = P(r, s);
    EXPECT_EQ(P(r, p.to_string().c_str()), p) << s;
  }
  EXPECT_EQ(P(r, "(x+y)^2").to_string(), "x^2 + 2*x*y + y^2");
  EXPECT_THROW(P(r, "x + w"), InputError);
  EXPECT_THROW(P(r, "x +"), InputError);
}

TEST(Poly, InvariantsAfterArithmetic) {
  auto r = qq({"x", "y"});
  std::mt19937 rng(3);
  for (int t = 0; t < 50; ++t) {
    Poly a = random_poly(r, rng, 5, 6), b = random_poly(r, rng, 4, 6);
    for (const Poly& p : {a + b, a - b, a * b}) {
      for (std::size_t i = 0; i < p.terms().size(); ++i) {
        EXPECT_FALSE(p.terms()[i].second.is_zero());
        if (i) EXPECT_GT(r->order.cmp(p.terms()[i - 1].first, p.terms()[i].first), 0);
      }
    }
    EXPECT_EQ((a - b) + b, a);
    EXPECT_EQ(a * b, b * a);
  }
}

TEST(GroebnerBasis, WorkedExamples) {
  auto r = qq({"x"}, MonomialOrder::Kind::lex);
  auto g = groebner_basis({P(r, "x^2 - 1"), P(r, "x^3 - x")}, r);
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g[0], P(r, "x^2 - 1"));

  auto r2 = qq({"x", "y"});
  EXPECT_TRUE(groebner_basis({Poly(r2)}, r2).empty());
  auto xy = groebner_basis({P(r2, "x"), P(r2, "y")}, r2);
  ASSERT_EQ(xy.size(), 2u);
  EXPECT_EQ(Ideal(r2, xy), I(r2, {"y", "x"}));
  EXPECT_EQ(groebner_basis({P(r2, "x"), P(r2, "2*x + 3")}, r2), std::vector<Poly>{Poly::one(r2)});
}

TEST(GroebnerBasis, ReducedAndIdempotentOnRandomInput) {
  std::mt19937 rng(11);
  for (auto kind : {MonomialOrder::Kind::lex, MonomialOrder::Kind::degrevlex}) {
    auto r = qq({"x", "y", "z"}, kind);
    for (int t = 0; t < 12; ++t) {
      std::vector<Poly> gens{random_poly(r, rng, 3, 7), random_poly(r, rng, 3, 7), random_poly(r, rng, 2, 6)};
      auto g = groebner_basis(gens, r);
      EXPECT_TRUE(is_groebner(g));
      EXPECT_TRUE(is_reduced(g));
      EXPECT_EQ(groebner_basis(g, r), g);
      for (auto& f : gens) EXPECT_TRUE(naive_remainder(f, g).is_zero());
    }
  }
}

TEST(GroebnerBasis, PrimeFieldAndOrderSwitch) {
  auto r = make_poly_ring(Field::prime(5), {"x", "y"});
  auto g = groebner_basis({P(r, "x^2 + y"), P(r, "x*y - 1")}, MonomialOrder::lex(2));
  EXPECT_TRUE(is_groebner(g));
  EXPECT_TRUE(is_reduced(g));
  EXPECT_EQ(g.front().ring()->order.kind(), MonomialOrder::Kind::lex);

  auto other = make_poly_ring(Field::prime(7), {"x", "y"});
  EXPECT_THROW(groebner_basis({P(r, "x"), P(other, "y")}, MonomialOrder::lex(2)), InputError);
}

TEST(NormalForm, WorkedExamples) {
  auto r = qq({"x", "y"});
  EXPECT_EQ(normal_form(P(r, "x^2*y"), {P(r, "x^2 - y")}), P(r, "y^2"));
  EXPECT_TRUE(normal_form(Poly(r), {P(r, "x")}).is_zero());
  EXPECT_TRUE(normal_form(P(r, "x"), {P(r, "x")}).is_zero());
}

TEST(NormalForm, ClosedUnderIdealOperations) {
  auto r = qq({"x", "y", "z"});
  std::mt19937 rng(5);
  Ideal id = I(r, {"x^2 - y*z", "x*y - z^2", "y^3 - x*z"});
  for (int t = 0; t < 20; ++t) {
    Poly f = id.generators()[t % 3] * random_poly(r, rng, 3, 4);
    Poly g = id.generators()[(t + 1) % 3] * random_poly(r, rng, 2, 5);
    Poly h = random_poly(r, rng, 3, 4);
    EXPECT_TRUE(id.normal_form(f + g).is_zero());
    EXPECT_TRUE(id.normal_form(h * f).is_zero());
    Poly rem = id.normal_form(h);
    EXPECT_TRUE(id.contains(h - rem));
    for (auto& [m, c] : rem.terms())
      for (auto& b : id.gb()) EXPECT_FALSE(b.lead_monomial().divides(m));
  }
}

TEST(IdealMembership, WorkedExamples) {
  auto r = qq({"x", "y"});
  Ideal id = I(r, {"x^2", "x*y"});
  EXPECT_TRUE(ideal_membership(P(r, "x*y"), id));
  EXPECT_FALSE(ideal_membership(P(r, "x"), id));
  EXPECT_TRUE(ideal_membership(P(r, "x^2 + x*y"), id));
}

TEST(IdealQuotient, WorkedExamples) {
  auto r = qq({"x", "y"});
  EXPECT_EQ(ideal_quotient(I(r, {"x^2", "x*y"}), P(r, "y")), I(r, {"x"}));
  EXPECT_TRUE(ideal_quotient(I(r, {"x"}), P(r, "x")).is_unit());
  EXPECT_EQ(ideal_quotient(I(r, {"x"}), P(r, "y")), I(r, {"x"}));
  EXPECT_THROW(ideal_quotient(I(r, {"x"}), Poly(r)), InputError);
}

TEST(IdealQuotient, GeneratorsMultiplyIntoIdeal) {
  auto r = qq({"x", "y", "z"});
  std::mt19937 rng(9);
  Ideal id = I(r, {"x^2*y", "x*z^2", "y^3*z"});
  for (int t = 0; t < 8; ++t) {
    Poly f = random_poly(r, rng, 2, 4);
    if (f.is_zero()) continue;
    Ideal q = ideal_quotient(id, f);
    for (auto& g : q.gb()) EXPECT_TRUE(id.contains(g * f));
    EXPECT_TRUE(q.contains(id));
  }
}

TEST(Intersection, AgreesWithMonomialLcm) {
  auto r = qq({"x", "y"});
  EXPECT_EQ(intersect(I(r, {"x^2"}), I(r, {"x*y"})), I(r, {"x^2*y"}));
  EXPECT_EQ(intersect(I(r, {"x"}), I(r, {"y"})), I(r, {"x*y"}));
}

TEST(Saturation, WorkedExamples) {
  auto r = qq({"x", "y"});
  auto s = saturation(I(r, {"x^2*y"}), I(r, {"y"}));
  EXPECT_EQ(s.ideal, I(r, {"x^2"}));
  EXPECT_GE(s.iterations, 2);
  Ideal id = I(r, {"x^2", "x*y"});
  EXPECT_EQ(saturation(id, Ideal::unit(r)).ideal, id);
  EXPECT_EQ(saturation(id, I(r, {"x", "y"})).ideal, I(r, {"x"}));
  EXPECT_THROW(saturation(I(r, {"x^5", "y^5"}), I(r, {"x", "y"}), 2), BudgetError);
}

TEST(KrullDim, WorkedExamples) {
  auto r = qq({"x", "y"});
  EXPECT_EQ(krull_dim(I(r, {"x*y"})), 1);
  EXPECT_EQ(krull_dim(Ideal(r, {})), 2);
  EXPECT_EQ(krull_dim(I(r, {"x", "y"})), 0);
  EXPECT_EQ(krull_dim(Ideal::unit(r)), -1);
}

TEST(KrullDim, DropsByAtMostOneUnderLinearSection) {
  auto r = qq({"x", "y", "z", "w"});
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> c(-3, 3), e(0, 2);
  for (int t = 0; t < 25; ++t) {
    std::vector<Poly> gens;
    for (int k = 0; k < 2; ++k) {
      Monomial m;
      for (int v = 0; v < 4; ++v) m.set(v, e(rng));
      if (m.is_one()) m.set(0, 1);
      gens.push_back(Poly::term(r, m, r->field.one()));
    }
    Ideal id(r, gens);
    std::vector<Poly::Term> lin;
    for (int v = 0; v < 4; ++v) lin.emplace_back(Monomial::variable(v), r->field.from_int(c(rng)));
    Poly f = Poly::from_terms(r, lin);
    if (f.is_zero()) continue;
    int d = krull_dim(id), d2 = krull_dim(id + Ideal(r, {f}));
    EXPECT_GE(d, d2);
    EXPECT_GE(d2, d - 1);
  }
}
