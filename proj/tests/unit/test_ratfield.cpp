#include <doctest.h>

#include <random>

#include "locpl/ratfunc.hpp"

using namespace locpl;

namespace {

VarsPtr abc() { return make_variables({"a", "b", "c", "z0", "z1"}); }

RatFunc rf(const VarsPtr& v, const char* s) { return RatFunc::parse(v, s); }

bool canonical(const RatFunc& f) {
  if (f.is_zero()) return f.den().is_one();
  if (!gcd(f.num(), f.den()).is_one()) return false;
  if (f.den().leading_coeff() <= 0) return false;
  for (const auto& t : f.num().terms())
    if (t.coeff.get_den() != 1) return false;
  for (const auto& t : f.den().terms())
    if (t.coeff.get_den() != 1) return false;
  Integer g = 0;
  for (const auto& t : f.num().terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num().get_mpz_t());
  for (const auto& t : f.den().terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num().get_mpz_t());
  return g == 1;
}

// Random rational function built from the linear forms that occur in
// derivative coefficients, optionally times a generic quadratic.
RatFunc random_rf(const VarsPtr& v, std::mt19937& rng, bool generic) {
  static const char* forms[] = {"a", "b", "a-b", "a-z0", "b-z1", "c-b", "z1-z0", "c-z0", "a-c"};
  std::uniform_int_distribution<int> pick(0, 8), coef(-4, 4), count(0, 2);
  RatFunc num = rf(v, "1");
  RatFunc f = RatFunc::constant(v, coef(rng) + 5);
  for (int i = count(rng); i > 0; --i) f *= rf(v, forms[pick(rng)]);
  for (int i = count(rng) + 1; i > 0; --i) f /= rf(v, forms[pick(rng)]);
  if (generic) {
    Poly q = (Poly::variable(v, "a") * Poly::variable(v, "b") + Poly::variable(v, "c", 2)) * Rational(coef(rng) | 1);
    f = f + RatFunc::fraction(Poly::constant(v, 1), q + Poly::constant(v, 7));
  }
  return f;
}

}  // namespace

TEST_SUITE("ratfield") {
  TEST_CASE("rational literals") {
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK(to_string(parse_rational("-10/5")) == "-2");
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("x"), ParseError);
  }

  TEST_CASE("polynomial canonical form and printing") {
    auto v = abc();
    RatFunc p = rf(v, "(a-b)^2");
    CHECK(p.str() == "a^2 - 2*a*b + b^2");
    CHECK(rf(v, "b*a + c^3").str() == "c^3 + a*b");
    CHECK(rf(v, "0").str() == "0");
  }

  TEST_CASE("reduction to lowest terms") {
    auto v = abc();
    CHECK(rf(v, "(a^2-b^2)/(a-b)") == rf(v, "a+b"));
    CHECK(rf(v, "(2*a-2*b)/(4*b-4*a)") == rf(v, "-1/2"));
    RatFunc f = rf(v, "(a-z0)/((a-z0)*(z1-a))");
    CHECK(f.str() == "-1/(a - z1)");
    CHECK(canonical(f));
  }

  TEST_CASE("identities of the weight one derivative") {
    auto v = abc();
    CHECK(rf(v, "-(1/(a-z0)-1/(a-z1))") == rf(v, "-(z1-z0)/((z1-a)*(a-z0))"));
    CHECK((rf(v, "1/(a-b)") + rf(v, "1/(b-a)")).is_zero());
  }

  TEST_CASE("partial derivatives") {
    auto v = abc();
    CHECK(rf(v, "1/(a-b)").partial("a") == rf(v, "-1/(a-b)^2"));
    CHECK(rf(v, "a^3*b/(a-c)").partial("b") == rf(v, "a^3/(a-c)"));
    CHECK(rf(v, "a/(a-z0)").partial("a") == rf(v, "-z0/(a-z0)^2"));
    RatFunc g = rf(v, "(a*b+c)/((a-b)^2*(c-z1))");
    RatFunc h = rf(v, "(a^2+1)/(b+c)");
    CHECK((g * h).partial("a") == g.partial("a") * h + g * h.partial("a"));
    CHECK((g / h).partial("c") == (g.partial("c") * h - g * h.partial("c")) / (h * h));
  }

  TEST_CASE("factored denominators are tracked") {
    auto v = abc();
    RatFunc f = rf(v, "1/(a-b)").pow(2) * rf(v, "1/(a-z0)");
    CHECK(f.is_factored());
    CHECK(f == rf(v, "1/((a-b)^2*(a-z0))"));
    CHECK(f.den_factors().size() == 2);
    RatFunc g = f + rf(v, "1/(a-b)") * rf(v, "1/(b-z1)");
    CHECK(g.is_factored());
    CHECK(canonical(g));
  }

  TEST_CASE("evaluation commutes with arithmetic") {
    auto v = abc();
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> val(-30, 30), den(1, 7);
    for (int trial = 0; trial < 150; ++trial) {
      bool generic = trial % 3 == 0;
      RatFunc f = random_rf(v, rng, generic), g = random_rf(v, rng, !generic);
      std::vector<Rational> pt(kMaxVariables);
      for (std::size_t i = 0; i < v->size(); ++i) {
        pt[i] = Rational(val(rng), den(rng));
        pt[i].canonicalize();
      }
      std::span<const Rational> s(pt);
      Rational fv, gv;
      try {
        fv = f.eval(s);
        gv = g.eval(s);
      } catch (const PoleError&) {
        continue;
      }
      RatFunc sum = f + g, diff = f - g, prod = f * g;
      CHECK(canonical(sum));
      CHECK(canonical(diff));
      CHECK(canonical(prod));
      CHECK(sum.eval(s) == fv + gv);
      CHECK(diff.eval(s) == fv - gv);
      CHECK(prod.eval(s) == fv * gv);
      if (!g.is_zero() && gv != 0) {
        RatFunc q = f / g;
        CHECK(canonical(q));
        CHECK(q.eval(s) == fv / gv);
      }
      CHECK((sum - g) == f);
    }
  }

  TEST_CASE("field axioms on samples") {
    auto v = abc();
    std::mt19937 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
      RatFunc f = random_rf(v, rng, trial % 2), g = random_rf(v, rng, false), h = random_rf(v, rng, trial % 5 == 0);
      CHECK(f * (g + h) == f * g + f * h);
      CHECK((f + g) + h == f + (g + h));
      CHECK(f * g == g * f);
      CHECK((f / f) == rf(v, "1"));
      CHECK(f * f.inverse() == rf(v, "1"));
    }
  }

  TEST_CASE("gcd of polynomials") {
    auto v = abc();
    Poly a = Poly::variable(v, "a"), b = Poly::variable(v, "b"), c = Poly::variable(v, "c");
    Poly p = (a - b) * (a + c) * (a + c), q = (a + c) * (b * c + Poly::constant(v, 3));
    CHECK(gcd(p, q) == a + c);
    CHECK(gcd(p * Rational(6), q * Rational(4)) == a + c);
    CHECK(gcd(a - b, b - c).is_one());
    CHECK(Poly::divide_exact(p, a - b).has_value());
    CHECK_FALSE(Poly::divide_exact(q, a - b).has_value());
  }

  TEST_CASE("errors") {
    auto v = abc();
    CHECK_THROWS_AS(rf(v, "1/(a-a)"), ParseError);
    CHECK_THROWS_AS(RatFunc::fraction(Poly::constant(v, 1), Poly(v)), DivisionByZero);
    CHECK_THROWS_AS(rf(v, "a").inverse() * rf(v, "0").inverse(), DivisionByZero);
    CHECK_THROWS_AS(rf(v, "x+1"), ParseError);
    CHECK_THROWS_AS(rf(v, "a+"), ParseError);
    RatFunc f = rf(v, "1/(a-b)");
    std::map<std::string, Rational> pt{{"a", 2}, {"b", 2}, {"c", 0}, {"z0", 0}, {"z1", 1}};
    CHECK_THROWS_AS(f.eval(pt), PoleError);
  }

  TEST_CASE("printed form re-parses") {
    auto v = abc();
    std::mt19937 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
      RatFunc f = random_rf(v, rng, trial % 2);
      CHECK(rf(v, f.str().c_str()) == f);
    }
  }
}
