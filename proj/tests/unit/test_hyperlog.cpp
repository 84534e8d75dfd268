#include <doctest.h>

#include "locpl/hyperlog.hpp"

using namespace locpl;

namespace {

IntegralContext context(const char* letters, const char* start = "z0", const char* end = "z1") {
  return IntegralContext(Letter::parse(start), Letter::parse(end), Word::parse(letters),
                         make_variables({"a", "b", "c", "z0", "z1"}));
}

RatFunc rf(const IntegralContext& ctx, const char* s) { return RatFunc::parse(ctx.vars, s); }

}  // namespace

TEST_SUITE("hyperlog") {
  TEST_CASE("letter variables exclude the endpoints") {
    CHECK(context("a,b").letter_variables() == std::vector<std::string>{"a", "b"});
    CHECK(context("a,z1").letter_variables() == std::vector<std::string>{"a"});
    CHECK(context("c,a").letter_variables() == std::vector<std::string>{"a", "c"});
  }

  TEST_CASE("weight one derivative") {
    auto ctx = context("a");
    PolylogExpr e = kz_partial(base_expr(ctx), "a");
    CHECK(e.terms().size() == 1);
    CHECK(rational_term(e) == rf(ctx, "-(z1-z0)/((z1-a)*(a-z0))"));
  }

  TEST_CASE("weight one higher derivatives") {
    auto ctx = context("a");
    PolylogExpr e = base_expr(ctx);
    Rational fact = 1;
    for (int n = 1; n <= 6; ++n) {
      e = kz_partial(e, "a");
      if (n > 1) fact *= n - 1;
      RatFunc expected = (rf(ctx, "1/(a-z0)").pow(n) - rf(ctx, "1/(a-z1)").pow(n)) * (n % 2 ? -fact : fact);
      CHECK(rational_term(e) == expected);
    }
  }

  TEST_CASE("weight two first order") {
    auto ctx = context("a,b");
    PolylogExpr da = kz_partial(base_expr(ctx), "a");
    CHECK(da.coeff(Word::parse("b")) == rf(ctx, "1/(a-b)-1/(a-z0)"));
    CHECK(da.coeff(Word::parse("a")) == rf(ctx, "-1/(a-b)"));
    CHECK(rational_term(da).is_zero());
    PolylogExpr db = kz_partial(base_expr(ctx), "b");
    CHECK(db.coeff(Word::parse("a")) == rf(ctx, "1/(b-z1)-1/(b-a)"));
    CHECK(db.coeff(Word::parse("b")) == rf(ctx, "1/(b-a)"));
  }

  TEST_CASE("weight two second order from the KZ equation") {
    auto ctx = context("a,b");
    PolylogExpr dbb = derive(base_expr(ctx), DerivationOrder::parse("b=2"));
    CHECK(dbb.coeff(Word::parse("a")) == rf(ctx, "1/(a-b)^2-1/(b-z1)^2"));
    CHECK(dbb.coeff(Word::parse("b")) == rf(ctx, "-1/(b-a)^2"));
    CHECK(rational_term(dbb) == rf(ctx, "-(z1-z0)/((b-a)*(z1-b)*(b-z0))"));
    PolylogExpr dab = derive(base_expr(ctx), DerivationOrder::parse("a=1,b=1"));
    CHECK(dab.coeff(Word::parse("a")) == rf(ctx, "-1/(b-a)^2"));
    CHECK(dab.coeff(Word::parse("b")) == rf(ctx, "1/(b-a)^2"));
    CHECK(rational_term(dab) == rf(ctx, "(z1-z0)/((z1-b)*(b-a)*(a-z0))"));
  }

  TEST_CASE("partial derivatives commute") {
    auto ctx = context("a,b,c");
    PolylogExpr x = derive(base_expr(ctx), DerivationOrder::parse("a=1,c=2,b=1"));
    PolylogExpr y = derive(base_expr(ctx), DerivationOrder::parse("b=1,c=1,a=1,c=1"));
    PolylogExpr d = x;
    d -= y;
    CHECK(d.is_zero());
  }

  TEST_CASE("repeated letters contribute no self differences") {
    auto ctx = context("a,a");
    PolylogExpr e = kz_partial(base_expr(ctx), "a");
    // I(a,a) = I(a)^2 / 2
    CHECK(e.coeff(Word::parse("a")) == rf(ctx, "1/(z1-a)-1/(z0-a)") * rf(ctx, "-1"));
    CHECK(e.terms().size() == 1);
  }

  TEST_CASE("endpoint variables are differentiable") {
    auto ctx = context("a");
    PolylogExpr e = kz_partial(base_expr(ctx), "z1");
    CHECK(rational_term(e) == rf(ctx, "1/(z1-a)"));
  }

  TEST_CASE("zero orders echo the base expression") {
    auto ctx = context("a,b");
    PolylogExpr e = derive(base_expr(ctx), DerivationOrder::parse(""));
    CHECK(e.str() == base_expr(ctx).str());
    CHECK(e.coeff(Word::parse("a,b")) == rf(ctx, "1"));
  }

  TEST_CASE("subset positions") {
    auto ctx = context("a,b,c");
    PolylogExpr e(ctx);
    CHECK(e.subset_of(Word::parse("a,c")) == std::vector<int>{1, 3});
    CHECK(e.subset_of(Word::parse("")) == std::vector<int>{});
    CHECK_FALSE(e.subset_of(Word::parse("c,a")).has_value());
  }

  TEST_CASE("rational recursion agrees with derive") {
    auto ctx = context("a,b,c");
    DerivationOrder order = DerivationOrder::parse("a=2,b=1,c=1");
    PolylogExpr e = derive(base_expr(ctx), order);
    auto f = f_recursion(ctx, order);
    for (const auto& [w, c] : e.terms()) CHECK(f.at(*e.subset_of(w)) == c);
    for (const auto& [s, c] : f)
      if (!c.is_zero()) {
        Word w;
        for (int i : s) w.letters.push_back(ctx.letters[i - 1]);
        CHECK(e.coeff(w) == c);
      }
  }

  TEST_CASE("shuffle expansion of products") {
    auto ctx = context("a,b");
    PolylogExpr ia(ctx), ib(ctx);
    ia.add(Word::parse("a"), rf(ctx, "1"));
    ib.add(Word::parse("b"), rf(ctx, "2"));
    PolylogExpr p = mul_expand(ia, ib);
    CHECK(p.coeff(Word::parse("a,b")) == rf(ctx, "2"));
    CHECK(p.coeff(Word::parse("b,a")) == rf(ctx, "2"));
  }

  TEST_CASE("undeclared variables are rejected") {
    auto ctx = context("a");
    CHECK_THROWS_AS(kz_partial(base_expr(ctx), "q"), DomainError);
    CHECK_THROWS_AS(DerivationOrder::parse("a=x"), ParseError);
  }
}
