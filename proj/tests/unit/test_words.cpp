#include <doctest.h>

#include "locpl/errors.hpp"
#include "locpl/words.hpp"

using namespace locpl;

namespace {

Rational binomial(int n, int k) {
  Rational r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Number of quasi-shuffle terms of depths p and q: sum_k C(p+q-k, k) C(p+q-2k, p-k).
Rational stuffle_count(int p, int q) {
  Rational s = 0;
  for (int k = 0; k <= std::min(p, q); ++k) s += binomial(p + q - k, k) * binomial(p + q - 2 * k, p - k);
  return s;
}

}  // namespace

TEST_SUITE("words") {
  TEST_CASE("letter parsing and canonical order") {
    CHECK(Letter::parse("b*a") == Letter::parse("a*b"));
    CHECK(Letter::parse("z^2").str() == "z^2");
    CHECK(Letter::parse("a*a") == Letter::parse("a^2"));
    CHECK(Letter::parse("0").is_zero());
    CHECK(Letter::parse("1").is_one());
    CHECK((Letter::parse("a*z") / Letter::parse("z")) == Letter::parse("a"));
    CHECK_THROWS_AS(Letter::parse("a+b"), ParseError);
    CHECK_THROWS_AS(Letter::parse("a") / Letter::zero(), DomainError);
  }

  TEST_CASE("shuffle of a,b with c has three terms") {
    auto r = shuffle(Word::parse("a,b"), Word::parse("c"));
    CHECK(r.size() == 3);
    CHECK(r.coeff(Word::parse("a,b,c")) == 1);
    CHECK(r.coeff(Word::parse("a,c,b")) == 1);
    CHECK(r.coeff(Word::parse("c,a,b")) == 1);
  }

  TEST_CASE("shuffle with the empty word is the identity") {
    Word u = Word::parse("a,b,a");
    CHECK(shuffle(u, Word()) == LinComb<Word>(u));
    CHECK(shuffle(Word(), u) == LinComb<Word>(u));
  }

  TEST_CASE("shuffle term count is binomial") {
    const char* names[] = {"a", "b", "c", "e", "f", "g"};
    for (int p = 0; p <= 3; ++p)
      for (int q = 0; q <= 3; ++q) {
        Word u, v;
        for (int i = 0; i < p; ++i) u.letters.push_back(Letter::variable(names[i]));
        for (int i = 0; i < q; ++i) v.letters.push_back(Letter::variable(names[p + i]));
        auto r = shuffle(u, v);
        CHECK(r.total() == binomial(p + q, p));
        CHECK(r.size() == binomial(p + q, p).get_num().get_ui());
      }
  }

  TEST_CASE("shuffle is commutative and associative") {
    Word u = Word::parse("a,b"), v = Word::parse("a,c"), w = Word::parse("b");
    CHECK(shuffle(u, v) == shuffle(v, u));
    CHECK(shuffle(shuffle(u, v), LinComb<Word>(w)) == shuffle(LinComb<Word>(u), shuffle(v, w)));
  }

  TEST_CASE("repeated letters accumulate coefficients") {
    auto r = shuffle(Word::parse("a"), Word::parse("a"));
    CHECK(r.size() == 1);
    CHECK(r.coeff(Word::parse("a,a")) == 2);
  }

  TEST_CASE("stuffle of depth one") {
    auto r = quasi_shuffle(CompositionIndex::parse("1"), CompositionIndex::parse("1"));
    CHECK(r.coeff(CompositionIndex({2})) == 1);
    CHECK(r.coeff(CompositionIndex({1, 1})) == 2);
    auto s = quasi_shuffle(CompositionIndex::parse("2"), CompositionIndex::parse("3"));
    CHECK(s.total() == 3);
    CHECK(s.coeff(CompositionIndex({5})) == 1);
    CHECK(s.coeff(CompositionIndex({2, 3})) == 1);
    CHECK(s.coeff(CompositionIndex({3, 2})) == 1);
  }

  TEST_CASE("stuffle term count and weight") {
    for (int p = 1; p <= 3; ++p)
      for (int q = 1; q <= 3; ++q) {
        std::vector<int> a(p), b(q);
        for (int i = 0; i < p; ++i) a[i] = i + 1;
        for (int i = 0; i < q; ++i) b[i] = 2 * i + 1;
        auto r = quasi_shuffle(CompositionIndex(a), CompositionIndex(b));
        CHECK(r.total() == stuffle_count(p, q));
        int weight = CompositionIndex(a).weight() + CompositionIndex(b).weight();
        for (const auto& [c, k] : r) CHECK(c.weight() == weight);
      }
  }

  TEST_CASE("stuffle is commutative and associative") {
    CompositionIndex a({1, 2}), b({3}), c({1});
    CHECK(quasi_shuffle(a, b) == quasi_shuffle(b, a));
    LinComb<CompositionIndex> left, right;
    for (const auto& [u, k] : quasi_shuffle(a, b))
      for (const auto& [w, m] : quasi_shuffle(u, c)) left.add(w, k * m);
    for (const auto& [u, k] : quasi_shuffle(b, c))
      for (const auto& [w, m] : quasi_shuffle(a, u)) right.add(w, k * m);
    CHECK(left == right);
  }

  TEST_CASE("extended quasi-shuffle in weight 1x1") {
    auto r = ext_quasi_shuffle(ExtSeriesIndex::parse("z:1:a"), ExtSeriesIndex::parse("z:1:b"));
    CHECK(r.size() == 3);
    CHECK(r.coeff(ExtSeriesIndex::parse("z^2:2:a*b")) == 1);
    CHECK(r.coeff(ExtSeriesIndex::parse("z^2:1:b*z:1:a*b")) == 1);
    CHECK(r.coeff(ExtSeriesIndex::parse("z^2:1:a*z:1:a*b")) == 1);
  }

  TEST_CASE("extended quasi-shuffle forgets to the classical one") {
    auto p = ExtSeriesIndex::parse("z:2:b:1:a"), q = ExtSeriesIndex::parse("w:3:c");
    LinComb<CompositionIndex> forgotten;
    for (const auto& [u, c] : ext_quasi_shuffle(p, q)) {
      forgotten.add(forget_coordinates(u), c);
      CHECK(u.leading() == Letter::parse("w*z"));
      CHECK(u.x.front() == Letter::parse("a*c"));
    }
    CHECK(forgotten == quasi_shuffle(forget_coordinates(p), forget_coordinates(q)));
  }

  TEST_CASE("index literal forms agree") {
    CHECK(ExtSeriesIndex::parse("a,b:1,2") == ExtSeriesIndex::parse("1:2:b:1:a"));
    CHECK(ExtSeriesIndex::parse("z:1:a").str() == "(z,1,a)");
    CHECK_THROWS_AS(ExtSeriesIndex::parse("z:0:a"), ParseError);
  }

  TEST_CASE("map r and the integral word") {
    auto w = ExtSeriesIndex::parse("z^2:2:a*b");
    auto r = map_r(w);
    CHECK(r.leading().is_one());
    CHECK(r.x[0] == Letter::parse("a*b*z^-2"));
    CHECK(series_to_integral_word(r) == Word({Letter::parse("a*b*z^-2"), Letter::zero()}));
    IntegralForm f = integral_form(w);
    CHECK(f.word == Word({Letter::parse("a*b"), Letter::zero()}));
    CHECK(f.end == Letter::parse("z^2"));
    CHECK(f.sign == -1);
    CHECK(integral_form(ExtSeriesIndex::parse("z^2:1:b*z:1:a*b")).word == Word::parse("a*b,b*z"));
  }

  TEST_CASE("map i puts a unit leading coordinate") {
    auto w = map_i({1, 2}, {Letter::parse("a"), Letter::parse("b")});
    CHECK(w == ExtSeriesIndex::parse("a,b:1,2"));
    CHECK(w.leading().is_one());
  }
}
