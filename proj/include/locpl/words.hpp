#pragma once

// Letters, words and indices, and the three products on them: the shuffle of
// words, the quasi-shuffle (stuffle) of compositions, and the coordinate
// carrying quasi-shuffle of extended series indices.

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "locpl/rational.hpp"

namespace locpl {

// A Laurent monomial in named variables, or the distinguished zero letter.
// Factors are kept sorted by variable name with nonzero exponents, so two
// letters are equal iff they are the same expression.
class Letter {
public:
  Letter() = default;  // the unit monomial 1

  static Letter zero();
  static Letter one() { return Letter(); }
  static Letter variable(std::string name, int exponent = 1);

  // "0", "1", "a", "a*b", "z^2", "b*z^-1".
  static Letter parse(std::string_view text);

  bool is_zero() const { return zero_; }
  bool is_one() const { return !zero_ && factors_.empty(); }
  const std::vector<std::pair<std::string, int>>& factors() const { return factors_; }
  int exponent(std::string_view name) const;
  int degree() const;

  Letter operator*(const Letter& other) const;
  // Throws DomainError when dividing by the zero letter.
  Letter operator/(const Letter& other) const;

  std::string str() const;

  auto operator<=>(const Letter&) const = default;

private:
  bool zero_ = false;
  std::vector<std::pair<std::string, int>> factors_;
};

struct Word {
  std::vector<Letter> letters;

  Word() = default;
  Word(std::initializer_list<Letter> ls) : letters(ls) {}
  explicit Word(std::vector<Letter> ls) : letters(std::move(ls)) {}

  // Comma-separated letters; the empty string is the empty word.
  static Word parse(std::string_view text);

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  const Letter& operator[](std::size_t i) const { return letters[i]; }
  auto begin() const { return letters.begin(); }
  auto end() const { return letters.end(); }

  std::string str() const;  // "(a,b*c)", "()"

  auto operator<=>(const Word&) const = default;
};

struct CompositionIndex {
  std::vector<int> parts;

  CompositionIndex() = default;
  explicit CompositionIndex(std::vector<int> p);

  static CompositionIndex parse(std::string_view text);

  std::size_t depth() const { return parts.size(); }
  int weight() const;
  std::string str() const;

  auto operator<=>(const CompositionIndex&) const = default;
};

// ((n_1,...,n_d); (x_1,...,x_{d+1})), written (x_{d+1}, n_d, x_d, ..., n_1, x_1).
// x[0] is x_1 and x.back() is the leading coordinate x_{d+1}.
struct ExtSeriesIndex {
  std::vector<Letter> x;
  std::vector<int> n;

  ExtSeriesIndex() : x{Letter::one()} {}  // the empty sequence
  ExtSeriesIndex(std::vector<Letter> coords, std::vector<int> exps);

  // Either the interleaved form "z^2:1:b*z:1:a*b" (leading coordinate first)
  // or the split form "x1,...,xd[,x_{d+1}]:n1,...,nd" where an omitted leading
  // coordinate defaults to 1.
  static ExtSeriesIndex parse(std::string_view text);

  std::size_t depth() const { return n.size(); }
  int weight() const;
  const Letter& leading() const { return x.back(); }
  std::string str() const;  // "(z^2,1,b*z,1,a*b)"

  auto operator<=>(const ExtSeriesIndex&) const = default;
};

// Finite formal Q-linear combination. Zero coefficients are never stored.
template <class T>
class LinComb {
public:
  using Map = std::map<T, Rational>;

  LinComb() = default;
  explicit LinComb(const T& t, const Rational& c = 1) { add(t, c); }

  void add(const T& t, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(t, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  LinComb& operator+=(const LinComb& o) {
    for (const auto& [t, c] : o.terms_) add(t, c);
    return *this;
  }
  LinComb& operator-=(const LinComb& o) {
    for (const auto& [t, c] : o.terms_) add(t, -c);
    return *this;
  }
  LinComb& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
    } else {
      for (auto& [t, c] : terms_) c *= s;
    }
    return *this;
  }
  friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
  friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
  friend LinComb operator*(const Rational& s, LinComb a) { return a *= s; }

  Rational coeff(const T& t) const {
    auto it = terms_.find(t);
    return it == terms_.end() ? Rational(0) : it->second;
  }
  const Map& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  // Sum of coefficients: the number of terms counted with multiplicity.
  Rational total() const {
    Rational s = 0;
    for (const auto& [t, c] : terms_) s += c;
    return s;
  }

  friend bool operator==(const LinComb& a, const LinComb& b) { return a.terms_ == b.terms_; }

private:
  Map terms_;
};

// "(a,b) + 2*(b,a)" style rendering shared by all carriers with a str().
template <class T>
std::string to_string(const LinComb<T>& lc) {
  if (lc.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [t, c] : lc) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (mag != 1) out += to_string(mag) + "*";
    out += t.str();
    first = false;
  }
  return out;
}

// Riffle shuffle of two words.
LinComb<Word> shuffle(const Word& u, const Word& v);
LinComb<Word> shuffle(const LinComb<Word>& u, const LinComb<Word>& v);

// One step of a quasi-shuffle path, reading the merged index from its
// smallest summation variable upwards.
enum class StuffleStep { Left, Right, Both };

// Calls fn(steps) for every interleave-or-merge path of two indices of the
// given depths.
template <class Fn>
void for_each_stuffle_path(std::size_t left, std::size_t right, Fn&& fn);

// Classical stuffle on compositions.
LinComb<CompositionIndex> quasi_shuffle(const CompositionIndex& p, const CompositionIndex& q);

// Quasi-shuffle carrying coordinates: each path of the underlying compositions
// yields the index whose k-th coordinate is x_{a_k} * x'_{b_k}, where a_k, b_k
// count the parts consumed from each side (starting at 1).
LinComb<ExtSeriesIndex> ext_quasi_shuffle(const ExtSeriesIndex& w, const ExtSeriesIndex& v);

// Drops the coordinates.
CompositionIndex forget_coordinates(const ExtSeriesIndex& w);

// r: divides every coordinate by the leading one.
ExtSeriesIndex map_r(const ExtSeriesIndex& w);
// i: the index with leading coordinate 1 built from (n_1..n_d) and (x_1..x_d).
ExtSeriesIndex map_i(const std::vector<int>& n, const std::vector<Letter>& x);

// (x_1, 0^{n_1-1}, ..., x_d, 0^{n_d-1}) in integration order. Requires the
// leading coordinate to be 1.
Word series_to_integral_word(const ExtSeriesIndex& w);

// Li(w) = sign * I(0; word; end), without renormalizing the leading coordinate.
struct IntegralForm {
  Word word;
  Letter end;
  int sign = 1;
};
IntegralForm integral_form(const ExtSeriesIndex& w);

// ---------------------------------------------------------------------------

namespace detail {
template <class Fn>
void stuffle_paths(std::size_t left, std::size_t right, std::vector<StuffleStep>& path, Fn& fn) {
  if (left == 0 && right == 0) {
    fn(static_cast<const std::vector<StuffleStep>&>(path));
    return;
  }
  if (left > 0) {
    path.push_back(StuffleStep::Left);
    stuffle_paths(left - 1, right, path, fn);
    path.pop_back();
  }
  if (right > 0) {
    path.push_back(StuffleStep::Right);
    stuffle_paths(left, right - 1, path, fn);
    path.pop_back();
  }
  if (left > 0 && right > 0) {
    path.push_back(StuffleStep::Both);
    stuffle_paths(left - 1, right - 1, path, fn);
    path.pop_back();
  }
}
}  // namespace detail

template <class Fn>
void for_each_stuffle_path(std::size_t left, std::size_t right, Fn&& fn) {
  std::vector<StuffleStep> path;
  path.reserve(left + right);
  detail::stuffle_paths(left, right, path, fn);
}

}  // namespace locpl
