#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>

#include "locpl/errors.hpp"
#include "locpl/poly.hpp"

namespace locpl {

// Exact element of Q(x_1, ..., x_k) in canonical form: num/den with
// gcd(num, den) = 1, integer coefficients with coprime contents, and a
// positive graded-lex leading coefficient on den. Zero is 0/1.
//
// When den splits into factors that are certifiably irreducible (variables,
// and polynomials of degree one in some variable with trivial content there)
// the factorization is carried along and cancellation is done by trial
// division. Otherwise polynomial gcds are used.
class RatFunc {
public:
  struct Factor {
    Poly poly;  // irreducible, integer primitive, positive leading coefficient
    int exp = 0;
  };

  RatFunc() = default;
  explicit RatFunc(VarsPtr vars);
  explicit RatFunc(Poly num);
  // Reduces an arbitrary fraction; throws DivisionByZero for den == 0.
  static RatFunc fraction(Poly num, Poly den);

  static RatFunc constant(VarsPtr vars, const Rational& c);
  static RatFunc variable(VarsPtr vars, std::string_view name);
  // Arithmetic expression in declared variables: + - * / ^, integers,
  // parentheses. Integer powers may be negative.
  static RatFunc parse(VarsPtr vars, std::string_view text);

  const VarsPtr& vars() const { return num_.vars(); }
  const Poly& num() const { return num_; }
  // Expanded on first use when the value is factored.
  const Poly& den() const;
  // den == den_content() * prod f^e when is_factored().
  bool is_factored() const { return factored_; }
  const std::vector<Factor>& den_factors() const { return factors_; }
  const Integer& den_content() const { return den_content_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc operator*(const Rational& s) const;
  RatFunc pow(int k) const;
  RatFunc inverse() const;

  RatFunc partial(std::size_t var) const;
  RatFunc partial(std::string_view name) const { return partial(vars()->require(name)); }

  // Exact evaluation; throws PoleError when the denominator vanishes.
  Rational eval(std::span<const Rational> values) const;
  Rational eval(const std::map<std::string, Rational>& point) const;
  template <class T>
  T eval_numeric(std::span<const T> values) const {
    T d = den().evaluate<T>(values);
    if (d == T(0)) throw PoleError("rational function has a pole at the evaluation point");
    return num_.evaluate<T>(values) / d;
  }

  // "num" or "(num)/(den)" with both sides fully expanded.
  std::string str() const;

  friend bool operator==(const RatFunc& a, const RatFunc& b);

private:
  // Normalizes contents and sign of an already coprime pair.
  static RatFunc coprime(Poly num, Poly den);
  // num / (content * prod f^e) with num coprime to every listed factor.
  static RatFunc from_factored(Poly num, const Integer& content, std::vector<Factor> factors);
  static RatFunc generic_add(const RatFunc& a, const RatFunc& b);
  static RatFunc generic_mul(const RatFunc& a, const RatFunc& b);

  Poly num_;
  mutable Poly den_;
  mutable bool den_ready_ = true;
  bool factored_ = false;
  Integer den_content_ = 1;
  std::vector<Factor> factors_;
};

// Pairwise sum of many terms; cheaper than a left fold because intermediate
// denominators stay small. Empty input gives 0 over vars.
RatFunc sum(const VarsPtr& vars, std::vector<RatFunc> terms);

// Values of every declared variable, in declaration order.
std::vector<Rational> point_values(const Variables& vars, const std::map<std::string, Rational>& point);

// p == unit * prod f^e with every f certified irreducible, when such a
// factorization is cheap to find; nullopt otherwise.
struct EasyFactorization {
  Rational unit;
  std::vector<RatFunc::Factor> factors;
};
std::optional<EasyFactorization> easy_factor(const Poly& p);

}  // namespace locpl
