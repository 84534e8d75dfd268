#pragma once

// Sparse multivariate polynomials over Q in a declared, ordered variable
// list. Terms are kept sorted in descending graded-lexicographic order, with
// the first declared variable the largest.

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "locpl/rational.hpp"

namespace locpl {

constexpr std::size_t kMaxVariables = 16;

class Variables {
public:
  explicit Variables(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> index(std::string_view name) const;
  // Throws DomainError for an undeclared name.
  std::size_t require(std::string_view name) const;

private:
  std::vector<std::string> names_;
};

using VarsPtr = std::shared_ptr<const Variables>;
VarsPtr make_variables(std::vector<std::string> names);

struct Monomial {
  std::array<std::uint16_t, kMaxVariables> e{};

  int total() const {
    int t = 0;
    for (auto x : e) t += x;
    return t;
  }
  bool divides(const Monomial& o) const {
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }
  Monomial operator*(const Monomial& o) const;
  Monomial operator/(const Monomial& o) const;  // requires divides
  bool is_one() const {
    for (auto x : e)
      if (x) return false;
    return true;
  }
  bool operator==(const Monomial&) const = default;
};

// Strict "a comes before b" in descending graded-lex order.
struct GradLexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    int ta = a.total(), tb = b.total();
    if (ta != tb) return ta > tb;
    return a.e > b.e;
  }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const {
    std::size_t h = 1469598103934665603ull;
    for (auto x : m.e) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

class Poly {
public:
  struct Term {
    Monomial mono;
    Rational coeff;
  };

  Poly() = default;  // zero with no variable context (usable only as a placeholder)
  explicit Poly(VarsPtr vars) : vars_(std::move(vars)) {}

  static Poly constant(VarsPtr vars, const Rational& c);
  static Poly variable(VarsPtr vars, std::size_t index, int power = 1);
  static Poly variable(VarsPtr vars, std::string_view name, int power = 1);
  // Takes ownership of unsorted, possibly duplicated terms.
  static Poly from_terms(VarsPtr vars, std::vector<Term> terms);

  const VarsPtr& vars() const { return vars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_one() const { return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coeff == 1; }
  Rational constant_value() const;  // requires is_constant()
  const Rational& leading_coeff() const { return terms_.front().coeff; }
  const Monomial& leading_monomial() const { return terms_.front().mono; }

  int degree(std::size_t var) const;
  int total_degree() const;
  bool depends_on(std::size_t var) const { return degree(var) > 0; }
  // Coefficients of the polynomial viewed as univariate in var (index = power).
  std::vector<Poly> coefficients_in(std::size_t var) const;
  static Poly from_coefficients(VarsPtr vars, std::size_t var, const std::vector<Poly>& coeffs);

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rational& s);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
  Poly mul_monomial(const Monomial& m, const Rational& c) const;
  Poly pow(unsigned k) const;

  // q with a == q*b, or nullopt when b does not divide a.
  static std::optional<Poly> divide_exact(const Poly& a, const Poly& b);
  // Aborts with DomainError if b does not divide a.
  static Poly divide(const Poly& a, const Poly& b);

  Poly derivative(std::size_t var) const;

  template <class T>
  T evaluate(std::span<const T> values) const;
  Rational evaluate(std::span<const Rational> values) const;
  // Value modulo the prime p; nullopt if a coefficient denominator is 0 mod p.
  std::optional<std::uint64_t> evaluate_mod(std::span<const std::uint64_t> values, std::uint64_t p) const;

  // Positive rational c with (*this)/c integral and primitive; 0 for zero.
  Rational content() const;
  // Integer primitive associate with positive leading coefficient.
  Poly primitive() const;

  std::string str() const;

  friend bool operator==(const Poly& a, const Poly& b);
  // Total order on polynomials of one variable context (terms, then coefficients).
  friend std::strong_ordering compare(const Poly& a, const Poly& b);

private:
  void check_same(const Poly& o) const;

  VarsPtr vars_;
  std::vector<Term> terms_;
};

// Greatest common divisor, normalized to an integer primitive polynomial with
// positive leading coefficient (1 when coprime). gcd(0,0) = 0.
Poly gcd(const Poly& a, const Poly& b);

// --- template definitions ---------------------------------------------------

template <class T>
T Poly::evaluate(std::span<const T> values) const {
  T sum = T(0);
  for (const auto& t : terms_) {
    T v = T(to_long_double(t.coeff));
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      for (int k = 0; k < t.mono.e[i]; ++k) v *= values[i];
    sum += v;
  }
  return sum;
}

}  // namespace locpl
