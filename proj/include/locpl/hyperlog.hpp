#pragma once

// Linear combinations sum_w F_w * I(start; w; end) of hyperlogarithms with
// rational-function coefficients, and their derivatives via the KZ equation.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "locpl/ratfunc.hpp"
#include "locpl/words.hpp"

namespace locpl {

struct IntegralContext {
  Letter start;
  Letter end;
  Word letters;  // the ambient full word a_1 ... a_n
  VarsPtr vars;

  IntegralContext(Letter s, Letter e, Word w, VarsPtr v);

  std::size_t weight() const { return letters.size(); }
  // Declared variables occurring in the letters but not in the endpoints, in
  // declaration order: the variables of the all-letter derivative.
  std::vector<std::string> letter_variables() const;
};

// Value of a letter as a rational function (Laurent monomials allowed).
RatFunc letter_value(const Letter& l, const VarsPtr& vars);

// Application order of partial derivatives: (variable, count) pairs.
struct DerivationOrder {
  std::vector<std::pair<std::string, int>> steps;

  // every variable in `variables` differentiated d times
  static DerivationOrder uniform(const std::vector<std::string>& variables, int d);
  // "a=2,b=1"
  static DerivationOrder parse(std::string_view text);

  std::map<std::string, int> orders() const;
  int total() const;
};

class PolylogExpr {
public:
  explicit PolylogExpr(IntegralContext ctx) : ctx_(std::move(ctx)) {}

  const IntegralContext& context() const { return ctx_; }
  const std::map<Word, RatFunc>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const Word& w, const RatFunc& c);
  RatFunc coeff(const Word& w) const;

  PolylogExpr& operator+=(const PolylogExpr& o);
  PolylogExpr& operator-=(const PolylogExpr& o);
  PolylogExpr scaled(const RatFunc& c) const;

  // 1-based positions of w inside the context word when w is a subsequence
  // of it (earliest match).
  std::optional<std::vector<int>> subset_of(const Word& w) const;

  std::string str() const;

private:
  IntegralContext ctx_;
  std::map<Word, RatFunc> terms_;
};

// 1 * I(start; letters; end).
PolylogExpr base_expr(const IntegralContext& ctx);

// One application of d/dv: Leibniz on coefficients plus the KZ expansion of
// every I(w). Differences of identical letters contribute nothing.
PolylogExpr kz_partial(const PolylogExpr& e, std::string_view var);

PolylogExpr derive(const PolylogExpr& e, const DerivationOrder& order);

// Coefficient of the empty word.
RatFunc rational_term(const PolylogExpr& e);

// Product re-expanded through the shuffle relation; both factors need the
// same endpoints and variable context.
PolylogExpr mul_expand(const PolylogExpr& a, const PolylogExpr& b);

// 1-based sorted positions of a subset of {1..n}.
using Subset = std::vector<int>;

// The F-table of the rational KZ system computed by induction on the
// derivative multi-index, for contexts whose letters are distinct plain
// variables absent from the endpoints.
std::map<Subset, RatFunc> f_recursion(const IntegralContext& ctx, const DerivationOrder& order);

}  // namespace locpl
