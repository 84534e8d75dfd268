#pragma once

// Derived shuffle and quasi-shuffle relations, their purely rational
// variants, and the polynomial equations obtained by comparing the two.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "locpl/hyperlog.hpp"
#include "locpl/ratfunc.hpp"
#include "locpl/words.hpp"

namespace locpl {

enum class RelationKind { Shuffle, QuasiShuffle };

std::string to_string(RelationKind k);
RelationKind parse_relation_kind(std::string_view text);

// One relation instance. Shuffle relations use the words a, b between the
// endpoints start and end; quasi-shuffle relations use the indices p, q. Every
// letter variable is differentiated d times unless `orders` names it.
struct RelationSpec {
  RelationKind kind = RelationKind::Shuffle;
  Word a, b;
  ExtSeriesIndex p, q;
  Letter start = Letter::variable("z0");
  Letter end = Letter::variable("z1");
  int d = 1;
  std::map<std::string, int> orders;

  static RelationSpec shuffle(Word a, Word b, int d);
  static RelationSpec quasi_shuffle(ExtSeriesIndex p, ExtSeriesIndex q, int d);

  // Derivative count of a variable under this spec.
  int order_of(const std::string& var) const;
  std::string label() const;  // "(a) x (b)" or "(z,1,a) * (z,1,b)"
};

struct Residual {
  std::string basis;  // "I(a,b)", "I()" or "z^3"
  RatFunc value;      // LHS - RHS coefficient
};

struct IdentityReport {
  RelationKind kind = RelationKind::Shuffle;
  std::string label;
  // "I-words": coefficients of the hyperlogarithm basis. "z-series": Laurent
  // coefficients in the shared outer variable below series_order, used when
  // the words of the two sides are functionally dependent.
  std::string basis = "I-words";
  int series_order = 0;
  std::string series_variable;
  std::vector<Residual> residuals;
  bool is_identity = false;
  RatFunc lhs_rational;
  RatFunc rhs_rational;
  // Nonzero I-word residuals before the series comparison (quasi-shuffle).
  std::size_t formal_nonzero = 0;
};

// Memo of derivatives keyed by context and derivation steps.
class DerivationCache {
public:
  const PolylogExpr& derived(const IntegralContext& ctx, const DerivationOrder& order);

private:
  std::map<std::string, PolylogExpr> memo_;
};

// Variables of the relation in canonical order: letter variables in order of
// first appearance, then the endpoint variables.
VarsPtr relation_variables(const RelationSpec& spec);

// The derived shuffle relation, compared word by word.
IdentityReport check_derived_shuffle(const RelationSpec& spec, VarsPtr vars = nullptr,
                                     DerivationCache* cache = nullptr);

// The derived quasi-shuffle relation between Li(p) * Li(q) and the sum over
// ext_quasi_shuffle(p, q). Each Li(u) is (-1)^depth I(0; word(r(u)); 1).
IdentityReport check_derived_quasi_shuffle(const RelationSpec& spec, VarsPtr vars = nullptr,
                                           DerivationCache* cache = nullptr, int series_order = 6);

// I^rat(A) I^rat(B) - sum c_u I^rat(u): a single residual.
IdentityReport rat_shuffle_relation(const RelationSpec& spec, VarsPtr vars = nullptr,
                                    DerivationCache* cache = nullptr);

// The same rational-term comparison for the quasi-shuffle side.
IdentityReport rat_quasi_shuffle_relation(const RelationSpec& spec, VarsPtr vars = nullptr,
                                          DerivationCache* cache = nullptr);

struct ProvenanceEntry {
  std::string label;
  RelationKind kind;
  int N = 0;
  bool discrepancy_zero = false;
  std::optional<std::size_t> generator;  // index into generators after sorting
};

struct VarietyIdeal {
  VarsPtr vars;
  int N = 0;
  std::vector<Poly> generators;  // integer primitive, positive lc, sorted, distinct
  std::vector<ProvenanceEntry> provenance;
  std::vector<Poly> excluded;  // irreducible denominator factors met on the way
};

// Generators are the numerators of the nonzero rational-term discrepancies of
// the given relations, each differentiated N times per letter variable.
VarietyIdeal variety_equations(const std::vector<RelationSpec>& pairs, int N, VarsPtr vars);

// Relation list used when no pairs are configured: every shuffle pair of
// total weight 2 and 3 in a, b, c, and quasi-shuffle pairs of weight 2 and 3
// with outer variable z.
std::vector<RelationSpec> default_pairs(int max_weight = 3);

struct Membership {
  bool member = true;
  std::vector<Rational> values;  // one per generator
};
Membership point_membership(const VarietyIdeal& ideal, const std::map<std::string, Rational>& point);

// Rational points of the variety found by fixing all variables but one at
// random small rationals and solving a generator of degree one in the last.
// Every returned point is checked exactly and avoids the excluded factors.
// Without generators the points are random ones off the excluded factors.
std::vector<std::map<std::string, Rational>> sample_points(const VarietyIdeal& ideal, std::size_t count,
                                                           std::uint64_t seed = 1);

}  // namespace locpl
