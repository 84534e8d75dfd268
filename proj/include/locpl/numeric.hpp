#pragma once

// Floating-point oracle: truncated nested sums for multiple polylogarithms,
// hyperlogarithms through their series form, and finite differences.

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "locpl/hyperlog.hpp"
#include "locpl/words.hpp"

namespace locpl {

using Real = long double;
using NumericPoint = std::map<std::string, Real>;

struct SeriesParams {
  int truncation = 0;  // M, the bound on the outermost summation index; 0 = automatic
  Real ratio_bound = 0.5L;
  Real tolerance = 1e-10L;
};

struct SeriesValue {
  Real value = 0;
  Real error_bound = 0;
  int M_used = 0;
  bool converged = true;  // error_bound <= tolerance
};

Real letter_numeric(const Letter& l, const NumericPoint& point);
// Values of the declared variables in declaration order.
std::vector<Real> numeric_values(const Variables& vars, const NumericPoint& point);

// sum over 0 < m_1 < ... < m_d <= M of prod y_i^{m_i} / m_i^{n_i}, with the
// tail bound (rho/(1-rho))^{d-1} rho^{M+1}/(1-rho), rho = max |y_i|.
// Throws ConvergenceError when some |y_i| exceeds the ratio bound.
SeriesValue eval_li_ratios(std::span<const int> n, std::span<const Real> y, const SeriesParams& params = {});

// Li of an extended index, with ratios y_i = x_{i+1} / x_i.
SeriesValue eval_li(const ExtSeriesIndex& index, const NumericPoint& point, const SeriesParams& params = {});

// I(start; w; end) through the affine map to I(0; .; 1) and the series form.
// Letters equal to start as expressions become 0.
SeriesValue eval_integral(const Letter& start, const Word& w, const Letter& end, const NumericPoint& point,
                          const SeriesParams& params = {});

// sum F_w(point) * I(w)(point); the error bound sums |F_w| times the bounds.
SeriesValue eval_expr(const PolylogExpr& e, const NumericPoint& point, const SeriesParams& params = {});

struct FiniteDiffParams {
  Real step = 1e-2L;
  int levels = 4;  // Richardson table depth
  Real tolerance = 1e-6L;
};

struct FiniteDiffReport {
  Real symbolic = 0;  // kz_partial(e, v) at the point
  Real numeric = 0;   // extrapolated central difference of e
  Real rel_error = 0;
  bool passed = false;
};

FiniteDiffReport finite_diff_check(const PolylogExpr& e, std::string_view var, const NumericPoint& point,
                                   const FiniteDiffParams& fd = {}, const SeriesParams& params = {});

// Extrapolated central difference of an arbitrary function of one variable.
template <class Fn>
Real richardson_derivative(Fn&& f, Real x, Real h, int levels) {
  std::vector<std::vector<Real>> t(levels);
  for (int i = 0; i < levels; ++i) {
    t[i].resize(i + 1);
    t[i][0] = (f(x + h) - f(x - h)) / (2 * h);
    Real p = 4;
    for (int j = 1; j <= i; ++j, p *= 4) t[i][j] = t[i][j - 1] + (t[i][j - 1] - t[i - 1][j - 1]) / (p - 1);
    h /= 2;
  }
  return t.back().back();
}

}  // namespace locpl
