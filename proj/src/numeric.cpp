#include "locpl/numeric.hpp"

#include <cmath>

#include "locpl/errors.hpp"

namespace locpl {

Real letter_numeric(const Letter& l, const NumericPoint& point) {
  if (l.is_zero()) return 0;
  Real v = 1;
  for (const auto& [name, exp] : l.factors()) {
    auto it = point.find(name);
    if (it == point.end()) throw DomainError("no value given for variable '" + name + "'");
    v *= std::pow(it->second, Real(exp));
  }
  return v;
}

std::vector<Real> numeric_values(const Variables& vars, const NumericPoint& point) {
  std::vector<Real> values(kMaxVariables, 0);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    auto it = point.find(vars.name(i));
    if (it == point.end()) throw DomainError("no value given for variable '" + vars.name(i) + "'");
    values[i] = it->second;
  }
  return values;
}

SeriesValue eval_li_ratios(std::span<const int> n, std::span<const Real> y, const SeriesParams& params) {
  const std::size_t d = n.size();
  SeriesValue out;
  if (d == 0) {
    out.value = 1;
    return out;
  }
  if (!(params.ratio_bound > 0 && params.ratio_bound < 1)) throw DomainError("ratio bound must lie in (0, 1)");
  Real rho = 0;
  for (Real v : y) rho = std::max(rho, std::fabs(v));
  if (rho > params.ratio_bound)
    throw ConvergenceError("series ratio " + std::to_string(double(rho)) + " exceeds the bound " +
                           std::to_string(double(params.ratio_bound)));
  auto tail = [&](int M) {
    if (rho == 0) return Real(0);
    Real q = rho / (1 - rho);
    return std::pow(q, Real(d - 1)) * std::pow(rho, Real(M + 1)) / (1 - rho);
  };
  int M = params.truncation;
  if (M <= 0) {
    M = int(d);
    while (tail(M) > params.tolerance && M < 100000) ++M;
  }
  // partial[k] = sum over m_1 < ... < m_k < m of the first k factors
  std::vector<Real> partial(d, 0);
  std::vector<Real> power(d, 1);
  Real sum = 0;
  for (int m = 1; m <= M; ++m) {
    Real inner = 1;  // value of the nested sum of depth k-1 below m
    for (std::size_t k = 0; k < d; ++k) {
      power[k] *= y[k];
      Real term = inner * power[k] / std::pow(Real(m), Real(n[k]));
      inner = partial[k];
      partial[k] += term;
      if (k + 1 == d) sum += term;
    }
  }
  out.value = sum;
  out.error_bound = tail(M);
  out.M_used = M;
  out.converged = out.error_bound <= params.tolerance;
  return out;
}

SeriesValue eval_li(const ExtSeriesIndex& index, const NumericPoint& point, const SeriesParams& params) {
  std::vector<Real> y;
  for (std::size_t i = 0; i < index.depth(); ++i) {
    Real lo = letter_numeric(index.x[i], point);
    if (lo == 0) throw DomainError("zero coordinate in series index");
    y.push_back(letter_numeric(index.x[i + 1], point) / lo);
  }
  return eval_li_ratios(index.n, y, params);
}

SeriesValue eval_integral(const Letter& start, const Word& w, const Letter& end, const NumericPoint& point,
                          const SeriesParams& params) {
  if (w.empty()) return SeriesValue{1, 0, 0, true};
  Real a = letter_numeric(start, point);
  Real scale = letter_numeric(end, point) - a;
  if (scale == 0) throw DomainError("integral endpoints coincide at the evaluation point");
  // split into nonzero letters, each followed by its run of zeros
  std::vector<Real> c;
  std::vector<int> n;
  for (const auto& l : w) {
    Real v = l == start ? Real(0) : (letter_numeric(l, point) - a) / scale;
    if (v == 0) {
      if (c.empty()) throw DomainError("word " + w.str() + " begins at its start point (divergent)");
      ++n.back();
      continue;
    }
    c.push_back(v);
    n.push_back(1);
  }
  std::vector<Real> y;
  for (std::size_t i = 0; i < c.size(); ++i) y.push_back((i + 1 < c.size() ? c[i + 1] : Real(1)) / c[i]);
  SeriesValue s;
  try {
    s = eval_li_ratios(n, y, params);
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(std::string(e.what()) + " for I" + w.str());
  }
  if (c.size() % 2) s.value = -s.value;
  return s;
}

SeriesValue eval_expr(const PolylogExpr& e, const NumericPoint& point, const SeriesParams& params) {
  const auto& ctx = e.context();
  std::vector<Real> values = numeric_values(*ctx.vars, point);
  SeriesValue out;
  for (const auto& [w, f] : e.terms()) {
    Real c;
    try {
      c = f.eval_numeric<Real>(values);
    } catch (const PoleError& err) {
      throw PoleError(std::string(err.what()) + " (coefficient of I" + w.str() + ")");
    }
    SeriesValue i = eval_integral(ctx.start, w, ctx.end, point, params);
    out.value += c * i.value;
    out.error_bound += std::fabs(c) * i.error_bound;
    out.M_used = std::max(out.M_used, i.M_used);
    out.converged = out.converged && i.converged;
  }
  return out;
}

FiniteDiffReport finite_diff_check(const PolylogExpr& e, std::string_view var, const NumericPoint& point,
                                   const FiniteDiffParams& fd, const SeriesParams& params) {
  FiniteDiffReport r;
  r.symbolic = eval_expr(kz_partial(e, var), point, params).value;
  std::string name(var);
  auto it = point.find(name);
  if (it == point.end()) throw DomainError("no value given for variable '" + name + "'");
  NumericPoint shifted = point;
  auto f = [&](Real x) {
    shifted[name] = x;
    return eval_expr(e, shifted, params).value;
  };
  r.numeric = richardson_derivative(f, it->second, fd.step, fd.levels);
  Real scale = std::max(std::fabs(r.symbolic), Real(1e-12L));
  r.rel_error = std::fabs(r.numeric - r.symbolic) / scale;
  r.passed = r.rel_error <= fd.tolerance;
  return r;
}

}  // namespace locpl
