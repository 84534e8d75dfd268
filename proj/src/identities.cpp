#include "locpl/identities.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "locpl/errors.hpp"

namespace locpl {

std::string to_string(RelationKind k) { return k == RelationKind::Shuffle ? "shuffle" : "quasi_shuffle"; }

RelationKind parse_relation_kind(std::string_view text) {
  if (text == "shuffle") return RelationKind::Shuffle;
  if (text == "quasi_shuffle" || text == "quasi-shuffle" || text == "stuffle") return RelationKind::QuasiShuffle;
  throw ParseError("unknown relation kind '" + std::string(text) + "'");
}

RelationSpec RelationSpec::shuffle(Word a, Word b, int d) {
  RelationSpec s;
  s.kind = RelationKind::Shuffle;
  s.a = std::move(a);
  s.b = std::move(b);
  s.d = d;
  return s;
}

RelationSpec RelationSpec::quasi_shuffle(ExtSeriesIndex p, ExtSeriesIndex q, int d) {
  RelationSpec s;
  s.kind = RelationKind::QuasiShuffle;
  s.p = std::move(p);
  s.q = std::move(q);
  s.d = d;
  return s;
}

int RelationSpec::order_of(const std::string& var) const {
  auto it = orders.find(var);
  return it == orders.end() ? d : it->second;
}

std::string RelationSpec::label() const {
  if (kind == RelationKind::Shuffle) return a.str() + " x " + b.str();
  return p.str() + " * " + q.str();
}

// --- variables -------------------------------------------------------------------

namespace {

void append_names(const Letter& l, std::vector<std::string>& out) {
  for (const auto& f : l.factors())
    if (std::find(out.begin(), out.end(), f.first) == out.end()) out.push_back(f.first);
}

std::vector<std::string> names_of(const ExtSeriesIndex& w) {
  std::vector<std::string> out;
  for (const auto& l : w.x) append_names(l, out);
  return out;
}

// Argument variables first, then endpoint (shuffle) or shared (quasi-shuffle)
// variables.
std::pair<std::vector<std::string>, std::vector<std::string>> split_variables(const RelationSpec& s) {
  std::vector<std::string> head, tail;
  if (s.kind == RelationKind::Shuffle) {
    append_names(s.start, tail);
    append_names(s.end, tail);
    std::vector<std::string> letters;
    for (const auto& l : s.a) append_names(l, letters);
    for (const auto& l : s.b) append_names(l, letters);
    for (const auto& n : letters)
      if (std::find(tail.begin(), tail.end(), n) == tail.end()) head.push_back(n);
  } else {
    std::vector<std::string> np = names_of(s.p), nq = names_of(s.q);
    for (const auto& n : np)
      (std::find(nq.begin(), nq.end(), n) == nq.end() ? head : tail).push_back(n);
    for (const auto& n : nq)
      if (std::find(np.begin(), np.end(), n) == np.end()) head.push_back(n);
  }
  return {head, tail};
}

DerivationOrder order_for(const RelationSpec& s, const std::vector<std::string>& vars) {
  DerivationOrder o;
  for (const auto& v : vars) {
    int k = s.order_of(v);
    if (k < 0) throw DomainError("derivative order must be nonnegative");
    if (k > 0) o.steps.emplace_back(v, k);
  }
  return o;
}

RatFunc constant(const VarsPtr& vars, const Rational& c) { return RatFunc::constant(vars, c); }

}  // namespace

VarsPtr relation_variables(const RelationSpec& spec) {
  auto [head, tail] = split_variables(spec);
  head.insert(head.end(), tail.begin(), tail.end());
  return make_variables(head);
}

const PolylogExpr& DerivationCache::derived(const IntegralContext& ctx, const DerivationOrder& order) {
  std::string key = ctx.start.str() + ";" + ctx.letters.str() + ";" + ctx.end.str() + "|";
  for (const auto& n : ctx.vars->names()) key += n + ",";
  key += "|";
  for (const auto& [v, k] : order.steps) key += v + "=" + std::to_string(k) + ",";
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  return memo_.emplace(key, derive(base_expr(ctx), order)).first->second;
}

namespace {

PolylogExpr derived(DerivationCache* cache, const IntegralContext& ctx, const DerivationOrder& order) {
  if (cache) return cache->derived(ctx, order);
  return derive(base_expr(ctx), order);
}

// --- shuffle side ------------------------------------------------------------------

struct ShuffleSides {
  PolylogExpr lhs_a, lhs_b;                      // derived factors
  std::vector<std::pair<PolylogExpr, Rational>> rhs;  // derived shuffle terms
};

ShuffleSides shuffle_sides(const RelationSpec& s, const VarsPtr& vars, DerivationCache* cache) {
  if (s.kind != RelationKind::Shuffle) throw DomainError("expected a shuffle relation");
  if (s.a.empty() || s.b.empty()) throw DomainError("shuffle relations need nonempty words");
  IntegralContext ca(s.start, s.end, s.a, vars), cb(s.start, s.end, s.b, vars);
  std::vector<std::string> va = ca.letter_variables(), vb = cb.letter_variables();
  for (const auto& v : va)
    if (std::find(vb.begin(), vb.end(), v) != vb.end())
      throw DomainError("shuffle relation needs words in disjoint variables, '" + v + "' is shared");
  ShuffleSides out{derived(cache, ca, order_for(s, va)), derived(cache, cb, order_for(s, vb)), {}};
  for (const auto& [u, c] : shuffle(s.a, s.b)) {
    IntegralContext cu(s.start, s.end, u, vars);
    out.rhs.emplace_back(derived(cache, cu, order_for(s, cu.letter_variables())), c);
  }
  return out;
}

// --- quasi-shuffle side ------------------------------------------------------------

struct LiForm {
  IntegralContext ctx;
  int sign;
};

LiForm li_form(const ExtSeriesIndex& u, const VarsPtr& vars) {
  Word w = series_to_integral_word(map_r(u));
  return {IntegralContext(Letter::zero(), Letter::one(), w, vars), u.depth() % 2 ? -1 : 1};
}

struct QuasiSides {
  PolylogExpr lhs_p, lhs_q;
  std::vector<std::pair<PolylogExpr, Rational>> rhs;  // sign folded into the coefficient
  std::vector<std::string> shared;
};

QuasiSides quasi_sides(const RelationSpec& s, const VarsPtr& vars, DerivationCache* cache) {
  if (s.kind != RelationKind::QuasiShuffle) throw DomainError("expected a quasi-shuffle relation");
  auto [head, tail] = split_variables(s);
  std::vector<std::string> np = names_of(s.p), nq = names_of(s.q), args_p, args_q;
  for (const auto& n : head) {
    if (std::find(np.begin(), np.end(), n) != np.end()) args_p.push_back(n);
    if (std::find(nq.begin(), nq.end(), n) != nq.end()) args_q.push_back(n);
  }
  LiForm fp = li_form(s.p, vars), fq = li_form(s.q, vars);
  auto signed_expr = [&](const LiForm& f, const std::vector<std::string>& args) {
    PolylogExpr e = derived(cache, f.ctx, order_for(s, args));
    return f.sign == 1 ? e : e.scaled(constant(vars, -1));
  };
  QuasiSides out{signed_expr(fp, args_p), signed_expr(fq, args_q), {}, tail};
  for (const auto& [u, c] : ext_quasi_shuffle(s.p, s.q)) {
    LiForm fu = li_form(u, vars);
    out.rhs.emplace_back(derived(cache, fu.ctx, order_for(s, head)), c * fu.sign);
  }
  return out;
}

PolylogExpr sum_terms(const IntegralContext& ctx, const std::vector<std::pair<PolylogExpr, Rational>>& terms) {
  std::map<Word, std::vector<RatFunc>> parts;
  for (const auto& [e, c] : terms)
    for (const auto& [w, f] : e.terms()) parts[w].push_back(f * c);
  PolylogExpr out(ctx);
  for (auto& [w, list] : parts) out.add(w, sum(ctx.vars, std::move(list)));
  return out;
}

RatFunc sum_rational(const VarsPtr& vars, const std::vector<std::pair<PolylogExpr, Rational>>& terms) {
  std::vector<RatFunc> parts;
  for (const auto& [e, c] : terms) parts.push_back(rational_term(e) * c);
  return sum(vars, std::move(parts));
}

void fill_word_residuals(IdentityReport& r, const PolylogExpr& lhs, const PolylogExpr& rhs) {
  std::set<Word> words;
  for (const auto& [w, f] : lhs.terms()) words.insert(w);
  for (const auto& [w, f] : rhs.terms()) words.insert(w);
  r.residuals.clear();
  r.is_identity = true;
  for (const auto& w : words) {
    RatFunc v = lhs.coeff(w) - rhs.coeff(w);
    if (!v.is_zero()) r.is_identity = false;
    r.residuals.push_back({"I" + w.str(), std::move(v)});
  }
  r.lhs_rational = rational_term(lhs);
  r.rhs_rational = rational_term(rhs);
}

// --- Laurent series in one variable ------------------------------------------------

// Coefficients of z^k for k below an absolute precision; coefficients are
// rational functions free of z.
using ZSeries = std::map<int, RatFunc>;

void series_add(ZSeries& s, int k, const RatFunc& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = s.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) s.erase(it);
  }
}

int z_valuation(const RatFunc& f, std::size_t zi) {
  auto first = [&](const Poly& p) {
    int k = 0;
    while (true) {
      bool found = false;
      for (const auto& t : p.terms()) found = found || t.mono.e[zi] == k;
      if (found) return k;
      ++k;
    }
  };
  return first(f.num()) - first(f.den());
}

// Expansion of F around z = 0 up to (excluding) z^prec; returns the valuation.
int laurent_expand(const RatFunc& f, std::size_t zi, int prec, ZSeries& out) {
  std::vector<Poly> n = f.num().coefficients_in(zi), d = f.den().coefficients_in(zi);
  auto first = [](const std::vector<Poly>& v) {
    int k = 0;
    while (v[k].is_zero()) ++k;
    return k;
  };
  int vn = first(n), vd = first(d);
  int val = vn - vd;
  const VarsPtr& vars = f.vars();
  RatFunc d0inv = RatFunc(d[vd]).inverse();
  std::vector<RatFunc> q;
  for (int j = 0; val + j < prec; ++j) {
    RatFunc t = vn + j < int(n.size()) ? RatFunc(n[vn + j]) : RatFunc(vars);
    for (int i = 1; i <= j && vd + i < int(d.size()); ++i)
      if (!d[vd + i].is_zero()) t -= RatFunc(d[vd + i]) * q[j - i];
    q.push_back(t * d0inv);
    series_add(out, val + j, q.back());
  }
  return val;
}

struct WordSeriesShape {
  std::vector<Letter> y;  // ratios c_{i+1} / c_i
  std::vector<int> n;
  std::vector<int> suffix;  // z-degrees of prod_{i >= j} y_i
  int valuation = 0;        // z-degree of the lowest monomial
};

WordSeriesShape word_shape(const Word& w, const std::string& z) {
  WordSeriesShape s;
  std::vector<Letter> c;
  for (const auto& l : w) {
    if (l.is_zero()) {
      if (c.empty()) throw DomainError("word " + w.str() + " starts with 0 (divergent)");
      ++s.n.back();
      continue;
    }
    c.push_back(l);
    s.n.push_back(1);
  }
  for (std::size_t i = 0; i < c.size(); ++i) s.y.push_back((i + 1 < c.size() ? c[i + 1] : Letter::one()) / c[i]);
  s.suffix.assign(c.size(), 0);
  int acc = 0;
  for (std::size_t j = c.size(); j-- > 0;) {
    acc += s.y[j].exponent(z);
    if (acc <= 0)
      throw DomainError("I(0;" + w.str() + ";1) has no expansion in positive powers of " + z);
    s.suffix[j] = acc;
    s.valuation += acc;
  }
  return s;
}

Letter strip(const Letter& l, const std::string& z) {
  int e = l.exponent(z);
  return e ? l / Letter::variable(z, e) : l;
}

// (-1)^d Li over the ratios of w: sum over k_j >= 1 of prod_j S_j^{k_j} / prod m_i^{n_i}.
void integral_series(const Word& w, const std::string& z, const VarsPtr& vars, int prec, ZSeries& out) {
  if (w.empty()) {
    series_add(out, 0, constant(vars, 1));
    return;
  }
  WordSeriesShape s = word_shape(w, z);
  const std::size_t d = s.y.size();
  std::vector<int> m(d, 0);
  std::map<int, std::map<Letter, Rational>> acc;
  // choose k_0, k_1, ... in turn; m_i = k_0 + ... + k_i
  auto rec = [&](auto&& self, std::size_t j, int deg) -> void {
    if (j == d) {
      Letter mono;
      Rational c = d % 2 ? -1 : 1;
      for (std::size_t i = 0; i < d; ++i) {
        for (int r = 0; r < m[i]; ++r) mono = mono * s.y[i];
        Integer p;
        mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(m[i]), static_cast<unsigned long>(s.n[i]));
        c /= Rational(p);
      }
      acc[deg][strip(mono, z)] += c;
      return;
    }
    for (int k = 1; deg + k * s.suffix[j] < prec; ++k) {
      m[j] = (j ? m[j - 1] : 0) + k;
      self(self, j + 1, deg + k * s.suffix[j]);
    }
  };
  rec(rec, 0, 0);
  for (const auto& [deg, terms] : acc) {
    RatFunc sum(vars);
    for (const auto& [mono, c] : terms) sum += letter_value(mono, vars) * c;
    series_add(out, deg, sum);
  }
}

// Series of sum F_w I(0; w; 1) below z^prec, exact below prec.
ZSeries expr_series(const PolylogExpr& e, const std::string& z, int prec) {
  const VarsPtr& vars = e.context().vars;
  std::size_t zi = vars->require(z);
  ZSeries out;
  for (const auto& [w, f] : e.terms()) {
    int vi = w.empty() ? 0 : word_shape(w, z).valuation;
    ZSeries fs;
    int vf = laurent_expand(f, zi, prec - vi, fs);
    ZSeries is;
    integral_series(w, z, vars, prec - vf, is);
    for (const auto& [i, a] : fs)
      for (const auto& [j, b] : is)
        if (i + j < prec) series_add(out, i + j, a * b);
  }
  return out;
}

}  // namespace

// --- relation checks -----------------------------------------------------------------

IdentityReport check_derived_shuffle(const RelationSpec& spec, VarsPtr vars, DerivationCache* cache) {
  if (!vars) vars = relation_variables(spec);
  ShuffleSides s = shuffle_sides(spec, vars, cache);
  PolylogExpr lhs = mul_expand(s.lhs_a, s.lhs_b);
  PolylogExpr rhs = sum_terms(lhs.context(), s.rhs);
  IdentityReport r;
  r.kind = RelationKind::Shuffle;
  r.label = spec.label();
  fill_word_residuals(r, lhs, rhs);
  return r;
}

IdentityReport check_derived_quasi_shuffle(const RelationSpec& spec, VarsPtr vars, DerivationCache* cache,
                                           int series_order) {
  if (!vars) vars = relation_variables(spec);
  QuasiSides s = quasi_sides(spec, vars, cache);
  PolylogExpr lhs = mul_expand(s.lhs_p, s.lhs_q);
  PolylogExpr rhs = sum_terms(lhs.context(), s.rhs);
  IdentityReport r;
  r.kind = RelationKind::QuasiShuffle;
  r.label = spec.label();
  fill_word_residuals(r, lhs, rhs);
  if (r.is_identity) return r;
  r.formal_nonzero = std::count_if(r.residuals.begin(), r.residuals.end(),
                                   [](const Residual& x) { return !x.value.is_zero(); });
  if (s.shared.size() != 1)
    throw DomainError("quasi-shuffle words differ formally and the relation has no single shared outer variable");
  const std::string& z = s.shared.front();
  PolylogExpr diff = lhs;
  diff -= rhs;
  ZSeries series = expr_series(diff, z, series_order);
  r.basis = "z-series";
  r.series_variable = z;
  r.series_order = series_order;
  r.residuals.clear();
  r.is_identity = true;
  int low = series_order;
  for (const auto& [w, f] : diff.terms())
    low = std::min(low, (w.empty() ? 0 : word_shape(w, z).valuation) + z_valuation(f, vars->require(z)));
  for (int k = low; k < series_order; ++k) {
    auto it = series.find(k);
    RatFunc v = it == series.end() ? RatFunc(vars) : it->second;
    if (!v.is_zero()) r.is_identity = false;
    r.residuals.push_back({z + "^" + std::to_string(k), std::move(v)});
  }
  return r;
}

IdentityReport rat_shuffle_relation(const RelationSpec& spec, VarsPtr vars, DerivationCache* cache) {
  if (!vars) vars = relation_variables(spec);
  ShuffleSides s = shuffle_sides(spec, vars, cache);
  IdentityReport r;
  r.kind = RelationKind::Shuffle;
  r.label = spec.label();
  r.basis = "I^rat";
  r.lhs_rational = rational_term(s.lhs_a) * rational_term(s.lhs_b);
  r.rhs_rational = sum_rational(vars, s.rhs);
  RatFunc v = r.lhs_rational - r.rhs_rational;
  r.is_identity = v.is_zero();
  r.residuals.push_back({"I^rat", std::move(v)});
  return r;
}

IdentityReport rat_quasi_shuffle_relation(const RelationSpec& spec, VarsPtr vars, DerivationCache* cache) {
  if (!vars) vars = relation_variables(spec);
  QuasiSides s = quasi_sides(spec, vars, cache);
  IdentityReport r;
  r.kind = RelationKind::QuasiShuffle;
  r.label = spec.label();
  r.basis = "I^rat";
  r.lhs_rational = rational_term(s.lhs_p) * rational_term(s.lhs_q);
  r.rhs_rational = sum_rational(vars, s.rhs);
  RatFunc v = r.lhs_rational - r.rhs_rational;
  r.is_identity = v.is_zero();
  r.residuals.push_back({"I^rat", std::move(v)});
  return r;
}

// --- variety -------------------------------------------------------------------------

namespace {

void add_factors(const RatFunc& f, std::vector<Poly>& out) {
  if (f.is_zero() || f.den().is_constant()) return;
  if (f.is_factored()) {
    for (const auto& x : f.den_factors()) out.push_back(x.poly);
  } else {
    out.push_back(f.den().primitive());
  }
}

void sort_unique(std::vector<Poly>& v) {
  std::sort(v.begin(), v.end(), [](const Poly& a, const Poly& b) { return compare(a, b) < 0; });
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

VarietyIdeal variety_equations(const std::vector<RelationSpec>& pairs, int N, VarsPtr vars) {
  if (pairs.empty()) throw DomainError("variety_equations needs at least one relation");
  if (N < 0) throw DomainError("derivation depth must be nonnegative");
  if (!vars) {
    std::vector<std::string> head, tail;
    for (const auto& p : pairs) {
      auto [h, t] = split_variables(p);
      for (const auto& n : t)
        if (std::find(tail.begin(), tail.end(), n) == tail.end()) tail.push_back(n);
      for (const auto& n : h)
        if (std::find(head.begin(), head.end(), n) == head.end()) head.push_back(n);
    }
    std::erase_if(head, [&](const std::string& n) { return std::find(tail.begin(), tail.end(), n) != tail.end(); });
    head.insert(head.end(), tail.begin(), tail.end());
    vars = make_variables(head);
  }
  VarietyIdeal ideal;
  ideal.vars = vars;
  ideal.N = N;
  DerivationCache cache;
  std::vector<std::optional<Poly>> raw;
  for (RelationSpec spec : pairs) {
    spec.d = N;
    IdentityReport r = spec.kind == RelationKind::Shuffle ? rat_shuffle_relation(spec, vars, &cache)
                                                          : rat_quasi_shuffle_relation(spec, vars, &cache);
    const RatFunc& v = r.residuals.front().value;
    ProvenanceEntry e{spec.label(), spec.kind, N, v.is_zero(), std::nullopt};
    ideal.provenance.push_back(e);
    add_factors(r.lhs_rational, ideal.excluded);
    add_factors(r.rhs_rational, ideal.excluded);
    add_factors(v, ideal.excluded);
    if (v.is_zero()) {
      raw.push_back(std::nullopt);
    } else {
      raw.push_back(v.num().primitive());
      ideal.generators.push_back(*raw.back());
    }
  }
  sort_unique(ideal.generators);
  sort_unique(ideal.excluded);
  for (std::size_t i = 0; i < raw.size(); ++i)
    if (raw[i]) {
      auto it = std::find(ideal.generators.begin(), ideal.generators.end(), *raw[i]);
      ideal.provenance[i].generator = std::size_t(it - ideal.generators.begin());
    }
  return ideal;
}

std::vector<RelationSpec> default_pairs(int max_weight) {
  std::vector<RelationSpec> out;
  const char* names[] = {"a", "b", "c", "d", "e", "f", "g", "h"};
  for (int w = 2; w <= std::min(max_weight, 8); ++w)
    for (int m = 1; m < w; ++m) {
      Word a, b;
      for (int i = 0; i < m; ++i) a.letters.push_back(Letter::variable(names[i]));
      for (int i = m; i < w; ++i) b.letters.push_back(Letter::variable(names[i]));
      out.push_back(RelationSpec::shuffle(a, b, 1));
    }
  if (max_weight >= 2) out.push_back(RelationSpec::quasi_shuffle(ExtSeriesIndex::parse("z:1:a"), ExtSeriesIndex::parse("z:1:b"), 1));
  if (max_weight >= 3) {
    out.push_back(RelationSpec::quasi_shuffle(ExtSeriesIndex::parse("z:2:a"), ExtSeriesIndex::parse("z:1:b"), 1));
    out.push_back(RelationSpec::quasi_shuffle(ExtSeriesIndex::parse("z:1:a"), ExtSeriesIndex::parse("z:2:b"), 1));
    out.push_back(RelationSpec::quasi_shuffle(ExtSeriesIndex::parse("z:1:a"), ExtSeriesIndex::parse("z:1:b:1:c"), 1));
  }
  return out;
}

Membership point_membership(const VarietyIdeal& ideal, const std::map<std::string, Rational>& point) {
  Membership m;
  std::vector<Rational> values = point_values(*ideal.vars, point);
  for (const auto& g : ideal.generators) {
    m.values.push_back(g.evaluate(std::span<const Rational>(values)));
    if (m.values.back() != 0) m.member = false;
  }
  return m;
}

std::vector<std::map<std::string, Rational>> sample_points(const VarietyIdeal& ideal, std::size_t count,
                                                           std::uint64_t seed) {
  std::vector<std::map<std::string, Rational>> out;
  const auto& vars = *ideal.vars;
  // (generator, variable) pairs with the generator of degree one in the variable
  std::vector<std::pair<std::size_t, std::size_t>> solvable;
  for (std::size_t g = 0; g < ideal.generators.size(); ++g)
    for (std::size_t v = 0; v < vars.size(); ++v)
      if (ideal.generators[g].degree(v) == 1) solvable.emplace_back(g, v);
  // with no generators every point off the excluded factors is a member
  bool free = ideal.generators.empty();
  if ((solvable.empty() && !free) || count == 0) return out;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  for (std::size_t attempt = 0; attempt < 200 * count && out.size() < count; ++attempt) {
    std::vector<Rational> values(kMaxVariables);
    for (std::size_t i = 0; i < vars.size(); ++i) {
      int p = 0;
      while (p == 0) p = num(rng);
      values[i] = Rational(p, den(rng));
      values[i].canonicalize();
    }
    if (!free) {
      auto [g, v] = solvable[attempt % solvable.size()];
      std::vector<Poly> c = ideal.generators[g].coefficients_in(v);
      Rational lead = c[1].evaluate(std::span<const Rational>(values));
      if (lead == 0) continue;
      values[v] = -c[0].evaluate(std::span<const Rational>(values)) / lead;
    }
    bool ok = true;
    for (const auto& x : ideal.excluded)
      if (x.evaluate(std::span<const Rational>(values)) == 0) ok = false;
    for (const auto& gen : ideal.generators)
      if (gen.evaluate(std::span<const Rational>(values)) != 0) ok = false;
    if (!ok) continue;
    std::map<std::string, Rational> point;
    for (std::size_t i = 0; i < vars.size(); ++i) point[vars.name(i)] = values[i];
    if (std::find(out.begin(), out.end(), point) == out.end()) out.push_back(std::move(point));
  }
  return out;
}

}  // namespace locpl
