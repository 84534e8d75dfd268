#include "locpl/hyperlog.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "locpl/errors.hpp"

namespace locpl {

IntegralContext::IntegralContext(Letter s, Letter e, Word w, VarsPtr v)
    : start(std::move(s)), end(std::move(e)), letters(std::move(w)), vars(std::move(v)) {
  if (!vars) throw DomainError("integral context needs a variable list");
  if (start == end) throw DomainError("integral endpoints must differ");
  auto check = [&](const Letter& l) {
    for (const auto& [name, exp] : l.factors()) vars->require(name);
  };
  check(start);
  check(end);
  for (const auto& l : letters) check(l);
}

std::vector<std::string> IntegralContext::letter_variables() const {
  std::set<std::string> in_letters, in_ends;
  for (const auto& l : letters)
    for (const auto& f : l.factors()) in_letters.insert(f.first);
  for (const auto& f : start.factors()) in_ends.insert(f.first);
  for (const auto& f : end.factors()) in_ends.insert(f.first);
  std::vector<std::string> out;
  for (const auto& name : vars->names())
    if (in_letters.count(name) && !in_ends.count(name)) out.push_back(name);
  return out;
}

RatFunc letter_value(const Letter& l, const VarsPtr& vars) {
  if (l.is_zero()) return RatFunc(vars);
  Monomial num, den;
  for (const auto& [name, exp] : l.factors()) {
    std::size_t i = vars->require(name);
    if (exp > 0)
      num.e[i] = static_cast<std::uint16_t>(exp);
    else
      den.e[i] = static_cast<std::uint16_t>(-exp);
  }
  return RatFunc::fraction(Poly::from_terms(vars, {{num, Rational(1)}}),
                           Poly::from_terms(vars, {{den, Rational(1)}}));
}

// --- DerivationOrder ---------------------------------------------------------------

DerivationOrder DerivationOrder::uniform(const std::vector<std::string>& variables, int d) {
  DerivationOrder o;
  if (d < 0) throw DomainError("derivative order must be nonnegative");
  if (d == 0) return o;
  for (const auto& v : variables) o.steps.emplace_back(v, d);
  return o;
}

DerivationOrder DerivationOrder::parse(std::string_view text) {
  DerivationOrder o;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view item = text.substr(pos, comma - pos);
    std::size_t eq = item.find('=');
    std::string name(item.substr(0, eq));
    int count = 1;
    if (eq != std::string_view::npos) {
      std::string_view num = item.substr(eq + 1);
      auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), count);
      if (ec != std::errc() || p != num.data() + num.size() || count < 0)
        throw ParseError("bad derivative order '" + std::string(item) + "'", pos + eq + 1);
    }
    if (name.empty()) throw ParseError("missing variable in derivative order", pos);
    if (count > 0) o.steps.emplace_back(name, count);
    pos = comma + 1;
  }
  return o;
}

std::map<std::string, int> DerivationOrder::orders() const {
  std::map<std::string, int> m;
  for (const auto& [v, k] : steps) m[v] += k;
  return m;
}

int DerivationOrder::total() const {
  int t = 0;
  for (const auto& s : steps) t += s.second;
  return t;
}

// --- PolylogExpr -------------------------------------------------------------------

void PolylogExpr::add(const Word& w, const RatFunc& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(w, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

RatFunc PolylogExpr::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? RatFunc(ctx_.vars) : it->second;
}

PolylogExpr& PolylogExpr::operator+=(const PolylogExpr& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

PolylogExpr& PolylogExpr::operator-=(const PolylogExpr& o) {
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

PolylogExpr PolylogExpr::scaled(const RatFunc& c) const {
  PolylogExpr out(ctx_);
  if (c.is_zero()) return out;
  for (const auto& [w, f] : terms_) out.terms_.emplace(w, f * c);
  return out;
}

std::optional<std::vector<int>> PolylogExpr::subset_of(const Word& w) const {
  std::vector<int> pos;
  std::size_t j = 0;
  for (std::size_t i = 0; i < ctx_.letters.size() && j < w.size(); ++i)
    if (ctx_.letters[i] == w[j]) {
      pos.push_back(int(i) + 1);
      ++j;
    }
  if (j != w.size()) return std::nullopt;
  return pos;
}

std::string PolylogExpr::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [w, c] : terms_) {
    if (!out.empty()) out += "\n + ";
    out += "[" + c.str() + "]";
    if (!w.empty()) out += "*I" + w.str();
  }
  return out;
}

PolylogExpr base_expr(const IntegralContext& ctx) {
  PolylogExpr e(ctx);
  e.add(ctx.letters, RatFunc::constant(ctx.vars, 1));
  return e;
}

// --- derivation -----------------------------------------------------------------------

namespace {

class DlogTable {
public:
  DlogTable(VarsPtr vars, std::size_t var) : vars_(std::move(vars)), var_(var) {}

  // d/dv log(u - t); zero when u and t are the same expression
  const RatFunc& dlog(const Letter& u, const Letter& t) {
    auto key = std::make_pair(u, t);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    RatFunc value(vars_);
    if (u != t) {
      RatFunc diff = value_of(u) - value_of(t);
      RatFunc ddiff = diff.partial(var_);
      if (!ddiff.is_zero()) value = ddiff / diff;
    }
    return cache_.emplace(std::move(key), std::move(value)).first->second;
  }

private:
  const RatFunc& value_of(const Letter& l) {
    auto it = values_.find(l);
    if (it != values_.end()) return it->second;
    return values_.emplace(l, letter_value(l, vars_)).first->second;
  }

  VarsPtr vars_;
  std::size_t var_;
  std::map<Letter, RatFunc> values_;
  std::map<std::pair<Letter, Letter>, RatFunc> cache_;
};

}  // namespace

PolylogExpr kz_partial(const PolylogExpr& e, std::string_view var) {
  const auto& ctx = e.context();
  std::size_t v = ctx.vars->require(var);
  DlogTable table(ctx.vars, v);
  // collect contributions per word first so each coefficient is summed once
  std::map<Word, std::vector<RatFunc>> parts;
  for (const auto& [w, f] : e.terms()) {
    RatFunc df = f.partial(v);
    if (!df.is_zero()) parts[w].push_back(std::move(df));
    for (std::size_t p = 0; p < w.size(); ++p) {
      const Letter& prev = p == 0 ? ctx.start : w[p - 1];
      const Letter& next = p + 1 == w.size() ? ctx.end : w[p + 1];
      RatFunc c = table.dlog(next, w[p]) - table.dlog(prev, w[p]);
      if (c.is_zero()) continue;
      Word shorter;
      shorter.letters.reserve(w.size() - 1);
      for (std::size_t k = 0; k < w.size(); ++k)
        if (k != p) shorter.letters.push_back(w[k]);
      parts[shorter].push_back(f * c);
    }
  }
  PolylogExpr out(ctx);
  for (auto& [w, list] : parts) out.add(w, sum(ctx.vars, std::move(list)));
  return out;
}

PolylogExpr derive(const PolylogExpr& e, const DerivationOrder& order) {
  PolylogExpr cur = e;
  for (const auto& [var, count] : order.steps)
    for (int k = 0; k < count; ++k) cur = kz_partial(cur, var);
  return cur;
}

RatFunc rational_term(const PolylogExpr& e) { return e.coeff(Word{}); }

PolylogExpr mul_expand(const PolylogExpr& a, const PolylogExpr& b) {
  const auto& ca = a.context();
  const auto& cb = b.context();
  if (ca.start != cb.start || ca.end != cb.end)
    throw DomainError("mul_expand needs factors with the same endpoints");
  if (ca.vars != cb.vars && ca.vars->names() != cb.vars->names())
    throw DomainError("mul_expand needs factors over the same variables");
  Word merged = ca.letters;
  merged.letters.insert(merged.letters.end(), cb.letters.begin(), cb.letters.end());
  PolylogExpr out(IntegralContext(ca.start, ca.end, merged, ca.vars));
  std::map<Word, std::vector<RatFunc>> parts;
  for (const auto& [wa, fa] : a.terms())
    for (const auto& [wb, fb] : b.terms()) {
      RatFunc f = fa * fb;
      for (const auto& [u, c] : shuffle(wa, wb)) parts[u].push_back(f * c);
    }
  for (auto& [w, list] : parts) out.add(w, sum(ca.vars, std::move(list)));
  return out;
}

// --- F-recursion ----------------------------------------------------------------------

std::map<Subset, RatFunc> f_recursion(const IntegralContext& ctx, const DerivationOrder& order) {
  const std::size_t n = ctx.weight();
  if (n > 30) throw DomainError("f_recursion supports weight at most 30");
  const VarsPtr& vars = ctx.vars;

  // z_0 = start, z_1..z_n letters, z_{n+1} = end
  std::vector<RatFunc> z;
  std::vector<std::optional<std::size_t>> letter_var(n + 2);
  z.push_back(letter_value(ctx.start, vars));
  std::set<std::string> seen;
  for (std::size_t i = 0; i < n; ++i) {
    const Letter& l = ctx.letters[i];
    if (l.factors().size() != 1 || l.factors()[0].second != 1)
      throw DomainError("f_recursion needs letters that are plain variables, got '" + l.str() + "'");
    const std::string& name = l.factors()[0].first;
    if (!seen.insert(name).second) throw DomainError("f_recursion needs distinct letters");
    if (ctx.start.exponent(name) || ctx.end.exponent(name))
      throw DomainError("f_recursion needs endpoints free of letter variables");
    letter_var[i + 1] = vars->require(name);
    z.push_back(letter_value(l, vars));
  }
  z.push_back(letter_value(ctx.end, vars));

  auto position_of = [&](const std::string& name) -> std::size_t {
    for (std::size_t i = 1; i <= n; ++i)
      if (ctx.letters[i - 1].factors()[0].first == name) return i;
    throw DomainError("f_recursion differentiates letter variables only, got '" + name + "'");
  };

  // 1 / (z_j - z_i), cached
  std::map<std::pair<std::size_t, std::size_t>, RatFunc> inv_diff;
  auto inv = [&](std::size_t j, std::size_t i) -> const RatFunc& {
    auto key = std::make_pair(j, i);
    auto it = inv_diff.find(key);
    if (it != inv_diff.end()) return it->second;
    return inv_diff.emplace(key, (z[j] - z[i]).inverse()).first->second;
  };

  using Mask = std::uint32_t;
  std::map<Mask, RatFunc> table;
  table.emplace(n == 0 ? 0u : ((Mask(1) << n) - 1), RatFunc::constant(vars, 1));

  for (const auto& [name, count] : order.steps) {
    std::size_t k = position_of(name);
    std::size_t kv = *letter_var[k];
    for (int rep = 0; rep < count; ++rep) {
      std::map<Mask, std::vector<RatFunc>> parts;
      for (const auto& [mask, f] : table) {
        RatFunc df = f.partial(kv);
        if (!df.is_zero()) parts[mask].push_back(std::move(df));
        // remove each member i of the larger subset; prev/next are its
        // neighbours inside that subset
        std::size_t prev = 0;
        for (std::size_t i = 1; i <= n; ++i) {
          if (!(mask & (Mask(1) << (i - 1)))) continue;
          std::size_t next = n + 1;
          for (std::size_t j = i + 1; j <= n; ++j)
            if (mask & (Mask(1) << (j - 1))) {
              next = j;
              break;
            }
          RatFunc c(vars);
          if (i == k) c += inv(prev, i) - inv(next, i);
          if (next == k) c += inv(next, i);
          if (prev == k) c -= inv(prev, i);
          if (!c.is_zero()) parts[mask & ~(Mask(1) << (i - 1))].push_back(f * c);
          prev = i;
        }
      }
      std::map<Mask, RatFunc> next_table;
      for (auto& [mask, list] : parts) {
        RatFunc sum(vars);
        for (auto& x : list) sum += x;
        if (!sum.is_zero()) next_table.emplace(mask, std::move(sum));
      }
      table = std::move(next_table);
    }
  }

  std::map<Subset, RatFunc> out;
  for (auto& [mask, f] : table) {
    Subset s;
    for (std::size_t i = 1; i <= n; ++i)
      if (mask & (Mask(1) << (i - 1))) s.push_back(int(i));
    out.emplace(std::move(s), std::move(f));
  }
  return out;
}

}  // namespace locpl
