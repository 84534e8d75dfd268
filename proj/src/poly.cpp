#include "locpl/poly.hpp"

#include <algorithm>
#include <unordered_map>

#include "locpl/errors.hpp"

namespace locpl {

Variables::Variables(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() > kMaxVariables)
    throw DomainError("at most " + std::to_string(kMaxVariables) + " variables are supported");
  for (std::size_t i = 0; i < names_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (names_[i] == names_[j]) throw DomainError("duplicate variable '" + names_[i] + "'");
}

std::optional<std::size_t> Variables::index(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::size_t Variables::require(std::string_view name) const {
  auto i = index(name);
  if (!i) throw DomainError("unknown variable '" + std::string(name) + "'");
  return *i;
}

VarsPtr make_variables(std::vector<std::string> names) {
  return std::make_shared<const Variables>(std::move(names));
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    unsigned s = unsigned(e[i]) + o.e[i];
    if (s > 0xffff) throw DomainError("exponent overflow");
    r.e[i] = static_cast<std::uint16_t>(s);
  }
  return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVariables; ++i) r.e[i] = static_cast<std::uint16_t>(e[i] - o.e[i]);
  return r;
}

// --- construction ------------------------------------------------------------

Poly Poly::constant(VarsPtr vars, const Rational& c) {
  Poly p(std::move(vars));
  if (c != 0) p.terms_.push_back({Monomial{}, c});
  return p;
}

Poly Poly::variable(VarsPtr vars, std::size_t index, int power) {
  if (index >= vars->size()) throw DomainError("variable index out of range");
  if (power < 0) throw DomainError("negative power in polynomial");
  Poly p(std::move(vars));
  Monomial m;
  m.e[index] = static_cast<std::uint16_t>(power);
  p.terms_.push_back({m, Rational(1)});
  return p;
}

Poly Poly::variable(VarsPtr vars, std::string_view name, int power) {
  std::size_t i = vars->require(name);
  return variable(std::move(vars), i, power);
}

Poly Poly::from_terms(VarsPtr vars, std::vector<Term> terms) {
  Poly p(std::move(vars));
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return GradLexGreater{}(a.mono, b.mono); });
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono)
      p.terms_.back().coeff += t.coeff;
    else
      p.terms_.push_back(std::move(t));
  }
  std::erase_if(p.terms_, [](const Term& t) { return t.coeff == 0; });
  return p;
}

Rational Poly::constant_value() const {
  if (terms_.empty()) return 0;
  if (!is_constant()) throw DomainError("polynomial is not constant");
  return terms_[0].coeff;
}

int Poly::degree(std::size_t var) const {
  int d = 0;
  for (const auto& t : terms_) d = std::max<int>(d, t.mono.e[var]);
  return d;
}

int Poly::total_degree() const { return terms_.empty() ? 0 : terms_.front().mono.total(); }

std::vector<Poly> Poly::coefficients_in(std::size_t var) const {
  std::vector<std::vector<Term>> buckets(degree(var) + 1);
  for (const auto& t : terms_) {
    Term u = t;
    u.mono.e[var] = 0;
    buckets[t.mono.e[var]].push_back(std::move(u));
  }
  std::vector<Poly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) {
    Poly p(vars_);
    // removing one variable keeps the relative order within a bucket only up
    // to the total-degree shift, which is uniform inside a bucket
    p.terms_ = std::move(b);
    out.push_back(std::move(p));
  }
  return out;
}

Poly Poly::from_coefficients(VarsPtr vars, std::size_t var, const std::vector<Poly>& coeffs) {
  std::vector<Term> terms;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    for (const auto& t : coeffs[k].terms_) {
      Term u = t;
      u.mono.e[var] = static_cast<std::uint16_t>(u.mono.e[var] + k);
      terms.push_back(std::move(u));
    }
  return from_terms(std::move(vars), std::move(terms));
}

void Poly::check_same(const Poly& o) const {
  if (vars_ && o.vars_ && vars_ != o.vars_ && vars_->names() != o.vars_->names())
    throw DomainError("polynomials from different variable contexts");
}

// --- arithmetic --------------------------------------------------------------

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {
template <bool Subtract>
std::vector<Poly::Term> merge(const std::vector<Poly::Term>& a, const std::vector<Poly::Term>& b) {
  std::vector<Poly::Term> out;
  out.reserve(a.size() + b.size());
  GradLexGreater gt;
  auto i = a.begin(), j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && gt(i->mono, j->mono))) {
      out.push_back(*i++);
    } else if (i == a.end() || gt(j->mono, i->mono)) {
      out.push_back(*j++);
      if constexpr (Subtract) out.back().coeff = -out.back().coeff;
    } else {
      Rational c = Subtract ? Rational(i->coeff - j->coeff) : Rational(i->coeff + j->coeff);
      if (c != 0) out.push_back({i->mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}
}  // namespace

Poly& Poly::operator+=(const Poly& o) {
  check_same(o);
  if (!vars_) vars_ = o.vars_;
  if (o.terms_.empty()) return *this;
  terms_ = merge<false>(terms_, o.terms_);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  check_same(o);
  if (!vars_) vars_ = o.vars_;
  if (o.terms_.empty()) return *this;
  terms_ = merge<true>(terms_, o.terms_);
  return *this;
}

Poly& Poly::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.coeff *= s;
  }
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.check_same(b);
  VarsPtr vars = a.vars_ ? a.vars_ : b.vars_;
  if (a.terms_.empty() || b.terms_.empty()) return Poly(vars);
  if (a.terms_.size() == 1) return b.mul_monomial(a.terms_[0].mono, a.terms_[0].coeff);
  if (b.terms_.size() == 1) return a.mul_monomial(b.terms_[0].mono, b.terms_[0].coeff);
  auto integral = [](const std::vector<Poly::Term>& ts) {
    for (const auto& t : ts)
      if (mpz_cmp_ui(mpq_denref(t.coeff.get_mpq_t()), 1) != 0) return false;
    return true;
  };
  if (integral(a.terms_) && integral(b.terms_)) {
    // integer coefficients avoid a gcd per accumulation
    std::unordered_map<Monomial, Integer, MonomialHash> acc;
    acc.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_)
        mpz_addmul(acc[s.mono * t.mono].get_mpz_t(), mpq_numref(s.coeff.get_mpq_t()),
                   mpq_numref(t.coeff.get_mpq_t()));
    std::vector<Poly::Term> terms;
    terms.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (c != 0) terms.push_back({m, Rational(c)});
    std::sort(terms.begin(), terms.end(),
              [](const Poly::Term& x, const Poly::Term& y) { return GradLexGreater{}(x.mono, y.mono); });
    Poly r(vars);
    r.terms_ = std::move(terms);
    return r;
  }
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  acc.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) {
      auto [it, inserted] = acc.try_emplace(s.mono * t.mono);
      if (inserted)
        mpq_mul(it->second.get_mpq_t(), s.coeff.get_mpq_t(), t.coeff.get_mpq_t());
      else
        it->second += s.coeff * t.coeff;
    }
  std::vector<Poly::Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) terms.push_back({m, std::move(c)});
  std::sort(terms.begin(), terms.end(),
            [](const Poly::Term& x, const Poly::Term& y) { return GradLexGreater{}(x.mono, y.mono); });
  Poly r(vars);
  r.terms_ = std::move(terms);
  return r;
}

Poly Poly::mul_monomial(const Monomial& m, const Rational& c) const {
  Poly r(vars_);
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  // multiplying by a monomial preserves graded-lex order
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
  return r;
}

Poly Poly::pow(unsigned k) const {
  Poly result = constant(vars_, 1);
  Poly base = *this;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

std::optional<Poly> Poly::divide_exact(const Poly& a, const Poly& b) {
  a.check_same(b);
  if (b.terms_.empty()) throw DivisionByZero();
  VarsPtr vars = a.vars_ ? a.vars_ : b.vars_;
  if (a.terms_.empty()) return Poly(vars);
  if (b.terms_.size() == 1) {
    const auto& bt = b.terms_[0];
    Poly q(vars);
    q.terms_.reserve(a.terms_.size());
    for (const auto& t : a.terms_) {
      if (!bt.mono.divides(t.mono)) return std::nullopt;
      q.terms_.push_back({t.mono / bt.mono, t.coeff / bt.coeff});
    }
    return q;
  }
  for (std::size_t v = 0; v < kMaxVariables; ++v)
    if (a.degree(v) < b.degree(v)) return std::nullopt;
  std::map<Monomial, Rational, GradLexGreater> rem;
  for (const auto& t : a.terms_) rem.emplace_hint(rem.end(), t.mono, t.coeff);
  const Monomial& lm = b.terms_[0].mono;
  const Rational& lc = b.terms_[0].coeff;
  std::vector<Term> quotient;
  Rational scratch;
  while (!rem.empty()) {
    auto top = rem.begin();
    if (!lm.divides(top->first)) return std::nullopt;
    Monomial qm = top->first / lm;
    Rational qc = top->second / lc;
    rem.erase(top);
    for (std::size_t k = 1; k < b.terms_.size(); ++k) {
      const auto& bt = b.terms_[k];
      mpq_mul(scratch.get_mpq_t(), qc.get_mpq_t(), bt.coeff.get_mpq_t());
      auto [it, inserted] = rem.try_emplace(bt.mono * qm);
      if (inserted) {
        it->second = -scratch;
      } else {
        it->second -= scratch;
        if (it->second == 0) rem.erase(it);
      }
    }
    quotient.push_back({qm, std::move(qc)});
  }
  Poly q(vars);
  q.terms_ = std::move(quotient);  // produced in descending order
  return q;
}

Poly Poly::divide(const Poly& a, const Poly& b) {
  auto q = divide_exact(a, b);
  if (!q) throw DomainError("inexact polynomial division");
  return std::move(*q);
}

Poly Poly::derivative(std::size_t var) const {
  std::vector<Term> terms;
  for (const auto& t : terms_) {
    if (t.mono.e[var] == 0) continue;
    Term u{t.mono, t.coeff * t.mono.e[var]};
    --u.mono.e[var];
    terms.push_back(std::move(u));
  }
  return from_terms(vars_, std::move(terms));
}

Rational Poly::evaluate(std::span<const Rational> values) const {
  Rational sum = 0;
  Rational v;
  for (const auto& t : terms_) {
    v = t.coeff;
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      for (int k = 0; k < t.mono.e[i]; ++k) v *= values[i];
    sum += v;
  }
  return sum;
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t k, std::uint64_t p) {
  std::uint64_t r = 1;
  for (; k; k >>= 1, a = mulmod(a, a, p))
    if (k & 1) r = mulmod(r, a, p);
  return r;
}

std::uint64_t reduce_mod(const Integer& z, std::uint64_t p) {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
  return r.get_ui();
}

}  // namespace

std::optional<std::uint64_t> Poly::evaluate_mod(std::span<const std::uint64_t> values, std::uint64_t p) const {
  std::uint64_t sum = 0;
  for (const auto& t : terms_) {
    std::uint64_t den = reduce_mod(t.coeff.get_den(), p);
    if (den == 0) return std::nullopt;
    std::uint64_t v = reduce_mod(t.coeff.get_num(), p);
    if (den != 1) v = mulmod(v, powmod(den, p - 2, p), p);
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      if (t.mono.e[i]) v = mulmod(v, powmod(values[i], t.mono.e[i], p), p);
    sum = (sum + v) % p;
  }
  return sum;
}

Rational Poly::content() const {
  if (terms_.empty()) return 0;
  Integer g = 0, l = 1;
  for (const auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
  }
  Rational c(g, l);
  c.canonicalize();
  return c;
}

Poly Poly::primitive() const {
  if (terms_.empty()) return *this;
  Rational c = content();
  if (leading_coeff() < 0) c = -c;
  if (c == 1) return *this;
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff /= c;
  return r;
}

std::strong_ordering compare(const Poly& a, const Poly& b) {
  std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  GradLexGreater greater;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& x = a.terms_[i];
    const auto& y = b.terms_[i];
    if (!(x.mono == y.mono)) return greater(x.mono, y.mono) ? std::strong_ordering::less : std::strong_ordering::greater;
    int c = cmp(x.coeff, y.coeff);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return a.terms_.size() <=> b.terms_.size();
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  return true;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    Rational mag = abs(t.coeff);
    if (first) {
      if (t.coeff < 0) out += "-";
    } else {
      out += t.coeff < 0 ? " - " : " + ";
    }
    std::string mono;
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
      if (!t.mono.e[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_->name(i);
      if (t.mono.e[i] != 1) mono += "^" + std::to_string(t.mono.e[i]);
    }
    if (mono.empty()) {
      out += to_string(mag);
    } else {
      if (mag != 1) out += to_string(mag) + "*";
      out += mono;
    }
    first = false;
  }
  return out;
}

// --- gcd ------------------------------------------------------------------------

namespace {

// Minimal exponent of every variable over all terms.
Monomial monomial_content(const Poly& p) {
  Monomial m = p.terms().front().mono;
  for (const auto& t : p.terms())
    for (std::size_t i = 0; i < kMaxVariables; ++i) m.e[i] = std::min(m.e[i], t.mono.e[i]);
  return m;
}

Poly gcd_primitive(const Poly& a, const Poly& b);

// gcd of the coefficients of p viewed as univariate in var.
Poly content_in(const Poly& p, std::size_t var) {
  auto coeffs = p.coefficients_in(var);
  // start from the sparsest coefficient: it bounds the gcd quickly
  std::vector<const Poly*> order;
  for (const auto& c : coeffs)
    if (!c.is_zero()) order.push_back(&c);
  std::sort(order.begin(), order.end(), [](const Poly* x, const Poly* y) { return x->size() < y->size(); });
  Poly g = order.front()->primitive();
  for (std::size_t k = 1; k < order.size() && !g.is_one(); ++k) g = gcd_primitive(g, order[k]->primitive());
  return g;
}

// Pseudo-remainder of a by b in var; both given as coefficient vectors.
std::vector<Poly> pseudo_remainder(std::vector<Poly> a, const std::vector<Poly>& b) {
  const std::size_t db = b.size() - 1;
  const Poly& lb = b.back();
  int delta = int(a.size()) - int(b.size());
  int applied = 0;
  while (a.size() >= b.size()) {
    Poly la = a.back();
    std::size_t shift = a.size() - b.size();
    for (auto& c : a) c = c * lb;
    for (std::size_t k = 0; k <= db; ++k) a[k + shift] -= la * b[k];
    ++applied;
    while (!a.empty() && a.back().is_zero()) a.pop_back();
  }
  for (; applied < delta + 1; ++applied)
    for (auto& c : a) c = c * lb;
  return a;
}

// Subresultant PRS gcd of a and b, primitive in var with deg_var >= 1.
Poly prs_gcd(const Poly& pa, const Poly& pb, std::size_t var) {
  VarsPtr vars = pa.vars();
  auto A = pa.coefficients_in(var);
  auto B = pb.coefficients_in(var);
  if (A.size() < B.size()) std::swap(A, B);
  Poly g = Poly::constant(vars, 1);
  Poly h = Poly::constant(vars, 1);
  for (;;) {
    int delta = int(A.size()) - int(B.size());
    auto R = pseudo_remainder(A, B);
    if (R.empty()) break;
    if (R.size() == 1) return Poly::constant(vars, 1);
    A = std::move(B);
    Poly divisor = g * h.pow(unsigned(delta));
    for (auto& c : R) c = Poly::divide(c, divisor);
    B = std::move(R);
    g = A.back();
    if (delta == 0) {
      // h unchanged
    } else if (delta == 1) {
      h = g;
    } else {
      h = Poly::divide(g.pow(unsigned(delta)), h.pow(unsigned(delta - 1)));
    }
  }
  Poly result = Poly::from_coefficients(vars, var, B);
  return Poly::divide(result, content_in(result, var)).primitive();
}

// gcd of two nonzero integer-primitive polynomials with positive leading
// coefficients.
Poly gcd_primitive(const Poly& a, const Poly& b) {
  VarsPtr vars = a.vars() ? a.vars() : b.vars();
  if (a.is_constant() || b.is_constant()) return Poly::constant(vars, 1);
  if (a == b) return a;

  Monomial ma = monomial_content(a), mb = monomial_content(b);
  Monomial common;
  for (std::size_t i = 0; i < kMaxVariables; ++i) common.e[i] = std::min(ma.e[i], mb.e[i]);
  Poly mono_part = Poly::from_terms(vars, {{common, Rational(1)}});
  if (!ma.is_one() || !mb.is_one()) {
    Poly ra = Poly::divide(a, Poly::from_terms(vars, {{ma, Rational(1)}}));
    Poly rb = Poly::divide(b, Poly::from_terms(vars, {{mb, Rational(1)}}));
    return mono_part * gcd_primitive(ra.primitive(), rb.primitive());
  }

  // cheap divisibility test first
  if (a.size() <= b.size()) {
    if (Poly::divide_exact(b, a)) return a;
  } else if (Poly::divide_exact(a, b)) {
    return b;
  }

  // a variable present in only one argument can be eliminated via content
  std::size_t shared_best = kMaxVariables;
  int best_deg = 1 << 30;
  for (std::size_t v = 0; v < vars->size(); ++v) {
    int da = a.degree(v), db = b.degree(v);
    if (da > 0 && db == 0) return gcd_primitive(content_in(a, v), b);
    if (db > 0 && da == 0) return gcd_primitive(a, content_in(b, v));
    if (da > 0 && db > 0 && std::max(da, db) < best_deg) {
      best_deg = std::max(da, db);
      shared_best = v;
    }
  }
  if (shared_best == kMaxVariables) return Poly::constant(vars, 1);

  std::size_t v = shared_best;
  Poly ca = content_in(a, v), cb = content_in(b, v);
  Poly pa = ca.is_one() ? a : Poly::divide(a, ca).primitive();
  Poly pb = cb.is_one() ? b : Poly::divide(b, cb).primitive();
  Poly c = gcd_primitive(ca, cb);
  Poly h = prs_gcd(pa, pb, v);
  return (c * h).primitive();
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.primitive();
  if (b.is_zero()) return a.primitive();
  return gcd_primitive(a.primitive(), b.primitive());
}

}  // namespace locpl
