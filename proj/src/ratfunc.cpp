#include "locpl/ratfunc.hpp"

#include <algorithm>
#include <cctype>
#include <random>

#include "locpl/errors.hpp"

namespace locpl {

namespace {

using Factor = RatFunc::Factor;

constexpr std::uint64_t kPrime = 2305843009213693951ull;  // 2^61 - 1

std::uint64_t mod_inverse(std::uint64_t a) {
  std::uint64_t r = 1, k = kPrime - 2;
  for (; k; k >>= 1, a = static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * a % kPrime))
    if (k & 1) r = static_cast<std::uint64_t>(static_cast<unsigned __int128>(r) * a % kPrime);
  return r;
}

std::optional<std::size_t> linear_variable(const Poly& f) {
  for (std::size_t v = 0; v < f.vars()->size(); ++v)
    if (f.degree(v) == 1) return v;
  return std::nullopt;
}

// False only when f certainly does not divide n (n integral, f primitive):
// n must vanish modulo a large prime on a random point of f = 0.
bool may_divide(const Poly& f, const Poly& n) {
  auto v = linear_variable(f);
  if (!v) return true;
  thread_local std::mt19937_64 rng(0x5eed);
  std::vector<Poly> c = f.coefficients_in(*v);
  std::vector<std::uint64_t> point(kMaxVariables, 0);
  for (int attempt = 0; attempt < 4; ++attempt) {
    for (auto& x : point) x = rng() % kPrime;
    auto a = c[1].evaluate_mod(point, kPrime);
    auto b = c[0].evaluate_mod(point, kPrime);
    if (!a || !b || *a == 0) continue;
    point[*v] = static_cast<std::uint64_t>(static_cast<unsigned __int128>(kPrime - *b) * mod_inverse(*a) % kPrime);
    auto value = n.evaluate_mod(point, kPrime);
    return !value || *value == 0;
  }
  return true;
}

// Divides n by f while possible, at most `limit` times; returns the count.
int divide_out(Poly& n, const Poly& f, int limit) {
  int k = 0;
  while (k < limit && may_divide(f, n)) {
    auto q = Poly::divide_exact(n, f);
    if (!q) break;
    n = std::move(*q);
    ++k;
  }
  return k;
}

bool certified_irreducible(const Poly& f) {
  for (std::size_t v = 0; v < f.vars()->size(); ++v) {
    if (f.degree(v) != 1) continue;
    std::vector<Poly> c = f.coefficients_in(v);
    if (c[0].is_zero()) return f.size() == 1 && f.total_degree() == 1;
    if (gcd(c[1], c[0]).is_constant()) return true;
  }
  return false;
}

bool factor_less(const Factor& a, const Factor& b) { return compare(a.poly, b.poly) < 0; }

Poly expand(const VarsPtr& vars, const Rational& c, const std::vector<Factor>& fs) {
  Poly r = Poly::constant(vars, c);
  for (const auto& f : fs)
    if (f.exp > 0) r = r * f.poly.pow(unsigned(f.exp));
  return r;
}

// Merges two sorted factor lists with exponents combined by op.
template <class Op>
std::vector<Factor> merge(const std::vector<Factor>& a, const std::vector<Factor>& b, Op op) {
  std::vector<Factor> r;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && factor_less(a[i], b[j]))) {
      r.push_back({a[i].poly, op(a[i].exp, 0)});
      ++i;
    } else if (i == a.size() || factor_less(b[j], a[i])) {
      r.push_back({b[j].poly, op(0, b[j].exp)});
      ++j;
    } else {
      r.push_back({a[i].poly, op(a[i].exp, b[j].exp)});
      ++i;
      ++j;
    }
  }
  return r;
}

}  // namespace

std::optional<EasyFactorization> easy_factor(const Poly& p) {
  if (p.is_zero()) return std::nullopt;
  const VarsPtr& vars = p.vars();
  Monomial low = p.terms().front().mono;
  for (const auto& t : p.terms())
    for (std::size_t i = 0; i < kMaxVariables; ++i) low.e[i] = std::min(low.e[i], t.mono.e[i]);
  std::vector<Poly::Term> rest;
  rest.reserve(p.size());
  for (const auto& t : p.terms()) rest.push_back({t.mono / low, t.coeff});
  Poly q = Poly::from_terms(vars, std::move(rest));
  Poly prim = q.primitive();
  EasyFactorization r;
  r.unit = q.leading_coeff() / prim.leading_coeff();
  for (std::size_t i = 0; i < vars->size(); ++i)
    if (low.e[i]) r.factors.push_back({Poly::variable(vars, i), int(low.e[i])});
  if (!prim.is_constant()) {
    if (!certified_irreducible(prim)) return std::nullopt;
    r.factors.push_back({std::move(prim), 1});
  }
  std::sort(r.factors.begin(), r.factors.end(), factor_less);
  return r;
}

RatFunc::RatFunc(VarsPtr vars) : num_(vars), den_(Poly::constant(vars, 1)), factored_(true) {}

RatFunc::RatFunc(Poly num) {
  VarsPtr vars = num.vars();
  *this = from_factored(std::move(num), 1, {});
}

RatFunc RatFunc::coprime(Poly num, Poly den) {
  if (den.is_zero()) throw DivisionByZero();
  if (num.is_zero()) return RatFunc(den.vars());
  // make den integer primitive with positive lc, then balance contents
  Rational cd = den.content();
  if (den.leading_coeff() < 0) cd = -cd;
  if (cd != 1) {
    Rational inv = 1 / cd;
    den *= inv;
    num *= inv;
  }
  Rational cn = num.content();
  if (cn != 1) {
    num *= 1 / cn;
    num *= Rational(cn.get_num());
    den *= Rational(cn.get_den());
  }
  RatFunc r;
  r.num_ = std::move(num);
  r.den_ = std::move(den);
  if (auto f = easy_factor(r.den_)) {
    r.factored_ = true;
    r.den_content_ = f->unit.get_num();
    r.factors_ = std::move(f->factors);
  }
  return r;
}

const Poly& RatFunc::den() const {
  if (!den_ready_) {
    den_ = expand(vars(), Rational(den_content_), factors_);
    den_ready_ = true;
  }
  return den_;
}

bool operator==(const RatFunc& a, const RatFunc& b) {
  if (!(a.num_ == b.num_)) return false;
  if (a.factored_ && b.factored_) {
    if (a.den_content_ != b.den_content_ || a.factors_.size() != b.factors_.size()) return false;
    for (std::size_t i = 0; i < a.factors_.size(); ++i)
      if (a.factors_[i].exp != b.factors_[i].exp || !(a.factors_[i].poly == b.factors_[i].poly)) return false;
    return true;
  }
  return a.den() == b.den();
}

RatFunc RatFunc::from_factored(Poly num, const Integer& content, std::vector<Factor> factors) {
  VarsPtr vars = num.vars();
  if (num.is_zero()) return RatFunc(vars);
  std::erase_if(factors, [](const Factor& f) { return f.exp == 0; });
  Rational ratio = num.content() / Rational(content);
  num *= Rational(ratio.get_num()) / num.content();
  RatFunc r;
  r.den_content_ = ratio.get_den();
  r.den_ready_ = false;
  r.num_ = std::move(num);
  r.factored_ = true;
  r.factors_ = std::move(factors);
  return r;
}

RatFunc RatFunc::fraction(Poly num, Poly den) {
  if (den.is_zero()) throw DivisionByZero();
  if (num.is_zero()) return RatFunc(den.vars());
  Poly g = gcd(num, den);
  if (!g.is_one()) {
    num = Poly::divide(num, g);
    den = Poly::divide(den, g);
  }
  return coprime(std::move(num), std::move(den));
}

RatFunc RatFunc::constant(VarsPtr vars, const Rational& c) { return RatFunc(Poly::constant(vars, c)); }

RatFunc RatFunc::variable(VarsPtr vars, std::string_view name) { return RatFunc(Poly::variable(vars, name)); }

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc RatFunc::generic_add(const RatFunc& a, const RatFunc& b) {
  if (a.den() == b.den()) return fraction(a.num_ + b.num_, a.den());
  Poly d = gcd(a.den(), b.den());
  if (d.is_one()) return coprime(a.num_ * b.den() + b.num_ * a.den(), a.den() * b.den());
  Poly a1 = Poly::divide(a.den(), d);
  Poly b1 = Poly::divide(b.den(), d);
  Poly t = a.num_ * b1 + b.num_ * a1;
  if (t.is_zero()) return RatFunc(a.vars());
  Poly e = gcd(t, d);
  if (!e.is_one()) {
    t = Poly::divide(t, e);
    b1 = Poly::divide(b.den(), e);
  } else {
    b1 = b.den();
  }
  return coprime(std::move(t), a1 * b1);
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return b;
  if (!a.factored_ || !b.factored_) return RatFunc::generic_add(a, b);
  const VarsPtr& vars = a.vars();
  std::vector<Factor> lcm = merge(a.factors_, b.factors_, [](int x, int y) { return std::max(x, y); });
  Integer c = ::lcm(a.den_content_, b.den_content_);
  auto cofactor = [&](const RatFunc& x) {
    std::vector<Factor> rest = merge(lcm, x.factors_, [](int p, int q) { return p - q; });
    return expand(vars, Rational(Integer(c / x.den_content_)), rest);
  };
  Poly n = a.num_ * cofactor(a) + b.num_ * cofactor(b);
  for (auto& f : lcm) f.exp -= divide_out(n, f.poly, f.exp);
  return RatFunc::from_factored(std::move(n), c, std::move(lcm));
}

RatFunc& RatFunc::operator+=(const RatFunc& o) { return *this = *this + o; }

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this = *this + (-o); }

RatFunc RatFunc::generic_mul(const RatFunc& a, const RatFunc& b) {
  Poly g1 = gcd(a.num_, b.den());
  Poly g2 = gcd(b.num_, a.den());
  Poly an = g1.is_one() ? a.num_ : Poly::divide(a.num_, g1);
  Poly bd = g1.is_one() ? b.den() : Poly::divide(b.den(), g1);
  Poly bn = g2.is_one() ? b.num_ : Poly::divide(b.num_, g2);
  Poly ad = g2.is_one() ? a.den() : Poly::divide(a.den(), g2);
  return coprime(an * bn, ad * bd);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return a;
  if (b.is_zero()) return b;
  if (!a.factored_ || !b.factored_) return RatFunc::generic_mul(a, b);
  Poly an = a.num_;
  Poly bn = b.num_;
  std::vector<Factor> fa = a.factors_;
  std::vector<Factor> fb = b.factors_;
  for (auto& f : fb) f.exp -= divide_out(an, f.poly, f.exp);
  for (auto& f : fa) f.exp -= divide_out(bn, f.poly, f.exp);
  return RatFunc::from_factored(an * bn, a.den_content_ * b.den_content_,
                                merge(fa, fb, [](int x, int y) { return x + y; }));
}

RatFunc& RatFunc::operator*=(const RatFunc& o) { return *this = *this * o; }

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw DivisionByZero();
  if (factored_)
    if (auto f = easy_factor(num_)) return from_factored(den() * (1 / f->unit), 1, std::move(f->factors));
  return coprime(den(), num_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

RatFunc& RatFunc::operator/=(const RatFunc& o) { return *this = *this / o; }

RatFunc RatFunc::operator*(const Rational& s) const {
  if (s == 0) return RatFunc(vars());
  if (factored_) return from_factored(num_ * s, den_content_, factors_);
  return coprime(num_ * s, den());
}

RatFunc RatFunc::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  if (factored_) {
    std::vector<Factor> fs = factors_;
    for (auto& f : fs) f.exp *= k;
    Integer c;
    mpz_pow_ui(c.get_mpz_t(), den_content_.get_mpz_t(), unsigned(k));
    return from_factored(num_.pow(unsigned(k)), c, std::move(fs));
  }
  return coprime(num_.pow(unsigned(k)), den().pow(unsigned(k)));
}

RatFunc RatFunc::partial(std::size_t var) const {
  if (factored_) {
    // d(N / (c prod f^k)) over the factors S involving var:
    // (N' prod_S f - N sum_S k f' prod_{S-f} g) / (c prod f^{k + [f in S]})
    const VarsPtr& vars = this->vars();
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < factors_.size(); ++i)
      if (factors_[i].poly.depends_on(var)) s.push_back(i);
    Poly prod = Poly::constant(vars, 1);
    for (auto i : s) prod = prod * factors_[i].poly;
    Poly n = num_.derivative(var) * prod;
    for (auto i : s) {
      Poly t = factors_[i].poly.derivative(var) * Rational(factors_[i].exp);
      for (auto j : s)
        if (j != i) t = t * factors_[j].poly;
      n -= num_ * t;
    }
    std::vector<Factor> fs = factors_;
    for (auto i : s) ++fs[i].exp;
    for (auto& f : fs) f.exp -= divide_out(n, f.poly, f.exp);
    return from_factored(std::move(n), den_content_, std::move(fs));
  }
  Poly dp = num_.derivative(var);
  Poly dq = den().derivative(var);
  if (dq.is_zero()) return fraction(std::move(dp), den());
  // d(p/q) = (p' (q/g) - p (q'/g)) / (q (q/g)) with g = gcd(q, q')
  Poly g = gcd(den(), dq);
  Poly qg = g.is_one() ? den() : Poly::divide(den(), g);
  Poly dqg = g.is_one() ? dq : Poly::divide(dq, g);
  Poly n = dp * qg - num_ * dqg;
  if (n.is_zero()) return RatFunc(vars());
  Poly e = gcd(n, den());
  Poly d = den() * qg;
  if (!e.is_one()) {
    n = Poly::divide(n, e);
    d = Poly::divide(d, e);
  }
  return coprime(std::move(n), std::move(d));
}

Rational RatFunc::eval(std::span<const Rational> values) const {
  Rational d = den().evaluate(values);
  if (d == 0) throw PoleError("rational function has a pole at the evaluation point");
  return num_.evaluate(values) / d;
}

RatFunc sum(const VarsPtr& vars, std::vector<RatFunc> terms) {
  if (terms.empty()) return RatFunc(vars);
  while (terms.size() > 1) {
    std::vector<RatFunc> next;
    next.reserve(terms.size() / 2 + 1);
    for (std::size_t i = 0; i + 1 < terms.size(); i += 2) next.push_back(terms[i] + terms[i + 1]);
    if (terms.size() % 2) next.push_back(std::move(terms.back()));
    terms = std::move(next);
  }
  return std::move(terms.front());
}

std::vector<Rational> point_values(const Variables& vars, const std::map<std::string, Rational>& point) {
  std::vector<Rational> values(kMaxVariables);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    auto it = point.find(vars.name(i));
    if (it == point.end()) throw DomainError("no value given for variable '" + vars.name(i) + "'");
    values[i] = it->second;
  }
  return values;
}

Rational RatFunc::eval(const std::map<std::string, Rational>& point) const {
  auto values = point_values(*vars(), point);
  return eval(std::span<const Rational>(values));
}

std::string RatFunc::str() const {
  if (den().is_one()) return num_.str();
  auto wrap_num = [](const Poly& p) { return p.size() == 1 ? p.str() : "(" + p.str() + ")"; };
  auto wrap_den = [](const Poly& p) {
    std::string t = p.str();
    return p.size() == 1 && t.find('*') == std::string::npos ? t : "(" + t + ")";
  };
  return wrap_num(num_) + "/" + wrap_den(den());
}

// --- parser ---------------------------------------------------------------------

namespace {

class ExprParser {
public:
  ExprParser(VarsPtr vars, std::string_view text) : vars_(std::move(vars)), s_(text) {}

  RatFunc run() {
    RatFunc r = expr();
    skip();
    if (i_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[i_]) + "'", i_);
    return r;
  }

private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  RatFunc expr() {
    RatFunc acc = term();
    for (;;) {
      if (eat('+'))
        acc += term();
      else if (eat('-'))
        acc -= term();
      else
        return acc;
    }
  }

  RatFunc term() {
    RatFunc acc = unary();
    for (;;) {
      if (eat('*')) {
        acc *= unary();
      } else if (eat('/')) {
        std::size_t at = i_;
        RatFunc d = unary();
        if (d.is_zero()) throw ParseError("division by zero", at);
        acc /= d;
      } else {
        return acc;
      }
    }
  }

  RatFunc unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    RatFunc base = primary();
    if (eat('^')) {
      skip();
      std::size_t b = i_;
      if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) ++i_;
      bool paren = false;
      if (i_ < s_.size() && s_[i_] == '(') {
        paren = true;
        ++i_;
        b = i_;
        if (i_ < s_.size() && s_[i_] == '-') ++i_;
      }
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      std::string digits(s_.substr(b, i_ - b));
      if (digits.empty() || digits == "-" || digits == "+") throw ParseError("expected exponent", b);
      if (paren && !eat(')')) throw ParseError("expected ')'", i_);
      int k = std::stoi(digits);
      if (base.is_zero() && k < 0) throw ParseError("zero to a negative power", b);
      return base.pow(k);
    }
    return base;
  }

  RatFunc primary() {
    skip();
    if (i_ >= s_.size()) throw ParseError("unexpected end of expression", i_);
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      RatFunc r = expr();
      if (!eat(')')) throw ParseError("expected ')'", i_);
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t b = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return RatFunc::constant(vars_, Rational(Integer(std::string(s_.substr(b, i_ - b)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t b = i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
      std::string name(s_.substr(b, i_ - b));
      if (!vars_->index(name)) throw ParseError("unknown variable '" + name + "'", b);
      return RatFunc::variable(vars_, name);
    }
    throw ParseError("unexpected '" + std::string(1, c) + "'", i_);
  }

  VarsPtr vars_;
  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

RatFunc RatFunc::parse(VarsPtr vars, std::string_view text) { return ExprParser(std::move(vars), text).run(); }

}  // namespace locpl
