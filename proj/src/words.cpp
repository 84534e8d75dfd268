#include "locpl/words.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "locpl/errors.hpp"

namespace locpl {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(std::string(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

int parse_int(std::string_view s, std::size_t offset) {
  std::string t = trim(s);
  int v = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || p != t.data() + t.size())
    throw ParseError("expected integer, got '" + t + "'", offset);
  return v;
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

// --- Letter ----------------------------------------------------------------

Letter Letter::zero() {
  Letter l;
  l.zero_ = true;
  return l;
}

Letter Letter::variable(std::string name, int exponent) {
  Letter l;
  if (exponent != 0) l.factors_.emplace_back(std::move(name), exponent);
  return l;
}

Letter Letter::parse(std::string_view text) {
  std::string s = trim(text);
  if (s.empty()) throw ParseError("empty letter", 0);
  if (s == "0") return zero();
  if (s == "1") return one();
  Letter out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (!is_ident_start(s[i])) throw ParseError("bad letter '" + s + "'", i);
    std::size_t b = i;
    while (i < s.size() && is_ident_char(s[i])) ++i;
    std::string name = s.substr(b, i - b);
    int e = 1;
    if (i < s.size() && s[i] == '^') {
      ++i;
      std::size_t eb = i;
      if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      e = parse_int(std::string_view(s).substr(eb, i - eb), eb);
    }
    out = out * variable(name, e);
    if (i < s.size()) {
      if (s[i] != '*') throw ParseError("expected '*' in letter '" + s + "'", i);
      ++i;
      if (i == s.size()) throw ParseError("dangling '*' in letter '" + s + "'", i);
    }
  }
  return out;
}

int Letter::exponent(std::string_view name) const {
  for (const auto& [v, e] : factors_)
    if (v == name) return e;
  return 0;
}

int Letter::degree() const {
  int d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

Letter Letter::operator*(const Letter& other) const {
  if (zero_ || other.zero_) return zero();
  Letter out;
  auto a = factors_.begin(), b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    if (b == other.factors_.end() || (a != factors_.end() && a->first < b->first)) {
      out.factors_.push_back(*a++);
    } else if (a == factors_.end() || b->first < a->first) {
      out.factors_.push_back(*b++);
    } else {
      int e = a->second + b->second;
      if (e != 0) out.factors_.emplace_back(a->first, e);
      ++a;
      ++b;
    }
  }
  return out;
}

Letter Letter::operator/(const Letter& other) const {
  if (other.zero_) throw DomainError("division by the zero letter");
  Letter inv;
  for (const auto& [v, e] : other.factors_) inv.factors_.emplace_back(v, -e);
  return *this * inv;
}

std::string Letter::str() const {
  if (zero_) return "0";
  if (factors_.empty()) return "1";
  std::string out;
  for (const auto& [v, e] : factors_) {
    if (!out.empty()) out += "*";
    out += v;
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

// --- Word / indices ----------------------------------------------------------

Word Word::parse(std::string_view text) {
  Word w;
  std::string s = trim(text);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  if (trim(s).empty()) return w;
  std::size_t offset = 0;
  for (const auto& part : split(s, ',')) {
    try {
      w.letters.push_back(Letter::parse(part));
    } catch (const ParseError& e) {
      throw ParseError(std::string("bad word letter '") + trim(part) + "'", offset + e.position());
    }
    offset += part.size() + 1;
  }
  return w;
}

std::string Word::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i) out += ",";
    out += letters[i].str();
  }
  return out + ")";
}

CompositionIndex::CompositionIndex(std::vector<int> p) : parts(std::move(p)) {
  for (int x : parts)
    if (x < 1) throw DomainError("composition parts must be positive");
}

CompositionIndex CompositionIndex::parse(std::string_view text) {
  std::string s = trim(text);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  std::vector<int> parts;
  if (!trim(s).empty()) {
    std::size_t offset = 0;
    for (const auto& part : split(s, ',')) {
      int v = parse_int(part, offset);
      if (v < 1) throw ParseError("composition parts must be positive", offset);
      parts.push_back(v);
      offset += part.size() + 1;
    }
  }
  return CompositionIndex(std::move(parts));
}

int CompositionIndex::weight() const {
  int w = 0;
  for (int x : parts) w += x;
  return w;
}

std::string CompositionIndex::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(parts[i]);
  }
  return out + ")";
}

ExtSeriesIndex::ExtSeriesIndex(std::vector<Letter> coords, std::vector<int> exps)
    : x(std::move(coords)), n(std::move(exps)) {
  if (x.size() != n.size() + 1)
    throw DomainError("extended index needs exactly one more coordinate than exponents");
  for (const auto& c : x)
    if (c.is_zero()) throw DomainError("extended index coordinates must be nonzero");
  for (int e : n)
    if (e < 1) throw DomainError("extended index exponents must be positive");
}

ExtSeriesIndex ExtSeriesIndex::parse(std::string_view text) {
  std::string s = trim(text);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  if (trim(s).empty()) return ExtSeriesIndex();
  auto groups = split(s, ':');
  try {
    if (groups.size() == 2) {
      // split form: coordinates then exponents
      std::vector<Letter> x;
      for (const auto& t : split(groups[0], ',')) x.push_back(Letter::parse(t));
      std::vector<int> n;
      if (!trim(groups[1]).empty())
        for (const auto& t : split(groups[1], ',')) n.push_back(parse_int(t, groups[0].size() + 1));
      if (x.size() == n.size()) x.push_back(Letter::one());
      return ExtSeriesIndex(std::move(x), std::move(n));
    }
    if (groups.size() % 2 == 0) throw ParseError("interleaved index needs an odd number of fields", 0);
    // interleaved: x_{d+1}:n_d:x_d:...:n_1:x_1
    std::vector<Letter> x;
    std::vector<int> n;
    std::size_t offset = 0;
    for (std::size_t k = 0; k < groups.size(); ++k) {
      if (k % 2 == 0)
        x.push_back(Letter::parse(groups[k]));
      else
        n.push_back(parse_int(groups[k], offset));
      offset += groups[k].size() + 1;
    }
    std::reverse(x.begin(), x.end());
    std::reverse(n.begin(), n.end());
    return ExtSeriesIndex(std::move(x), std::move(n));
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid index '") + s + "': " + e.what(), 0);
  }
}

int ExtSeriesIndex::weight() const {
  int w = 0;
  for (int e : n) w += e;
  return w;
}

std::string ExtSeriesIndex::str() const {
  std::string out = "(" + x.back().str();
  for (std::size_t k = n.size(); k-- > 0;) {
    out += "," + std::to_string(n[k]) + "," + x[k].str();
  }
  return out + ")";
}

// --- products ----------------------------------------------------------------

namespace {

void shuffle_into(const Word& u, std::size_t i, const Word& v, std::size_t j, std::vector<Letter>& prefix,
                  LinComb<Word>& out) {
  if (i == u.size() && j == v.size()) {
    out.add(Word(prefix), 1);
    return;
  }
  if (i < u.size()) {
    prefix.push_back(u[i]);
    shuffle_into(u, i + 1, v, j, prefix, out);
    prefix.pop_back();
  }
  if (j < v.size()) {
    prefix.push_back(v[j]);
    shuffle_into(u, i, v, j + 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

LinComb<Word> shuffle(const Word& u, const Word& v) {
  LinComb<Word> out;
  std::vector<Letter> prefix;
  prefix.reserve(u.size() + v.size());
  shuffle_into(u, 0, v, 0, prefix, out);
  return out;
}

LinComb<Word> shuffle(const LinComb<Word>& u, const LinComb<Word>& v) {
  LinComb<Word> out;
  for (const auto& [a, ca] : u)
    for (const auto& [b, cb] : v) out += (ca * cb) * shuffle(a, b);
  return out;
}

LinComb<CompositionIndex> quasi_shuffle(const CompositionIndex& p, const CompositionIndex& q) {
  LinComb<CompositionIndex> out;
  for_each_stuffle_path(p.depth(), q.depth(), [&](const std::vector<StuffleStep>& path) {
    std::vector<int> parts;
    std::size_t a = 0, b = 0;
    for (StuffleStep s : path) {
      switch (s) {
        case StuffleStep::Left: parts.push_back(p.parts[a++]); break;
        case StuffleStep::Right: parts.push_back(q.parts[b++]); break;
        case StuffleStep::Both: parts.push_back(p.parts[a++] + q.parts[b++]); break;
      }
    }
    out.add(CompositionIndex(std::move(parts)), 1);
  });
  return out;
}

LinComb<ExtSeriesIndex> ext_quasi_shuffle(const ExtSeriesIndex& w, const ExtSeriesIndex& v) {
  LinComb<ExtSeriesIndex> out;
  for_each_stuffle_path(w.depth(), v.depth(), [&](const std::vector<StuffleStep>& path) {
    std::vector<int> parts;
    std::vector<Letter> coords;
    std::size_t a = 0, b = 0;  // zero-based a_k - 1, b_k - 1
    coords.push_back(w.x[a] * v.x[b]);
    for (StuffleStep s : path) {
      switch (s) {
        case StuffleStep::Left: parts.push_back(w.n[a++]); break;
        case StuffleStep::Right: parts.push_back(v.n[b++]); break;
        case StuffleStep::Both: parts.push_back(w.n[a++] + v.n[b++]); break;
      }
      // after the last step a, b point at the leading coordinates
      coords.push_back(w.x[a] * v.x[b]);
    }
    out.add(ExtSeriesIndex(std::move(coords), std::move(parts)), 1);
  });
  return out;
}

CompositionIndex forget_coordinates(const ExtSeriesIndex& w) { return CompositionIndex(w.n); }

ExtSeriesIndex map_r(const ExtSeriesIndex& w) {
  std::vector<Letter> x;
  x.reserve(w.x.size());
  for (std::size_t k = 0; k + 1 < w.x.size(); ++k) x.push_back(w.x[k] / w.leading());
  x.push_back(Letter::one());
  return ExtSeriesIndex(std::move(x), w.n);
}

ExtSeriesIndex map_i(const std::vector<int>& n, const std::vector<Letter>& x) {
  std::vector<Letter> coords = x;
  coords.push_back(Letter::one());
  return ExtSeriesIndex(std::move(coords), n);
}

namespace {
Word li_word(const ExtSeriesIndex& w) {
  Word out;
  for (std::size_t k = 0; k < w.depth(); ++k) {
    out.letters.push_back(w.x[k]);
    for (int z = 1; z < w.n[k]; ++z) out.letters.push_back(Letter::zero());
  }
  return out;
}
}  // namespace

Word series_to_integral_word(const ExtSeriesIndex& w) {
  if (!w.leading().is_one())
    throw DomainError("series_to_integral_word needs leading coordinate 1; apply map_r first");
  return li_word(w);
}

IntegralForm integral_form(const ExtSeriesIndex& w) {
  return IntegralForm{li_word(w), w.leading(), w.depth() % 2 == 0 ? 1 : -1};
}

}  // namespace locpl
