#include "locpl/rational.hpp"

#include <cctype>
#include <string>

#include "locpl/errors.hpp"

namespace locpl {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  std::size_t i = 0;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
  bool seen_digit = false;
  bool seen_slash = false;
  for (std::size_t k = i; k < s.size(); ++k) {
    if (std::isdigit(static_cast<unsigned char>(s[k]))) {
      seen_digit = true;
    } else if (s[k] == '/' && seen_digit && !seen_slash && k + 1 < s.size()) {
      seen_slash = true;
    } else {
      throw ParseError("bad rational '" + s + "'", k);
    }
  }
  if (!seen_digit) throw ParseError("bad rational '" + s + "'", 0);
  if (s[0] == '+') s.erase(0, 1);
  Rational q;
  if (q.set_str(s, 10) != 0) throw ParseError("bad rational '" + s + "'", 0);
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'", 0);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

long double to_long_double(const Rational& q) {
  // mpq -> double loses range for huge values; go through the parts.
  long double num = q.get_num().get_d();
  long double den = q.get_den().get_d();
  if (mpz_sizeinbase(q.get_num_mpz_t(), 2) < 60 && mpz_sizeinbase(q.get_den_mpz_t(), 2) < 60) {
    num = static_cast<long double>(q.get_num().get_si());
    den = static_cast<long double>(q.get_den().get_si());
  }
  return num / den;
}

}  // namespace locpl
