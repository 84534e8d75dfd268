#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace locpl {

using Rational = mpq_class;
using Integer = mpz_class;

// "3", "-2/5". Input is canonicalized.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
long double to_long_double(const Rational& q);

}  // namespace locpl
