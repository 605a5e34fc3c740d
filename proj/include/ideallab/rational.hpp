#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ideallab {

using Rational = mpq_class;
using Integer = mpz_class;

// "p/q", or "p" for integers.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

// Accepts "p", "p/q", and finite decimals such as "0.3".
Rational parse_rational(std::string_view text);

Rational abs(const Rational& q);
Rational pow2(int exponent);  // 2^exponent, exponent may be negative
Integer ceil(const Rational& q);
Integer floor(const Rational& q);

}  // namespace ideallab
