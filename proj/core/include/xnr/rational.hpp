#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace xnr {

/// Exact rational backed by GMP; always kept in lowest terms.
using Rational = mpq_class;
using Integer = mpz_class;

/// Accepts "num/den" or an integer. Throws std::invalid_argument otherwise,
/// including for a zero denominator.
Rational parse_rational(std::string_view text);

/// "num/den", or just "num" when the denominator is 1.
std::string to_string(const Rational& q);

}  // namespace xnr
