// Exact rational arithmetic, backed by GMP. Values are always canonical:
// lowest terms, positive denominator.
#pragma once

#include <gmpxx.h>

#include <string>

namespace mdpin {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Parses "p" or "p/q" with an optional leading '-'. Throws
// std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(const std::string& text);

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace mdpin
