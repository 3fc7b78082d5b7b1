#pragma once

#include <gmpxx.h>

#include <string>

namespace ctxkit {

/// Exact rational number. All probabilities, weights and LP coefficients in
/// this library are Rational; no floating point is used anywhere in a
/// correctness-relevant path.
using Rational = mpq_class;

/// Parse "num/den" or a bare integer "num". Throws input_error on garbage,
/// zero denominators, or values that fail to parse.
Rational parse_rational(const std::string& text);

/// Canonical "num/den" form, denominator always present ("3/8", "0/1", "4/1").
std::string format_rational(const Rational& q);

/// mpq_class's two-argument constructor does not reduce the fraction; this
/// does. Use it whenever the numerator is not known to be coprime to the
/// denominator.
inline Rational make_rational(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

}  // namespace ctxkit
