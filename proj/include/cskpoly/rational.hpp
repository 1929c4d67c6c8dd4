#pragma once

#include <gmpxx.h>

#include <string>

namespace cskpoly {

// Exact arbitrary-precision rational scalar. All identity checks in the
// library are performed on this type; doubles appear only at the numeric
// evaluation boundary.
using Rational = mpq_class;

// Accepts "p/q", a plain integer, or a terminating decimal ("-0.25").
Rational parse_rational(const std::string& text);

// Canonical "p/q" form; integers print without the "/1".
std::string to_fraction_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

// Integer power, exp >= 0.
Rational rational_pow(const Rational& base, unsigned long exp);

inline int sign(const Rational& q) { return sgn(q); }

} // namespace cskpoly
