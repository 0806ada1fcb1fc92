#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace azema {

/// Arbitrary-precision rational used by every discrete-engine computation.
using Rational = mpq_class;

/// A value per atom (a random variable on the finite space).
using AtomVector = std::vector<Rational>;

/// Canonical "p/q" (or "p" when integral) representation.
std::string to_string(const Rational& q);

/// Parses "p/q", "p" or a decimal-free integer string. Throws
/// std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_positive(const Rational& q) { return sgn(q) > 0; }

}  // namespace azema
