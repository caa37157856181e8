#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace orbitwa
{

using Rational = mpq_class;

/// Accepts "n", "-n", "p/q" and finite decimals such as "1.25". Throws InvalidInput otherwise.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form, or "n" for integers.
std::string to_string(Rational const &q);

/// Exact decimal rendering when the value has a finite expansion, "p/q" otherwise.
std::string to_decimal_string(Rational const &q);

inline bool is_integer(Rational const &q) { return q.get_den() == 1; }

} // namespace orbitwa
