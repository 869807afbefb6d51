#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace qpa {

/// Exact rational in canonical form (reduced, positive denominator).
using Rat = mpq_class;

/// Parses "p", "-p" or "p/q"; throws ParseError on malformed input or q = 0.
Rat parse_rat(std::string_view text);

/// "3/2", "-1", "0".
std::string to_string(const Rat& r);

double to_double(const Rat& r);

/// Exact embedding of a finite double (every double is a dyadic rational).
Rat from_double(double v);

/// Rounds to the nearest double and re-embeds; keeps numeric-mode data small.
Rat round_to_double(const Rat& r);

Rat factorial(int k);
Rat binomial(int n, int k);

}  // namespace qpa
