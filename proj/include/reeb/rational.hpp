#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>

namespace reeb {

// All function values are exact rationals. Inputs are decimals or p/q
// literals; every derived quantity (midpoints, +/- eps shifts, matching
// costs) stays exact, so equality-critical comparisons need no tolerance.
using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

// Parses "3", "-0.25", "7/2". Returns nullopt on malformed input.
std::optional<Rat> parse_rat(const std::string& s);

// Exact rendering: integer if integral, else "p/q".
std::string rat_to_string(const Rat& r);

// Decimal rendering for humans, 12 significant digits.
std::string rat_to_decimal(const Rat& r);

double rat_to_double(const Rat& r);

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }
inline Rat rat_min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat rat_max(const Rat& a, const Rat& b) { return a > b ? a : b; }

}  // namespace reeb
