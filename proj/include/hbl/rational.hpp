#pragma once
#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "hbl/errors.hpp"

namespace hbl {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Accepts "p", "-p", "p/q"; q must be positive after normalization.
Rat parse_rat(const std::string& s);

// Canonical "p" or "p/q" with q > 1.
std::string rat_str(const Rat& r);

inline double rat_double(const Rat& r) { return r.template convert_to<double>(); }

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

}  // namespace hbl
