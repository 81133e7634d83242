#pragma once

// Extended-precision reals. Lengths are always carried next to an exact
// trace; the float is for display and for the inexact detectors only.

#include <boost/multiprecision/float128.hpp>

#include <string>
#include <string_view>

#include "geoprog/bigint.hpp"

namespace geoprog {

/// IEEE binary128: 113-bit significand, about 34 significant decimal digits.
using Real = boost::multiprecision::float128;

/// Significant digits used whenever a length is printed or serialized.
inline constexpr int kLengthDigits = 25;
/// Upper bound on meaningful output digits for `Real`.
inline constexpr int kMaxRealDigits = 33;

Real to_real(const BigInt& n);
Real parse_real(std::string_view text);
std::string format_real(const Real& x, int digits = kLengthDigits);

}  // namespace geoprog
