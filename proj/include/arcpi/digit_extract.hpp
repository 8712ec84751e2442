#pragma once

#include "arcpi/pi_formulas.hpp"

#include <cstdint>
#include <string>

namespace arcpi {

/// b^e mod m by left-to-right binary powering, O(log e) multiplications.
/// m = 0 is an error; intermediates use 128-bit arithmetic, so any m < 2^63
/// is safe.
std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);

/// `count` consecutive base-b digits of spec's constant starting at
/// fractional position `position` (1 = first digit after the point).
struct DigitRequest {
    SeriesSpec spec;   // must have an integer base
    long position = 1;
    int count = 1;     // 1..16 per request
};

/// Isolated digits of frac(b^(d-1) * S) without earlier digits: each term
/// family splits into a modular head (numerators reduced mod pf_den*(m n + c),
/// signs applied after reduction) and a short convergent tail. The result is
/// accepted only if a run with 8 extra guard bits reproduces count+1 digits;
/// otherwise an overflow error asks for a retry at higher precision.
std::string extract_digits(const DigitRequest& req);

/// Radix-conversion oracle: fractional base-b digits [first, first+count) of
/// a fixed-point value, by repeated multiply-and-carve on the fractional
/// mantissa. Errors when value.scale_bits() cannot cover the range.
std::string to_base_digits(const FixedPoint& value, long long base, long first, int count);

}  // namespace arcpi
