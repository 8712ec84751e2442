#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace arcpi {

using BigInt = boost::multiprecision::cpp_int;

// cpp_int's operator>> floors negative values; series truncation here is
// always toward zero, so shifts go through the magnitude.
BigInt shift_left(const BigInt& v, long bits);
BigInt shift_right_trunc(const BigInt& v, long bits);

// Integer quotient truncated toward zero / rounded away from zero.
BigInt div_trunc(const BigInt& num, const BigInt& den);
BigInt div_away(const BigInt& num, const BigInt& den);

BigInt pow2(long bits);
BigInt ipow(const BigInt& base, unsigned long exp);
BigInt factorial(unsigned long n);
BigInt isqrt(const BigInt& v);

// Number of bits in |v|; 0 for v == 0.
long bit_length(const BigInt& v);

/// Working-precision policy: scale_bits is the published precision, and
/// composite computations carry guard_bits extra bits internally, truncating
/// the final result back to scale_bits.
struct PrecisionContext {
    long scale_bits = 256;
    long guard_bits = 32;

    PrecisionContext() = default;
    explicit PrecisionContext(long scale, long guard = 32);

    long working_bits() const { return scale_bits + guard_bits; }
};

/// Binary fixed-point number: value = mantissa / 2^scale_bits.
///
/// The mantissa is an arbitrary-size signed integer and scale_bits is fixed
/// per value. Every rounding step truncates toward zero. Arithmetic between
/// two FixedPoints requires identical scales; rescaling is always explicit.
/// Values are immutable after construction.
class FixedPoint {
public:
    FixedPoint() : mantissa_(0), scale_bits_(0) {}
    FixedPoint(BigInt mantissa, long scale_bits);

    static FixedPoint zero(long scale_bits) { return FixedPoint(BigInt(0), scale_bits); }
    static FixedPoint one(long scale_bits) { return from_integer(1, scale_bits); }
    static FixedPoint ulp(long scale_bits) { return FixedPoint(BigInt(1), scale_bits); }

    static FixedPoint from_integer(const BigInt& v, long scale_bits);

    // p/q truncated toward zero; |result - p/q| <= 2^-scale_bits. q != 0.
    static FixedPoint from_rational(const BigInt& p, const BigInt& q, long scale_bits);
    static FixedPoint from_rational(const BigInt& p, const BigInt& q, const PrecisionContext& ctx);

    // p/q rounded away from zero; used for rigorous upper bounds.
    static FixedPoint from_rational_away(const BigInt& p, const BigInt& q, long scale_bits);

    // Parses "[+-]digits[.digits]" through exact scaled integers; no binary
    // floating point is involved.
    static FixedPoint from_decimal_string(std::string_view text, long scale_bits);

    const BigInt& mantissa() const { return mantissa_; }
    long scale_bits() const { return scale_bits_; }

    bool is_zero() const { return mantissa_ == 0; }
    bool is_negative() const { return mantissa_ < 0; }
    int sign() const { return mantissa_ == 0 ? 0 : (mantissa_ < 0 ? -1 : 1); }

    FixedPoint abs() const;
    FixedPoint operator-() const;

    // Exact when widening; truncates toward zero when narrowing.
    FixedPoint rescaled(long new_scale_bits) const;
    // Like rescaled but rounds |value| up; for bounds.
    FixedPoint rescaled_away(long new_scale_bits) const;

    FixedPoint mul_int(const BigInt& k) const;   // exact
    FixedPoint div_int(const BigInt& k) const;   // truncates toward zero, k != 0
    FixedPoint shifted(long bits) const;         // *2^bits, truncating on right shifts

    /// Decimal representation truncated (not rounded) to `digits` fractional
    /// digits, sign prefix "-" iff negative. digits >= 1.
    std::string to_decimal_string(long digits) const;

    // Reporting helpers; never used inside numeric kernels.
    double to_double_approx() const;
    double log2_approx() const;  // -HUGE_VAL for zero

    friend FixedPoint operator+(const FixedPoint& a, const FixedPoint& b);
    friend FixedPoint operator-(const FixedPoint& a, const FixedPoint& b);

    // Product truncated toward zero: |result - a*b| <= 2^-scale_bits,
    // exact whenever the exact product is representable.
    friend FixedPoint mul(const FixedPoint& a, const FixedPoint& b);

    friend bool operator==(const FixedPoint& a, const FixedPoint& b);
    friend bool operator!=(const FixedPoint& a, const FixedPoint& b) { return !(a == b); }
    friend bool operator<(const FixedPoint& a, const FixedPoint& b);
    friend bool operator<=(const FixedPoint& a, const FixedPoint& b);
    friend bool operator>(const FixedPoint& a, const FixedPoint& b) { return b < a; }
    friend bool operator>=(const FixedPoint& a, const FixedPoint& b) { return b <= a; }

private:
    BigInt mantissa_;
    long scale_bits_;
};

inline FixedPoint operator*(const FixedPoint& a, const FixedPoint& b) { return mul(a, b); }

/// floor(sqrt(k)) in fixed point: mantissa = isqrt(k * 2^(2*scale_bits)).
FixedPoint sqrt_int(const BigInt& k, long scale_bits);

/// sqrt at full working precision (scale_bits + guard_bits), so that squaring
/// the result reproduces k to well within 2^-scale_bits.
FixedPoint sqrt_int(const BigInt& k, const PrecisionContext& ctx);

namespace detail {

// a / d with the denominator taken as exact (its own scale, not a's, defines
// its value); result at a's scale, truncated toward zero. This is mantissa-by-
// integer division, not a general reciprocal.
FixedPoint div_mantissa(const FixedPoint& a, const FixedPoint& d);

}  // namespace detail

}  // namespace arcpi
