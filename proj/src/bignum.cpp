#include "arcpi/bignum.hpp"

#include <cctype>
#include <cmath>

namespace arcpi {

BigInt shift_left(const BigInt& v, long bits) {
    if (bits < 0) throw std::invalid_argument("shift_left: negative shift");
    if (v < 0) return BigInt(-(BigInt(-v) << bits));
    return v << bits;
}

BigInt shift_right_trunc(const BigInt& v, long bits) {
    if (bits < 0) throw std::invalid_argument("shift_right_trunc: negative shift");
    if (v < 0) return BigInt(-(BigInt(-v) >> bits));
    return v >> bits;
}

BigInt div_trunc(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::invalid_argument("division by zero");
    return num / den;  // cpp_int division truncates toward zero
}

BigInt div_away(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::invalid_argument("division by zero");
    BigInt q = num / den;
    if (num % den != 0) q += (q < 0 || (q == 0 && (num < 0) != (den < 0))) ? -1 : 1;
    return q;
}

BigInt pow2(long bits) {
    if (bits < 0) throw std::invalid_argument("pow2: negative exponent");
    return BigInt(1) << bits;
}

BigInt ipow(const BigInt& base, unsigned long exp) {
    BigInt result = 1;
    BigInt b = base;
    unsigned long e = exp;
    while (e > 0) {
        if (e & 1) result *= b;
        b *= b;
        e >>= 1;
    }
    return result;
}

BigInt factorial(unsigned long n) {
    BigInt result = 1;
    for (unsigned long i = 2; i <= n; ++i) result *= i;
    return result;
}

BigInt isqrt(const BigInt& v) {
    if (v < 0) throw std::invalid_argument("isqrt: negative argument");
    return sqrt(v);
}

long bit_length(const BigInt& v) {
    if (v == 0) return 0;
    return static_cast<long>(msb(abs(v))) + 1;
}

PrecisionContext::PrecisionContext(long scale, long guard)
    : scale_bits(scale), guard_bits(guard) {
    if (scale < 1) throw std::invalid_argument("PrecisionContext: scale_bits must be >= 1");
    if (guard < 32) throw std::invalid_argument("PrecisionContext: guard_bits must be >= 32");
}

FixedPoint::FixedPoint(BigInt mantissa, long scale_bits)
    : mantissa_(std::move(mantissa)), scale_bits_(scale_bits) {
    if (scale_bits < 0) throw std::invalid_argument("FixedPoint: negative scale_bits");
}

FixedPoint FixedPoint::from_integer(const BigInt& v, long scale_bits) {
    return FixedPoint(shift_left(v, scale_bits), scale_bits);
}

FixedPoint FixedPoint::from_rational(const BigInt& p, const BigInt& q, long scale_bits) {
    if (q == 0) throw std::invalid_argument("from_rational: zero denominator");
    return FixedPoint(div_trunc(shift_left(p, scale_bits), q), scale_bits);
}

FixedPoint FixedPoint::from_rational(const BigInt& p, const BigInt& q, const PrecisionContext& ctx) {
    return from_rational(p, q, ctx.scale_bits);
}

FixedPoint FixedPoint::from_rational_away(const BigInt& p, const BigInt& q, long scale_bits) {
    if (q == 0) throw std::invalid_argument("from_rational: zero denominator");
    return FixedPoint(div_away(shift_left(p, scale_bits), q), scale_bits);
}

FixedPoint FixedPoint::from_decimal_string(std::string_view text, long scale_bits) {
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        negative = text[i] == '-';
        ++i;
    }
    BigInt digits = 0;
    long frac_digits = -1;  // -1: no decimal point seen yet
    std::size_t digit_count = 0;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c == '.') {
            if (frac_digits >= 0) throw std::invalid_argument("from_decimal_string: repeated '.'");
            frac_digits = 0;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits = digits * 10 + (c - '0');
            ++digit_count;
            if (frac_digits >= 0) ++frac_digits;
        } else {
            throw std::invalid_argument(std::string("from_decimal_string: bad character '") + c + "'");
        }
    }
    if (digit_count == 0) throw std::invalid_argument("from_decimal_string: no digits");
    if (negative) digits = -digits;
    BigInt den = ipow(10, frac_digits > 0 ? static_cast<unsigned long>(frac_digits) : 0);
    return from_rational(digits, den, scale_bits);
}

FixedPoint FixedPoint::abs() const {
    return FixedPoint(boost::multiprecision::abs(mantissa_), scale_bits_);
}

FixedPoint FixedPoint::operator-() const {
    return FixedPoint(BigInt(-mantissa_), scale_bits_);
}

FixedPoint FixedPoint::rescaled(long new_scale_bits) const {
    if (new_scale_bits == scale_bits_) return *this;
    if (new_scale_bits > scale_bits_)
        return FixedPoint(shift_left(mantissa_, new_scale_bits - scale_bits_), new_scale_bits);
    return FixedPoint(shift_right_trunc(mantissa_, scale_bits_ - new_scale_bits), new_scale_bits);
}

FixedPoint FixedPoint::rescaled_away(long new_scale_bits) const {
    if (new_scale_bits >= scale_bits_) return rescaled(new_scale_bits);
    long drop = scale_bits_ - new_scale_bits;
    BigInt mag = boost::multiprecision::abs(mantissa_);
    BigInt q = mag >> drop;
    if ((q << drop) != mag) q += 1;
    return FixedPoint(mantissa_ < 0 ? BigInt(-q) : q, new_scale_bits);
}

FixedPoint FixedPoint::mul_int(const BigInt& k) const {
    return FixedPoint(BigInt(mantissa_ * k), scale_bits_);
}

FixedPoint FixedPoint::div_int(const BigInt& k) const {
    if (k == 0) throw std::invalid_argument("div_int: zero divisor");
    return FixedPoint(div_trunc(mantissa_, k), scale_bits_);
}

FixedPoint FixedPoint::shifted(long bits) const {
    if (bits >= 0) return FixedPoint(shift_left(mantissa_, bits), scale_bits_);
    return FixedPoint(shift_right_trunc(mantissa_, -bits), scale_bits_);
}

std::string FixedPoint::to_decimal_string(long digits) const {
    if (digits < 1) throw std::invalid_argument("to_decimal_string: digits must be >= 1");
    BigInt mag = boost::multiprecision::abs(mantissa_);
    BigInt p10 = ipow(10, static_cast<unsigned long>(digits));
    BigInt scaled = (mag * p10) >> scale_bits_;
    BigInt int_part = scaled / p10;
    std::string frac = BigInt(scaled % p10).str();
    std::string out;
    if (mantissa_ < 0) out += '-';
    out += int_part.str();
    out += '.';
    out.append(static_cast<std::size_t>(digits) - frac.size(), '0');
    out += frac;
    return out;
}

double FixedPoint::to_double_approx() const {
    if (mantissa_ == 0) return 0.0;
    BigInt mag = boost::multiprecision::abs(mantissa_);
    long bl = bit_length(mag);
    long shift = bl > 62 ? bl - 62 : 0;
    auto top = static_cast<double>(static_cast<unsigned long long>(BigInt(mag >> shift)));
    double v = std::ldexp(top, static_cast<int>(shift - scale_bits_));
    return mantissa_ < 0 ? -v : v;
}

double FixedPoint::log2_approx() const {
    if (mantissa_ == 0) return -HUGE_VAL;
    BigInt mag = boost::multiprecision::abs(mantissa_);
    long bl = bit_length(mag);
    long shift = bl > 62 ? bl - 62 : 0;
    auto top = static_cast<double>(static_cast<unsigned long long>(BigInt(mag >> shift)));
    return std::log2(top) + static_cast<double>(shift) - static_cast<double>(scale_bits_);
}

namespace {
void require_same_scale(const FixedPoint& a, const FixedPoint& b) {
    if (a.scale_bits() != b.scale_bits())
        throw std::invalid_argument("FixedPoint: mismatched scales (rescale explicitly)");
}
}  // namespace

FixedPoint operator+(const FixedPoint& a, const FixedPoint& b) {
    require_same_scale(a, b);
    return FixedPoint(BigInt(a.mantissa_ + b.mantissa_), a.scale_bits_);
}

FixedPoint operator-(const FixedPoint& a, const FixedPoint& b) {
    require_same_scale(a, b);
    return FixedPoint(BigInt(a.mantissa_ - b.mantissa_), a.scale_bits_);
}

FixedPoint mul(const FixedPoint& a, const FixedPoint& b) {
    require_same_scale(a, b);
    return FixedPoint(shift_right_trunc(a.mantissa_ * b.mantissa_, a.scale_bits_), a.scale_bits_);
}

bool operator==(const FixedPoint& a, const FixedPoint& b) {
    require_same_scale(a, b);
    return a.mantissa_ == b.mantissa_;
}

bool operator<(const FixedPoint& a, const FixedPoint& b) {
    require_same_scale(a, b);
    return a.mantissa_ < b.mantissa_;
}

bool operator<=(const FixedPoint& a, const FixedPoint& b) {
    require_same_scale(a, b);
    return a.mantissa_ <= b.mantissa_;
}

FixedPoint sqrt_int(const BigInt& k, long scale_bits) {
    if (k < 0) throw std::invalid_argument("sqrt_int: negative argument");
    return FixedPoint(isqrt(shift_left(k, 2 * scale_bits)), scale_bits);
}

FixedPoint sqrt_int(const BigInt& k, const PrecisionContext& ctx) {
    return sqrt_int(k, ctx.working_bits());
}

namespace detail {

FixedPoint div_mantissa(const FixedPoint& a, const FixedPoint& d) {
    if (d.is_zero()) throw std::invalid_argument("div_mantissa: zero denominator");
    BigInt num = shift_left(a.mantissa(), d.scale_bits());
    return FixedPoint(div_trunc(num, d.mantissa()), a.scale_bits());
}

}  // namespace detail

}  // namespace arcpi
