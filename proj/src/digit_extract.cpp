#include "arcpi/digit_extract.hpp"

#include <bit>
#include <stdexcept>

namespace arcpi {

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    if (mod == 0) throw std::invalid_argument("mod_pow: modulus must be >= 1");
    if (mod == 1) return 0;
    if (exp == 0) return 1;
    const unsigned __int128 b = base % mod;
    unsigned __int128 result = 1;
    // left-to-right over the exponent bits: square, then multiply on set bits
    for (int i = 63 - std::countl_zero(exp); i >= 0; --i) {
        result = result * result % mod;
        if ((exp >> i) & 1u) result = result * b % mod;
    }
    return static_cast<std::uint64_t>(result);
}

namespace {

char digit_char(unsigned d) {
    return d < 10 ? static_cast<char>('0' + d) : static_cast<char>('A' + (d - 10));
}

// First `count` base-b digits of acc/2^frac_bits, acc in [0, 2^frac_bits).
std::string digits_from(BigInt acc, long frac_bits, long long b, int count) {
    std::string out;
    out.reserve(static_cast<size_t>(count));
    const BigInt mask = pow2(frac_bits) - 1;
    for (int i = 0; i < count; ++i) {
        acc *= b;
        out += digit_char((acc >> frac_bits).convert_to<unsigned>());
        acc &= mask;
    }
    return out;
}

// frac(b^(d-1) * constant) as a mantissa at scale frac_bits, all integer
// parts removed along the way. Head terms enter through residues mod
// pf_den*(m n + c_j) with the sign applied after reduction; the tail runs
// until b^(n-d+1) passes 2^(frac_bits+8).
BigInt frac_accumulate(const SeriesSpec& spec, long d, long frac_bits) {
    const long long b = spec.integer_base();
    const BigInt modulus = pow2(frac_bits);
    BigInt acc = 0;
    auto push = [&acc, &modulus](const BigInt& magnitude, bool negative) {
        if (negative) {
            acc -= magnitude;
            if (acc < 0) acc += modulus;
        } else {
            acc += magnitude;
            if (acc >= modulus) acc -= modulus;
        }
    };

    const bool pf_neg = spec.prefactor_num < 0;
    const std::uint64_t pf_num_abs =
        static_cast<std::uint64_t>(pf_neg ? -spec.prefactor_num : spec.prefactor_num);
    const std::uint64_t pf_den = static_cast<std::uint64_t>(spec.prefactor_den);

    for (long n = 0; n < d; ++n) {
        const std::uint64_t e = static_cast<std::uint64_t>(d - 1 - n);
        const bool n_neg = spec.sign_alternates && (n & 1);
        for (const SeriesTerm& t : spec.terms) {
            const std::uint64_t den_core =
                static_cast<std::uint64_t>(spec.period) * static_cast<std::uint64_t>(n) +
                static_cast<std::uint64_t>(t.offset);
            const std::uint64_t mod = pf_den * den_core;
            const std::uint64_t a_abs =
                static_cast<std::uint64_t>(t.numerator < 0 ? -t.numerator : t.numerator);
            unsigned __int128 num = static_cast<unsigned __int128>(a_abs) * pf_num_abs % mod;
            num = num * mod_pow(static_cast<std::uint64_t>(b), e, mod) % mod;
            const BigInt contrib = div_trunc(
                shift_left(BigInt(static_cast<std::uint64_t>(num)), frac_bits), BigInt(mod));
            push(contrib, n_neg ^ (t.numerator < 0) ^ pf_neg);
        }
    }

    BigInt bpow = b;   // b^(n - d + 1)
    for (long n = d; bit_length(bpow) <= frac_bits + 8; ++n, bpow *= b) {
        const bool n_neg = spec.sign_alternates && (n & 1);
        for (const SeriesTerm& t : spec.terms) {
            const std::uint64_t a_abs =
                static_cast<std::uint64_t>(t.numerator < 0 ? -t.numerator : t.numerator);
            const BigInt den = BigInt(pf_den) * (BigInt(spec.period) * n + t.offset) * bpow;
            const BigInt contrib =
                div_trunc(shift_left(BigInt(a_abs) * pf_num_abs, frac_bits), den);
            push(contrib, n_neg ^ (t.numerator < 0) ^ pf_neg);
        }
    }
    return acc;
}

}  // namespace

std::string extract_digits(const DigitRequest& req) {
    req.spec.validate();
    const long long b = req.spec.integer_base();
    if (b < 2 || b > 16) {
        throw std::invalid_argument("extract_digits: base must be in 2..16, got " +
                                    std::to_string(b));
    }
    if (req.position < 1) {
        throw std::invalid_argument("extract_digits: position must be >= 1");
    }
    if (req.count < 1 || req.count > 16) {
        throw std::invalid_argument("extract_digits: count must be in 1..16");
    }
    // Head denominators must stay inside 64-bit modular arithmetic.
    if (BigInt(req.spec.period) * req.position * req.spec.prefactor_den > pow2(56)) {
        throw std::invalid_argument("extract_digits: position too large for 64-bit reduction");
    }

    const long lb = bit_length(BigInt(b - 1));   // ceil(log2 b)
    const long frac_bits = 64 + 8L * req.count + lb * (req.count + 1);
    const BigInt lo = frac_accumulate(req.spec, req.position, frac_bits);
    const BigInt hi = frac_accumulate(req.spec, req.position, frac_bits + 8);
    const std::string lo_digits = digits_from(lo, frac_bits, b, req.count + 1);
    const std::string hi_digits = digits_from(hi, frac_bits + 8, b, req.count + 1);
    if (lo_digits != hi_digits) {
        throw std::overflow_error(
            "extract_digits: digits at position " + std::to_string(req.position) +
            " are not stable under 8 extra guard bits; rerun with a higher-precision build "
            "of this request");
    }
    return lo_digits.substr(0, static_cast<size_t>(req.count));
}

std::string to_base_digits(const FixedPoint& value, long long base, long first, int count) {
    if (base < 2 || base > 16) {
        throw std::invalid_argument("to_base_digits: base must be in 2..16");
    }
    if (first < 1 || count < 1) {
        throw std::invalid_argument("to_base_digits: first and count must be >= 1");
    }
    if (value.is_negative()) {
        throw std::invalid_argument("to_base_digits: value must be non-negative");
    }
    const long s = value.scale_bits();
    const long lb = bit_length(BigInt(base - 1));
    if (lb * (first + count) + 16 > s) {
        throw std::invalid_argument(
            "to_base_digits: value has too few scale bits for the requested digit range");
    }
    const BigInt frac = value.mantissa() & (pow2(s) - 1);   // mantissa >= 0 here
    std::string all = digits_from(frac, s, base, static_cast<int>(first) + count - 1);
    return all.substr(static_cast<size_t>(first - 1));
}

}  // namespace arcpi
