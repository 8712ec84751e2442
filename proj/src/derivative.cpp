#include "arcpi/derivative.hpp"

#include <stdexcept>

namespace arcpi {

namespace {

void require_positive_order(unsigned n, const char* who) {
    if (n == 0) {
        throw std::invalid_argument(std::string(who) + ": derivative order must be >= 1");
    }
}

// x^n with truncating multiplies; |x| <= 1 keeps every intermediate bounded.
FixedPoint pow_trunc(const FixedPoint& base, unsigned n) {
    FixedPoint result = FixedPoint::one(base.scale_bits());
    FixedPoint square = base;
    unsigned e = n;
    while (e > 0) {
        if (e & 1u) result = mul(result, square);
        e >>= 1u;
        if (e > 0) square = mul(square, square);
    }
    return result;
}

}  // namespace

DerivativePolynomial poly_oracle_coeffs(unsigned n) {
    require_positive_order(n, "poly_oracle_coeffs");
    DerivativePolynomial p;
    p.order = 1;
    p.coeffs = {BigInt(1)};
    for (unsigned k = 1; k < n; ++k) {
        const std::vector<BigInt>& c = p.coeffs;   // degree k-1
        std::vector<BigInt> next(k + 1, BigInt(0));  // degree k
        for (unsigned j = 0; j < c.size(); ++j) {
            if (c[j] == 0) continue;
            if (j >= 1) {
                // P_k' * (1 + x^2): j c_j x^(j-1) and j c_j x^(j+1)
                next[j - 1] += BigInt(j) * c[j];
                next[j + 1] += BigInt(j) * c[j];
            }
            // -2k x P_k
            next[j + 1] -= BigInt(2) * BigInt(k) * c[j];
        }
        p.order = k + 1;
        p.coeffs = std::move(next);
    }
    return p;
}

ThetaFrame theta_frame(const FixedPoint& x, long scale_bits) {
    if (scale_bits < 1) {
        throw std::invalid_argument("theta_frame: scale_bits must be >= 1");
    }
    const FixedPoint xs = x.rescaled(scale_bits);
    // t = 1 + x^2 held exactly at scale 2s.
    const BigInt t_mant = pow2(2 * scale_bits) + xs.mantissa() * xs.mantissa();
    // sin = 1/sqrt(t): mantissa = floor(sqrt(2^(4s) / t_mant)), within 2 ulp.
    const BigInt sin_mant = isqrt(div_trunc(pow2(4 * scale_bits), t_mant));
    const FixedPoint sin_theta(sin_mant, scale_bits);
    const FixedPoint cos_theta = mul(xs, sin_theta);
    return ThetaFrame{sin_theta, cos_theta};
}

std::vector<FixedPoint> sin_multiple_recurrence(const ThetaFrame& frame, unsigned n_max) {
    if (n_max == 0) return {};
    std::vector<FixedPoint> out;
    out.reserve(n_max);
    const long s = frame.scale_bits();
    const FixedPoint two_cos = frame.cos_theta.mul_int(2);
    FixedPoint prev = FixedPoint::zero(s);   // sin(0)
    FixedPoint cur = frame.sin_theta;        // sin(theta)
    out.push_back(cur);
    for (unsigned k = 1; k < n_max; ++k) {
        FixedPoint next = mul(two_cos, cur) - prev;
        out.push_back(next);
        prev = cur;
        cur = next;
    }
    return out;
}

FixedPoint closed_form_derivative(unsigned n, const FixedPoint& x, const PrecisionContext& ctx) {
    require_positive_order(n, "closed_form_derivative");
    const BigInt fact = factorial(n - 1);
    // (n-1)! amplifies absolute error, so the frame is built with that many
    // extra bits; the factorial itself is multiplied in exactly at the end.
    long w = ctx.working_bits() + bit_length(fact) + bit_length(BigInt(n)) + 8;
    if (w < x.scale_bits()) w = x.scale_bits();

    const ThetaFrame frame = theta_frame(x, w);
    const std::vector<FixedPoint> sins = sin_multiple_recurrence(frame, n);
    const FixedPoint sin_pow = pow_trunc(frame.sin_theta, n);
    FixedPoint value = mul(sin_pow, sins[n - 1]);
    value = FixedPoint(value.mantissa() * fact, w);
    if (n % 2 == 0) value = -value;
    return value.rescaled(ctx.scale_bits);
}

FixedPoint oracle_eval(unsigned n, const FixedPoint& x, const PrecisionContext& ctx) {
    require_positive_order(n, "oracle_eval");
    const DerivativePolynomial poly = poly_oracle_coeffs(n);

    // Horner on P_n amplifies by roughly |x|^(n-1) and the coefficients reach
    // about (n-1)! in size; both get headroom here.
    long int_bits = bit_length(x.mantissa()) - x.scale_bits();
    if (int_bits < 0) int_bits = 0;
    long w = ctx.working_bits() + static_cast<long>(n) * (int_bits + 1) + bit_length(factorial(n - 1)) + 8;
    if (w < x.scale_bits()) w = x.scale_bits();

    const FixedPoint xs = x.rescaled(w);
    FixedPoint acc = FixedPoint::from_integer(poly.coeffs.back(), w);
    for (long j = poly.degree() - 1; j >= 0; --j) {
        acc = mul(acc, xs) + FixedPoint::from_integer(poly.coeffs[static_cast<size_t>(j)], w);
    }

    // n truncating divisions by the exact t = 1 + x^2 at scale 2w.
    const FixedPoint t(pow2(2 * w) + xs.mantissa() * xs.mantissa(), 2 * w);
    for (unsigned i = 0; i < n; ++i) {
        acc = detail::div_mantissa(acc, t);
    }
    return acc.rescaled(ctx.scale_bits);
}

}  // namespace arcpi
