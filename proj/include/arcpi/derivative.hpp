#pragma once

#include "arcpi/bignum.hpp"

#include <vector>

namespace arcpi {

/// Exact integer polynomial P_n with
///   d^n/dx^n arctan(x) = P_n(x) / (1 + x^2)^n.
/// Degree is n-1 and the coefficients have the parity of n-1.
struct DerivativePolynomial {
    unsigned order = 1;           // n
    std::vector<BigInt> coeffs;   // coefficient of x^j at index j

    long degree() const { return static_cast<long>(coeffs.size()) - 1; }
};

/// P_1 = 1, P_{k+1} = P_k' * (1 + x^2) - 2k x P_k, all over exact integers.
DerivativePolynomial poly_oracle_coeffs(unsigned n);

/// Angle frame for theta = arccot(x), theta in (0, pi):
///   sin_theta = 1/sqrt(1+x^2) in (0, 1],
///   cos_theta = x/sqrt(1+x^2), carrying the sign of x.
/// The arccot branch (rather than arcsin, which would force cos_theta >= 0)
/// keeps d(theta)/dx = -sin^2(theta) valid on the whole real line and with it
/// the closed derivative form for negative x.
struct ThetaFrame {
    FixedPoint sin_theta;
    FixedPoint cos_theta;

    long scale_bits() const { return sin_theta.scale_bits(); }
};

ThetaFrame theta_frame(const FixedPoint& x, long scale_bits);

/// [sin(theta), sin(2 theta), ..., sin(n_max theta)] by the three-term
/// recurrence sin((k+1)t) = 2 cos(t) sin(kt) - sin((k-1)t). No transcendental
/// calls; exact whenever sin/cos are exact dyadics.
std::vector<FixedPoint> sin_multiple_recurrence(const ThetaFrame& frame, unsigned n_max);

/// n-th derivative of arctan at x as
///   (-1)^(n-1) (n-1)! sin^n(theta) sin(n theta),  theta = arccot(x).
/// Internal precision grows with log2((n-1)!) so the published value at
/// ctx.scale_bits stays within 2^(10 - scale_bits) of the true derivative.
FixedPoint closed_form_derivative(unsigned n, const FixedPoint& x, const PrecisionContext& ctx);

/// Independent evaluation of the same derivative: Horner on the exact
/// coefficients of P_n, then n truncating divisions by (1 + x^2).
FixedPoint oracle_eval(unsigned n, const FixedPoint& x, const PrecisionContext& ctx);

}  // namespace arcpi
