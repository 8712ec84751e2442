#pragma once

#include "arcpi/bignum.hpp"

#include <vector>

namespace arcpi {

/// Truncated series evaluation with a rigorous bound on the dropped tail.
/// Invariant: converged implies tail_bound <= the requested tolerance.
struct SeriesEvaluation {
    FixedPoint value;
    long terms_used = 0;
    FixedPoint tail_bound;    // upper bound on |true value - value|, never negative
    bool converged = false;
};

/// arctan(x) = x - x^3/3 + x^5/5 - ...; requires |x| < 1. Stops once the
/// first omitted term (a valid bound for an alternating series with strictly
/// decreasing terms) is within tol, or at max_terms.
SeriesEvaluation maclaurin_arctan(const FixedPoint& x, const FixedPoint& tol,
                                  long max_terms, const PrecisionContext& ctx);

/// arctan(x) = sum_{n>=0} 2^(2n) (n!)^2 / (2n+1)! * x^(2n+1) / (1+x^2)^(n+1).
/// Valid for every real x; the tail is bounded geometrically by
/// t_{N+1} * (1 + x^2) since the term ratio is below x^2/(1+x^2).
SeriesEvaluation euler_arctan(const FixedPoint& x, const FixedPoint& tol,
                              long max_terms, const PrecisionContext& ctx);

/// arctan(x) = sum_{n>=1} (x^2/(1+x^2))^(n/2) sin(n theta) / n with
/// theta = arccot(x), extended to x < 0 as an odd function. For x >= 0 this is
/// the generator sum over the frame of x; tail bound g^(N+1)/((N+1)(1-g)) with
/// g = |cos(theta)| = |x|/sqrt(1+x^2).
SeriesEvaluation sine_expansion_arctan(const FixedPoint& x, const FixedPoint& tol,
                                       long max_terms, const PrecisionContext& ctx);

/// Partial sums of sum_{n>=1} cos^n(theta) sin(n theta) / n -> pi/2 - theta.
/// The caller supplies sin/cos (exact surds in the pi formulas); requires
/// sin_theta > 0 and |cos_theta| < 1, i.e. theta strictly inside (0, pi).
SeriesEvaluation generator_sum(const FixedPoint& sin_theta, const FixedPoint& cos_theta,
                               const FixedPoint& tol, long max_terms,
                               const PrecisionContext& ctx);

/// Terms 1..n_max of the sine expansion of arctan at x, published at
/// ctx.scale_bits. Negative x uses the odd extension term by term.
std::vector<FixedPoint> sine_expansion_terms(const FixedPoint& x, unsigned n_max,
                                             const PrecisionContext& ctx);

namespace detail {

/// Rounds a working-precision error bound away from zero to the published
/// scale and pads it by 3 published ulps, covering the truncation drift of the
/// published value itself. Zero stays zero.
FixedPoint publish_tail_bound(const FixedPoint& raw, long scale_bits);

}  // namespace detail

}  // namespace arcpi
