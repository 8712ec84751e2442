#include "arcpi/expansions.hpp"

#include "arcpi/derivative.hpp"

#include <stdexcept>

namespace arcpi {

namespace detail {

FixedPoint publish_tail_bound(const FixedPoint& raw, long scale_bits) {
    const FixedPoint mag = raw.abs();
    if (mag.is_zero()) return FixedPoint::zero(scale_bits);
    return mag.rescaled_away(scale_bits) + FixedPoint::ulp(scale_bits).mul_int(3);
}

}  // namespace detail

namespace {

struct Budget {
    FixedPoint tol;       // at the published scale
    long max_terms;
    long scale_bits;      // published scale
};

Budget make_budget(const FixedPoint& tol, long max_terms, const PrecisionContext& ctx,
                   const char* who) {
    if (tol.is_negative()) {
        throw std::invalid_argument(std::string(who) + ": tolerance must be >= 0");
    }
    if (max_terms < 0) {
        throw std::invalid_argument(std::string(who) + ": max_terms must be >= 0");
    }
    return Budget{tol.rescaled(ctx.scale_bits), max_terms, ctx.scale_bits};
}

// Publishes acc and the pending bound; converged iff the bound met tol.
SeriesEvaluation publish(const FixedPoint& acc, const FixedPoint& raw_bound, long terms,
                         const Budget& b, bool bound_met) {
    SeriesEvaluation out;
    out.value = acc.rescaled(b.scale_bits);
    out.terms_used = terms;
    out.tail_bound = detail::publish_tail_bound(raw_bound, b.scale_bits);
    out.converged = bound_met;
    return out;
}

// Shared core of sine_expansion_arctan and generator_sum: partial sums of
// sum_{n>=1} g^n sin(n theta)/n with g = cos(theta), entirely at scale w.
// The bound checked before adding term n is g_abs^n/(n (1-g_abs)), which
// dominates the whole tail from term n on. When terms_out is set, exactly
// max_terms terms are collected (tol should be zero-or-unreachable then).
SeriesEvaluation generator_core(const FixedPoint& sin_theta, const FixedPoint& cos_theta,
                                const Budget& b, std::vector<FixedPoint>* terms_out) {
    const long w = sin_theta.scale_bits();
    const FixedPoint g = cos_theta;
    const FixedPoint g_abs = g.abs();
    const FixedPoint one = FixedPoint::one(w);

    const FixedPoint one_minus = one - g_abs;   // > 0, validated by callers
    // 1/(1 - g_abs) rounded up so the bound never undershoots.
    const FixedPoint inv_one_minus(div_trunc(pow2(2 * w), one_minus.mantissa()) + 1, w);

    const FixedPoint two_cos = g.mul_int(2);
    FixedPoint sin_prev = FixedPoint::zero(w);
    FixedPoint sin_cur = sin_theta;
    FixedPoint g_pow = one;                      // g^(n-1) entering iteration n
    FixedPoint acc = FixedPoint::zero(w);

    for (long n = 1;; ++n) {
        const FixedPoint g_pow_n = mul(g_pow, g);
        // Second summand: accumulated truncation drift of the partial sum,
        // ~9 ulp per term from the power, the sine recurrence and the final
        // truncations, counted here with room to spare.
        const FixedPoint raw_bound = mul(g_pow_n.abs(), inv_one_minus).div_int(n) +
                                     FixedPoint(BigInt(16) * n, w);
        const bool bound_met =
            detail::publish_tail_bound(raw_bound, b.scale_bits) <= b.tol;
        if (bound_met && terms_out == nullptr) {
            return publish(acc, raw_bound, n - 1, b, true);
        }
        if (n - 1 == b.max_terms) {
            return publish(acc, raw_bound, n - 1, b, bound_met);
        }
        const FixedPoint term = mul(g_pow_n, sin_cur).div_int(n);
        acc = acc + term;
        if (terms_out != nullptr) terms_out->push_back(term.rescaled(b.scale_bits));
        const FixedPoint sin_next = mul(two_cos, sin_cur) - sin_prev;
        sin_prev = sin_cur;
        sin_cur = sin_next;
        g_pow = g_pow_n;
    }
}

}  // namespace

SeriesEvaluation maclaurin_arctan(const FixedPoint& x, const FixedPoint& tol,
                                  long max_terms, const PrecisionContext& ctx) {
    const Budget b = make_budget(tol, max_terms, ctx, "maclaurin_arctan");
    long w = ctx.working_bits();
    if (w < x.scale_bits()) w = x.scale_bits();
    const FixedPoint xw = x.rescaled(w);
    if (!(xw.abs() < FixedPoint::one(xw.scale_bits()))) {
        throw std::domain_error(
            "maclaurin_arctan: |x| >= 1 is outside the usable range; the "
            "radius of convergence is small (1), and at the boundary the "
            "series crawls");
    }
    const FixedPoint x2 = mul(xw, xw);
    FixedPoint power = xw;                      // x^(2n+1)
    FixedPoint acc = FixedPoint::zero(xw.scale_bits());
    for (long n = 0;; ++n) {
        const FixedPoint candidate = power.div_int(2 * n + 1);
        // Terms strictly decrease for |x| < 1, so the first omitted term
        // bounds the whole alternating tail; the n-proportional summand
        // covers the truncation drift of the computed partial sum.
        const FixedPoint raw_bound = candidate.abs() + FixedPoint(BigInt(16) * n, w);
        const bool bound_met = detail::publish_tail_bound(raw_bound, b.scale_bits) <= b.tol;
        if (bound_met || n == b.max_terms) {
            return publish(acc, raw_bound, n, b, bound_met);
        }
        acc = (n % 2 == 0) ? acc + candidate : acc - candidate;
        power = mul(power, x2);
    }
}

SeriesEvaluation euler_arctan(const FixedPoint& x, const FixedPoint& tol,
                              long max_terms, const PrecisionContext& ctx) {
    const Budget b = make_budget(tol, max_terms, ctx, "euler_arctan");
    long w = ctx.working_bits();
    if (w < x.scale_bits()) w = x.scale_bits();
    const FixedPoint xw = x.rescaled(w);
    const BigInt mx = xw.mantissa();
    const BigInt t_mant = pow2(2 * w) + mx * mx;            // 1 + x^2 at scale 2w

    // q = x^2/(1+x^2) < 1 and the leading term x/(1+x^2), one division each.
    const FixedPoint q(div_trunc(shift_left(mx * mx, w), t_mant), w);
    FixedPoint term(div_trunc(shift_left(mx, 2 * w), t_mant), w);
    // (1+x^2) rounded up to scale w so the bound product never undershoots.
    const FixedPoint t_up(shift_right_trunc(t_mant, w) + 1, w);

    FixedPoint acc = FixedPoint::zero(w);
    for (long n = 0;; ++n) {
        // All terms share x's sign; the tail is geometric with ratio <= q,
        // so |tail from term n| <= |t_n| / (1 - q) = |t_n| (1 + x^2). The
        // n-proportional summand covers per-term truncation drift; it rides
        // inside the product because the drift recursion has gain q as well.
        const FixedPoint raw_bound =
            mul(term.abs() + FixedPoint(BigInt(16) * n, w), t_up);
        const bool bound_met = detail::publish_tail_bound(raw_bound, b.scale_bits) <= b.tol;
        if (bound_met || n == b.max_terms) {
            return publish(acc, raw_bound, n, b, bound_met);
        }
        acc = acc + term;
        term = mul(term, q).mul_int(2 * n + 2).div_int(2 * n + 3);
    }
}

SeriesEvaluation sine_expansion_arctan(const FixedPoint& x, const FixedPoint& tol,
                                       long max_terms, const PrecisionContext& ctx) {
    const Budget b = make_budget(tol, max_terms, ctx, "sine_expansion_arctan");
    long w = ctx.working_bits();
    if (w < x.scale_bits()) w = x.scale_bits();
    const bool negate = x.is_negative();
    const ThetaFrame frame = theta_frame(x.abs(), w);
    SeriesEvaluation eval = generator_core(frame.sin_theta, frame.cos_theta, b, nullptr);
    if (negate) eval.value = -eval.value;       // odd extension, term by term
    return eval;
}

SeriesEvaluation generator_sum(const FixedPoint& sin_theta, const FixedPoint& cos_theta,
                               const FixedPoint& tol, long max_terms,
                               const PrecisionContext& ctx) {
    const Budget b = make_budget(tol, max_terms, ctx, "generator_sum");
    if (sin_theta.scale_bits() != cos_theta.scale_bits()) {
        throw std::invalid_argument("generator_sum: sin/cos scales differ");
    }
    if (!(FixedPoint::zero(sin_theta.scale_bits()) < sin_theta)) {
        throw std::domain_error("generator_sum: theta outside (0, pi): sin(theta) <= 0");
    }
    if (!(cos_theta.abs() < FixedPoint::one(cos_theta.scale_bits()))) {
        throw std::domain_error("generator_sum: |cos(theta)| >= 1");
    }
    long w = ctx.working_bits();
    if (w < sin_theta.scale_bits()) w = sin_theta.scale_bits();
    return generator_core(sin_theta.rescaled(w), cos_theta.rescaled(w), b, nullptr);
}

std::vector<FixedPoint> sine_expansion_terms(const FixedPoint& x, unsigned n_max,
                                             const PrecisionContext& ctx) {
    if (x.is_zero()) {
        return std::vector<FixedPoint>(n_max, FixedPoint::zero(ctx.scale_bits));
    }
    long w = ctx.working_bits();
    if (w < x.scale_bits()) w = x.scale_bits();
    const bool negate = x.is_negative();
    const ThetaFrame frame = theta_frame(x.abs(), w);
    std::vector<FixedPoint> terms;
    terms.reserve(n_max);
    Budget b{FixedPoint::zero(ctx.scale_bits), static_cast<long>(n_max), ctx.scale_bits};
    generator_core(frame.sin_theta, frame.cos_theta, b, &terms);
    if (negate) {
        for (FixedPoint& t : terms) t = -t;
    }
    return terms;
}

}  // namespace arcpi
