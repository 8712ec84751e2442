#pragma once

#include "arcpi/bignum.hpp"
#include "arcpi/expansions.hpp"

#include <string>
#include <vector>

namespace arcpi {

enum class TargetConstant { Pi, PiSqrt3 };

/// One summand a/(m*n + c) inside a series block.
struct SeriesTerm {
    long long numerator = 0;   // a, nonzero
    long long offset = 0;      // c, positive, strictly increasing across terms
};

/// Data form of a BBP-style series:
///   prefactor * sum_{n>=0} (+-1)^n r^n sum_j a_j / (m*n + c_j).
/// The sign alternation is a flag, not a negative base, so integer_base()
/// stays meaningful for digit extraction.
struct SeriesSpec {
    std::string name;
    long long prefactor_num = 1;
    long long prefactor_den = 1;
    bool sign_alternates = false;
    long long ratio_num = 1;    // r = ratio_num/ratio_den, 0 < r < 1
    long long ratio_den = 2;
    long long period = 1;       // m
    std::vector<SeriesTerm> terms;
    TargetConstant target = TargetConstant::Pi;

    /// True iff r = 1/b for an integer b, the shape digit extraction needs.
    bool has_integer_base() const { return ratio_num == 1; }
    long long integer_base() const;   // throws std::domain_error otherwise

    /// Structural checks; throws std::invalid_argument describing the defect.
    void validate() const;

    std::string to_json() const;
    static SeriesSpec from_json(const std::string& text);
};

/// The four built-in specs: PI_BASE4, PISQRT3_BASE8, PISQRT3_2764, BBP16.
const std::vector<SeriesSpec>& builtin_specs();
/// Lookup by name; unknown names throw listing the built-ins.
const SeriesSpec& builtin_spec(const std::string& name);

/// prefactor * sum_{n=0}^{N} (+-1)^n r^n sum_j a_j/(m n + c_j). Each block is
/// formed as one exact rational and lands in the accumulator with a single
/// truncating division. tail_bound is the exact geometric majorant
/// prefactor * r^(N+1) * (sum_j |a_j| / c_min) / (1 - r), rounded away.
SeriesEvaluation partial_sum(const SeriesSpec& spec, long n_last, const PrecisionContext& ctx);

/// Exact value of sin(n pi/denominator): (num/den) times a surd unit.
enum class SurdKind { One, InvSqrt2, Sqrt3Over2 };

struct SinCaseValue {
    int num = 0;
    int den = 1;
    SurdKind surd = SurdKind::One;

    bool is_zero() const { return num == 0; }
    FixedPoint to_fixed(long scale_bits) const;
};

/// Residue table of sin(n pi/denominator), indexed by n mod (2*denominator).
struct SinCaseTable {
    int denominator = 4;                 // one of 4, 3, 6
    std::vector<SinCaseValue> values;    // size 2*denominator, index n mod size

    const SinCaseValue& at(long n) const;
};

const SinCaseTable& sin_case_table(int denominator);
SinCaseValue sin_case(int denominator, long n);

enum class ThetaChoice { PiOver4, PiOver3, PiOver6 };

struct RegroupResult {
    bool ok = false;
    FixedPoint max_deviation;
};

/// Machine check of the regrouping derivations: for each b <= blocks, the
/// generator sum truncated at a full sign-period boundary, scaled to the
/// target constant, must match the partial sum of the derived spec:
///   PiOver4: 4 * G(pi/4) over 8b terms  vs PI_BASE4     at N = 2b-1
///   PiOver3: 6*sqrt(3) * G(pi/3), 6b    vs PISQRT3_BASE8 at N = 2b-1
///   PiOver6: 3*sqrt(3) * G(pi/6), 12b   vs PISQRT3_2764  at N = 2b-1
/// ok iff the max deviation is <= 2^(8 - scale_bits).
RegroupResult regroup_check(ThetaChoice choice, long blocks, const PrecisionContext& ctx);

/// Independent reference: pi = 16 arctan(1/5) - 4 arctan(1/239), both factors
/// by euler_arctan at 16 extra bits. Correct to scale_bits - 16 with room to
/// spare; tail_bound combines both arctan bounds.
SeriesEvaluation reference_pi_eval(const PrecisionContext& ctx);
FixedPoint reference_pi(const PrecisionContext& ctx);

}  // namespace arcpi
