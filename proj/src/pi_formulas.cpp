#include "arcpi/pi_formulas.hpp"

#include <json.hpp>

#include <stdexcept>
#include <utility>

namespace arcpi {

long long SeriesSpec::integer_base() const {
    if (!has_integer_base()) {
        throw std::domain_error("spec '" + name + "' has ratio " + std::to_string(ratio_num) +
                                "/" + std::to_string(ratio_den) +
                                ": not a BBP-type formula, no integer base");
    }
    return ratio_den;
}

void SeriesSpec::validate() const {
    auto fail = [this](const std::string& what) {
        throw std::invalid_argument("SeriesSpec '" + name + "': " + what);
    };
    if (name.empty()) throw std::invalid_argument("SeriesSpec: empty name");
    if (prefactor_num == 0) fail("prefactor numerator is zero");
    if (prefactor_den < 1) fail("prefactor denominator must be >= 1");
    if (ratio_num < 1 || ratio_den < 1) fail("ratio parts must be positive");
    if (ratio_num >= ratio_den) fail("ratio must be < 1 for convergence");
    if (period < 1) fail("period must be >= 1");
    if (terms.empty()) fail("no terms");
    long long prev = 0;
    for (const SeriesTerm& t : terms) {
        if (t.numerator == 0) fail("zero term numerator");
        if (t.offset <= prev) fail("offsets must be positive and strictly increasing");
        prev = t.offset;
    }
}

namespace {

const char* target_name(TargetConstant t) {
    return t == TargetConstant::Pi ? "PI" : "PI_SQRT3";
}

TargetConstant target_from_name(const std::string& s) {
    if (s == "PI") return TargetConstant::Pi;
    if (s == "PI_SQRT3") return TargetConstant::PiSqrt3;
    throw std::invalid_argument("SeriesSpec: unknown target '" + s + "' (want PI or PI_SQRT3)");
}

}  // namespace

std::string SeriesSpec::to_json() const {
    nlohmann::ordered_json j;
    j["name"] = name;
    j["prefactor"] = {prefactor_num, prefactor_den};
    j["sign_alternates"] = sign_alternates;
    j["ratio"] = {ratio_num, ratio_den};
    j["period"] = period;
    nlohmann::ordered_json terms_j = nlohmann::ordered_json::array();
    for (const SeriesTerm& t : terms) terms_j.push_back({t.numerator, t.offset});
    j["terms"] = std::move(terms_j);
    j["target"] = target_name(target);
    return j.dump();
}

SeriesSpec SeriesSpec::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("SeriesSpec JSON does not parse: ") + e.what());
    }
    auto pair_of = [&j](const char* key) -> std::pair<long long, long long> {
        if (!j.contains(key) || !j[key].is_array() || j[key].size() != 2) {
            throw std::invalid_argument(std::string("SeriesSpec JSON: '") + key +
                                        "' must be a [num, den] pair");
        }
        return {j[key][0].get<long long>(), j[key][1].get<long long>()};
    };
    SeriesSpec spec;
    try {
        spec.name = j.at("name").get<std::string>();
        std::tie(spec.prefactor_num, spec.prefactor_den) = pair_of("prefactor");
        spec.sign_alternates = j.at("sign_alternates").get<bool>();
        std::tie(spec.ratio_num, spec.ratio_den) = pair_of("ratio");
        spec.period = j.at("period").get<long long>();
        if (!j.at("terms").is_array()) throw std::invalid_argument("'terms' must be an array");
        for (const auto& t : j.at("terms")) {
            if (!t.is_array() || t.size() != 2) {
                throw std::invalid_argument("each term must be an [a, c] pair");
            }
            spec.terms.push_back(SeriesTerm{t[0].get<long long>(), t[1].get<long long>()});
        }
        spec.target = target_from_name(j.at("target").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("SeriesSpec JSON: ") + e.what());
    }
    spec.validate();
    return spec;
}

const std::vector<SeriesSpec>& builtin_specs() {
    static const std::vector<SeriesSpec> specs = [] {
        std::vector<SeriesSpec> v;
        v.push_back(SeriesSpec{"PI_BASE4", 1, 1, true, 1, 4, 4,
                               {{2, 1}, {2, 2}, {1, 3}}, TargetConstant::Pi});
        v.push_back(SeriesSpec{"PISQRT3_BASE8", 9, 8, true, 1, 8, 3,
                               {{4, 1}, {2, 2}}, TargetConstant::PiSqrt3});
        v.push_back(SeriesSpec{"PISQRT3_2764", 9, 64, true, 27, 64, 6,
                               {{16, 1}, {24, 2}, {24, 3}, {18, 4}, {9, 5}},
                               TargetConstant::PiSqrt3});
        v.push_back(SeriesSpec{"BBP16", 1, 1, false, 1, 16, 8,
                               {{4, 1}, {-2, 4}, {-1, 5}, {-1, 6}}, TargetConstant::Pi});
        for (const SeriesSpec& s : v) s.validate();
        return v;
    }();
    return specs;
}

const SeriesSpec& builtin_spec(const std::string& name) {
    for (const SeriesSpec& s : builtin_specs()) {
        if (s.name == name) return s;
    }
    std::string known;
    for (const SeriesSpec& s : builtin_specs()) {
        if (!known.empty()) known += ", ";
        known += s.name;
    }
    throw std::invalid_argument("unknown spec '" + name + "'; built-ins: " + known);
}

SeriesEvaluation partial_sum(const SeriesSpec& spec, long n_last, const PrecisionContext& ctx) {
    spec.validate();
    if (n_last < 0) throw std::invalid_argument("partial_sum: N must be >= 0");
    const long s = ctx.scale_bits;
    const long w = ctx.working_bits();

    BigInt acc = 0;                    // mantissa at scale w
    BigInt rnum_pow = 1, rden_pow = 1; // r^n
    for (long n = 0; n <= n_last; ++n) {
        BigInt num = 0, den = 1;       // inner block as one exact rational
        for (const SeriesTerm& t : spec.terms) {
            const BigInt d = BigInt(spec.period) * n + t.offset;
            num = num * d + BigInt(t.numerator) * den;
            den *= d;
        }
        if (spec.sign_alternates && (n & 1)) num = -num;
        acc += div_trunc(shift_left(num * rnum_pow, w), den * rden_pow);
        rnum_pow *= spec.ratio_num;
        rden_pow *= spec.ratio_den;
    }
    const FixedPoint value(div_trunc(acc * spec.prefactor_num, BigInt(spec.prefactor_den)), w);

    // Exact geometric tail majorant; rnum_pow/rden_pow is now r^(N+1).
    BigInt sum_abs = 0;
    for (const SeriesTerm& t : spec.terms) {
        sum_abs += t.numerator < 0 ? BigInt(-t.numerator) : BigInt(t.numerator);
    }
    const long long c_min = spec.terms.front().offset;
    const BigInt pf_abs = spec.prefactor_num < 0 ? BigInt(-spec.prefactor_num)
                                                 : BigInt(spec.prefactor_num);
    const BigInt tail_num = pf_abs * rnum_pow * sum_abs * spec.ratio_den;
    const BigInt tail_den = BigInt(spec.prefactor_den) * rden_pow * c_min *
                            BigInt(spec.ratio_den - spec.ratio_num);

    SeriesEvaluation out;
    out.value = value.rescaled(s);
    out.terms_used = n_last + 1;
    out.tail_bound =
        detail::publish_tail_bound(FixedPoint::from_rational_away(tail_num, tail_den, s), s);
    out.converged = false;  // term-count driven; no tolerance was requested
    return out;
}

FixedPoint SinCaseValue::to_fixed(long scale_bits) const {
    FixedPoint unit = FixedPoint::one(scale_bits);
    switch (surd) {
        case SurdKind::One: break;
        case SurdKind::InvSqrt2: unit = sqrt_int(2, scale_bits).div_int(2); break;
        case SurdKind::Sqrt3Over2: unit = sqrt_int(3, scale_bits).div_int(2); break;
    }
    return unit.mul_int(num).div_int(den);
}

const SinCaseValue& SinCaseTable::at(long n) const {
    const long size = static_cast<long>(values.size());
    long idx = n % size;
    if (idx < 0) idx += size;
    return values[static_cast<size_t>(idx)];
}

const SinCaseTable& sin_case_table(int denominator) {
    static const SinCaseTable q4 = [] {
        SinCaseTable t;
        t.denominator = 4;
        const SinCaseValue z{0, 1, SurdKind::One};
        const SinCaseValue h{1, 1, SurdKind::InvSqrt2};
        const SinCaseValue nh{-1, 1, SurdKind::InvSqrt2};
        t.values = {z, h, {1, 1, SurdKind::One}, h, z, nh, {-1, 1, SurdKind::One}, nh};
        return t;
    }();
    static const SinCaseTable q3 = [] {
        SinCaseTable t;
        t.denominator = 3;
        const SinCaseValue z{0, 1, SurdKind::One};
        const SinCaseValue p{1, 1, SurdKind::Sqrt3Over2};
        const SinCaseValue m{-1, 1, SurdKind::Sqrt3Over2};
        t.values = {z, p, p, z, m, m};
        return t;
    }();
    static const SinCaseTable q6 = [] {
        SinCaseTable t;
        t.denominator = 6;
        const SinCaseValue z{0, 1, SurdKind::One};
        const SinCaseValue half{1, 2, SurdKind::One};
        const SinCaseValue s32{1, 1, SurdKind::Sqrt3Over2};
        const SinCaseValue one{1, 1, SurdKind::One};
        t.values = {z,    half,        s32,         one,         s32,         half,
                    z,    {-1, 2, SurdKind::One}, {-1, 1, SurdKind::Sqrt3Over2},
                    {-1, 1, SurdKind::One}, {-1, 1, SurdKind::Sqrt3Over2}, {-1, 2, SurdKind::One}};
        return t;
    }();
    switch (denominator) {
        case 4: return q4;
        case 3: return q3;
        case 6: return q6;
        default:
            throw std::invalid_argument("sin_case: denominator must be 4, 3, or 6 (got " +
                                        std::to_string(denominator) + ")");
    }
}

SinCaseValue sin_case(int denominator, long n) {
    return sin_case_table(denominator).at(n);
}

RegroupResult regroup_check(ThetaChoice choice, long blocks, const PrecisionContext& ctx) {
    if (blocks < 1) throw std::invalid_argument("regroup_check: blocks must be >= 1");
    const long s = ctx.scale_bits;
    const long w = ctx.working_bits();

    FixedPoint sin_t = FixedPoint::zero(w);
    FixedPoint cos_t = FixedPoint::zero(w);
    const SeriesSpec* spec = nullptr;
    long per_block = 0;
    int scale_int = 1;
    bool times_sqrt3 = false;
    switch (choice) {
        case ThetaChoice::PiOver4: {
            const FixedPoint h = sqrt_int(2, w).div_int(2);
            sin_t = h;
            cos_t = h;
            spec = &builtin_spec("PI_BASE4");
            per_block = 8;   // sign period of sin(n pi/4)
            scale_int = 4;   // 4 (pi/2 - pi/4) = pi
            break;
        }
        case ThetaChoice::PiOver3:
            sin_t = sqrt_int(3, w).div_int(2);
            cos_t = FixedPoint::from_rational(1, 2, w);
            spec = &builtin_spec("PISQRT3_BASE8");
            per_block = 6;
            scale_int = 6;   // 6 sqrt(3) (pi/2 - pi/3) = pi sqrt(3)
            times_sqrt3 = true;
            break;
        case ThetaChoice::PiOver6:
            sin_t = FixedPoint::from_rational(1, 2, w);
            cos_t = sqrt_int(3, w).div_int(2);
            spec = &builtin_spec("PISQRT3_2764");
            per_block = 12;
            scale_int = 3;   // 3 sqrt(3) (pi/2 - pi/6) = pi sqrt(3)
            times_sqrt3 = true;
            break;
    }

    const FixedPoint sqrt3_s = sqrt_int(3, s);
    const FixedPoint tol_never = FixedPoint::zero(s);
    FixedPoint max_dev = FixedPoint::zero(s);
    for (long b = 1; b <= blocks; ++b) {
        const SeriesEvaluation gen = generator_sum(sin_t, cos_t, tol_never, per_block * b, ctx);
        FixedPoint lhs = gen.value.mul_int(scale_int);
        if (times_sqrt3) lhs = mul(lhs, sqrt3_s);
        const FixedPoint rhs = partial_sum(*spec, 2 * b - 1, ctx).value;
        const FixedPoint dev = (lhs - rhs).abs();
        if (max_dev < dev) max_dev = dev;
    }
    const FixedPoint tolerance(pow2(8), s);   // 2^(8 - scale)
    return RegroupResult{!(tolerance < max_dev), max_dev};
}

SeriesEvaluation reference_pi_eval(const PrecisionContext& ctx) {
    const long s = ctx.scale_bits;
    const long w = ctx.working_bits() + 16;
    const PrecisionContext inner(w, 32);
    // Stop once the bound clears the per-term drift floor comfortably.
    const FixedPoint tol(BigInt(64) * w, w);
    const long cap = w;   // several times the terms either series needs

    const SeriesEvaluation a5 =
        euler_arctan(FixedPoint::from_rational(1, 5, w), tol, cap, inner);
    const SeriesEvaluation a239 =
        euler_arctan(FixedPoint::from_rational(1, 239, w), tol, cap, inner);

    SeriesEvaluation out;
    out.value = (a5.value.mul_int(16) - a239.value.mul_int(4)).rescaled(s);
    out.terms_used = a5.terms_used + a239.terms_used;
    const FixedPoint raw =
        a5.tail_bound.mul_int(16) + a239.tail_bound.mul_int(4) + FixedPoint(BigInt(64), w);
    out.tail_bound = detail::publish_tail_bound(raw, s);
    out.converged = a5.converged && a239.converged;
    return out;
}

FixedPoint reference_pi(const PrecisionContext& ctx) {
    return reference_pi_eval(ctx).value;
}

}  // namespace arcpi
