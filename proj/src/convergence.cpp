#include "arcpi/convergence.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace arcpi {

namespace {

constexpr double kLog10Of2 = 0.30102999566398119521;

struct ArctanTarget {
    std::string method;   // maclaurin | euler | sine
    FixedPoint x;
};

// "method@x" or empty if the name has no '@'.
std::optional<ArctanTarget> parse_arctan_name(const std::string& name, long x_scale_bits) {
    const auto at = name.find('@');
    if (at == std::string::npos) return std::nullopt;
    const std::string method = name.substr(0, at);
    if (method != "maclaurin" && method != "euler" && method != "sine") {
        throw std::invalid_argument("run_bench: unknown evaluator '" + method +
                                    "' (want maclaurin, euler or sine)");
    }
    return ArctanTarget{method, FixedPoint::from_decimal_string(name.substr(at + 1), x_scale_bits)};
}

SeriesEvaluation eval_arctan(const ArctanTarget& t, const FixedPoint& tol, long max_terms,
                             const PrecisionContext& ctx) {
    if (t.method == "maclaurin") return maclaurin_arctan(t.x, tol, max_terms, ctx);
    if (t.method == "euler") return euler_arctan(t.x, tol, max_terms, ctx);
    return sine_expansion_arctan(t.x, tol, max_terms, ctx);
}

// Term cap covering the slow-ratio regimes (euler/sine at large |x|,
// maclaurin near 1) with a wide margin.
long reference_term_cap(const FixedPoint& x, long bits) {
    const BigInt ix = shift_right_trunc(x.abs().mantissa(), x.scale_bits()) + 1;
    const BigInt cap = (BigInt(bits) + 64) * (2 + 4 * ix * ix);
    return cap > 100000000 ? 100000000L : cap.convert_to<long>();
}

double fit_tail_slope(const std::vector<ConvergenceSample>& samples) {
    const size_t n = samples.size();
    if (n < 2) return 0.0;
    const size_t start = n - (n + 1) / 2;   // largest half of the N list
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double count = 0;
    for (size_t i = start; i < n; ++i) {
        const double xi = static_cast<double>(samples[i].terms);
        const double yi = samples[i].neg_log10_error;
        sx += xi;
        sy += yi;
        sxx += xi * xi;
        sxy += xi * yi;
        count += 1;
    }
    const double denom = count * sxx - sx * sx;
    if (denom == 0) return 0.0;
    return (count * sxy - sx * sy) / denom;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace

std::vector<std::string> registered_series() {
    std::vector<std::string> names;
    for (const SeriesSpec& s : builtin_specs()) names.push_back(s.name);
    names.push_back("euler@1");
    names.push_back("maclaurin@0.5");
    names.push_back("sine@1");
    names.push_back("sine@2");
    return names;
}

ConvergenceReport run_bench(const std::string& series_name, const std::vector<long>& n_list,
                            const PrecisionContext& ctx) {
    if (n_list.empty()) throw std::invalid_argument("run_bench: empty N list");
    long prev = -1;
    for (long n : n_list) {
        if (n < 0 || n <= prev) {
            throw std::invalid_argument("run_bench: N list must be non-negative and strictly increasing");
        }
        prev = n;
    }

    const PrecisionContext ref_ctx(ctx.working_bits() + 64, 32);
    const long ref_scale = ref_ctx.scale_bits;

    const std::optional<ArctanTarget> arctan = parse_arctan_name(series_name, ref_scale);
    const SeriesSpec* spec = nullptr;
    FixedPoint reference = FixedPoint::zero(ref_scale);
    ConvergenceReport report;
    report.series_name = series_name;

    if (arctan) {
        const FixedPoint tol(BigInt(64) * ref_scale, ref_scale);
        const SeriesEvaluation ref_eval =
            euler_arctan(arctan->x, tol, reference_term_cap(arctan->x, ref_scale), ref_ctx);
        reference = ref_eval.value;
        if (arctan->method == "euler") {
            const double xd = arctan->x.to_double_approx();
            if (xd != 0.0) {
                report.theoretical_rate = std::log10((1.0 + xd * xd) / (xd * xd));
            }
        }
    } else {
        spec = &builtin_spec(series_name);
        reference = reference_pi(ref_ctx);
        if (spec->target == TargetConstant::PiSqrt3) {
            reference = mul(reference, sqrt_int(3, ref_scale));
        }
        report.theoretical_rate =
            std::log10(static_cast<double>(spec->ratio_den) / static_cast<double>(spec->ratio_num));
    }

    const FixedPoint tol_never = FixedPoint::zero(ctx.scale_bits);
    for (long n : n_list) {
        const FixedPoint value = arctan
            ? eval_arctan(*arctan, tol_never, n, ctx).value
            : partial_sum(*spec, n, ctx).value;
        const FixedPoint err = (reference - value.rescaled(ref_scale)).abs();

        ConvergenceSample sample;
        sample.terms = n;
        if (err.is_zero()) {
            // below the reference's own resolution; report the floor
            sample.neg_log10_error = static_cast<double>(ref_scale) * kLog10Of2;
        } else {
            sample.neg_log10_error = -err.log2_approx() * kLog10Of2;
        }
        long digits = static_cast<long>(std::ceil(sample.neg_log10_error)) + 12;
        if (digits < 6) digits = 6;
        sample.abs_error = err.to_decimal_string(digits);
        report.samples.push_back(std::move(sample));
    }
    report.fitted_rate = fit_tail_slope(report.samples);
    return report;
}

std::string emit_report(const ConvergenceReport& report, ReportFormat format) {
    if (format == ReportFormat::Csv) {
        std::string out = "series,N,abs_error,neg_log10_error\n";
        for (const ConvergenceSample& s : report.samples) {
            out += report.series_name;
            out += ',';
            out += std::to_string(s.terms);
            out += ',';
            out += s.abs_error;
            out += ',';
            out += format_double(s.neg_log10_error);
            out += '\n';
        }
        return out;
    }
    nlohmann::ordered_json j;
    j["series_name"] = report.series_name;
    nlohmann::ordered_json samples = nlohmann::ordered_json::array();
    for (const ConvergenceSample& s : report.samples) {
        nlohmann::ordered_json row;
        row["N"] = s.terms;
        row["abs_error"] = s.abs_error;
        row["neg_log10_error"] = s.neg_log10_error;
        samples.push_back(std::move(row));
    }
    j["samples"] = std::move(samples);
    j["fitted_rate"] = report.fitted_rate;
    if (report.theoretical_rate) j["theoretical_rate"] = *report.theoretical_rate;
    return j.dump();
}

ConvergenceReport report_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("report JSON does not parse: ") + e.what());
    }
    ConvergenceReport report;
    try {
        report.series_name = j.at("series_name").get<std::string>();
        for (const auto& row : j.at("samples")) {
            ConvergenceSample s;
            s.terms = row.at("N").get<long>();
            s.abs_error = row.at("abs_error").get<std::string>();
            s.neg_log10_error = row.at("neg_log10_error").get<double>();
            report.samples.push_back(std::move(s));
        }
        report.fitted_rate = j.at("fitted_rate").get<double>();
        if (j.contains("theoretical_rate")) {
            report.theoretical_rate = j["theoretical_rate"].get<double>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("report JSON: ") + e.what());
    }
    return report;
}

}  // namespace arcpi
