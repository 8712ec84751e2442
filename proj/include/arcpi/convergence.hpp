#pragma once

#include "arcpi/pi_formulas.hpp"

#include <optional>
#include <string>
#include <vector>

namespace arcpi {

struct ConvergenceSample {
    long terms = 0;               // N: last block index for specs, term count for evaluators
    std::string abs_error;        // decimal, truncated
    double neg_log10_error = 0;   // digits correct at this N
};

struct ConvergenceReport {
    std::string series_name;
    std::vector<ConvergenceSample> samples;   // strictly increasing in terms
    double fitted_rate = 0.0;                 // digits gained per term, tail-half slope
    std::optional<double> theoretical_rate;   // absent where no closed rate applies
};

/// Representative benchmark targets: the four built-in specs plus arctan
/// evaluators in "method@x" form. run_bench itself accepts any builtin spec
/// name and any "maclaurin|euler|sine@<decimal>".
std::vector<std::string> registered_series();

/// Evaluates the named series at each N, measuring |value - reference| with
/// the reference computed 64 bits above working precision; fits the
/// digits-per-term slope over the largest half of N_list by least squares.
ConvergenceReport run_bench(const std::string& series_name, const std::vector<long>& n_list,
                            const PrecisionContext& ctx);

enum class ReportFormat { Csv, Json };

/// CSV columns: series,N,abs_error,neg_log10_error. JSON mirrors the struct
/// with deterministic field order and round-trips through report_from_json.
std::string emit_report(const ConvergenceReport& report, ReportFormat format);
ConvergenceReport report_from_json(const std::string& text);

}  // namespace arcpi
