#include <CLI11.hpp>

#include "arcpi/convergence.hpp"
#include "arcpi/derivative.hpp"
#include "arcpi/digit_extract.hpp"
#include "arcpi/expansions.hpp"
#include "arcpi/pi_formulas.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace arcpi;

struct GlobalOpts {
    long precision = 256;
    std::string spec_file;
};

std::string trim_zeros(std::string s) {
    if (s.find('.') == std::string::npos) return s;
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

// Scale able to resolve `digits` decimal digits plus bound slack, never below
// the configured precision.
long scale_for_digits(long digits, long precision) {
    const long needed = (digits + 4) * 3322 / 1000 + 48;
    return needed > precision ? needed : precision;
}

FixedPoint tol_for_digits(long digits, long scale) {
    return FixedPoint::from_rational(1, ipow(10, static_cast<unsigned long>(digits) + 2), scale);
}

SeriesSpec load_spec(const GlobalOpts& g, const std::string& name) {
    if (!g.spec_file.empty()) {
        std::ifstream in(g.spec_file);
        if (!in) throw std::invalid_argument("cannot open spec file: " + g.spec_file);
        std::stringstream buf;
        buf << in.rdbuf();
        SeriesSpec user = SeriesSpec::from_json(buf.str());
        if (user.name == name) return user;
    }
    return builtin_spec(name);
}

std::vector<long> parse_n_range(const std::string& text) {
    long start = 0, stop = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' || !in.eof()) {
        throw std::invalid_argument("--n wants START:STOP:STEP, got '" + text + "'");
    }
    if (start < 0 || stop < start || step < 1) {
        throw std::invalid_argument("--n range must satisfy 0 <= START <= STOP, STEP >= 1");
    }
    std::vector<long> out;
    for (long n = start; n <= stop; n += step) out.push_back(n);
    return out;
}

int run_derive(const GlobalOpts& g, long n, const std::string& xs, bool check, long digits) {
    if (n < 1) throw std::invalid_argument("derivative order must be >= 1");
    if (digits < 1) throw std::invalid_argument("--digits must be >= 1");
    const PrecisionContext ctx(scale_for_digits(digits, g.precision));
    const FixedPoint x = FixedPoint::from_decimal_string(xs, ctx.scale_bits);
    const FixedPoint v = closed_form_derivative(static_cast<unsigned>(n), x, ctx);
    if (!check) {
        std::cout << v.to_decimal_string(digits) << "\n";
        return 0;
    }
    const FixedPoint o = oracle_eval(static_cast<unsigned>(n), x, ctx);
    std::cout << "closed_form: " << v.to_decimal_string(digits) << "\n";
    std::cout << "oracle:      " << o.to_decimal_string(digits) << "\n";
    std::cout << "|difference|: " << trim_zeros((v - o).abs().to_decimal_string(digits)) << "\n";
    return 0;
}

int run_arctan(const GlobalOpts& g, const std::string& xs, const std::string& method,
               long digits) {
    if (digits < 1) throw std::invalid_argument("--digits must be >= 1");
    const PrecisionContext ctx(scale_for_digits(digits, g.precision));
    const FixedPoint x = FixedPoint::from_decimal_string(xs, ctx.scale_bits);
    const FixedPoint tol = tol_for_digits(digits, ctx.scale_bits);
    const long cap = 2000000;

    SeriesEvaluation e;
    if (method == "maclaurin") {
        e = maclaurin_arctan(x, tol, cap, ctx);
    } else if (method == "sine") {
        e = sine_expansion_arctan(x, tol, cap, ctx);
    } else {   // euler and auto
        e = euler_arctan(x, tol, cap, ctx);
    }
    if (!e.converged) {
        throw std::runtime_error("series needs more than " + std::to_string(cap) +
                                 " terms for " + std::to_string(digits) +
                                 " digits; request fewer digits");
    }
    std::cout << "arctan(" << xs << ") = " << trim_zeros(e.value.to_decimal_string(digits))
              << "\n";
    std::cout << "terms_used: " << e.terms_used << "\n";
    std::string bound = trim_zeros(e.tail_bound.to_decimal_string(digits + 2));
    if (bound == "0" && !e.tail_bound.is_zero()) {
        bound = "< 1e-" + std::to_string(digits + 2);
    }
    std::cout << "tail_bound: " << bound << "\n";
    return 0;
}

int run_pi(const GlobalOpts& g, const std::string& name, std::optional<long> terms,
           std::optional<long> digits) {
    const SeriesSpec spec = load_spec(g, name);
    if (terms && digits) {
        throw std::invalid_argument("choose one of --terms / --digits");
    }
    if (terms) {
        if (*terms < 0) throw std::invalid_argument("--terms must be >= 0");
        const PrecisionContext ctx(scale_for_digits(40, g.precision));
        const SeriesEvaluation e = partial_sum(spec, *terms, ctx);
        std::cout << trim_zeros(e.value.to_decimal_string(40)) << "\n";
        return 0;
    }
    const long want = digits.value_or(30);
    if (want < 1) throw std::invalid_argument("--digits must be >= 1");
    const PrecisionContext ctx(scale_for_digits(want, g.precision));
    const FixedPoint tol = tol_for_digits(want, ctx.scale_bits);
    long n = 8;
    SeriesEvaluation e = partial_sum(spec, n, ctx);
    while (tol < e.tail_bound) {
        n *= 2;
        if (n > (1L << 22)) {
            throw std::runtime_error("tail bound will not certify " + std::to_string(want) +
                                     " digits at a sane term count");
        }
        e = partial_sum(spec, n, ctx);
    }
    std::cout << e.value.to_decimal_string(want) << "\n";
    return 0;
}

int run_digits(const GlobalOpts& g, const std::string& name, long position, int count) {
    const SeriesSpec spec = load_spec(g, name);
    const std::string ds = extract_digits(DigitRequest{spec, position, count});
    std::cout << spec.name << " base " << spec.integer_base() << " digits [" << position << ", "
              << (position + count) << "): " << ds << "\n";
    return 0;
}

int run_bench_cmd(const GlobalOpts& g, std::vector<std::string> names, const std::string& nrange,
                  const std::string& format, const std::string& out_path) {
    if (names.size() == 1 && names[0] == "all") names = registered_series();
    const std::vector<long> n_list = parse_n_range(nrange);
    const PrecisionContext ctx(g.precision);

    std::vector<ConvergenceReport> reports;
    reports.reserve(names.size());
    for (const std::string& name : names) reports.push_back(arcpi::run_bench(name, n_list, ctx));

    std::string doc;
    if (format == "csv") {
        for (size_t i = 0; i < reports.size(); ++i) {
            std::string part = emit_report(reports[i], ReportFormat::Csv);
            if (i > 0) part.erase(0, part.find('\n') + 1);   // keep one header
            doc += part;
        }
    } else if (format == "json") {
        doc = "[";
        for (size_t i = 0; i < reports.size(); ++i) {
            if (i > 0) doc += ",";
            doc += emit_report(reports[i], ReportFormat::Json);
        }
        doc += "]";
    } else {   // text
        for (const ConvergenceReport& r : reports) {
            doc += "series " + r.series_name + ": fitted_rate " + std::to_string(r.fitted_rate);
            if (r.theoretical_rate) {
                doc += " (theoretical " + std::to_string(*r.theoretical_rate) + ")";
            }
            doc += "\n";
            for (const ConvergenceSample& s : r.samples) {
                doc += "  N=" + std::to_string(s.terms) +
                       " digits=" + std::to_string(s.neg_log10_error) + "\n";
            }
        }
    }
    if (out_path.empty()) {
        std::cout << doc;
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        out << doc;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"arbitrary-precision arctan derivatives, series, and digit extraction"};
    app.require_subcommand(1);

    GlobalOpts g;
    if (const char* env = std::getenv("ARCPI_PRECISION_BITS")) {
        try {
            g.precision = std::stol(env);
        } catch (...) {
            std::cerr << "error: ARCPI_PRECISION_BITS must be an integer\n";
            return 1;
        }
    }
    app.add_option("--precision", g.precision,
                   "working precision in bits, >= 64 (env: ARCPI_PRECISION_BITS)")
        ->capture_default_str();
    app.add_option("--spec-file", g.spec_file, "JSON file holding one series spec");

    auto* derive = app.add_subcommand("derive", "n-th derivative of arctan at x, closed form");
    long d_n = 1;
    std::string d_x;
    bool d_check = false;
    long d_digits = 30;
    derive->add_option("n", d_n, "derivative order, >= 1")->required();
    derive->add_option("x", d_x, "evaluation point, decimal")->required();
    derive->add_flag("--check", d_check, "also run the polynomial oracle and print the difference");
    derive->add_option("--digits", d_digits, "fractional digits to print")->capture_default_str();

    auto* arctan = app.add_subcommand("arctan", "arctan(x) by a chosen series");
    std::string a_x;
    std::string a_method = "auto";
    long a_digits = 30;
    arctan->add_option("x", a_x, "argument, decimal")->required();
    arctan->add_option("--method", a_method, "maclaurin | euler | sine | auto")
        ->check(CLI::IsMember({"maclaurin", "euler", "sine", "auto"}))
        ->capture_default_str();
    arctan->add_option("--digits", a_digits, "decimal digits to certify")->capture_default_str();

    auto* pi = app.add_subcommand("pi", "evaluate a series spec toward its constant");
    std::string p_name;
    std::optional<long> p_terms;
    std::optional<long> p_digits;
    pi->add_option("name", p_name, "spec name (see `bench all` or built-ins)")->required();
    pi->add_option("--terms", p_terms, "print the partial sum with last block index N");
    pi->add_option("--digits", p_digits, "certify this many decimal digits (default 30)");

    auto* digits = app.add_subcommand("digits", "isolated base-b digits of a spec's constant");
    std::string dg_name;
    long dg_pos = 1;
    int dg_count = 1;
    digits->add_option("name", dg_name, "spec name with an integer base")->required();
    digits->add_option("position", dg_pos, "first fractional digit position, 1-based")->required();
    digits->add_option("count", dg_count, "number of digits, 1..16")->required();

    auto* bench = app.add_subcommand("bench", "convergence-rate reports");
    std::vector<std::string> b_names;
    std::string b_range = "10:100:10";
    std::string b_format = "text";
    std::string b_out;
    bench->add_option("series", b_names, "spec names, method@x entries, or `all`")->required();
    bench->add_option("--n", b_range, "term grid START:STOP:STEP")->capture_default_str();
    bench->add_option("--format", b_format, "text | csv | json")
        ->check(CLI::IsMember({"text", "csv", "json"}))
        ->capture_default_str();
    bench->add_option("--out", b_out, "write the report here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (g.precision < 64) {
            throw std::invalid_argument("precision must be >= 64 bits");
        }
        if (derive->parsed()) return run_derive(g, d_n, d_x, d_check, d_digits);
        if (arctan->parsed()) return run_arctan(g, a_x, a_method, a_digits);
        if (pi->parsed()) return run_pi(g, p_name, p_terms, p_digits);
        if (digits->parsed()) return run_digits(g, dg_name, dg_pos, dg_count);
        if (bench->parsed()) return run_bench_cmd(g, b_names, b_range, b_format, b_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
