// Command-line front end: reproduction commands with CSV/JSON output.
//
// Exit codes: 0 on success (and certification passes), 1 when LHV
// certification fails, 2 on usage errors.

#include <algorithm>
#include <bit>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chbound/delta.hpp"
#include "chbound/efficiency.hpp"
#include "chbound/inequality.hpp"
#include "json.hpp"

using json = nlohmann::ordered_json;
using namespace chbound;

namespace {

constexpr int kFormatVersion = 1;

std::string format_number(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

json make_record(const std::string& command, json parameters, json results) {
    return json{{"command", command},
                {"parameters", std::move(parameters)},
                {"results", std::move(results)},
                {"version", kFormatVersion}};
}

// Record output: flat `results` object. CSV renders it as key,value rows.
void emit_record(const json& record, const std::string& format) {
    if (format == "json") {
        std::printf("%s\n", record.dump(2).c_str());
        return;
    }
    std::printf("key,value\n");
    for (const auto& [key, value] : record.at("results").items()) {
        if (value.is_number_float())
            std::printf("%s,%s\n", key.c_str(), format_number(value.get<double>()).c_str());
        else
            std::printf("%s,%s\n", key.c_str(), value.dump().c_str());
    }
}

// Table output: `results.rows` is an array of uniform objects.
void emit_table(const json& record, const std::string& format) {
    if (format == "json") {
        std::printf("%s\n", record.dump(2).c_str());
        return;
    }
    const json& rows = record.at("results").at("rows");
    if (rows.empty()) return;
    std::string header;
    for (const auto& [key, value] : rows.front().items()) {
        if (!header.empty()) header += ",";
        header += key;
    }
    std::printf("%s\n", header.c_str());
    for (const json& row : rows) {
        std::string line;
        for (const auto& [key, value] : row.items()) {
            if (!line.empty()) line += ",";
            if (value.is_number_float())
                line += format_number(value.get<double>());
            else
                line += value.dump();
        }
        std::printf("%s\n", line.c_str());
    }
}

std::vector<double> linspace(double lo, double hi, int steps) {
    std::vector<double> out;
    if (steps == 1) {
        out.push_back(lo);
        return out;
    }
    for (int i = 0; i < steps; ++i) out.push_back(lo + i * (hi - lo) / (steps - 1));
    return out;
}

int cmd_bounds(int n_max, const std::string& format) {
    json rows = json::array();
    for (int n = 2; n <= n_max; ++n)
        rows.push_back(json{{"n", n}, {"critical_eta", critical_eta_limit(n)}});
    emit_table(make_record("bounds", json{{"n_max", n_max}}, json{{"rows", rows}}), format);
    return 0;
}

int cmd_delta(int n, double epsilon, const std::string& format) {
    const DeltaParams params(n, epsilon);
    const StateVector state = build_delta(params);
    const double theta = theta_from_epsilon(epsilon);
    const double k = k_value(params);

    // Largest marginal with one site excluded (the K(1+eps^2) check) and the
    // largest probability of two or more B-measured sites firing.
    double k_scaled_measured = 0.0;
    for (int j = 0; j < n; ++j) {
        std::vector<Requirement> reqs(static_cast<std::size_t>(n), Requirement::One);
        reqs[static_cast<std::size_t>(j)] = Requirement::Any;
        const MeasurementContext all_a(
            std::vector<Setting>(static_cast<std::size_t>(n), Setting::A), theta);
        k_scaled_measured =
            std::max(k_scaled_measured, joint_probability(state, all_a, OutcomePattern(reqs)));
    }
    double max_multi_b = 0.0;
    const MeasurementContext all_b(
        std::vector<Setting>(static_cast<std::size_t>(n), Setting::B), theta);
    for (std::size_t mask = 0; mask < state.dimension(); ++mask) {
        if (std::popcount(mask) < 2) continue;
        std::vector<Requirement> reqs(static_cast<std::size_t>(n), Requirement::Any);
        for (int i = 0; i < n; ++i)
            if ((mask >> i) & 1u) reqs[static_cast<std::size_t>(i)] = Requirement::One;
        max_multi_b = std::max(max_multi_b, joint_probability(state, all_b, OutcomePattern(reqs)));
    }
    const BoundReport bound = critical_eta(params);

    json results{{"theta", theta},
                 {"k", k},
                 {"k_scaled_measured", k_scaled_measured},
                 {"k_scaled_expected", k * (1.0 + epsilon * epsilon)},
                 {"max_multi_b_probability", max_multi_b},
                 {"critical_eta", bound.critical_eta}};
    for (std::size_t idx = 0; idx < state.dimension(); ++idx)
        results["amp_" + std::to_string(idx)] = state.amplitude(idx).real();

    emit_record(make_record("delta", json{{"n", n}, {"epsilon", epsilon}}, std::move(results)),
                format);
    return 0;
}

int cmd_lhv(int n, const std::vector<double>& etas, const std::string& format) {
    const LhvReport report = lhv_certify(build_nsite_ch(n), etas);
    json results{{"max_residual", report.max_residual},
                 {"argmax_strategy", report.argmax_strategy},
                 {"argmax_eta", report.argmax_eta},
                 {"certified", report.certified}};
    emit_record(make_record("lhv", json{{"n", n}, {"eta", etas}}, std::move(results)), format);
    return report.certified ? 0 : 1;
}

int cmd_scan(int n, double eta_min, double eta_max, int steps, double tol,
             const std::string& format) {
    if (!(eta_min <= eta_max))
        throw Error("scan needs eta_min <= eta_max");
    json rows = json::array();
    for (double eta : linspace(eta_min, eta_max, steps)) {
        const ViolationReport result = violation_exists(n, eta, GridSpec{}, tol);
        rows.push_back(json{{"eta", eta},
                            {"best_theta", result.best_theta},
                            {"best_eigenvalue", result.best_eigenvalue},
                            {"violation", result.exists}});
    }
    emit_table(make_record("scan",
                           json{{"n", n},
                                {"eta_min", eta_min},
                                {"eta_max", eta_max},
                                {"steps", steps},
                                {"tol", tol}},
                           json{{"rows", rows}}),
               format);
    return 0;
}

int cmd_compare(int n, std::optional<double> eta_min, std::optional<double> eta_max,
                std::optional<int> steps, const std::string& format) {
    std::vector<double> etas;
    if (eta_min || eta_max || steps) {
        if (!(eta_min && eta_max && steps))
            throw Error("compare needs all of --eta-min/--eta-max/--steps or none");
        if (*steps < 1) throw Error("steps must be >= 1");
        etas = linspace(*eta_min, *eta_max, *steps);
    } else {
        // Default grid: critical + 0.02 up to 0.95 in steps of 0.01.
        const double start = critical_eta_limit(n) + 0.02;
        for (int i = 0;; ++i) {
            const double eta = start + 0.01 * i;
            if (eta > 0.95 + 1e-12) break;
            etas.push_back(eta);
        }
    }
    json rows = json::array();
    for (double eta : etas)
        rows.push_back(json{{"eta", eta}, {"ratio", delta_vs_eigen_ratio(n, eta)}});
    emit_table(make_record("compare",
                           json{{"n", n}, {"eta_grid_points", static_cast<int>(etas.size())}},
                           json{{"rows", rows}}),
               format);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Detector-efficiency analysis of n-site Clauser-Horne inequalities"};
    app.require_subcommand(1);
    app.fallthrough();  // --format / --tol may follow the subcommand name

    std::string format = "json";
    double tol = 1e-9;
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--tol", tol, "Eigenvalue boundary tolerance for violation classification")
        ->capture_default_str();

    auto* bounds = app.add_subcommand("bounds", "Critical efficiencies n/(2n-1) for n = 2..n_max");
    int bounds_n = 8;
    bounds->add_option("--n", bounds_n, "Largest site count")
        ->check(CLI::Range(2, 64))
        ->capture_default_str();

    auto* delta = app.add_subcommand("delta", "Probability structure of the state |delta(eps)>");
    int delta_n = 2;
    double delta_eps = 0.1;
    delta->add_option("--n", delta_n, "Number of sites")
        ->check(CLI::Range(2, 12))
        ->capture_default_str();
    delta->add_option("--epsilon", delta_eps, "State parameter in (0, 1]")->capture_default_str();

    auto* lhv = app.add_subcommand("lhv",
                                   "Certify the inequality against all deterministic strategies");
    int lhv_n = 2;
    std::vector<double> lhv_etas;
    lhv->add_option("--n", lhv_n, "Number of sites")->capture_default_str();
    lhv->add_option("--eta", lhv_etas, "Efficiencies to scan (repeatable)");

    auto* scan = app.add_subcommand("scan", "Best operator eigenvalue over an efficiency range");
    int scan_n = 2;
    double scan_min = 0.6;
    double scan_max = 0.8;
    int scan_steps = 21;
    scan->add_option("--n", scan_n, "Number of sites")->capture_default_str();
    scan->add_option("--eta-min", scan_min, "Lowest efficiency")->capture_default_str();
    scan->add_option("--eta-max", scan_max, "Highest efficiency")->capture_default_str();
    scan->add_option("--steps", scan_steps, "Grid size")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    auto* compare =
        app.add_subcommand("compare", "Delta-state violation relative to the top eigenvector");
    int compare_n = 2;
    std::optional<double> compare_min;
    std::optional<double> compare_max;
    std::optional<int> compare_steps;
    compare->add_option("--n", compare_n, "Number of sites (2 or 3)")->capture_default_str();
    compare->add_option("--eta-min", compare_min, "Lowest efficiency");
    compare->add_option("--eta-max", compare_max, "Highest efficiency");
    compare->add_option("--steps", compare_steps, "Grid size");

    try {
        app.parse(argc, argv);
        if (bounds->parsed()) return cmd_bounds(bounds_n, format);
        if (delta->parsed()) return cmd_delta(delta_n, delta_eps, format);
        if (lhv->parsed())
            return cmd_lhv(lhv_n, lhv_etas.empty() ? std::vector<double>{1.0} : lhv_etas, format);
        if (scan->parsed()) return cmd_scan(scan_n, scan_min, scan_max, scan_steps, tol, format);
        if (compare->parsed())
            return cmd_compare(compare_n, compare_min, compare_max, compare_steps, format);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
