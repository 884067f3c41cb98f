// Acceptance suite: runs every primary criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exits with the number of failed
// criteria.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "chbound/delta.hpp"
#include "chbound/efficiency.hpp"
#include "chbound/inequality.hpp"
#include "chbound/state.hpp"
#include "oracles.hpp"

using namespace chbound;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", number, name.c_str(),
                detail.c_str());
    if (!pass) ++failures;
}

std::string fmt(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.3e", value);
    return buffer;
}

void criterion_1_critical_efficiency_formula() {
    double worst = 0.0;
    for (int n = 2; n <= 6; ++n) {
        for (double eps : {0.01, 0.1, 0.3}) {
            const BoundReport bound = critical_eta(DeltaParams(n, eps));
            const double expected = static_cast<double>(n) / (2 * n - 1) * (1.0 + eps * eps);
            worst = std::max(worst, std::abs(bound.critical_eta - expected));
        }
    }
    report(1, "critical efficiency equals n/(2n-1)*(1+eps^2)", worst <= 1e-9,
           "max deviation " + fmt(worst) + ", tolerance 1e-9");
}

void criterion_2_iff_boundary() {
    const bool two_below = violation_exists(2, 0.66).exists;
    const bool two_above = violation_exists(2, 0.68).exists;
    const bool three_below = violation_exists(3, 0.59).exists;
    const bool three_above = violation_exists(3, 0.61).exists;
    const bool pass = !two_below && two_above && !three_below && three_above;
    report(2, "violation iff eta above n/(2n-1)", pass,
           std::string("n=2: 0.66->") + (two_below ? "true" : "false") + " 0.68->" +
               (two_above ? "true" : "false") + "; n=3: 0.59->" +
               (three_below ? "true" : "false") + " 0.61->" + (three_above ? "true" : "false"));
}

void criterion_3_lhv_validity() {
    double worst = -1.0;
    for (int n : {2, 3, 4}) {
        const CHInequality ineq = build_nsite_ch(n);
        for (double eta : {0.3, 0.7, 1.0}) {
            const LhvReport certified = lhv_certify(ineq, {eta});
            worst = std::max(worst, certified.max_residual);
        }
    }
    report(3, "all deterministic strategies satisfy the inequality", worst <= 1e-12,
           "max residual " + fmt(worst) + ", tolerance 1e-12");
}

void criterion_4_delta_probability_structure() {
    double worst_multi_b = 0.0;
    double worst_one_b = 0.0;
    double worst_marginal = 0.0;
    for (int n = 2; n <= 6; ++n) {
        for (double eps : {0.01, 0.1}) {
            const DeltaParams params(n, eps);
            const StateVector delta = build_delta(params);
            const double theta = theta_from_epsilon(eps);
            const double k = k_value(params);

            const MeasurementContext all_b(
                std::vector<Setting>(static_cast<std::size_t>(n), Setting::B), theta);
            for (std::size_t mask = 0; mask < delta.dimension(); ++mask) {
                if (std::popcount(mask) < 2) continue;
                std::vector<Requirement> reqs(static_cast<std::size_t>(n), Requirement::Any);
                for (int i = 0; i < n; ++i)
                    if ((mask >> i) & 1u) reqs[static_cast<std::size_t>(i)] = Requirement::One;
                worst_multi_b = std::max(
                    worst_multi_b, joint_probability(delta, all_b, OutcomePattern(reqs)));
            }

            const OutcomePattern all_one(
                std::vector<Requirement>(static_cast<std::size_t>(n), Requirement::One));
            for (int j = 0; j < n; ++j) {
                std::vector<Setting> settings(static_cast<std::size_t>(n), Setting::A);
                settings[static_cast<std::size_t>(j)] = Setting::B;
                const double one_b =
                    joint_probability(delta, MeasurementContext(settings, theta), all_one);
                worst_one_b = std::max(worst_one_b, std::abs(one_b - k));

                std::vector<Requirement> reqs(static_cast<std::size_t>(n), Requirement::One);
                reqs[static_cast<std::size_t>(j)] = Requirement::Any;
                const MeasurementContext all_a(
                    std::vector<Setting>(static_cast<std::size_t>(n), Setting::A), theta);
                const double marginal =
                    joint_probability(delta, all_a, OutcomePattern(reqs));
                worst_marginal =
                    std::max(worst_marginal, std::abs(marginal - k * (1.0 + eps * eps)));
            }
        }
    }
    const bool pass = worst_multi_b <= 1e-12 && worst_one_b <= 1e-10 && worst_marginal <= 1e-9;
    report(4, "delta probability table (K, K(1+eps^2), zero multi-B)", pass,
           "multi-B " + fmt(worst_multi_b) + " <= 1e-12, one-B dev " + fmt(worst_one_b) +
               " <= 1e-10, marginal dev " + fmt(worst_marginal) + " <= 1e-9");
}

void criterion_5_operator_consistency() {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst_two_path = 0.0;
    for (int n : {2, 3}) {
        const CHInequality ineq = build_nsite_ch(n);
        for (int trial = 0; trial < 100; ++trial) {
            const StateVector state = make_state(n, oracles::random_amplitudes(rng, n));
            const double theta = unit(rng) * std::numbers::pi / 2;
            const double eta = unit(rng);
            const double via_operator =
                apply_operator_expectation(build_b_operator(n, theta, eta), state);
            const double via_terms = evaluate_quantum(ineq, state, theta, eta);
            worst_two_path = std::max(worst_two_path, std::abs(via_operator - via_terms));
        }
    }

    double worst_entry = 0.0;
    for (double eta : {0.0, 0.31, 0.7341, 1.0}) {
        const double theta = 0.47;
        const HermitianOperator op = build_b_operator(2, theta, eta);
        std::vector<Complex> reference(16, Complex(0.0, 0.0));
        const auto add = [&](const std::string& settings, const std::string& pattern,
                             double weight) {
            const oracles::Matrix projector =
                oracles::pattern_projector(2, settings, pattern, theta);
            for (std::size_t i = 0; i < 16; ++i) reference[i] += weight * projector.entries[i];
        };
        add("AA", "11", eta * eta);
        add("AB", "11", eta * eta);
        add("BA", "11", eta * eta);
        add("BB", "11", -eta * eta);
        add("AA", "1.", -eta);
        add("AA", ".1", -eta);
        for (std::size_t i = 0; i < 16; ++i)
            worst_entry = std::max(worst_entry, std::abs(op.entries()[i] - reference[i]));
    }

    const bool pass = worst_two_path <= 1e-10 && worst_entry <= 1e-12;
    report(5, "operator matches the term-by-term residual and the two-site assembly", pass,
           "two-path dev " + fmt(worst_two_path) + " <= 1e-10, entrywise dev " +
               fmt(worst_entry) + " <= 1e-12");
}

void criterion_6_eigenvector_comparison() {
    bool two_hit = false;
    double two_example = 0.0;
    bool three_hit = false;
    double three_example = 0.0;
    for (int n : {2, 3}) {
        const double start = critical_eta_limit(n) + 0.02;
        for (int step = 0;; ++step) {
            const double eta = start + 0.01 * step;
            if (eta > 0.95 + 1e-12) break;
            const double ratio = delta_vs_eigen_ratio(n, eta);
            if (n == 2 && ratio >= 0.75 && ratio <= 0.85 && !two_hit) {
                two_hit = true;
                two_example = ratio;
            }
            if (n == 3 && ratio >= 0.60 && ratio <= 0.70 && !three_hit) {
                three_hit = true;
                three_example = ratio;
            }
        }
    }
    report(6, "best delta yields ~80% (n=2) and ~70% (n=3) of the eigenvector violation",
           two_hit && three_hit,
           "n=2 grid hit " + (two_hit ? fmt(two_example) : std::string("none")) +
               " in [0.75, 0.85]; n=3 grid hit " +
               (three_hit ? fmt(three_example) : std::string("none")) + " in [0.60, 0.70]");
}

void criterion_7_minimal_n() {
    bool threw = false;
    try {
        minimal_n(0.5);
    } catch (const EtaTooSmallError&) {
        threw = true;
    }
    const int at_051 = minimal_n(0.51);
    const int at_07 = minimal_n(0.7);
    const bool pass = at_051 == 26 && at_07 == 2 && threw;
    report(7, "minimal site count from the closed form", pass,
           "minimal_n(0.51) = " + std::to_string(at_051) + " (expected 26), minimal_n(0.7) = " +
               std::to_string(at_07) + " (expected 2), minimal_n(0.5) " +
               (threw ? "rejected" : "accepted"));
}

void criterion_8_reduction() {
    const auto canonical = [](const std::vector<InequalityTerm>& terms) {
        std::vector<std::tuple<int, std::string, std::string>> keys;
        for (const InequalityTerm& t : terms) {
            std::string settings;
            std::string reqs;
            for (Setting s : t.context.settings)
                settings.push_back(s == Setting::A ? 'A' : 'B');
            for (Requirement r : t.pattern.requirements)
                reqs.push_back(r == Requirement::One ? '1' : '.');
            keys.emplace_back(t.coefficient, settings, reqs);
        }
        std::sort(keys.begin(), keys.end());
        return keys;
    };
    const CHInequality two = build_two_site_ch();
    const CHInequality general = build_nsite_ch(2);
    const bool pass = canonical(two.lhs_terms) == canonical(general.lhs_terms) &&
                      canonical(two.rhs_terms) == canonical(general.rhs_terms);
    report(8, "build_nsite_ch(2) equals build_two_site_ch as a term multiset", pass,
           pass ? "identical multisets" : "term multisets differ");
}

}  // namespace

int main() {
    const auto start = std::chrono::steady_clock::now();
    criterion_1_critical_efficiency_formula();
    criterion_2_iff_boundary();
    criterion_3_lhv_validity();
    criterion_4_delta_probability_structure();
    criterion_5_operator_consistency();
    criterion_6_eigenvector_comparison();
    criterion_7_minimal_n();
    criterion_8_reduction();
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - start)
                             .count();
    std::printf("%d/8 criteria passed in %lld ms\n", 8 - failures,
                static_cast<long long>(elapsed));
    return failures;
}
