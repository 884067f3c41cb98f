#include "chbound/efficiency.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

namespace chbound {

namespace {

constexpr double kDenominatorFloor = 1e-14;
constexpr double kNoViolationFloor = 1e-12;
constexpr std::size_t kMaxOperatorDimension = 4096;

void require_eta(double eta) {
    if (!(eta >= 0.0 && eta <= 1.0))
        throw EtaOutOfRangeError("eta must lie in [0, 1], got " + std::to_string(eta));
}

struct ScanResult {
    double best_x;
    double best_value;
};

// Interior grid over (lo, hi) plus one golden-section pass around the grid
// argmax. Assumes the objective is smooth; the refinement narrows the
// bracket to width 1e-6.
ScanResult grid_golden_max(const std::function<double(double)>& f, double lo, double hi,
                           int points) {
    points = std::max(points, 100);
    const double span = hi - lo;
    double best_x = lo + span / (points + 1);
    double best_value = f(best_x);
    int best_index = 0;
    for (int i = 1; i < points; ++i) {
        const double x = lo + (i + 1) * span / (points + 1);
        const double value = f(x);
        if (value > best_value) {
            best_value = value;
            best_x = x;
            best_index = i;
        }
    }

    double a = best_index > 0 ? lo + best_index * span / (points + 1) : lo;
    double b = best_index + 1 < points ? lo + (best_index + 2) * span / (points + 1) : hi;
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > 1e-6) {
        if (fc < fd) {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        } else {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        }
    }
    const double mid = 0.5 * (a + b);
    const double fmid = f(mid);
    if (fmid > best_value) return {mid, fmid};
    return {best_x, best_value};
}

}  // namespace

EfficiencyModel::EfficiencyModel(double e) : eta(e) { require_eta(eta); }

double EfficiencyModel::coincidence_scale(int detections) const {
    if (detections < 0) throw Error("detection count must be nonnegative");
    return std::pow(eta, detections);
}

BoundReport critical_eta(const StateVector& state, double theta, int n_sites) {
    if (state.n_sites() != n_sites)
        throw DimensionMismatchError("state has " + std::to_string(state.n_sites()) +
                                     " sites, expected " + std::to_string(n_sites));
    const CHInequality ineq = build_nsite_ch(n_sites);

    // Rearranged residual: eta^n * denominator - eta^(n-1) * numerator, so a
    // violation exists iff eta > numerator / denominator.
    double numerator = 0.0;
    double denominator = 0.0;
    for (const InequalityTerm& t : ineq.lhs_terms)
        denominator +=
            t.coefficient * joint_probability(state, t.context.with_theta(theta), t.pattern);
    for (const InequalityTerm& t : ineq.rhs_terms) {
        const double p = joint_probability(state, t.context.with_theta(theta), t.pattern);
        if (t.detection_count() == n_sites - 1)
            numerator += t.coefficient * p;
        else
            denominator -= t.coefficient * p;
    }

    // The floor is scale-relative: near-critical states make both sums tiny
    // while their ratio stays perfectly conditioned, so only a denominator
    // that is nonpositive or negligible against the numerator is degenerate.
    if (denominator <= kDenominatorFloor * numerator)
        throw NoViolationPossibleError(
            "denominator " + std::to_string(denominator) +
            " is not positive; no efficiency in [0, 1] yields a violation");
    return BoundReport{n_sites, std::nullopt, numerator / denominator, numerator, denominator};
}

BoundReport critical_eta(const DeltaParams& params) {
    BoundReport report =
        critical_eta(build_delta(params), theta_from_epsilon(params.epsilon), params.n_sites);
    report.epsilon = params.epsilon;
    return report;
}

double critical_eta_limit(int n_sites) {
    if (n_sites < 2) throw InvalidNError("bound defined for n >= 2, got " + std::to_string(n_sites));
    return static_cast<double>(n_sites) / static_cast<double>(2 * n_sites - 1);
}

HermitianOperator build_b_operator(int n_sites, double theta, double eta) {
    require_eta(eta);
    if (n_sites < 2)
        throw InvalidNError("operator defined for n >= 2, got " + std::to_string(n_sites));
    if (n_sites > 12 || (std::size_t{1} << n_sites) > kMaxOperatorDimension)
        throw DimensionTooLargeError("operator dimension 2^" + std::to_string(n_sites) +
                                     " exceeds the cap of " +
                                     std::to_string(kMaxOperatorDimension));

    const std::size_t dim = std::size_t{1} << n_sites;
    const CHInequality ineq = build_nsite_ch(n_sites);
    std::vector<Complex> entries(dim * dim, Complex(0.0, 0.0));

    // Accumulate weight * projector for every term, entries computed as
    // per-site products (little-endian bit i of the index = site i).
    const auto add_term = [&](const InequalityTerm& term, double sign) {
        const double weight =
            sign * term.coefficient * std::pow(eta, term.detection_count());
        if (weight == 0.0) return;
        std::vector<std::array<std::array<double, 2>, 2>> site(static_cast<std::size_t>(n_sites));
        for (int i = 0; i < n_sites; ++i) {
            auto& m = site[static_cast<std::size_t>(i)];
            if (term.pattern.requirements[static_cast<std::size_t>(i)] == Requirement::Any) {
                m = {{{1.0, 0.0}, {0.0, 1.0}}};
            } else {
                const double phi =
                    term.context.settings[static_cast<std::size_t>(i)] == Setting::A ? theta
                                                                                     : 0.0;
                const auto v = outcome_one_vector(phi);
                for (int r = 0; r < 2; ++r)
                    for (int c = 0; c < 2; ++c)
                        m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                            (v[static_cast<std::size_t>(r)] *
                             std::conj(v[static_cast<std::size_t>(c)]))
                                .real();
            }
        }
        for (std::size_t r = 0; r < dim; ++r) {
            for (std::size_t c = 0; c < dim; ++c) {
                double product = weight;
                for (int i = 0; i < n_sites; ++i)
                    product *= site[static_cast<std::size_t>(i)][(r >> i) & 1u][(c >> i) & 1u];
                entries[r * dim + c] += product;
            }
        }
    };

    for (const InequalityTerm& t : ineq.lhs_terms) add_term(t, +1.0);
    for (const InequalityTerm& t : ineq.rhs_terms) add_term(t, -1.0);
    return HermitianOperator(dim, std::move(entries));
}

ViolationReport violation_exists(int n_sites, double eta, const GridSpec& grid, double tol) {
    if (n_sites < 2 || n_sites > 6)
        throw InvalidNError("violation scan supports n in [2, 6], got " +
                            std::to_string(n_sites));
    require_eta(eta);
    const auto objective = [&](double theta) {
        return max_eigenvalue(build_b_operator(n_sites, theta, eta));
    };
    const ScanResult scan =
        grid_golden_max(objective, 0.0, std::numbers::pi / 2, grid.points);
    return ViolationReport{scan.best_value > tol, scan.best_x, scan.best_value};
}

int minimal_n(double eta) {
    if (!(eta > 0.5))
        throw EtaTooSmallError("no finite n works for eta <= 1/2, got " + std::to_string(eta));
    if (eta > 1.0)
        throw EtaOutOfRangeError("eta must lie in (1/2, 1], got " + std::to_string(eta));
    // Closed form n > eta/(2*eta - 1), then anchor to the same double
    // arithmetic used by critical_eta_limit.
    const double ratio = eta / (2.0 * eta - 1.0);
    if (ratio > 1e9)
        throw Error("minimal n for eta = " + std::to_string(eta) +
                    " exceeds the supported range");
    int n = std::max(2, static_cast<int>(std::floor(ratio)) + 1);
    const auto violates_at = [&](int candidate) {
        return candidate >= 2 && critical_eta_limit(candidate) < eta;
    };
    while (n > 2 && violates_at(n - 1)) --n;
    while (!violates_at(n)) ++n;
    return n;
}

double delta_vs_eigen_ratio(int n_sites, double eta, const GridSpec& grid) {
    if (n_sites != 2 && n_sites != 3)
        throw InvalidNError("delta/eigenvector comparison supports n in {2, 3}, got " +
                            std::to_string(n_sites));
    require_eta(eta);

    const auto eigen_objective = [&](double theta) {
        return max_eigenvalue(build_b_operator(n_sites, theta, eta));
    };
    const ScanResult eigen_best =
        grid_golden_max(eigen_objective, 0.0, std::numbers::pi / 2, grid.points);
    if (eigen_best.best_value <= kNoViolationFloor)
        throw NoViolationError("no violation at eta = " + std::to_string(eta) +
                               "; comparison ratio undefined");

    const auto delta_objective = [&](double epsilon) {
        const double theta = theta_from_epsilon(epsilon);
        return apply_operator_expectation(build_b_operator(n_sites, theta, eta),
                                          build_delta(DeltaParams(n_sites, epsilon)));
    };
    const ScanResult delta_best = grid_golden_max(delta_objective, 0.0, 1.0, grid.points);

    return delta_best.best_value / eigen_best.best_value;
}

}  // namespace chbound
