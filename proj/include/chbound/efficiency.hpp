#pragma once

#include <optional>

#include "chbound/delta.hpp"
#include "chbound/eigen.hpp"
#include "chbound/inequality.hpp"
#include "chbound/state.hpp"

namespace chbound {

// Detection model: independent errors at a constant rate, so a k-fold
// coincidence probability is scaled by eta^k.
struct EfficiencyModel {
    double eta;

    explicit EfficiencyModel(double eta);
    double coincidence_scale(int detections) const;
};

// Critical-efficiency ratio for a state and settings: a violation exists at
// efficiency eta iff eta > critical_eta (requires denominator > 0).
struct BoundReport {
    int n_sites;
    std::optional<double> epsilon;  // set when the state is a delta construction
    double critical_eta;            // numerator / denominator
    double numerator;               // sum of the (n-1)-detection probabilities
    double denominator;             // signed sum of the n-detection probabilities
};

// Deterministic grid for the theta / epsilon searches: `points` interior
// samples followed by one golden-section refinement pass around the grid
// argmax, down to a bracket width of 1e-6.
struct GridSpec {
    int points = 128;
};

struct ViolationReport {
    bool exists;
    double best_theta;
    double best_eigenvalue;
};

// Critical efficiency from the n-site CH inequality with quantum
// probabilities inserted. Throws NoViolationPossibleError when the
// denominator is nonpositive or negligible relative to the numerator
// (<= 1e-14 * numerator), in which case no efficiency in [0, 1] gives a
// violation.
BoundReport critical_eta(const StateVector& state, double theta, int n_sites);

// Same, for |delta(epsilon)> measured at theta(epsilon); fills in epsilon.
BoundReport critical_eta(const DeltaParams& params);

// The n -> n/(2n-1) bound; exact to double rounding.
double critical_eta_limit(int n_sites);

// Measurement operator whose expectation value on a state equals the
// efficiency-scaled CH residual of that state: positive expectation
// certifies violation. At n = 2 this is the standard two-site operator with
// eta^2 on every two-detector term and -eta on the singles.
HermitianOperator build_b_operator(int n_sites, double theta, double eta);

// Scans theta over (0, pi/2) for the largest operator eigenvalue; a best
// eigenvalue above `tol` certifies that a violating state exists.
ViolationReport violation_exists(int n_sites, double eta, const GridSpec& grid = {},
                                 double tol = 1e-9);

// Smallest n >= 2 with n/(2n-1) < eta. Throws EtaTooSmallError for
// eta <= 1/2, where no such n exists.
int minimal_n(double eta);

// Best achievable violation from the delta family (max over epsilon, with
// theta tied to epsilon) divided by the best eigenvalue violation (max over
// theta). Throws NoViolationError when the eigenvalue search stays
// below 1e-12.
double delta_vs_eigen_ratio(int n_sites, double eta, const GridSpec& grid = {});

}  // namespace chbound
