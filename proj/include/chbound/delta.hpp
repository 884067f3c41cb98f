#pragma once

#include "chbound/state.hpp"

namespace chbound {

// Parameters of the near-critical n-site states |delta(epsilon)>.
struct DeltaParams {
    int n_sites;
    double epsilon;  // supported range (0, 1], so theta = 2*arctan(epsilon) stays in (0, pi/2]

    DeltaParams(int n_sites, double epsilon);
};

// Measurement rotation angle tied to epsilon: theta = 2*arctan(epsilon).
double theta_from_epsilon(double epsilon);

// The state whose all-zeros amplitude is proportional to (1 - n*cos(theta))
// and whose n single-excitation amplitudes are each proportional to
// sin(theta); every other amplitude is exactly zero. The normalization
// constant is chosen positive, so amplitude signs are deterministic.
StateVector build_delta(const DeltaParams& params);

// K = P(all A's = 1) on |delta>, measured at theta(epsilon). Strictly positive.
double k_value(const DeltaParams& params);

}  // namespace chbound
