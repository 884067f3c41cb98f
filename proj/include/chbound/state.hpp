#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "chbound/errors.hpp"

namespace chbound {

using Complex = std::complex<double>;

// Local detector setting. Every A setting shares one rotation angle theta;
// B is the reference basis (theta = 0).
enum class Setting : std::uint8_t { A, B };

// Per-site requirement of a joint "=1" event: One means the site must give
// outcome 1, Any means the site is marginalized.
enum class Requirement : std::uint8_t { One, Any };

// Normalized amplitude vector of n two-level sites in the B basis.
//
// Index convention is little-endian: bit i of the amplitude index is the
// B-basis outcome of site i (0 -> |0_B>, 1 -> |1_B>).
class StateVector {
public:
    // Amplitudes must already be normalized (squared-magnitude sum within
    // 1e-12 of 1); use make_state() to normalize raw amplitudes.
    StateVector(int n_sites, std::vector<Complex> amplitudes);

    int n_sites() const { return n_sites_; }
    std::size_t dimension() const { return amplitudes_.size(); }
    const std::vector<Complex>& amplitudes() const { return amplitudes_; }
    Complex amplitude(std::size_t index) const { return amplitudes_[index]; }

private:
    int n_sites_;
    std::vector<Complex> amplitudes_;
};

// Per-site choice of setting plus the rotation angle used by the A settings.
struct MeasurementContext {
    std::vector<Setting> settings;
    double theta = 0.0;  // radians, in [0, pi/2]

    MeasurementContext(std::vector<Setting> settings, double theta);

    int n_sites() const { return static_cast<int>(settings.size()); }
    MeasurementContext with_theta(double new_theta) const;
};

// Joint "=1" event over the sites. At least one site must be One.
struct OutcomePattern {
    std::vector<Requirement> requirements;

    explicit OutcomePattern(std::vector<Requirement> requirements);

    int n_sites() const { return static_cast<int>(requirements.size()); }
    // Number of sites whose detector must fire for this event.
    int detection_count() const;
};

// Dense complex matrix equal to its conjugate transpose within 1e-12
// entrywise (validated on construction). Row-major storage.
class HermitianOperator {
public:
    HermitianOperator(std::size_t dimension, std::vector<Complex> entries);

    std::size_t dimension() const { return dim_; }
    Complex entry(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }
    const std::vector<Complex>& entries() const { return entries_; }

private:
    std::size_t dim_;
    std::vector<Complex> entries_;
};

// Normalizes raw_amplitudes and wraps them in a StateVector.
StateVector make_state(int n_sites, const std::vector<Complex>& raw_amplitudes);

// Single-site outcome-1 vector in B-basis components: (sin(phi), cos(phi)).
// phi = 0 is the B setting itself, i.e. |1_B>.
std::array<Complex, 2> outcome_one_vector(double phi);

// Probability that every One site gives outcome 1 under the context's
// settings (A sites measured at angle theta, B sites at 0), with Any sites
// marginalized. Clamped to [0, 1] after a 1e-12 tolerance check.
double joint_probability(const StateVector& state, const MeasurementContext& context,
                         const OutcomePattern& pattern);

// Real part of <psi|op|psi>. Throws NotHermitianError if the imaginary part
// exceeds 1e-10 in magnitude.
double apply_operator_expectation(const HermitianOperator& op, const StateVector& state);

}  // namespace chbound
