#include "chbound/state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace chbound {

namespace {

constexpr double kNormTolerance = 1e-12;
constexpr double kHermitianTolerance = 1e-12;
constexpr double kExpectationImagTolerance = 1e-10;

std::size_t dimension_for(int n_sites) {
    if (n_sites < 1 || n_sites > 24)
        throw InvalidNError("n_sites must be in [1, 24], got " + std::to_string(n_sites));
    return std::size_t{1} << n_sites;
}

}  // namespace

StateVector::StateVector(int n_sites, std::vector<Complex> amplitudes)
    : n_sites_(n_sites), amplitudes_(std::move(amplitudes)) {
    const std::size_t dim = dimension_for(n_sites);
    if (amplitudes_.size() != dim)
        throw LengthMismatchError("expected 2^" + std::to_string(n_sites) + " = " +
                                  std::to_string(dim) + " amplitudes, got " +
                                  std::to_string(amplitudes_.size()));
    double norm_sq = 0.0;
    for (const Complex& a : amplitudes_) norm_sq += std::norm(a);
    if (std::abs(norm_sq - 1.0) > kNormTolerance)
        throw Error("StateVector amplitudes are not normalized (|psi|^2 = " +
                    std::to_string(norm_sq) + ")");
}

MeasurementContext::MeasurementContext(std::vector<Setting> s, double t)
    : settings(std::move(s)), theta(t) {
    if (settings.empty()) throw LengthMismatchError("MeasurementContext needs at least one site");
    if (!(theta >= 0.0 && theta <= std::numbers::pi / 2))
        throw Error("theta must lie in [0, pi/2], got " + std::to_string(theta));
}

MeasurementContext MeasurementContext::with_theta(double new_theta) const {
    return MeasurementContext(settings, new_theta);
}

OutcomePattern::OutcomePattern(std::vector<Requirement> reqs) : requirements(std::move(reqs)) {
    if (requirements.empty()) throw LengthMismatchError("OutcomePattern needs at least one site");
    if (detection_count() == 0)
        throw Error("OutcomePattern must require outcome 1 at one site or more");
}

int OutcomePattern::detection_count() const {
    int count = 0;
    for (Requirement r : requirements)
        if (r == Requirement::One) ++count;
    return count;
}

HermitianOperator::HermitianOperator(std::size_t dimension, std::vector<Complex> entries)
    : dim_(dimension), entries_(std::move(entries)) {
    if (entries_.size() != dim_ * dim_)
        throw LengthMismatchError("operator entries must form a " + std::to_string(dim_) + "x" +
                                  std::to_string(dim_) + " matrix");
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = r; c < dim_; ++c)
            if (std::abs(entries_[r * dim_ + c] - std::conj(entries_[c * dim_ + r])) >
                kHermitianTolerance)
                throw NotHermitianError("operator is not Hermitian at entry (" +
                                        std::to_string(r) + ", " + std::to_string(c) + ")");
}

StateVector make_state(int n_sites, const std::vector<Complex>& raw_amplitudes) {
    const std::size_t dim = dimension_for(n_sites);
    if (raw_amplitudes.size() != dim)
        throw LengthMismatchError("expected 2^" + std::to_string(n_sites) + " = " +
                                  std::to_string(dim) + " amplitudes, got " +
                                  std::to_string(raw_amplitudes.size()));
    double norm_sq = 0.0;
    for (const Complex& a : raw_amplitudes) norm_sq += std::norm(a);
    const double norm = std::sqrt(norm_sq);
    if (norm <= 1e-15) throw ZeroVectorError("cannot normalize a zero amplitude vector");
    std::vector<Complex> normalized(raw_amplitudes);
    for (Complex& a : normalized) a /= norm;
    return StateVector(n_sites, std::move(normalized));
}

std::array<Complex, 2> outcome_one_vector(double phi) {
    return {Complex(std::sin(phi), 0.0), Complex(std::cos(phi), 0.0)};
}

double joint_probability(const StateVector& state, const MeasurementContext& context,
                         const OutcomePattern& pattern) {
    const int n = state.n_sites();
    if (context.n_sites() != n || pattern.n_sites() != n)
        throw DimensionMismatchError("state has " + std::to_string(n) +
                                     " sites; context/pattern sizes are " +
                                     std::to_string(context.n_sites()) + "/" +
                                     std::to_string(pattern.n_sites()));

    // Rank-1 outcome vector at each One site; Any sites stay free.
    std::vector<int> one_sites;
    std::vector<std::array<Complex, 2>> vectors(static_cast<std::size_t>(n));
    std::size_t any_mask = 0;
    for (int i = 0; i < n; ++i) {
        if (pattern.requirements[static_cast<std::size_t>(i)] == Requirement::Any) {
            any_mask |= std::size_t{1} << i;
        } else {
            const double phi = context.settings[static_cast<std::size_t>(i)] == Setting::A
                                   ? context.theta
                                   : 0.0;
            vectors[static_cast<std::size_t>(i)] = outcome_one_vector(phi);
            one_sites.push_back(i);
        }
    }

    // <psi|Pi|psi> with Pi = (x)_One |1_phi><1_phi| (x) I_Any equals the
    // squared norm of the partial contraction grouped by the Any-site bits.
    const std::size_t dim = state.dimension();
    std::vector<Complex> grouped(dim, Complex(0.0, 0.0));
    for (std::size_t idx = 0; idx < dim; ++idx) {
        Complex w = state.amplitude(idx);
        for (int site : one_sites)
            w *= std::conj(vectors[static_cast<std::size_t>(site)][(idx >> site) & 1u]);
        grouped[idx & any_mask] += w;
    }
    double p = 0.0;
    for (const Complex& g : grouped) p += std::norm(g);

    if (p > 1.0 + 1e-12)
        throw Error("joint probability exceeded 1 beyond tolerance: " + std::to_string(p));
    return std::clamp(p, 0.0, 1.0);
}

double apply_operator_expectation(const HermitianOperator& op, const StateVector& state) {
    const std::size_t dim = state.dimension();
    if (op.dimension() != dim)
        throw DimensionMismatchError("operator dimension " + std::to_string(op.dimension()) +
                                     " does not match state dimension " + std::to_string(dim));
    Complex acc(0.0, 0.0);
    for (std::size_t r = 0; r < dim; ++r) {
        Complex row(0.0, 0.0);
        for (std::size_t c = 0; c < dim; ++c) row += op.entry(r, c) * state.amplitude(c);
        acc += std::conj(state.amplitude(r)) * row;
    }
    if (std::abs(acc.imag()) > kExpectationImagTolerance)
        throw NotHermitianError("expectation value has imaginary residue " +
                                std::to_string(acc.imag()));
    return acc.real();
}

}  // namespace chbound
