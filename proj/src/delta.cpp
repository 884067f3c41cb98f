#include "chbound/delta.hpp"

#include <cmath>
#include <string>

namespace chbound {

DeltaParams::DeltaParams(int n, double eps) : n_sites(n), epsilon(eps) {
    if (n_sites < 2)
        throw InvalidNError("delta states need n_sites >= 2, got " + std::to_string(n_sites));
    if (!(epsilon > 0.0))
        throw NonPositiveEpsilonError("epsilon must be > 0, got " + std::to_string(epsilon));
    if (epsilon > 1.0)
        throw Error("epsilon above supported range (0, 1]: " + std::to_string(epsilon));
}

double theta_from_epsilon(double epsilon) {
    if (!(epsilon > 0.0))
        throw NonPositiveEpsilonError("epsilon must be > 0, got " + std::to_string(epsilon));
    return 2.0 * std::atan(epsilon);
}

StateVector build_delta(const DeltaParams& params) {
    const int n = params.n_sites;
    const double theta = theta_from_epsilon(params.epsilon);
    const std::size_t dim = std::size_t{1} << n;

    std::vector<Complex> amps(dim, Complex(0.0, 0.0));
    amps[0] = Complex(1.0 - n * std::cos(theta), 0.0);
    for (int i = 0; i < n; ++i) amps[std::size_t{1} << i] = Complex(std::sin(theta), 0.0);

    double norm_sq = 0.0;
    for (const Complex& a : amps) norm_sq += std::norm(a);
    if (std::sqrt(norm_sq) < 1e-14)
        throw DegenerateStateError("delta state vector has vanishing norm");
    return make_state(n, amps);
}

double k_value(const DeltaParams& params) {
    const StateVector state = build_delta(params);
    const double theta = theta_from_epsilon(params.epsilon);
    const MeasurementContext all_a(std::vector<Setting>(static_cast<std::size_t>(params.n_sites),
                                                        Setting::A),
                                   theta);
    const OutcomePattern all_one(std::vector<Requirement>(
        static_cast<std::size_t>(params.n_sites), Requirement::One));
    return joint_probability(state, all_a, all_one);
}

}  // namespace chbound
