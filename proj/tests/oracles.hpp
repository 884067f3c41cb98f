#pragma once

// Test-only reference machinery. Probabilities here are produced by dense
// projector matrices assembled with explicit Kronecker products, so they
// stay independent of the library's per-site contraction path.

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "chbound/state.hpp"

namespace oracles {

using chbound::Complex;

struct Matrix {
    std::size_t dim;
    std::vector<Complex> entries;  // row-major

    Complex& at(std::size_t r, std::size_t c) { return entries[r * dim + c]; }
    Complex at(std::size_t r, std::size_t c) const { return entries[r * dim + c]; }
};

inline Matrix identity(std::size_t dim) {
    Matrix m{dim, std::vector<Complex>(dim * dim, Complex(0.0, 0.0))};
    for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
}

inline Matrix outer(const std::array<Complex, 2>& v) {
    Matrix m{2, std::vector<Complex>(4)};
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) m.at(r, c) = v[r] * std::conj(v[c]);
    return m;
}

// kron(high, low): `high` occupies the high index bits, `low` the low ones.
inline Matrix kron(const Matrix& high, const Matrix& low) {
    Matrix m{high.dim * low.dim,
             std::vector<Complex>(high.dim * low.dim * high.dim * low.dim)};
    for (std::size_t rh = 0; rh < high.dim; ++rh)
        for (std::size_t rl = 0; rl < low.dim; ++rl)
            for (std::size_t ch = 0; ch < high.dim; ++ch)
                for (std::size_t cl = 0; cl < low.dim; ++cl)
                    m.at(rh * low.dim + rl, ch * low.dim + cl) =
                        high.at(rh, ch) * low.at(rl, cl);
    return m;
}

// Outcome-1 vector for angle phi, and its orthogonal outcome-0 partner.
inline std::array<Complex, 2> one_vector(double phi) {
    return {Complex(std::sin(phi), 0.0), Complex(std::cos(phi), 0.0)};
}
inline std::array<Complex, 2> zero_vector(double phi) {
    return {Complex(std::cos(phi), 0.0), Complex(-std::sin(phi), 0.0)};
}

// Projector for per-site settings ('A'/'B') and pattern ('1' = outcome 1
// required, '.' = marginalized). Site 0 is the lowest index bit, so it is
// the rightmost Kronecker factor.
inline Matrix pattern_projector(int n, const std::string& settings, const std::string& pattern,
                                double theta) {
    Matrix m = identity(1);
    for (int i = n - 1; i >= 0; --i) {
        const std::size_t s = static_cast<std::size_t>(i);
        Matrix site = pattern[s] == '.'
                          ? identity(2)
                          : outer(one_vector(settings[s] == 'A' ? theta : 0.0));
        m = kron(m, site);
    }
    return m;
}

inline double expectation(const Matrix& m, const std::vector<Complex>& psi) {
    Complex acc(0.0, 0.0);
    for (std::size_t r = 0; r < m.dim; ++r)
        for (std::size_t c = 0; c < m.dim; ++c)
            acc += std::conj(psi[r]) * m.at(r, c) * psi[c];
    return acc.real();
}

// Closed form for K = P(all A's = 1) on |delta(eps)|: the inner product
// <1_A...1_A|delta> collapses to C sin^n(theta), so K = C^2 sin^(2n)(theta)
// with C^2 = 1 / ((1 - n cos(theta))^2 + n sin^2(theta)).
inline double k_closed_form(int n, double eps) {
    const double theta = 2.0 * std::atan(eps);
    const double c2 =
        1.0 / (std::pow(1.0 - n * std::cos(theta), 2) + n * std::pow(std::sin(theta), 2));
    return c2 * std::pow(std::sin(theta), 2 * n);
}

inline std::vector<Complex> random_amplitudes(std::mt19937& rng, int n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Complex> amps(std::size_t{1} << n);
    for (Complex& a : amps) a = Complex(gauss(rng), gauss(rng));
    return amps;
}

}  // namespace oracles
