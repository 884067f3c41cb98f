#include "chbound/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace chbound {

namespace {

// Entrywise imaginary parts below this are treated as zero, taking the fast
// real-symmetric path instead of the 2d x 2d embedding.
constexpr double kRealCutoff = 1e-14;
constexpr int kMaxQlIterations = 50;

// Householder reduction of the symmetric matrix z (row-major, n x n) to
// tridiagonal form: diagonal in d, subdiagonal in e (e[0] unused). With
// want_vectors, z is replaced by the accumulated orthogonal transform so the
// QL sweep can rotate it into the eigenvector matrix.
void householder_tridiagonalize(std::vector<double>& z, std::size_t n, std::vector<double>& d,
                                std::vector<double>& e, bool want_vectors) {
    auto at = [&](std::size_t r, std::size_t c) -> double& { return z[r * n + c]; };

    for (std::size_t i = n - 1; i > 0; --i) {
        const std::size_t l = i - 1;
        double h = 0.0;
        double scale = 0.0;
        if (l > 0) {
            for (std::size_t k = 0; k < i; ++k) scale += std::abs(at(i, k));
            if (scale == 0.0) {
                e[i] = at(i, l);
            } else {
                for (std::size_t k = 0; k < i; ++k) {
                    at(i, k) /= scale;
                    h += at(i, k) * at(i, k);
                }
                double f = at(i, l);
                double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                at(i, l) = f - g;
                f = 0.0;
                for (std::size_t j = 0; j < i; ++j) {
                    if (want_vectors) at(j, i) = at(i, j) / h;
                    g = 0.0;
                    for (std::size_t k = 0; k < j + 1; ++k) g += at(j, k) * at(i, k);
                    for (std::size_t k = j + 1; k < i; ++k) g += at(k, j) * at(i, k);
                    e[j] = g / h;
                    f += e[j] * at(i, j);
                }
                const double hh = f / (h + h);
                for (std::size_t j = 0; j < i; ++j) {
                    f = at(i, j);
                    e[j] = g = e[j] - hh * f;
                    for (std::size_t k = 0; k < j + 1; ++k)
                        at(j, k) -= f * e[k] + g * at(i, k);
                }
            }
        } else {
            e[i] = at(i, l);
        }
        d[i] = h;
    }
    if (want_vectors) d[0] = 0.0;
    e[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (want_vectors) {
            if (d[i] != 0.0) {
                for (std::size_t j = 0; j < i; ++j) {
                    double g = 0.0;
                    for (std::size_t k = 0; k < i; ++k) g += at(i, k) * at(k, j);
                    for (std::size_t k = 0; k < i; ++k) at(k, j) -= g * at(k, i);
                }
            }
            d[i] = at(i, i);
            at(i, i) = 1.0;
            for (std::size_t j = 0; j < i; ++j) at(j, i) = at(i, j) = 0.0;
        } else {
            d[i] = at(i, i);
        }
    }
}

// Implicit-shift QL iteration on the tridiagonal (d, e). With want_vectors,
// the rotations are accumulated into z.
void ql_implicit_shift(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z,
                       std::size_t n, bool want_vectors) {
    auto at = [&](std::size_t r, std::size_t c) -> double& { return z[r * n + c]; };
    const double eps = std::numeric_limits<double>::epsilon();

    for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;

    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == kMaxQlIterations)
                    throw ConvergenceFailureError("QL iteration exceeded " +
                                                  std::to_string(kMaxQlIterations) +
                                                  " sweeps for one eigenvalue");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0;
                double c = 1.0;
                double p = 0.0;
                bool underflow = false;
                for (std::size_t ip1 = m; ip1 > l; --ip1) {
                    const std::size_t i = ip1 - 1;
                    double f = s * e[i];
                    const double b = c * e[i];
                    e[i + 1] = r = std::hypot(f, g);
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    d[i + 1] = g + (p = s * r);
                    g = c * r - b;
                    if (want_vectors) {
                        for (std::size_t k = 0; k < n; ++k) {
                            f = at(k, i + 1);
                            at(k, i + 1) = s * at(k, i) + c * f;
                            at(k, i) = c * at(k, i) - s * f;
                        }
                    }
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

bool is_numerically_real(const HermitianOperator& op) {
    for (const Complex& entry : op.entries())
        if (std::abs(entry.imag()) > kRealCutoff) return false;
    return true;
}

// Symmetrized real matrix for the solver: either the real part directly, or
// the [[A, -B], [B, A]] embedding of H = A + iB (eigenvalues doubled).
std::vector<double> real_solver_input(const HermitianOperator& op, bool real_path,
                                      std::size_t& out_dim) {
    const std::size_t d = op.dimension();
    if (real_path) {
        out_dim = d;
        std::vector<double> m(d * d);
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c)
                m[r * d + c] = 0.5 * (op.entry(r, c).real() + op.entry(c, r).real());
        return m;
    }
    out_dim = 2 * d;
    std::vector<double> m(4 * d * d);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            const double a = 0.5 * (op.entry(r, c).real() + op.entry(c, r).real());
            const double b = 0.5 * (op.entry(r, c).imag() - op.entry(c, r).imag());
            m[r * out_dim + c] = a;
            m[r * out_dim + (d + c)] = -b;
            m[(d + r) * out_dim + c] = b;
            m[(d + r) * out_dim + (d + c)] = a;
        }
    }
    return m;
}

}  // namespace

SymmetricEigenResult symmetric_eigen(const std::vector<double>& matrix, std::size_t dim,
                                     bool want_vectors) {
    if (dim == 0 || matrix.size() != dim * dim)
        throw LengthMismatchError("matrix must be a nonempty dim x dim array");

    std::vector<double> z(dim * dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
            z[r * dim + c] = 0.5 * (matrix[r * dim + c] + matrix[c * dim + r]);

    std::vector<double> d(dim, 0.0);
    std::vector<double> e(dim, 0.0);
    if (dim == 1) {
        d[0] = z[0];
        z[0] = 1.0;
    } else {
        householder_tridiagonalize(z, dim, d, e, want_vectors);
        ql_implicit_shift(d, e, z, dim, want_vectors);
    }

    std::vector<std::size_t> order(dim);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

    SymmetricEigenResult result;
    result.eigenvalues.reserve(dim);
    for (std::size_t k : order) result.eigenvalues.push_back(d[k]);
    if (want_vectors) {
        result.eigenvectors.resize(dim, std::vector<double>(dim));
        for (std::size_t out = 0; out < dim; ++out)
            for (std::size_t r = 0; r < dim; ++r)
                result.eigenvectors[out][r] = z[r * dim + order[out]];
    }
    return result;
}

double max_eigenvalue(const HermitianOperator& op) {
    std::size_t dim = 0;
    const bool real_path = is_numerically_real(op);
    const std::vector<double> m = real_solver_input(op, real_path, dim);
    return symmetric_eigen(m, dim, false).eigenvalues.back();
}

std::pair<double, std::vector<Complex>> max_eigenpair(const HermitianOperator& op) {
    const std::size_t d = op.dimension();
    std::size_t dim = 0;
    const bool real_path = is_numerically_real(op);
    const std::vector<double> m = real_solver_input(op, real_path, dim);
    const SymmetricEigenResult solved = symmetric_eigen(m, dim, true);

    const std::vector<double>& top = solved.eigenvectors.back();
    std::vector<Complex> vec(d);
    for (std::size_t i = 0; i < d; ++i)
        vec[i] = real_path ? Complex(top[i], 0.0) : Complex(top[i], top[d + i]);
    double norm_sq = 0.0;
    for (const Complex& v : vec) norm_sq += std::norm(v);
    const double norm = std::sqrt(norm_sq);
    for (Complex& v : vec) v /= norm;
    return {solved.eigenvalues.back(), vec};
}

}  // namespace chbound
