#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "chbound/state.hpp"

namespace chbound {

// Eigenvalues (ascending) of a dense real symmetric matrix, and, when
// requested, the matching orthonormal eigenvectors as columns
// (eigenvectors[k] is the vector for eigenvalues[k]).
struct SymmetricEigenResult {
    std::vector<double> eigenvalues;
    std::vector<std::vector<double>> eigenvectors;
};

// Householder tridiagonalization followed by implicit-shift QL iteration.
// `matrix` is row-major dim x dim and is symmetrized internally. Throws
// ConvergenceFailureError if the QL iteration fails to converge.
SymmetricEigenResult symmetric_eigen(const std::vector<double>& matrix, std::size_t dim,
                                     bool want_vectors);

// Largest eigenvalue of a Hermitian operator, absolute error <= 1e-9.
// Operators with negligible imaginary parts are solved directly; genuinely
// complex ones go through the standard real 2d x 2d embedding.
double max_eigenvalue(const HermitianOperator& op);

// Largest eigenvalue together with a unit-norm eigenvector.
std::pair<double, std::vector<Complex>> max_eigenpair(const HermitianOperator& op);

}  // namespace chbound
