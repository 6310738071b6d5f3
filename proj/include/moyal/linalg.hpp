#pragma once

#include "moyal/matrix.hpp"

#include <vector>

namespace moyal::linalg {

struct HermEig {
    std::vector<double> values; // ascending
    CMat vectors;               // column j is the eigenvector of values[j]
};

/// Full eigendecomposition of a Hermitian matrix (LAPACK zheev).
HermEig hermitian_eig(const CMat& a);

std::vector<double> hermitian_eigenvalues(const CMat& a);

/// Largest singular value via eigendecomposition of A^dagger A.
double operator_norm(const CMat& a);

struct SingularTriple {
    double sigma;
    std::vector<cplx> u, v; // A v = sigma u
};

/// Top singular triple by power iteration on A^dagger A, warm-startable.
/// Falls back to the dense route if convergence stalls.
SingularTriple top_singular(const CMat& a, const std::vector<cplx>* warm_v = nullptr,
                            double rel_tol = 1e-10, int max_iter = 500);

/// Solve A X = B (LAPACK zgesv). A is overwritten-safe (copied internally).
CMat solve(const CMat& a, const CMat& b);

/// Matrix exponential, scaling-and-squaring with Pade(13).
CMat expm(const CMat& a);

} // namespace moyal::linalg
