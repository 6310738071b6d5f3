#pragma once

#include "moyal/lipschitz.hpp"

namespace moyal {

struct InsufficientTruncation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidWitness : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Regularized distance witness: op = (e^{-i Xi} a e^{-(beta/theta) n} + adj)/sqrt2.
MoyalElement f_beta(double beta, double xi, std::size_t dim, double theta);

/// Banded commutator matrix c(beta) = [a, a_beta + a_beta*] at theta = 1:
/// diagonal (e^{-b} - (1-e^{-b})n) e^{-bn}, two-step upper off-diagonal
/// -e^{b}(1-e^{-b}) sqrt(n(n-1)) e^{-bn} at (n-2, n).
FockOperator c_beta_matrix(double beta, std::size_t dim);

struct SchurCertificate {
    double beta;
    double row_sup;     // sup_n sum_m |c_nm|
    double col_sup;     // sup_m sum_n |c_nm|
    double schur_bound; // sqrt(row_sup * col_sup)
    double exact_norm;  // dense spectral norm of the truncated c(beta)
    bool in_ball(double tol = 1e-10) const
    {
        return std::min(schur_bound, exact_norm) <= 1.0 + tol;
    }
};

/// Requires dim > 2/beta + 2 so the banded suprema are attained inside the
/// truncation.
SchurCertificate schur_certificate(double beta, std::size_t dim);

/// sqrt(row_sup * col_sup) of c(beta) alone, a closed-form upper bound on
/// ||c(beta)|| valid at any dim > 2/beta + 2; O(dim), no eigensolve.
double schur_bound(double beta, std::size_t dim);

/// Spectral norm of the banded c(beta) by power iteration with an O(dim)
/// matvec; usable at certificate dimensions far beyond the state space.
double c_beta_norm(double beta, std::size_t dim);

struct BetaThresholds {
    double beta0; // ln((1+sqrt5)/2)
    double beta1; // ln((sqrt(1+4e)-1)/2)
    double beta2; // 2 + W(-2 e^{-2})
    double gamma; // min(beta1, beta2) = beta1
};

BetaThresholds beta_thresholds();

/// Principal-branch Lambert W by Newton iteration on w e^w = x,
/// start value x*e, residual 1e-14, 50-iteration cap.
double lambert_w(double x);

/// The doubled-space witness b = (f, f + lambda_max 1) built from a
/// single-triple witness f1 with L(f1) <= 1. When f1's seminorm is known
/// from an analytic certificate (the f_beta case, where the truncated
/// matrix norm is boundary-inflated), pass it as certified_l1; negative
/// means "compute from the truncation".
DoubleElement pythagoras_witness(double d1, double lambda, const MoyalElement& f1,
                                 std::size_t pad = 4, double certified_l1 = -1.0);

/// lambda_max = 1/(|L| sqrt(d1^2 L^2 + 1)) and the matching scale factor
/// |L| d1 / sqrt(L^2 d1^2 + 1).
double pythagoras_lambda_max(double d1, double lambda);
double pythagoras_scale(double d1, double lambda);

} // namespace moyal
