#pragma once

#include "moyal/fock.hpp"

#include <complex>

namespace moyal {

/// Element of the minimally unitized Moyal algebra: an operator part
/// (the Schroedinger image of the Schwartz part) plus a scalar unit part.
struct MoyalElement {
    FockOperator op;
    cplx unit_part{0.0, 0.0};

    MoyalElement() = default;
    explicit MoyalElement(FockOperator f, cplx lambda = {0.0, 0.0})
        : op(std::move(f)), unit_part(lambda) {}

    static MoyalElement unit(std::size_t dim, double theta, cplx lambda = {1.0, 0.0})
    {
        return MoyalElement(FockOperator(dim, theta), lambda);
    }

    std::size_t dim() const { return op.dim; }
    double theta() const { return op.theta; }

    bool hermitian(double tol = 1e-12) const
    {
        return op.hermitian(tol) && std::abs(unit_part.imag()) <= tol;
    }

    /// op + unit_part * identity (the representation of the element).
    CMat full_matrix() const;

    MoyalElement adjoint() const;
    MoyalElement scaled(cplx s) const;
};

MoyalElement operator+(const MoyalElement& a, const MoyalElement& b);
MoyalElement operator-(const MoyalElement& a, const MoyalElement& b);

/// Star product: matrix product on operator parts, unitized combination of
/// the unit parts.
MoyalElement star_product(const MoyalElement& f, const MoyalElement& g);

enum class Derivative { d, dbar };

/// d -> -(1/theta)[a*, op], dbar -> (1/theta)[a, op]; evaluated under the
/// padding policy. Kills the unit part.
MoyalElement derivative(const MoyalElement& f, Derivative which, std::size_t pad = 4);

/// Translation unitary u_kappa = exp((conj(kappa) a - kappa a*)/(theta sqrt2)).
FockOperator displacement_unitary(cplx kappa, std::size_t dim, double theta);

/// Adjoint action of u_kappa, evaluated at the padded dimension and read
/// back on the store block. Unit part unchanged.
MoyalElement translate_element(const MoyalElement& f, cplx kappa, std::size_t pad = 4);

/// Safety bound for translation amplitudes: |kappa| <= 0.5 sqrt(theta dim).
double kappa_safety_bound(std::size_t dim, double theta);
bool kappa_within_safety(cplx kappa, std::size_t dim, double theta);

} // namespace moyal
