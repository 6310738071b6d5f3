#pragma once

#include "moyal/element.hpp"

#include <optional>
#include <utility>

namespace moyal {

/// Element of A+ (x) C^2: an ordered pair of unitized elements plus the
/// internal Dirac parameter Lambda.
struct DoubleElement {
    MoyalElement first;   // f_lambda
    MoyalElement second;  // g_lambdatilde
    double lambda_param;  // Lambda > 0

    DoubleElement(MoyalElement f, MoyalElement g, double lam)
        : first(std::move(f)), second(std::move(g)), lambda_param(lam)
    {
        check_compatible(first.op, second.op);
        if (!(lambda_param > 0.0))
            throw InvalidParameter("DoubleElement: Lambda must be > 0");
    }

    std::size_t dim() const { return first.dim(); }
    double theta() const { return first.theta(); }

    bool hermitian(double tol = 1e-12) const
    {
        return first.hermitian(tol) && second.hermitian(tol);
    }
};

/// Dirac commutator seminorm (sqrt2/theta) max(||[a*,F]||, ||[a,F]||);
/// the unit part never contributes.
double lipschitz_seminorm(const MoyalElement& f, std::size_t pad = 4);

/// Seminorm of the zero-extension of f to the full algebra: the stored
/// matrix is embedded to dim + pad and the commutator norms are taken at
/// the padded dimension without reading back a leading block. Exact for
/// any pad >= 2, since the commutator of a finitely supported element is
/// itself finitely supported. Unlike lipschitz_seminorm, never an
/// underestimate, so safe for certifying lower-bound candidates.
double extended_lipschitz_seminorm(const MoyalElement& f, std::size_t pad = 4);

/// Operator norm of the assembled 4K x 4K commutator [D', pi'(a')]
/// (spinor (x) internal block structure, commutators under the pad policy).
double double_lipschitz_norm(const DoubleElement& a, std::size_t pad = 4);

/// Doubled-space analogue of extended_lipschitz_seminorm: both components
/// are embedded to dim + pad before assembling the 4(K + pad) commutator.
/// Exact for the zero-extended pair: beyond the stored levels the operator
/// reduces to the unit-part coupling, whose contribution (Lambda |mu| on a
/// signed permutation) is already attained inside the padded block.
double extended_double_lipschitz_norm(const DoubleElement& a, std::size_t pad = 4);

/// The two block-norm values (one per component, each maximized over the
/// d / dbar derivative); computed only when double_lipschitz_norm <= 1 + tol,
/// otherwise nullopt.
std::optional<std::pair<double, double>>
double_block_inequalities(const DoubleElement& a, std::size_t pad = 4,
                          double tol = 1e-8);

} // namespace moyal
