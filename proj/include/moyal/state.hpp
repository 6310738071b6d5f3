#pragma once

#include "moyal/element.hpp"

#include <string>
#include <vector>

namespace moyal {

struct TruncationOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Finite convex combination of normalized vector states.
struct MixedState {
    struct Component {
        double weight;
        std::vector<cplx> vector; // unit L2 norm, length store_dim
    };

    std::vector<Component> components;
    double theta = 1.0;
    bool accuracy_warning = false; // set when a coherent tail was dropped

    std::size_t dim() const
    {
        return components.empty() ? 0 : components.front().vector.size();
    }

    void validate(double tol = 1e-12) const;
};

/// Closed-form coherent state |kappa>, c_m = e^{-|k|^2/2theta} k^m / sqrt(m! theta^m).
/// Tail mass >= 1e-4 throws; >= 1e-10 sets the accuracy warning.
MixedState coherent_state(cplx kappa, std::size_t dim, double theta);

/// Basis vector state e_n.
MixedState eigenstate(std::size_t n, std::size_t dim, double theta, std::size_t pad = 4);

/// phi o alpha_kappa: each component vector psi -> u_kappa^dagger psi,
/// applied at the padded dimension and truncated back.
MixedState translate_state(const MixedState& phi, cplx kappa, std::size_t pad = 4);

/// Sum_i w_i <psi_i, (op + lambda I) psi_i>.
cplx evaluate(const MixedState& phi, const MoyalElement& f);

/// Expectation of a bare operator (no unit part).
cplx evaluate(const MixedState& phi, const FockOperator& f);

/// Max-overlap diagnostic between two single-component states
/// (|<psi, chi>|, phase-blind). For mixed states: weighted componentwise
/// overlap when the component counts match.
double state_overlap(const MixedState& a, const MixedState& b);

/// Density matrix Sum_i w_i psi_i psi_i^dagger.
CMat density_matrix(const MixedState& phi);

std::string state_to_json(const MixedState& phi);
MixedState state_from_json(const std::string& text);

} // namespace moyal
