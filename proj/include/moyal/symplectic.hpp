#pragma once

#include "moyal/state.hpp"

#include <array>

namespace moyal {

struct PreconditionFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SingularParameter : std::domain_error {
    using std::domain_error::domain_error;
};

using Vec2 = std::array<double, 2>;
using Mat2 = std::array<Vec2, 2>; // row-major 2x2

/// Affine generator J(x) = S x + kappa with S in sp(2,R); only the
/// rotation part (S antisymmetric) is transport-supported.
struct EuclideanGenerator {
    Mat2 S{{{0.0, 0.0}, {0.0, 0.0}}};
    Vec2 kappa{0.0, 0.0};

    void validate(double tol = 1e-12) const;
    bool is_rotation(double tol = 1e-12) const; // S antisymmetric
};

/// The rotation generator J_R = (0 -1; 1 0) with translation part kappa.
EuclideanGenerator rotation_generator(Vec2 kappa = {0.0, 0.0});

/// Plane rotation matrix R(t).
Mat2 rotation_matrix(double t);

Vec2 apply(const Mat2& m, const Vec2& v);
double norm2(const Vec2& v);

/// Component vectors pick up number-operator phases e^{-i t m}, so the
/// annihilation operator rotates by e^{it} under the adjoint action.
MixedState rotate_state(const MixedState& phi, double t);

/// |S kappa - kappa| for a rotation S acting on the orbit of a
/// rotation-invariant base state translated by kappa. The base state is
/// checked for invariance at sampled angles.
double chord_distance(const MixedState& phi_invariant, const Mat2& S,
                      const Vec2& kappa);

/// Rotation-orbit arc bound tau * sqrt(2|kappa_eff|^2 + theta + 2 phi(n))
/// with kappa_eff the plane translation amplitude and phi the invariant
/// base state.
double arc_length_bound(const MixedState& phi_base, cplx kappa_eff, double tau);

/// Two-point quantum length: Sum_mu [phi(q_mu^2) + phit(q_mu^2)
/// - 2 phi(q_mu) phit(q_mu)], q_1 = (a + a*)/sqrt2, q_2 = i(a* - a)/sqrt2.
double quantum_length_squared(const MixedState& phi, const MixedState& phit);

/// Lambda = d_{L^2}(phi, phi)^{-1/2}.
double lambda_from_state(const MixedState& phi);

/// Homothety rescaling d / |1 - omega|; omega = 1 is singular.
double homothety_distance(double d, double omega);

} // namespace moyal
