#include "moyal/symplectic.hpp"

#include <cmath>

namespace moyal {

void EuclideanGenerator::validate(double tol) const
{
    if (std::abs(S[0][0] + S[1][1]) > tol)
        throw InvalidParameter("EuclideanGenerator: trace(S) must vanish");
}

bool EuclideanGenerator::is_rotation(double tol) const
{
    return std::abs(S[0][0]) <= tol && std::abs(S[1][1]) <= tol &&
           std::abs(S[0][1] + S[1][0]) <= tol;
}

EuclideanGenerator rotation_generator(Vec2 kappa)
{
    EuclideanGenerator g;
    g.S = {{{0.0, -1.0}, {1.0, 0.0}}};
    g.kappa = kappa;
    return g;
}

Mat2 rotation_matrix(double t)
{
    const double c = std::cos(t), s = std::sin(t);
    return {{{c, -s}, {s, c}}};
}

Vec2 apply(const Mat2& m, const Vec2& v)
{
    return {m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]};
}

double norm2(const Vec2& v)
{
    return std::hypot(v[0], v[1]);
}

MixedState rotate_state(const MixedState& phi, double t)
{
    MixedState out = phi;
    // Phase sign chosen so the coherent label rotates like the plane:
    // rotate(coherent(kappa), t) = coherent(e^{it} kappa) up to phase.
    for (auto& comp : out.components)
        for (std::size_t m = 0; m < comp.vector.size(); ++m)
            comp.vector[m] *= std::exp(cplx{0.0, t * double(m)});
    return out;
}

namespace {

void require_invariant(const MixedState& phi)
{
    for (double t : {0.7, 1.9, 3.1}) {
        if (state_overlap(rotate_state(phi, t), phi) < 1.0 - 1e-8)
            throw PreconditionFailed("base state is not rotation-invariant");
    }
}

// Apply q_1 = (a + a*)/sqrt2 or q_2 = i(a* - a)/sqrt2 to a level vector,
// growing it by one entry so the result is exact for the truncated state.
std::vector<cplx> apply_quadrature(const std::vector<cplx>& psi, double theta,
                                   int mu)
{
    const std::size_t n = psi.size();
    std::vector<cplx> out(n + 1, cplx{0.0, 0.0});
    auto at = [&](std::size_t j) { return j < n ? psi[j] : cplx{0.0, 0.0}; };
    const double inv_s2 = 1.0 / std::sqrt(2.0);
    for (std::size_t m = 0; m <= n; ++m) {
        cplx lower = (m > 0) ? std::sqrt(theta * double(m)) * psi[m - 1]
                             : cplx{0.0, 0.0};
        cplx upper = std::sqrt(theta * double(m + 1)) * at(m + 1);
        if (mu == 1)
            out[m] = inv_s2 * (lower + upper);
        else
            out[m] = cplx{0.0, inv_s2} * (lower - upper);
    }
    return out;
}

struct QuadratureMoments {
    double m1[3] = {0, 0, 0}; // phi(q_mu), mu = 1,2
    double m2[3] = {0, 0, 0}; // phi(q_mu^2)
};

QuadratureMoments quadrature_moments(const MixedState& phi)
{
    QuadratureMoments q;
    for (const auto& comp : phi.components) {
        for (int mu = 1; mu <= 2; ++mu) {
            std::vector<cplx> qpsi = apply_quadrature(comp.vector, phi.theta, mu);
            cplx first = 0.0;
            double second = 0.0;
            for (std::size_t m = 0; m < qpsi.size(); ++m) {
                if (m < comp.vector.size())
                    first += std::conj(comp.vector[m]) * qpsi[m];
                second += std::norm(qpsi[m]);
            }
            q.m1[mu] += comp.weight * first.real();
            q.m2[mu] += comp.weight * second;
        }
    }
    return q;
}

} // namespace

double chord_distance(const MixedState& phi_invariant, const Mat2& S,
                      const Vec2& kappa)
{
    require_invariant(phi_invariant);
    Vec2 moved = apply(S, kappa);
    return norm2({moved[0] - kappa[0], moved[1] - kappa[1]});
}

double arc_length_bound(const MixedState& phi_base, cplx kappa_eff, double tau)
{
    require_invariant(phi_base);
    FockOperator n_op = make_number(phi_base.dim(), phi_base.theta);
    const double base_moment = evaluate(phi_base, n_op).real();
    const double jj =
        2.0 * std::norm(kappa_eff) + phi_base.theta + 2.0 * base_moment;
    return tau * std::sqrt(jj);
}

double quantum_length_squared(const MixedState& phi, const MixedState& phit)
{
    if (phi.theta != phit.theta)
        throw InvalidPair("quantum_length_squared: theta parameters differ");
    QuadratureMoments a = quadrature_moments(phi);
    QuadratureMoments b = quadrature_moments(phit);
    double d = 0.0;
    for (int mu = 1; mu <= 2; ++mu)
        d += a.m2[mu] + b.m2[mu] - 2.0 * a.m1[mu] * b.m1[mu];
    return d;
}

double lambda_from_state(const MixedState& phi)
{
    return 1.0 / std::sqrt(quantum_length_squared(phi, phi));
}

double homothety_distance(double d, double omega)
{
    if (omega == 1.0)
        throw SingularParameter("homothety_distance: omega = 1");
    return d / std::abs(1.0 - omega);
}

} // namespace moyal
