#include "moyal/lipschitz.hpp"

#include <cmath>

namespace moyal {

double lipschitz_seminorm(const MoyalElement& f, std::size_t pad)
{
    const double th = f.theta();
    FockOperator ca = ladder_commutator(Ladder::annihilation, f.op, pad);
    FockOperator cc = ladder_commutator(Ladder::creation, f.op, pad);
    return (std::sqrt(2.0) / th) *
           std::max(linalg::operator_norm(ca.entries),
                    linalg::operator_norm(cc.entries));
}

double extended_lipschitz_seminorm(const MoyalElement& f, std::size_t pad)
{
    MoyalElement fe(f.op.embedded(f.dim() + pad), f.unit_part);
    return lipschitz_seminorm(fe, pad);
}

namespace {

// pi_S(d f) and pi_S(dbar f) for the operator part of an element.
CMat deriv_block(const MoyalElement& f, Derivative which, std::size_t pad)
{
    return derivative(f, which, pad).op.entries;
}

void put_block(CMat& big, std::size_t bi, std::size_t bj, const CMat& blk,
               cplx scale)
{
    const std::size_t k = blk.rows();
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            big(bi * k + i, bj * k + j) = scale * blk(i, j);
}

} // namespace

double double_lipschitz_norm(const DoubleElement& a, std::size_t pad)
{
    const std::size_t k = a.dim();
    const cplx mi_sqrt2{0.0, -std::sqrt(2.0)};
    const double lam = a.lambda_param;

    CMat dbar_f = deriv_block(a.first, Derivative::dbar, pad);
    CMat d_f = deriv_block(a.first, Derivative::d, pad);
    CMat dbar_g = deriv_block(a.second, Derivative::dbar, pad);
    CMat d_g = deriv_block(a.second, Derivative::d, pad);

    // pi(g - f) including the unit-part difference.
    CMat m = (a.second - a.first).full_matrix();

    // Basis order: internal (x) spinor (x) Fock.
    CMat big(4 * k, 4 * k);
    // internal (1,1): [D, pi(f)]
    put_block(big, 0, 1, dbar_f, mi_sqrt2);
    put_block(big, 1, 0, d_f, mi_sqrt2);
    // internal (2,2): [D, pi(g)]
    put_block(big, 2, 3, dbar_g, mi_sqrt2);
    put_block(big, 3, 2, d_g, mi_sqrt2);
    // internal (1,2): Lambda Gamma pi(g - f), Gamma = diag(1,-1) on spinors
    put_block(big, 0, 2, m, cplx{lam, 0.0});
    put_block(big, 1, 3, m, cplx{-lam, 0.0});
    // internal (2,1): Lambda Gamma pi(f - g)
    put_block(big, 2, 0, m, cplx{-lam, 0.0});
    put_block(big, 3, 1, m, cplx{lam, 0.0});

    return linalg::operator_norm(big);
}

double extended_double_lipschitz_norm(const DoubleElement& a, std::size_t pad)
{
    const std::size_t n = a.dim() + pad;
    DoubleElement ext(MoyalElement(a.first.op.embedded(n), a.first.unit_part),
                      MoyalElement(a.second.op.embedded(n), a.second.unit_part),
                      a.lambda_param);
    return double_lipschitz_norm(ext, pad);
}

std::optional<std::pair<double, double>>
double_block_inequalities(const DoubleElement& a, std::size_t pad, double tol)
{
    if (double_lipschitz_norm(a, pad) > 1.0 + tol)
        return std::nullopt;

    const double half_lam2 = 0.5 * a.lambda_param * a.lambda_param;
    CMat m = (a.second - a.first).full_matrix();
    CMat mm = m.adjoint() * m;
    mm *= cplx{half_lam2, 0.0};

    auto block_value = [&](const MoyalElement& h) {
        double best = 0.0;
        for (Derivative which : {Derivative::d, Derivative::dbar}) {
            CMat dh = deriv_block(h, which, pad);
            CMat s = dh.adjoint() * dh;
            s += mm;
            best = std::max(best, linalg::operator_norm(s));
        }
        return best;
    };

    return std::make_pair(block_value(a.first), block_value(a.second));
}

} // namespace moyal
