#include "moyal/element.hpp"

#include <cmath>

namespace moyal {

CMat MoyalElement::full_matrix() const
{
    CMat m = op.entries;
    for (std::size_t i = 0; i < m.rows(); ++i)
        m(i, i) += unit_part;
    return m;
}

MoyalElement MoyalElement::adjoint() const
{
    return MoyalElement({op.theta, op.entries.adjoint()}, std::conj(unit_part));
}

MoyalElement MoyalElement::scaled(cplx s) const
{
    MoyalElement r = *this;
    r.op.entries *= s;
    r.unit_part *= s;
    return r;
}

MoyalElement operator+(const MoyalElement& a, const MoyalElement& b)
{
    check_compatible(a.op, b.op);
    return MoyalElement({a.op.theta, a.op.entries + b.op.entries},
                        a.unit_part + b.unit_part);
}

MoyalElement operator-(const MoyalElement& a, const MoyalElement& b)
{
    check_compatible(a.op, b.op);
    return MoyalElement({a.op.theta, a.op.entries - b.op.entries},
                        a.unit_part - b.unit_part);
}

MoyalElement star_product(const MoyalElement& f, const MoyalElement& g)
{
    check_compatible(f.op, g.op);
    // (f + lambda)(g + mu) = f g + lambda g + mu f + lambda mu
    CMat fg = f.op.entries * g.op.entries;
    CMat lg = g.op.entries;
    lg *= f.unit_part;
    CMat mf = f.op.entries;
    mf *= g.unit_part;
    fg += lg;
    fg += mf;
    return MoyalElement({f.op.theta, std::move(fg)}, f.unit_part * g.unit_part);
}

MoyalElement derivative(const MoyalElement& f, Derivative which, std::size_t pad)
{
    const double th = f.theta();
    FockOperator c = (which == Derivative::d)
                         ? ladder_commutator(Ladder::creation, f.op, pad)
                         : ladder_commutator(Ladder::annihilation, f.op, pad);
    const double s = (which == Derivative::d) ? -1.0 / th : 1.0 / th;
    c.entries *= cplx{s, 0.0};
    return MoyalElement(std::move(c), {0.0, 0.0});
}

FockOperator displacement_unitary(cplx kappa, std::size_t dim, double theta)
{
    FockOperator a = make_annihilation(dim, theta);
    const double s = 1.0 / (theta * std::sqrt(2.0));
    // (conj(kappa) a - kappa a*) * s  is anti-Hermitian.
    CMat gen = a.entries;
    gen *= std::conj(kappa) * s;
    CMat adj = a.entries.adjoint();
    adj *= kappa * s;
    gen -= adj;
    return matrix_exponential({theta, std::move(gen)});
}

MoyalElement translate_element(const MoyalElement& f, cplx kappa, std::size_t pad)
{
    if (kappa == cplx{0.0, 0.0})
        return f;
    const std::size_t wd = f.dim() + pad;
    FockOperator u = displacement_unitary(kappa, wd, f.theta());
    CMat big = u.entries * f.op.entries.embedded(wd) * u.entries.adjoint();
    return MoyalElement({f.theta(), big.leading_block(f.dim())}, f.unit_part);
}

double kappa_safety_bound(std::size_t dim, double theta)
{
    return 0.5 * std::sqrt(theta * double(dim));
}

bool kappa_within_safety(cplx kappa, std::size_t dim, double theta)
{
    return std::abs(kappa) <= kappa_safety_bound(dim, theta);
}

} // namespace moyal
