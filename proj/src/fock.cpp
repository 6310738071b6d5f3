#include "moyal/fock.hpp"

#include <cmath>

namespace moyal {

void check_compatible(const FockOperator& a, const FockOperator& b)
{
    if (a.dim != b.dim)
        throw InvalidPair("operator dimensions differ");
    if (a.theta != b.theta)
        throw InvalidPair("operator theta parameters differ");
}

FockOperator make_annihilation(std::size_t dim, double theta)
{
    if (dim < 2)
        throw InvalidParameter("make_annihilation: dim must be >= 2");
    if (!(theta > 0.0))
        throw InvalidParameter("make_annihilation: theta must be > 0");
    FockOperator f(dim, theta);
    for (std::size_t m = 1; m < dim; ++m)
        f.entries(m - 1, m) = std::sqrt(theta * double(m));
    return f;
}

FockOperator make_creation(std::size_t dim, double theta)
{
    FockOperator a = make_annihilation(dim, theta);
    return {theta, a.entries.adjoint()};
}

FockOperator make_number(std::size_t dim, double theta)
{
    if (dim < 2)
        throw InvalidParameter("make_number: dim must be >= 2");
    if (!(theta > 0.0))
        throw InvalidParameter("make_number: theta must be > 0");
    FockOperator f(dim, theta);
    for (std::size_t m = 0; m < dim; ++m)
        f.entries(m, m) = theta * double(m);
    return f;
}

FockOperator make_identity(std::size_t dim, double theta)
{
    if (dim < 1)
        throw InvalidParameter("make_identity: dim must be >= 1");
    if (!(theta > 0.0))
        throw InvalidParameter("make_identity: theta must be > 0");
    return {theta, CMat::identity(dim)};
}

double operator_norm(const FockOperator& f)
{
    return linalg::operator_norm(f.entries);
}

FockOperator matrix_exponential(const FockOperator& f)
{
    if (!f.entries.all_finite())
        throw InvalidParameter("matrix_exponential: non-finite entries");
    return {f.theta, linalg::expm(f.entries)};
}

FockOperator commutator(const FockOperator& a, const FockOperator& b)
{
    check_compatible(a, b);
    return {a.theta, commutator(a.entries, b.entries)};
}

FockOperator ladder_commutator(Ladder which, const FockOperator& f, std::size_t pad)
{
    // Embedding into dim + pad, commuting with the ladder operator built
    // there, and reading back the leading block reduces to a banded
    // recurrence with zero-extension; the result is the same for any
    // pad >= 1, so the band formula is used directly.
    (void)pad;
    const std::size_t d = f.dim;
    const double th = f.theta;
    FockOperator out(d, th);
    const CMat& F = f.entries;
    auto fat = [&](std::size_t i, std::size_t j) -> cplx {
        return (i < d && j < d) ? F(i, j) : cplx{0.0, 0.0};
    };
    if (which == Ladder::annihilation) {
        // [a, F](m,n) = sqrt(theta (m+1)) F(m+1,n) - sqrt(theta n) F(m,n-1)
        for (std::size_t m = 0; m < d; ++m)
            for (std::size_t n = 0; n < d; ++n) {
                cplx v = std::sqrt(th * double(m + 1)) * fat(m + 1, n);
                if (n > 0)
                    v -= std::sqrt(th * double(n)) * F(m, n - 1);
                out.entries(m, n) = v;
            }
    } else {
        // [a*, F](m,n) = sqrt(theta m) F(m-1,n) - sqrt(theta (n+1)) F(m,n+1)
        for (std::size_t m = 0; m < d; ++m)
            for (std::size_t n = 0; n < d; ++n) {
                cplx v = -std::sqrt(th * double(n + 1)) * fat(m, n + 1);
                if (m > 0)
                    v += std::sqrt(th * double(m)) * F(m - 1, n);
                out.entries(m, n) = v;
            }
    }
    return out;
}

} // namespace moyal
