#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "moyal/linalg.hpp"

#include <random>

using namespace moyal;

namespace {

CMat random_matrix(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    CMat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = cplx{g(rng), g(rng)};
    return m;
}

} // namespace

TEST_CASE("basic algebra identities")
{
    CMat a = random_matrix(9, 1), b = random_matrix(9, 2);

    CMat s = a + b;
    s -= b;
    CHECK((s - a).max_abs() < 1e-14);

    CHECK((a.adjoint().adjoint() - a).max_abs() == 0.0);
    CHECK((a.transpose().conj() - a.adjoint()).max_abs() == 0.0);

    // tr(AB) = tr(BA)
    CHECK(std::abs((a * b).trace() - (b * a).trace()) < 1e-12);

    // commutator is trace-free
    CHECK(std::abs(commutator(a, b).trace()) < 1e-12);

    CMat h = a.hermitian_part();
    CHECK(h.is_hermitian(1e-14));
}

TEST_CASE("matvec and dot agree with the matrix product")
{
    CMat a = random_matrix(7, 3);
    std::vector<cplx> x(7), y;
    for (std::size_t i = 0; i < 7; ++i)
        x[i] = cplx{double(i) - 3.0, 0.5 * double(i)};
    y = matvec(a, x);
    for (std::size_t i = 0; i < 7; ++i) {
        cplx s = 0.0;
        for (std::size_t j = 0; j < 7; ++j)
            s += a(i, j) * x[j];
        CHECK(std::abs(s - y[i]) < 1e-13);
    }
    // <x, A x> = sum conj(x_i) y_i
    CHECK(std::abs(dot(x, y) - dot(x, matvec(a, x))) < 1e-13);
    CHECK(vec_norm(x) == doctest::Approx(std::sqrt(dot(x, x).real())).epsilon(1e-14));
}

TEST_CASE("hermitian_eig reproduces A and known spectra")
{
    // Pauli-like block: eigenvalues of [[0,1],[1,0]] are +-1.
    CMat p(2, 2);
    p(0, 1) = p(1, 0) = 1.0;
    auto e = linalg::hermitian_eig(p);
    CHECK(e.values[0] == doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(e.values[1] == doctest::Approx(1.0).epsilon(1e-13));

    CMat h = random_matrix(24, 4).hermitian_part();
    auto eh = linalg::hermitian_eig(h);
    // Reassemble V diag(w) V^dagger.
    CMat vd = eh.vectors;
    for (std::size_t j = 0; j < 24; ++j)
        for (std::size_t i = 0; i < 24; ++i)
            vd(i, j) *= eh.values[j];
    CMat back = vd * eh.vectors.adjoint();
    CHECK((back - h).max_abs() < 1e-11);

    auto vals = linalg::hermitian_eigenvalues(h);
    for (std::size_t i = 0; i < vals.size(); ++i)
        CHECK(vals[i] == doctest::Approx(eh.values[i]).epsilon(1e-12));
}

TEST_CASE("operator_norm and top_singular agree")
{
    CMat a = random_matrix(31, 5);
    double n1 = linalg::operator_norm(a);
    auto t = linalg::top_singular(a);
    CHECK(t.sigma == doctest::Approx(n1).epsilon(1e-9));

    // The triple satisfies A v = sigma u with unit vectors.
    std::vector<cplx> av = matvec(a, t.v);
    CHECK(vec_norm(t.u) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(vec_norm(t.v) == doctest::Approx(1.0).epsilon(1e-10));
    for (std::size_t i = 0; i < av.size(); ++i)
        CHECK(std::abs(av[i] - t.sigma * t.u[i]) < 1e-8);

    // Warm start converges to the same value.
    std::vector<cplx> warm = t.v;
    auto t2 = linalg::top_singular(a, &warm);
    CHECK(t2.sigma == doctest::Approx(n1).epsilon(1e-9));

    // Norm of a diagonal matrix is the largest |entry|.
    CMat d(6, 6);
    for (std::size_t i = 0; i < 6; ++i)
        d(i, i) = cplx{0.0, double(i) - 2.5};
    CHECK(linalg::operator_norm(d) == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("solve inverts the product")
{
    CMat a = random_matrix(16, 6);
    for (std::size_t i = 0; i < 16; ++i)
        a(i, i) += 8.0; // well-conditioned
    CMat x = random_matrix(16, 7);
    CMat b = a * x;
    CMat xs = linalg::solve(a, b);
    CHECK((xs - x).max_abs() < 1e-10);
}

TEST_CASE("expm: unitarity and known exponentials")
{
    // exp of i * Hermitian is unitary.
    CMat h = random_matrix(20, 8).hermitian_part();
    h *= cplx{0.0, 1.0};
    CMat u = linalg::expm(h);
    CMat uu = u.adjoint() * u;
    CHECK((uu - CMat::identity(20)).max_abs() < 1e-11);

    // exp(diag) is elementwise.
    CMat d(3, 3);
    d(0, 0) = cplx{1.0, 0.0};
    d(1, 1) = cplx{0.0, 3.14159};
    d(2, 2) = cplx{-2.0, 0.5};
    CMat ed = linalg::expm(d);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(std::abs(ed(i, i) - std::exp(d(i, i))) < 1e-12);
    CHECK(std::abs(ed(0, 1)) < 1e-13);

    // exp(A) exp(-A) = 1 (same matrix commutes with itself).
    CMat a = random_matrix(12, 9);
    a *= cplx{0.3, 0.0};
    CMat pos = linalg::expm(a);
    CMat neg_arg = a;
    neg_arg *= cplx{-1.0, 0.0};
    CMat neg = linalg::expm(neg_arg);
    CHECK((pos * neg - CMat::identity(12)).max_abs() < 1e-11);
}

TEST_CASE("embedded and leading_block are mutually inverse")
{
    CMat a = random_matrix(10, 10);
    CMat big = a.embedded(17);
    CHECK(big.rows() == 17);
    CHECK((big.leading_block(10) - a).max_abs() == 0.0);
    for (std::size_t i = 10; i < 17; ++i)
        CHECK(std::abs(big(i, i)) == 0.0);
}
