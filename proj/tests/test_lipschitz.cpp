#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "moyal/optimal.hpp"

#include <random>

using namespace moyal;

namespace {

CMat random_interior_hermitian(std::size_t dim, std::size_t support,
                               std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    CMat m(dim, dim);
    for (std::size_t i = 0; i < support; ++i)
        for (std::size_t j = 0; j < support; ++j)
            m(i, j) = cplx{g(rng), g(rng)};
    return m.hermitian_part();
}

} // namespace

TEST_CASE("seminorm basics: unit kills, homogeneity, triangle inequality")
{
    const std::size_t dim = 32;
    MoyalElement one = MoyalElement::unit(dim, 1.0, {3.0, 0.0});
    CHECK(lipschitz_seminorm(one) < 1e-13);

    MoyalElement f(FockOperator{1.0, random_interior_hermitian(dim, 20, 1)});
    MoyalElement g(FockOperator{1.0, random_interior_hermitian(dim, 20, 2)});
    const double lf = lipschitz_seminorm(f);
    const double lg = lipschitz_seminorm(g);
    CHECK(lf > 0.0);

    CHECK(lipschitz_seminorm(f.scaled({-2.5, 0.0})) ==
          doctest::Approx(2.5 * lf).epsilon(1e-10));
    CHECK(lipschitz_seminorm(f + g) <= lf + lg + 1e-10);

    // Adding a unit part changes nothing.
    MoyalElement fu = f;
    fu.unit_part = {7.0, 0.0};
    CHECK(lipschitz_seminorm(fu) == doctest::Approx(lf).epsilon(1e-12));
}

TEST_CASE("extended seminorm: equals truncated on interior support, "
          "dominates it in general")
{
    const std::size_t dim = 40;
    MoyalElement interior(
        FockOperator{1.0, random_interior_hermitian(dim, 24, 3)});
    const double lt = lipschitz_seminorm(interior);
    const double le = extended_lipschitz_seminorm(interior);
    CHECK(le == doctest::Approx(lt).epsilon(1e-10));

    // An element touching the boundary: the read-back drops commutator
    // rows, so the leading-block value can only be smaller.
    MoyalElement edge(FockOperator{1.0, random_interior_hermitian(dim, dim, 4)});
    CHECK(extended_lipschitz_seminorm(edge) >=
          lipschitz_seminorm(edge) - 1e-10);

    // The extended value is pad-independent for pad >= 2 (the commutator
    // of a finitely supported element is finitely supported).
    CHECK(extended_lipschitz_seminorm(edge, 2) ==
          doctest::Approx(extended_lipschitz_seminorm(edge, 7)).epsilon(1e-10));
}

TEST_CASE("seminorm is a translation isometry on interior elements")
{
    const std::size_t dim = 64;
    MoyalElement f(FockOperator{1.0, random_interior_hermitian(dim, 24, 5)});
    const double lf = lipschitz_seminorm(f);
    for (cplx kappa : {cplx{0.5, 0.0}, cplx{0.2, -0.6}}) {
        MoyalElement ft = translate_element(f, kappa);
        CHECK(lipschitz_seminorm(ft) == doctest::Approx(lf).epsilon(1e-6));
    }
}

TEST_CASE("f_beta seminorm matches the banded commutator norm")
{
    // At moderate beta and sufficient dim the truncated seminorm agrees
    // with ||c(beta)||, computed independently from the band recursion.
    const std::size_t dim = 128;
    for (double beta : {0.2, 0.1, 0.05}) {
        MoyalElement f = f_beta(beta, 0.3, dim, 1.0);
        const double lf = lipschitz_seminorm(f);
        const double cn = c_beta_norm(beta, 4 * dim);
        CHECK(lf == doctest::Approx(cn).epsilon(1e-6));
    }
}

TEST_CASE("doubled norm with equal components reduces to the seminorm")
{
    const std::size_t dim = 32;
    MoyalElement f(FockOperator{1.0, random_interior_hermitian(dim, 20, 6)});
    for (double lam : {0.5, 2.0}) {
        DoubleElement d(f, f, lam);
        CHECK(double_lipschitz_norm(d) ==
              doctest::Approx(lipschitz_seminorm(f)).epsilon(1e-9));
    }
}

TEST_CASE("doubled norm sees the unit-part difference")
{
    const std::size_t dim = 24;
    MoyalElement zero(FockOperator(dim, 1.0));
    MoyalElement shifted = zero;
    shifted.unit_part = {0.7, 0.0};
    // Pure unit difference: [D', pi'] is Lambda * 0.7 times a signed
    // permutation, so the norm is exactly Lambda * 0.7.
    for (double lam : {1.0, 3.0}) {
        DoubleElement d(zero, shifted, lam);
        CHECK(double_lipschitz_norm(d) ==
              doctest::Approx(lam * 0.7).epsilon(1e-10));
        CHECK(extended_double_lipschitz_norm(d) ==
              doctest::Approx(lam * 0.7).epsilon(1e-10));
    }
}

TEST_CASE("pythagoras witness: feasibility and the block inequalities")
{
    const std::size_t dim = 128;
    const double beta = 0.1;
    MoyalElement f1 = f_beta(beta, 0.0, dim, 1.0);
    REQUIRE(lipschitz_seminorm(f1) <= 1.0);

    for (double lam : {0.5, 1.0, 2.0}) {
        const double d1 = 0.9;
        DoubleElement w = pythagoras_witness(d1, lam, f1);

        // Scale and offset solve s^2 + Lambda^2 lambda_max^2 = 1.
        const double s = pythagoras_scale(d1, lam);
        const double lmax = pythagoras_lambda_max(d1, lam);
        CHECK(s * s + lam * lam * lmax * lmax ==
              doctest::Approx(1.0).epsilon(1e-12));
        CHECK((w.second.op.entries - w.first.op.entries).max_abs() < 1e-14);
        CHECK(std::abs(w.second.unit_part - w.first.unit_part - lmax) < 1e-14);

        CHECK(double_lipschitz_norm(w) <= 1.0 + 1e-7);
        auto blocks = double_block_inequalities(w);
        REQUIRE(blocks.has_value());
        CHECK(blocks->first <= 1.0 + 1e-7);
        CHECK(blocks->second <= 1.0 + 1e-7);
    }

    // A witness built from an element outside the ball is rejected.
    MoyalElement big = f1.scaled({3.0, 0.0});
    CHECK_THROWS_AS(pythagoras_witness(0.9, 1.0, big), InvalidWitness);
}
