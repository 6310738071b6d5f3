#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "moyal/element.hpp"
#include "moyal/linalg.hpp"

#include <random>

using namespace moyal;

namespace {

CMat random_interior(std::size_t dim, std::size_t support, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    CMat m(dim, dim);
    for (std::size_t i = 0; i < support; ++i)
        for (std::size_t j = 0; j < support; ++j)
            m(i, j) = cplx{g(rng), g(rng)};
    return m;
}

} // namespace

TEST_CASE("ladder matrices and the truncated CCR")
{
    const std::size_t dim = 12;
    const double theta = 0.7;
    FockOperator a = make_annihilation(dim, theta);
    FockOperator c = make_creation(dim, theta);
    FockOperator n = make_number(dim, theta);

    CHECK((c.entries - a.entries.adjoint()).max_abs() == 0.0);
    for (std::size_t m = 0; m + 1 < dim; ++m)
        CHECK(std::abs(a.entries(m, m + 1) -
                       std::sqrt(theta * double(m + 1))) < 1e-14);

    // a* a = theta n exactly; [a, a*] = theta 1 in the interior with the
    // truncation defect -theta(dim-1)... at the last diagonal entry.
    CMat num = c.entries * a.entries;
    CHECK((num - n.entries).max_abs() < 1e-12);

    CMat ccr = commutator(a.entries, c.entries);
    for (std::size_t m = 0; m + 1 < dim; ++m)
        CHECK(std::abs(ccr(m, m) - theta) < 1e-13);
    CHECK(ccr(dim - 1, dim - 1).real() ==
          doctest::Approx(-theta * double(dim - 1)).epsilon(1e-13));
}

TEST_CASE("ladder_commutator equals the dense embed/commute/truncate oracle")
{
    const std::size_t dim = 20;
    const double theta = 1.3;
    std::mt19937_64 rng(42);
    std::normal_distribution<double> g(0.0, 1.0);
    CMat f(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            f(i, j) = cplx{g(rng), g(rng)};
    FockOperator fop{theta, f};

    for (std::size_t pad : {2u, 4u, 9u}) {
        const std::size_t big = dim + pad;
        CMat fe = f.embedded(big);
        CMat a_big = make_annihilation(big, theta).entries;
        CMat c_big = make_creation(big, theta).entries;

        CMat oracle_a = commutator(a_big, fe).leading_block(dim);
        CMat oracle_c = commutator(c_big, fe).leading_block(dim);

        CMat got_a = ladder_commutator(Ladder::annihilation, fop, pad).entries;
        CMat got_c = ladder_commutator(Ladder::creation, fop, pad).entries;

        CHECK((got_a - oracle_a).max_abs() < 1e-12);
        CHECK((got_c - oracle_c).max_abs() < 1e-12);
    }
}

TEST_CASE("star product: unitized matrix algebra")
{
    const std::size_t dim = 16;
    const double theta = 1.0;
    MoyalElement f(FockOperator{theta, random_interior(dim, dim, 1)}, {0.5, -0.2});
    MoyalElement g(FockOperator{theta, random_interior(dim, dim, 2)}, {-1.0, 0.1});
    MoyalElement h(FockOperator{theta, random_interior(dim, dim, 3)}, {0.0, 0.7});

    // Unit parts multiply; operator parts follow the unitized product rule.
    MoyalElement fg = star_product(f, g);
    CHECK(std::abs(fg.unit_part - f.unit_part * g.unit_part) < 1e-14);
    CMat expect = f.op.entries * g.op.entries;
    expect += g.unit_part * f.op.entries;
    expect += f.unit_part * g.op.entries;
    CHECK((fg.op.entries - expect).max_abs() < 1e-12);

    // Associativity (exact: the product of full matrices is associative).
    MoyalElement lhs = star_product(star_product(f, g), h);
    MoyalElement rhs = star_product(f, star_product(g, h));
    CHECK((lhs.op.entries - rhs.op.entries).max_abs() < 1e-10);
    CHECK(std::abs(lhs.unit_part - rhs.unit_part) < 1e-12);

    // The unit is neutral.
    MoyalElement one = MoyalElement::unit(dim, theta);
    MoyalElement fu = star_product(f, one);
    CHECK((fu.op.entries - f.op.entries).max_abs() < 1e-13);
    CHECK(std::abs(fu.unit_part - f.unit_part) < 1e-14);
}

TEST_CASE("derivatives: unit part killed, adjoint exchange, Leibniz rule")
{
    const std::size_t dim = 32;
    const std::size_t support = 20; // interior support absorbs truncation
    const double theta = 0.9;
    MoyalElement f(FockOperator{theta, random_interior(dim, support, 4)}, {1.2, 0.0});
    MoyalElement g(FockOperator{theta, random_interior(dim, support, 5)}, {-0.3, 0.0});

    MoyalElement one = MoyalElement::unit(dim, theta);
    CHECK(derivative(one, Derivative::d).op.entries.max_abs() == 0.0);
    CHECK(derivative(one, Derivative::dbar).op.entries.max_abs() == 0.0);

    // (d f)* = dbar (f*) on interior-supported elements.
    MoyalElement df = derivative(f, Derivative::d);
    MoyalElement dbar_fadj = derivative(f.adjoint(), Derivative::dbar);
    CHECK((df.op.entries.adjoint() - dbar_fadj.op.entries).max_abs() < 1e-11);

    // Leibniz: d(f*g) = df*g + f*dg. Supports stay clear of the boundary
    // so every commutator read-back is exact.
    for (Derivative which : {Derivative::d, Derivative::dbar}) {
        MoyalElement lhs = derivative(star_product(f, g), which);
        MoyalElement rhs = star_product(derivative(f, which), g) +
                           star_product(f, derivative(g, which));
        CHECK((lhs.op.entries - rhs.op.entries).max_abs() < 1e-9);
    }
}

TEST_CASE("displacement unitary and element translation")
{
    const std::size_t dim = 64;
    const double theta = 1.0;
    const cplx kappa{0.4, -0.3};

    CMat u = displacement_unitary(kappa, dim, theta).entries;
    CHECK((u.adjoint() * u - CMat::identity(dim)).max_abs() < 1e-11);

    // Translating an interior-supported element preserves hermiticity and
    // spectrum (unitary conjugation), up to the truncation read-back.
    MoyalElement f(FockOperator{theta, random_interior(dim, 20, 6).hermitian_part()});
    MoyalElement ft = translate_element(f, kappa);
    CHECK(ft.op.entries.is_hermitian(1e-10));
    auto before = linalg::hermitian_eigenvalues(f.op.entries);
    auto after = linalg::hermitian_eigenvalues(ft.op.entries);
    CHECK(std::abs(before.back() - after.back()) < 1e-6);
    CHECK(std::abs(before.front() - after.front()) < 1e-6);

    // Translating by zero is the identity.
    MoyalElement f0 = translate_element(f, {0.0, 0.0});
    CHECK((f0.op.entries - f.op.entries).max_abs() < 1e-11);
}

TEST_CASE("kappa safety bound")
{
    CHECK(kappa_safety_bound(64, 1.0) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(kappa_within_safety({3.9, 0.0}, 64, 1.0));
    CHECK(!kappa_within_safety({4.1, 0.0}, 64, 1.0));
    CHECK(kappa_within_safety({0.0, 1.9}, 16, 1.0));
}
