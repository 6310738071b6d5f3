/*
 * Acceptance gate: one pass/fail line per criterion, strict pinned
 * tolerances. The program exits nonzero if any criterion fails.
 */

#include "moyal/solver.hpp"
#include "moyal/symplectic.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

using namespace moyal;

namespace {

int criteria_passed = 0;
int criteria_failed = 0;
int checks = 0;
int check_failures = 0;
bool current_ok = true;

void check(bool cond, const char* what)
{
    ++checks;
    if (!cond) {
        ++check_failures;
        current_ok = false;
        std::printf("      ✗ %s\n", what);
    }
}

void checkf(bool cond, const char* fmt, double a, double b)
{
    ++checks;
    if (!cond) {
        ++check_failures;
        current_ok = false;
        std::printf("      ✗ ");
        std::printf(fmt, a, b);
        std::printf("\n");
    }
}

void criterion(const char* name, void (*body)())
{
    current_ok = true;
    const auto t0 = std::chrono::steady_clock::now();
    body();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (current_ok) {
        ++criteria_passed;
        std::printf("  ✓ %s  (%.1fs)\n", name, secs);
    } else {
        ++criteria_failed;
        std::printf("  ✗ FAILED: %s  (%.1fs)\n", name, secs);
    }
}

MixedState two_component_mixture(std::size_t dim)
{
    MixedState a = coherent_state({0.3, 0.0}, dim, 1.0);
    MixedState b = eigenstate(1, dim, 1.0);
    MixedState mix;
    mix.theta = 1.0;
    mix.components.push_back({0.6, a.components[0].vector});
    mix.components.push_back({0.4, b.components[0].vector});
    mix.validate();
    return mix;
}

std::mt19937_64 rng_acceptance(std::uint64_t stream)
{
    return std::mt19937_64(0x5eed0000 + stream);
}

cplx random_disc(std::mt19937_64& rng, double radius)
{
    std::uniform_real_distribution<double> u(-radius, radius);
    for (;;) {
        cplx z{u(rng), u(rng)};
        if (std::abs(z) <= radius)
            return z;
    }
}

// ── Criterion 1: translation distances ───────────────────────────────────

void c1_translation()
{
    const std::size_t dim = 128;
    std::vector<std::pair<std::string, MixedState>> states;
    states.emplace_back("ground", coherent_state({0, 0}, dim, 1.0));
    states.emplace_back("eigen3", eigenstate(3, dim, 1.0));
    states.emplace_back("coherent(0.5)", coherent_state({0.5, 0.0}, dim, 1.0));
    states.emplace_back("mixture", two_component_mixture(dim));

    for (const auto& [name, phi] : states) {
        for (double k : {0.25, 0.5, 1.0}) {
            const auto t0 = std::chrono::steady_clock::now();
            DistanceEstimate est = translation_distance(phi, {k, 0.0});
            const double secs = std::chrono::duration<double>(
                                    std::chrono::steady_clock::now() - t0)
                                    .count();
            checkf(est.lower <= k + 1e-7,
                   "lower %.12f exceeds |kappa| %.12f", est.lower, k);
            checkf(est.lower >= 0.98 * k,
                   "lower %.12f below 98%% of %.12f", est.lower, k);
            checkf(secs < 60.0, "pair took %.1fs (budget %.0fs)", secs, 60.0);
        }
    }
}

// ── Criterion 2: Schur certificate and thresholds ────────────────────────

void c2_schur()
{
    BetaThresholds t = beta_thresholds();

    // Defining equations to 1e-12.
    const double x0 = std::exp(t.beta0);
    checkf(std::abs(x0 * x0 - x0 - 1.0) < 1e-12,
           "beta0 residual %.3e (tol %.0e)", std::abs(x0 * x0 - x0 - 1.0),
           1e-12);
    const double x1 = std::exp(t.beta1);
    checkf(std::abs(x1 * x1 + x1 - std::exp(1.0)) < 1e-12,
           "beta1 residual %.3e (tol %.0e)",
           std::abs(x1 * x1 + x1 - std::exp(1.0)), 1e-12);
    const double r2 = (t.beta2 - 2.0) * std::exp(t.beta2 - 2.0) +
                      2.0 * std::exp(-2.0);
    checkf(std::abs(r2) < 1e-12, "beta2 residual %.3e (tol %.0e)",
           std::abs(r2), 1e-12);
    checkf(t.beta1 < t.beta2, "beta1 %.6f not below beta2 %.6f", t.beta1,
           t.beta2);

    // 20 geometric betas in (0, beta1].
    for (int i = 0; i < 20; ++i) {
        const double beta = t.beta1 * std::pow(0.5, double(i) / 2.0);
        const std::size_t dim = std::size_t(4.0 / beta) + 16;
        SchurCertificate cert = schur_certificate(beta, dim);
        checkf(cert.schur_bound <= 1.0 + 1e-10,
               "schur_bound %.12f at beta %.6f", cert.schur_bound, beta);
        checkf(cert.exact_norm <= 1.0 + 1e-10,
               "exact_norm %.12f at beta %.6f", cert.exact_norm, beta);
        check(cert.in_ball(), "certificate not in ball");

        // Pointwise weighted conditions for every level up to dim:
        // column sums bounded by e^{-beta}, row sums by e^{+beta}.
        const double em = std::exp(-beta), ep = std::exp(beta);
        bool cols_ok = true, rows_ok = true;
        auto diag = [&](std::size_t n) {
            return std::abs((em - (1.0 - em) * double(n)) *
                            std::exp(-beta * double(n)));
        };
        auto off = [&](std::size_t n) {
            return n >= 2 ? ep * (1.0 - em) *
                                std::sqrt(double(n) * double(n - 1)) *
                                std::exp(-beta * double(n))
                          : 0.0;
        };
        for (std::size_t n = 0; n <= dim; ++n) {
            if (diag(n) + off(n) > em + 1e-12)
                cols_ok = false;
            if (diag(n) + off(n + 2) > ep + 1e-12)
                rows_ok = false;
        }
        checkf(cols_ok, "column condition fails at beta %.6f (dim %.0f)",
               beta, double(dim));
        checkf(rows_ok, "row condition fails at beta %.6f (dim %.0f)", beta,
               double(dim));
    }
}

// ── Criterion 3: coherent-state pairs ────────────────────────────────────

void c3_coherent_pairs()
{
    const std::size_t dim = 128;
    auto rng = rng_acceptance(3);
    for (int i = 0; i < 10; ++i) {
        const cplx k = random_disc(rng, 1.0);
        const cplx kt = random_disc(rng, 1.0);
        MixedState a = coherent_state(k, dim, 1.0);
        MixedState b = coherent_state(kt, dim, 1.0);
        DistanceEstimate est = maximize_distance(a, b);
        const double exact = std::sqrt(2.0) * std::abs(kt - k);
        checkf(est.lower <= exact + 1e-7, "lower %.12f exceeds exact %.12f",
               est.lower, exact);
        if (exact > 1e-9)
            checkf(est.lower >= 0.99 * exact,
                   "lower %.12f below 99%% of exact %.12f", est.lower, exact);
    }
}

// ── Criterion 4: Pythagoras equality on the doubled space ────────────────

void c4_pythagoras()
{
    const std::size_t dim = 128;
    MixedState ground = coherent_state({0, 0}, dim, 1.0);
    const cplx kappa{1.0, 0.0};
    MixedState moved = translate_state(ground, kappa);

    for (double lam : {0.5, 1.0, 2.0}) {
        DistanceEstimate est = double_distance(ground, 1, moved, 2, lam, kappa);
        const double target = std::sqrt(1.0 + 1.0 / (lam * lam));
        checkf(est.lower <= target + 1e-7, "lower %.12f exceeds %.12f",
               est.lower, target);
        checkf(est.lower >= 0.98 * target, "lower %.12f below 98%% of %.12f",
               est.lower, target);
        checkf(std::abs(est.upper - target) < 1e-12,
               "upper %.12f != %.12f", est.upper, target);
    }

    // Witness feasibility, demonstrated at a beta where the truncated
    // matrix itself sits inside the ball: the assembled doubled-space
    // commutator norm of the (f, f + lambda_max 1) witness stays <= 1.
    MoyalElement f1 = f_beta(0.05, 0.0, dim, 1.0);
    const double d1 = std::abs(evaluate(ground, f1) - evaluate(moved, f1));
    for (double lam : {0.5, 1.0, 2.0}) {
        DoubleElement w = pythagoras_witness(d1, lam, f1);
        const double dn = extended_double_lipschitz_norm(w);
        checkf(dn <= 1.0 + 1e-7, "witness norm %.12f (Lambda %.1f)", dn, lam);
        const double s = pythagoras_scale(d1, lam);
        const double lmax = pythagoras_lambda_max(d1, lam);
        checkf(std::abs(s * s + lam * lam * lmax * lmax - 1.0) < 1e-12,
               "budget identity off by %.3e (tol %.0e)",
               std::abs(s * s + lam * lam * lmax * lmax - 1.0), 1e-12);
    }

    // Two-sided bracket on 20 random coherent pairs with random Lambda.
    auto rng = rng_acceptance(4);
    std::uniform_real_distribution<double> ul(0.5, 2.0);
    for (int i = 0; i < 20; ++i) {
        const cplx k = random_disc(rng, 1.0);
        const cplx kt = random_disc(rng, 1.0);
        const double lam = ul(rng);
        MixedState a = coherent_state(k, dim, 1.0);
        MixedState b = coherent_state(kt, dim, 1.0);
        DistanceEstimate est = double_distance(a, 1, b, 2, lam);
        const double d1 = est.diagnostics.d1;
        checkf(est.lower >= d1 - 1e-9, "lower %.12f below d1 %.12f",
               est.lower, d1);
        checkf(est.lower >= 1.0 / lam - 1e-9,
               "lower %.12f below internal %.12f", est.lower, 1.0 / lam);
        const double cap = std::sqrt(2.0 * (d1 * d1 + 1.0 / (lam * lam)));
        checkf(est.lower <= cap + 1e-9, "lower %.12f above bracket %.12f",
               est.lower, cap);
    }
}

// ── Criterion 5: pure internal distance ──────────────────────────────────

void c5_internal()
{
    MixedState ground = coherent_state({0, 0}, 128, 1.0);
    for (double lam : {0.5, 1.0, 2.0}) {
        DistanceEstimate est = double_distance(ground, 1, ground, 2, lam);
        checkf(std::abs(est.lower - 1.0 / lam) < 1e-10,
               "internal lower %.14f != %.14f", est.lower, 1.0 / lam);
        checkf(std::abs(est.upper - 1.0 / lam) < 1e-10,
               "internal upper %.14f != %.14f", est.upper, 1.0 / lam);
    }
}

// ── Criterion 6: quantum length vs spectral distance ─────────────────────

void c6_dfr()
{
    const std::size_t dim = 128;
    for (double theta : {1.0, 0.5}) {
        MixedState ground = coherent_state({0, 0}, dim, theta);
        const double self = quantum_length_squared(ground, ground);
        checkf(std::abs(self - 2.0 * theta) < 1e-8,
               "d_L2(omega0, omega0) %.12f != %.12f", self, 2.0 * theta);
    }

    auto rng = rng_acceptance(6);
    for (int i = 0; i < 10; ++i) {
        const cplx k = random_disc(rng, 1.0);
        const cplx kt = random_disc(rng, 1.0);
        MixedState a = coherent_state(k, dim, 1.0);
        MixedState b = coherent_state(kt, dim, 1.0);
        const double pair = quantum_length_squared(a, b);
        const double self = quantum_length_squared(a, a);
        const double gap = std::sqrt(std::max(0.0, pair - self));
        const double exact = std::sqrt(2.0) * std::abs(k - kt);
        checkf(std::abs(gap - exact) < 1e-6,
               "sqrt gap %.12f vs exact %.12f", gap, exact);
    }
}

// ── Criterion 7: arc bound dominates the chord ───────────────────────────

void c7_orbits()
{
    MixedState ground = coherent_state({0, 0}, 64, 1.0);
    const double two_pi = 2.0 * 3.14159265358979323846;
    for (double kn : {0.5, 1.0}) {
        for (int i = 0; i <= 64; ++i) {
            const double tau = two_pi * double(i) / 64.0;
            const double arc = arc_length_bound(ground, {kn, 0.0}, tau);
            const double chord =
                chord_distance(ground, rotation_matrix(tau), {kn, 0.0});
            checkf(arc >= chord, "arc %.12f below chord %.12f", arc, chord);
            if (i > 0)
                checkf(arc > chord, "no margin: arc %.12f chord %.12f", arc,
                       chord);
        }
    }
}

// ── Criterion 8: structural property sweeps ──────────────────────────────

void c8_properties()
{
    for (std::size_t dim : {32u, 64u, 128u}) {
        const std::size_t support = dim - 12; // clear of the boundary
        const double theta = 1.0;
        std::mt19937_64 rng = rng_acceptance(800 + dim);
        std::normal_distribution<double> g(0.0, 1.0);
        auto rand_int = [&]() {
            CMat m(dim, dim);
            for (std::size_t i = 0; i < support; ++i)
                for (std::size_t j = 0; j < support; ++j)
                    m(i, j) = cplx{g(rng), g(rng)};
            return m;
        };
        MoyalElement f(FockOperator{theta, rand_int()}, {0.4, 0.0});
        MoyalElement h(FockOperator{theta, rand_int()}, {-0.1, 0.0});

        // Star associativity.
        MoyalElement lhs = star_product(star_product(f, h), f);
        MoyalElement rhs = star_product(f, star_product(h, f));
        const double scale = std::max(1.0, lhs.op.entries.max_abs());
        checkf((lhs.op.entries - rhs.op.entries).max_abs() / scale < 1e-10,
               "associativity defect %.3e (dim %.0f)",
               (lhs.op.entries - rhs.op.entries).max_abs() / scale,
               double(dim));

        // Leibniz rule for both derivations.
        for (Derivative which : {Derivative::d, Derivative::dbar}) {
            MoyalElement dl = derivative(star_product(f, h), which);
            MoyalElement dr = star_product(derivative(f, which), h) +
                              star_product(f, derivative(h, which));
            checkf((dl.op.entries - dr.op.entries).max_abs() / scale < 1e-9,
                   "Leibniz defect %.3e (dim %.0f)",
                   (dl.op.entries - dr.op.entries).max_abs() / scale,
                   double(dim));
        }

        // Translation isometry of the seminorm.
        MoyalElement fh(FockOperator{theta, rand_int().hermitian_part()});
        const double l0 = lipschitz_seminorm(fh);
        const double l1 = lipschitz_seminorm(translate_element(fh, {0.3, -0.2}));
        checkf(std::abs(l0 - l1) / std::max(1.0, l0) < 1e-6,
               "isometry defect %.3e (dim %.0f)",
               std::abs(l0 - l1) / std::max(1.0, l0), double(dim));

        // Cauchy-Schwarz for the state pairing.
        MixedState phi = coherent_state({0.4, 0.2}, dim, theta);
        auto pairing = [&](const MoyalElement& x, const MoyalElement& y) {
            return evaluate(phi, star_product(x.adjoint(), y));
        };
        const double cs_l = std::norm(pairing(f, h));
        const double cs_r = pairing(f, f).real() * pairing(h, h).real();
        checkf(cs_l <= cs_r * (1.0 + 1e-10) + 1e-10,
               "Cauchy-Schwarz defect: lhs %.6e rhs %.6e", cs_l, cs_r);

        // Exponential unitarity of displacement operators.
        CMat u = displacement_unitary({0.5, -0.7}, dim, theta).entries;
        checkf((u.adjoint() * u - CMat::identity(dim)).max_abs() < 1e-10,
               "displacement unitarity defect %.3e (dim %.0f)",
               (u.adjoint() * u - CMat::identity(dim)).max_abs(),
               double(dim));
    }
}

} // namespace

int main()
{
    std::printf("acceptance gate\n");
    const auto t0 = std::chrono::steady_clock::now();

    criterion("1. translation distance d = |kappa| (4 states x 3 kappas)",
              c1_translation);
    criterion("2. Schur certificate, pointwise conditions, thresholds",
              c2_schur);
    criterion("3. coherent pairs within 1% of sqrt2 |kt - k|",
              c3_coherent_pairs);
    criterion("4. doubled-space Pythagoras equality and bracket",
              c4_pythagoras);
    criterion("5. pure internal distance 1/Lambda to 1e-10", c5_internal);
    criterion("6. quantum length vs spectral distance", c6_dfr);
    criterion("7. orbit arc bound dominates the chord", c7_orbits);
    criterion("8. structural properties at dims 32/64/128", c8_properties);

    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::printf("\n%d/%d criteria passed (%d checks, %d failures, %.1fs)\n",
                criteria_passed, criteria_passed + criteria_failed, checks,
                check_failures, secs);
    return criteria_failed == 0 ? 0 : 1;
}
