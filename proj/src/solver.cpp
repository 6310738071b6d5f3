#include "moyal/solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace moyal {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double real_trace_product(const CMat& a, const CMat& b)
{
    // Re tr(a b) for matching square matrices.
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            s += a(i, k) * b(k, i);
    return s.real();
}

// Seminorm of a Hermitian matrix with warm-started power iteration;
// keeps the top singular triple of the dominating commutator.
struct SeminormState {
    std::vector<cplx> warm_a, warm_c;

    struct Result {
        double value;
        Ladder dominant;
        std::vector<cplx> u, v;
    };

    Result eval(const CMat& f, double theta, std::size_t pad)
    {
        FockOperator fop{theta, f};
        CMat ca = ladder_commutator(Ladder::annihilation, fop, pad).entries;
        CMat cc = ladder_commutator(Ladder::creation, fop, pad).entries;
        auto ta = linalg::top_singular(ca, warm_a.empty() ? nullptr : &warm_a);
        auto tc = linalg::top_singular(cc, warm_c.empty() ? nullptr : &warm_c);
        warm_a = ta.v;
        warm_c = tc.v;
        const double s = std::sqrt(2.0) / theta;
        if (ta.sigma >= tc.sigma)
            return {s * ta.sigma, Ladder::annihilation, std::move(ta.u), std::move(ta.v)};
        return {s * tc.sigma, Ladder::creation, std::move(tc.u), std::move(tc.v)};
    }
};

// Leading K x K block of [E(v u^dagger), L] with L the ladder operator at
// the padded dimension; rank-1 structure makes this O(K^2).
CMat rank1_ladder_bracket(const std::vector<cplx>& v, const std::vector<cplx>& u,
                          Ladder which, double theta)
{
    const std::size_t k = v.size();
    CMat m(k, k);
    if (which == Ladder::annihilation) {
        // (v u^H a)(m,n) = v_m conj(u_{n-1}) sqrt(theta n)
        // (a v u^H)(m,n) = sqrt(theta (m+1)) v_{m+1} conj(u_n)
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                cplx t = 0.0;
                if (j > 0)
                    t += v[i] * std::conj(u[j - 1]) * std::sqrt(theta * double(j));
                if (i + 1 < k)
                    t -= std::sqrt(theta * double(i + 1)) * v[i + 1] * std::conj(u[j]);
                m(i, j) = t;
            }
    } else {
        // (v u^H a*)(m,n) = v_m conj(u_{n+1}) sqrt(theta (n+1))
        // (a* v u^H)(m,n) = sqrt(theta m) v_{m-1} conj(u_n)
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                cplx t = 0.0;
                if (j + 1 < k)
                    t += v[i] * std::conj(u[j + 1]) * std::sqrt(theta * double(j + 1));
                if (i > 0)
                    t -= std::sqrt(theta * double(i)) * v[i - 1] * std::conj(u[j]);
                m(i, j) = t;
            }
    }
    return m;
}

std::mt19937_64 rng_for(std::uint64_t seed, std::uint64_t stream)
{
    std::seed_seq sseq{static_cast<std::uint32_t>(seed),
                       static_cast<std::uint32_t>(seed >> 32),
                       static_cast<std::uint32_t>(stream),
                       static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(sseq);
}

CMat random_hermitian(std::size_t k, std::mt19937_64& rng)
{
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMat m(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            m(i, j) = cplx{gauss(rng), gauss(rng)};
    return m.hermitian_part();
}

} // namespace

double candidate_lower_bound(const MixedState& phi, const MixedState& phit,
                             const MoyalElement& f, std::size_t pad)
{
    const double delta = std::abs(evaluate(phi, f) - evaluate(phit, f));
    const double lip = lipschitz_seminorm(f, pad);
    if (lip <= 1e-14) {
        if (delta > 1e-10)
            throw Inconsistent("candidate_lower_bound: zero seminorm but "
                               "differing evaluations (truncation artifact)");
        return 0.0;
    }
    return delta / std::max(lip, 1.0);
}

std::vector<double> default_beta_grid(std::size_t dim)
{
    const double beta1 = beta_thresholds().beta1;
    std::vector<double> grid;
    for (double b = beta1; double(dim) > 2.0 / b + 2.0; b *= 0.5)
        grid.push_back(b);
    if (grid.empty())
        grid.push_back(beta1);
    return grid;
}

namespace {

// Certified f_beta sweep. Feasibility of f_beta in the Lipschitz ball is
// not decided from the truncated matrix (hard truncation destroys the
// boundary cancellation of c(beta) at small beta); it comes from the
// closed-form Schur bound evaluated at a certificate dimension ~ 4/beta,
// where the banded suprema are attained. Evaluation against the states
// only reads the leading block, whose entries are exact.
struct SweepOutcome {
    double value = -1.0;
    double beta = 0.0;
    double cert = 1.0; // certified bound on L(f_beta)
};

std::size_t certificate_dim(double beta)
{
    return std::size_t(4.0 / beta) + 16;
}

SweepOutcome beta_sweep(const MixedState& phi, const MixedState& phit,
                        double xi, const SolverOptions& opts)
{
    const std::size_t dim = phi.dim();
    const double beta1 = beta_thresholds().beta1;
    const double floor = std::max(opts.beta_floor, 1e-9);

    std::vector<double> grid = opts.beta_grid;
    if (grid.empty())
        for (double b = beta1; b >= floor; b *= 0.5)
            grid.push_back(b);

    SweepOutcome best;
    auto try_beta = [&](double b) {
        if (!(b > 0.0) || b > beta1)
            return;
        double s = schur_bound(b, certificate_dim(b));
        if (s > 1.0 + 1e-10)
            return;
        MoyalElement f = f_beta(b, xi, dim, phi.theta);
        double delta = std::abs(evaluate(phi, f) - evaluate(phit, f));
        double v = delta / std::max(s, 1.0);
        if (v > best.value) {
            best = {v, b, s};
        }
    };
    for (double b : grid)
        try_beta(b);
    if (best.value < 0.0)
        return best;

    // Local refinement around the best grid point.
    double lo = std::max(best.beta / 2.0, floor);
    double hi = std::min(best.beta * 2.0, beta1);
    for (int r = 0; r < opts.refine_rounds; ++r) {
        double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        try_beta(m1);
        try_beta(m2);
        if (best.beta < m1)
            hi = m1;
        else if (best.beta > m2)
            lo = m2;
        else {
            lo = (lo + m1) / 2.0;
            hi = (hi + m2) / 2.0;
        }
    }
    return best;
}

} // namespace

DistanceEstimate translation_distance(const MixedState& phi, cplx kappa,
                                      const SolverOptions& opts)
{
    const std::size_t dim = phi.dim();
    DistanceEstimate est;
    est.diagnostics.dim = dim;
    if (kappa == cplx{0.0, 0.0}) {
        est.lower = est.upper = 0.0;
        est.diagnostics.gap = 0.0;
        return est;
    }
    if (!kappa_within_safety(kappa, dim, phi.theta))
        throw TruncationOverflow("translation_distance: |kappa| beyond the "
                                 "truncation safety bound");

    MixedState phit = translate_state(phi, kappa, opts.pad);
    SweepOutcome sw = beta_sweep(phi, phit, std::arg(kappa), opts);

    est.lower = std::max(0.0, sw.value);
    est.upper = std::abs(kappa);
    if (est.lower > est.upper + 1e-7)
        throw Inconsistent("translation_distance: sweep value exceeds the "
                           "analytic bound |kappa|");
    est.witness = f_beta(sw.beta, std::arg(kappa), dim, phi.theta);
    est.diagnostics.beta = sw.beta;
    est.diagnostics.gap = est.upper - est.lower;
    return est;
}

namespace {

struct AscentResult {
    double best_j = 0.0;
    CMat best_f;
    int iterations = 0;
    bool unbounded = false;
};

// Projected subgradient ascent of J(F) = tr(rho_diff F)/max(1, L(F)) over
// Hermitian F.
AscentResult ascend(CMat f, const CMat& rho_diff, double theta,
                    const SolverOptions& opts)
{
    const std::size_t k = f.rows();
    SeminormState sem;
    AscentResult res;
    res.best_f = CMat(k, k);

    double delta = real_trace_product(rho_diff, f);
    if (delta < 0.0) {
        f *= cplx{-1.0, 0.0};
        delta = -delta;
    }

    int stall = 0;
    double recent_best = -kInf;
    for (int it = 0; it < opts.max_iter; ++it) {
        auto lip = sem.eval(f, theta, opts.pad);
        delta = real_trace_product(rho_diff, f);
        const double denom = std::max(1.0, lip.value);
        const double j = delta / denom;
        if (j > res.best_j) {
            if (j > res.best_j + opts.stall_tol)
                stall = 0;
            res.best_j = j;
            res.best_f = f;
            if (lip.value > 1.0)
                res.best_f *= cplx{1.0 / lip.value, 0.0};
        } else if (++stall > 100) {
            res.iterations = it + 1;
            return res;
        }
        if (it >= opts.max_iter - 10 && j > recent_best)
            recent_best = j;

        CMat grad = rho_diff;
        if (lip.value > 1.0) {
            CMat gl = rank1_ladder_bracket(lip.v, lip.u, lip.dominant, theta)
                          .hermitian_part();
            gl *= cplx{std::sqrt(2.0) / theta, 0.0};
            // d/dF [delta/L] = (L grad_delta - delta grad_L)/L^2
            CMat num = rho_diff;
            num *= cplx{lip.value, 0.0};
            gl *= cplx{delta, 0.0};
            num -= gl;
            num *= cplx{1.0 / (lip.value * lip.value), 0.0};
            grad = std::move(num);
        }
        double gn = grad.frobenius_norm();
        if (gn < 1e-14)
            break;
        const double step = opts.step0 / (1.0 + double(it) / 100.0);
        grad *= cplx{step / gn, 0.0};
        f += grad;
        // Renormalize into the ball; leaves J unchanged when L >= 1.
        auto lip2 = sem.eval(f, theta, opts.pad);
        if (lip2.value > 1.0)
            f *= cplx{1.0 / lip2.value, 0.0};
    }
    res.iterations = opts.max_iter;
    res.unbounded = recent_best > res.best_j - 1e-6 &&
                    res.best_j > 0 && stall < 10;
    return res;
}

} // namespace

DistanceEstimate maximize_distance(const MixedState& phi, const MixedState& phit,
                                   const SolverOptions& opts)
{
    const std::size_t dim = phi.dim();
    const double theta = phi.theta;
    DistanceEstimate est;
    est.diagnostics.dim = dim;
    est.upper = kInf;

    CMat rho_diff = density_matrix(phi) - density_matrix(phit);
    if (rho_diff.max_abs() < 1e-14) {
        est.lower = 0.0;
        est.witness = MoyalElement(FockOperator(dim, theta));
        return est;
    }

    // Phase of the apparent displacement between the two states seeds the
    // f_beta direction.
    FockOperator a_op = make_annihilation(dim, theta);
    cplx disp = evaluate(phit, a_op) - evaluate(phi, a_op);
    const double xi = (std::abs(disp) > 1e-12) ? std::arg(disp) : 0.0;

    std::vector<CMat> seeds;
    std::vector<double> grid = default_beta_grid(dim);
    std::sort(grid.begin(), grid.end());
    const int n_beta_seeds = std::min<int>(3, int(grid.size()));
    for (int i = 0; i < n_beta_seeds; ++i)
        seeds.push_back(f_beta(grid[i], xi, dim, theta).op.entries);
    for (int r = 0; int(seeds.size()) < std::max(opts.restarts, n_beta_seeds); ++r) {
        auto rng = rng_for(opts.seed, std::uint64_t(r) + 1);
        CMat f = random_hermitian(dim, rng);
        double lip = lipschitz_seminorm(MoyalElement({theta, f}), opts.pad);
        if (lip > 1e-12)
            f *= cplx{1.0 / lip, 0.0};
        seeds.push_back(std::move(f));
    }

    AscentResult best;
    for (const CMat& s : seeds) {
        AscentResult r = ascend(s, rho_diff, theta, opts);
        est.diagnostics.iterations += r.iterations;
        ++est.diagnostics.restarts;
        const bool better =
            r.best_j > best.best_j + 1e-12 ||
            (std::abs(r.best_j - best.best_j) <= 1e-12 && best.best_f.size() > 0 &&
             r.best_f.frobenius_norm() < best.best_f.frobenius_norm());
        if (better)
            best = std::move(r);
    }

    // The ascent objective uses the leading-block seminorm, which can
    // undershoot the seminorm of the zero-extended candidate near the
    // truncation boundary; certify the published bound with the extended
    // seminorm and rescale the witness accordingly.
    est.lower = 0.0;
    est.witness = MoyalElement(FockOperator(dim, theta));
    if (best.best_f.max_abs() > 0.0) {
        const double delta_best =
            std::abs(real_trace_product(rho_diff, best.best_f));
        const double l_ext = extended_lipschitz_seminorm(
            MoyalElement({theta, best.best_f}), opts.pad);
        const double scale = std::max(1.0, l_ext);
        est.lower = delta_best / scale;
        CMat wf = best.best_f;
        wf *= cplx{1.0 / scale, 0.0};
        est.witness = MoyalElement({theta, std::move(wf)});
    }
    est.diagnostics.ascent_unbounded = best.unbounded;

    // The certified f_beta sweep is a valid candidate family for any state
    // pair; for pairs related by a (possibly undeclared) translation it is
    // far more accurate than the ascent.
    SweepOutcome sw = beta_sweep(phi, phit, xi, opts);
    if (sw.value > est.lower) {
        est.lower = sw.value;
        est.witness = f_beta(sw.beta, xi, dim, theta);
        est.diagnostics.beta = sw.beta;
    }
    est.diagnostics.gap = kInf;
    return est;
}

namespace {

// Sparse block form of [D', pi'(a')] for the doubled-space ascent.
struct DoubleBlocks {
    // Basis order: internal (x) spinor (x) Fock; four K-blocks.
    CMat b01, b10, b23, b32; // Dirac commutator blocks
    CMat m;                  // pi(g - f) including unit parts
    double lam;
    std::size_t k;

    // y = B x on 4K vectors.
    std::vector<cplx> apply(const std::vector<cplx>& x) const
    {
        std::vector<cplx> y(4 * k, cplx{0, 0});
        auto seg = [&](const std::vector<cplx>& z, std::size_t b) {
            return std::vector<cplx>(z.begin() + b * k, z.begin() + (b + 1) * k);
        };
        auto add = [&](std::size_t b, const std::vector<cplx>& v, cplx s) {
            for (std::size_t i = 0; i < k; ++i)
                y[b * k + i] += s * v[i];
        };
        std::vector<cplx> x0 = seg(x, 0), x1 = seg(x, 1), x2 = seg(x, 2), x3 = seg(x, 3);
        add(0, matvec(b01, x1), 1.0);
        add(1, matvec(b10, x0), 1.0);
        add(2, matvec(b23, x3), 1.0);
        add(3, matvec(b32, x2), 1.0);
        add(0, matvec(m, x2), cplx{lam, 0});
        add(1, matvec(m, x3), cplx{-lam, 0});
        add(2, matvec(m, x0), cplx{-lam, 0});
        add(3, matvec(m, x1), cplx{lam, 0});
        return y;
    }

    std::vector<cplx> apply_adjoint(const std::vector<cplx>& x) const
    {
        std::vector<cplx> y(4 * k, cplx{0, 0});
        auto seg = [&](const std::vector<cplx>& z, std::size_t b) {
            return std::vector<cplx>(z.begin() + b * k, z.begin() + (b + 1) * k);
        };
        auto addh = [&](std::size_t b, const CMat& blk, const std::vector<cplx>& v,
                        cplx s) {
            std::vector<cplx> t = matvec(blk.adjoint(), v);
            for (std::size_t i = 0; i < k; ++i)
                y[b * k + i] += s * t[i];
        };
        std::vector<cplx> x0 = seg(x, 0), x1 = seg(x, 1), x2 = seg(x, 2), x3 = seg(x, 3);
        addh(1, b01, x0, 1.0);
        addh(0, b10, x1, 1.0);
        addh(3, b23, x2, 1.0);
        addh(2, b32, x3, 1.0);
        addh(2, m, x0, cplx{lam, 0});
        addh(3, m, x1, cplx{-lam, 0});
        addh(0, m, x2, cplx{-lam, 0});
        addh(1, m, x3, cplx{lam, 0});
        return y;
    }
};

DoubleBlocks make_double_blocks(const DoubleElement& a, std::size_t pad)
{
    const double theta = a.theta();
    const cplx mi_sqrt2{0.0, -std::sqrt(2.0)};
    DoubleBlocks blocks;
    blocks.k = a.dim();
    blocks.lam = a.lambda_param;
    blocks.b01 = derivative(a.first, Derivative::dbar, pad).op.entries;
    blocks.b01 *= mi_sqrt2;
    blocks.b10 = derivative(a.first, Derivative::d, pad).op.entries;
    blocks.b10 *= mi_sqrt2;
    blocks.b23 = derivative(a.second, Derivative::dbar, pad).op.entries;
    blocks.b23 *= mi_sqrt2;
    blocks.b32 = derivative(a.second, Derivative::d, pad).op.entries;
    blocks.b32 *= mi_sqrt2;
    blocks.m = (a.second - a.first).full_matrix();
    (void)theta;
    return blocks;
}

struct DoubleNormEval {
    double value;
    std::vector<cplx> u, v; // top singular pair, 4K each
};

DoubleNormEval double_norm_power(const DoubleBlocks& b,
                                 std::vector<cplx>* warm)
{
    const std::size_t n = 4 * b.k;
    std::vector<cplx> v(n);
    if (warm && warm->size() == n && vec_norm(*warm) > 0) {
        v = *warm;
    } else {
        for (std::size_t i = 0; i < n; ++i)
            v[i] = cplx{1.0, 0.3 * double(i % 5)};
    }
    double nv = vec_norm(v);
    for (auto& c : v) c /= nv;
    double s2 = 0.0, prev = -1.0;
    for (int it = 0; it < 600; ++it) {
        std::vector<cplx> w = b.apply_adjoint(b.apply(v));
        s2 = vec_norm(w);
        if (s2 == 0.0) break;
        for (auto& c : w) c /= s2;
        v = std::move(w);
        if (prev >= 0 && std::abs(s2 - prev) <= 1e-12 * s2)
            break;
        prev = s2;
    }
    if (warm) *warm = v;
    std::vector<cplx> bv = b.apply(v);
    double sigma = vec_norm(bv);
    for (auto& c : bv) c /= (sigma > 0 ? sigma : 1.0);
    return {sigma, std::move(bv), std::move(v)};
}

// Detect phit == translate_state(phi, kappa) and return kappa.
std::optional<cplx> detect_translation(const MixedState& phi,
                                       const MixedState& phit,
                                       std::optional<cplx> hint,
                                       std::size_t pad)
{
    cplx kappa;
    if (hint) {
        kappa = *hint;
    } else {
        FockOperator a_op = make_annihilation(phi.dim(), phi.theta);
        kappa = std::sqrt(2.0) * (evaluate(phit, a_op) - evaluate(phi, a_op));
    }
    if (std::abs(kappa) < 1e-12) {
        if (state_overlap(phi, phit) >= 1.0 - 1e-8)
            return cplx{0.0, 0.0};
        return std::nullopt;
    }
    if (!kappa_within_safety(kappa, phi.dim(), phi.theta))
        return std::nullopt;
    MixedState moved = translate_state(phi, kappa, pad);
    if (state_overlap(moved, phit) >= 1.0 - 1e-6)
        return kappa;
    return std::nullopt;
}

} // namespace

DistanceEstimate double_distance(const MixedState& phi, int i,
                                 const MixedState& phit, int j, double lambda,
                                 std::optional<cplx> kappa_hint,
                                 const SolverOptions& opts)
{
    if ((i != 1 && i != 2) || (j != 1 && j != 2))
        throw InvalidParameter("double_distance: sheet index must be 1 or 2");
    if (!(lambda > 0.0))
        throw InvalidParameter("double_distance: Lambda must be > 0");

    std::optional<cplx> kappa = detect_translation(phi, phit, kappa_hint, opts.pad);

    if (i == j) {
        if (kappa)
            return translation_distance(phi, *kappa, opts);
        return maximize_distance(phi, phit, opts);
    }

    const std::size_t dim = phi.dim();
    const double theta = phi.theta;
    DistanceEstimate est;
    est.diagnostics.dim = dim;

    // Single-triple stage: certified value d1, witness f1, and a certified
    // bound on L(f1).
    double d1 = 0.0;
    MoyalElement f1 = MoyalElement(FockOperator(dim, theta));
    double cert_l1 = 0.0;
    if (kappa && *kappa == cplx{0.0, 0.0}) {
        d1 = 0.0;
    } else {
        DistanceEstimate single = kappa ? translation_distance(phi, *kappa, opts)
                                        : maximize_distance(phi, phit, opts);
        if (single.witness) {
            f1 = *single.witness;
            if (single.diagnostics.beta > 0.0) {
                // f_beta witness: analytic certificate.
                cert_l1 = schur_bound(single.diagnostics.beta,
                                      certificate_dim(single.diagnostics.beta));
            } else {
                cert_l1 = extended_lipschitz_seminorm(f1, opts.pad);
                if (cert_l1 > 1.0) {
                    f1 = f1.scaled({1.0 / cert_l1, 0.0});
                    cert_l1 = 1.0;
                }
            }
            d1 = std::abs(evaluate(phi, f1) - evaluate(phit, f1));
        }
        est.diagnostics.beta = single.diagnostics.beta;
    }
    est.diagnostics.d1 = d1;

    DoubleElement witness =
        pythagoras_witness(d1, lambda, f1, opts.pad, cert_l1);
    // Both components share the operator part, so pi(g - f) = lambda_max 1
    // and the Lemma 5.4 block condition collapses to
    // s^2 L(f1)^2 + Lambda^2 lambda_max^2 <= s^2 + Lambda^2 lambda_max^2 = 1:
    // the witness is feasible whenever L(f1) <= 1, no 4K norm needed.
    est.lower = std::abs(evaluate(phi, witness.first) -
                         evaluate(phit, witness.second));
    est.double_witness = witness;

    if (kappa)
        est.upper = std::sqrt(std::norm(*kappa) + 1.0 / (lambda * lambda));
    else
        est.upper = kInf;
    est.diagnostics.gap = est.upper - est.lower;

    // Generic polish: subgradient ascent over (F, G, mu).
    if (!kappa) {
        CMat rho = density_matrix(phi);
        CMat rhot = density_matrix(phit);
        CMat f = witness.first.op.entries;
        CMat g = witness.second.op.entries;
        double mu = (witness.second.unit_part - witness.first.unit_part).real();
        std::vector<cplx> warm;
        double best = est.lower;
        CMat best_f = f, best_g = g;
        double best_mu = mu;
        const int iters = std::min(opts.max_iter, 500);
        int stall = 0;
        for (int it = 0; it < iters; ++it) {
            DoubleElement cur(MoyalElement({theta, f}),
                              MoyalElement({theta, g}, {mu, 0.0}), lambda);
            DoubleBlocks blocks = make_double_blocks(cur, opts.pad);
            DoubleNormEval nrm = double_norm_power(blocks, &warm);
            double dl = real_trace_product(rho, f) - real_trace_product(rhot, g) - mu;
            if (dl < 0) {
                f *= cplx{-1, 0};
                g *= cplx{-1, 0};
                mu = -mu;
                dl = -dl;
            }
            double jj = dl / std::max(1.0, nrm.value);
            if (jj > best + opts.stall_tol) {
                best = jj;
                best_f = f;
                best_g = g;
                best_mu = mu;
                stall = 0;
            } else if (++stall > 60) {
                break;
            }

            // Subgradient step.
            CMat gf = rho, gg = cplx{-1.0, 0.0} * rhot;
            double gmu = -1.0;
            if (nrm.value > 1.0) {
                auto seg = [&](const std::vector<cplx>& z, std::size_t b) {
                    return std::vector<cplx>(z.begin() + b * dim,
                                             z.begin() + (b + 1) * dim);
                };
                std::vector<cplx> u0 = seg(nrm.u, 0), u1 = seg(nrm.u, 1),
                                  u2 = seg(nrm.u, 2), u3 = seg(nrm.u, 3);
                std::vector<cplx> v0 = seg(nrm.v, 0), v1 = seg(nrm.v, 1),
                                  v2 = seg(nrm.v, 2), v3 = seg(nrm.v, 3);
                const cplx mi_sqrt2{0.0, -std::sqrt(2.0)};
                const double invth = 1.0 / theta;
                // d sigma / dF from the Dirac blocks of the first component.
                CMat mf =
                    (mi_sqrt2 * cplx{invth, 0.0}) *
                        rank1_ladder_bracket(v1, u0, Ladder::annihilation, theta);
                mf += (mi_sqrt2 * cplx{-invth, 0.0}) *
                      rank1_ladder_bracket(v0, u1, Ladder::creation, theta);
                CMat mg =
                    (mi_sqrt2 * cplx{invth, 0.0}) *
                        rank1_ladder_bracket(v3, u2, Ladder::annihilation, theta);
                mg += (mi_sqrt2 * cplx{-invth, 0.0}) *
                      rank1_ladder_bracket(v2, u3, Ladder::creation, theta);
                // d sigma / dM from the off-diagonal internal blocks.
                CMat n(dim, dim);
                for (std::size_t r = 0; r < dim; ++r)
                    for (std::size_t c = 0; c < dim; ++c)
                        n(r, c) = lambda * (v2[c] * std::conj(u0[r]) -
                                            v3[c] * std::conj(u1[r]) -
                                            v0[c] * std::conj(u2[r]) +
                                            v1[c] * std::conj(u3[r]));
                // n is d sigma / dM transposed into gradient form.
                CMat nmat = n.transpose();
                CMat grad_sf = (mf - nmat).hermitian_part();
                CMat grad_sg = nmat.hermitian_part() + mg.hermitian_part();
                double grad_smu = nmat.trace().real();

                const double L = nrm.value, L2 = L * L;
                CMat t1 = gf;
                t1 *= cplx{L, 0};
                grad_sf *= cplx{dl, 0};
                t1 -= grad_sf;
                t1 *= cplx{1.0 / L2, 0};
                gf = std::move(t1);

                CMat t2 = gg;
                t2 *= cplx{L, 0};
                grad_sg *= cplx{dl, 0};
                t2 -= grad_sg;
                t2 *= cplx{1.0 / L2, 0};
                gg = std::move(t2);

                gmu = (gmu * L - dl * grad_smu) / L2;
            }
            double gn = std::sqrt(gf.frobenius_norm() * gf.frobenius_norm() +
                                  gg.frobenius_norm() * gg.frobenius_norm() +
                                  gmu * gmu);
            if (gn < 1e-14)
                break;
            const double step = opts.step0 / (1.0 + double(it) / 100.0) / gn;
            gf *= cplx{step, 0};
            gg *= cplx{step, 0};
            f += gf;
            g += gg;
            f = f.hermitian_part();
            g = g.hermitian_part();
            mu += step * gmu;
            est.diagnostics.iterations = it + 1;
        }
        // The loop selects with the truncated 4K norm; re-certify the
        // winner with the extended doubled seminorm before publishing.
        if (best > est.lower) {
            DoubleElement bw(MoyalElement({theta, best_f}),
                             MoyalElement({theta, best_g}, {best_mu, 0.0}), lambda);
            const double bl = extended_double_lipschitz_norm(bw, opts.pad);
            const double dl_best = std::abs(real_trace_product(rho, best_f) -
                                            real_trace_product(rhot, best_g) -
                                            best_mu);
            double certified = dl_best / std::max(1.0, bl);
            // Keeping the report inside the Prop. 5.2 bracket built on the
            // single-triple stage is sound (a smaller certified bound is
            // still a bound) and keeps d1 and the doubled value consistent.
            certified = std::min(certified,
                                 std::sqrt(2.0 * (d1 * d1 +
                                                  1.0 / (lambda * lambda))));
            if (certified > est.lower) {
                est.lower = certified;
                if (bl > 1.0) {
                    bw = DoubleElement(bw.first.scaled({1.0 / bl, 0.0}),
                                       bw.second.scaled({1.0 / bl, 0.0}), lambda);
                }
                est.double_witness = bw;
            }
        }
    }
    return est;
}

} // namespace moyal
