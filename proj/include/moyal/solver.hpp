#pragma once

#include "moyal/optimal.hpp"
#include "moyal/state.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace moyal {

struct Inconsistent : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SolverOptions {
    std::size_t pad = 4;
    int restarts = 8;
    int max_iter = 2000;
    double stall_tol = 1e-9;
    double step0 = 0.5;
    std::uint64_t seed = 0;
    std::vector<double> beta_grid; // empty: default geometric grid
    int refine_rounds = 3;         // local refinement of the beta sweep
    // Smallest beta the sweep descends to. Feasibility of f_beta is
    // certified by the Schur bound at dim ~ 4/beta, independent of the
    // state dimension, so the floor is set by evaluation accuracy only.
    double beta_floor = 3e-6;
};

struct Diagnostics {
    double beta = 0.0; // beta of the best sweep witness, 0 when unused
    double d1 = 0.0;   // single-triple stage value (doubled-space runs)
    int iterations = 0;
    int restarts = 0;
    std::size_t dim = 0;
    double gap = std::numeric_limits<double>::infinity();
    bool ascent_unbounded = false; // still improving at the iteration cap
};

struct DistanceEstimate {
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();
    std::optional<MoyalElement> witness;
    std::optional<DoubleElement> double_witness;
    Diagnostics diagnostics;
};

/// |phi(f) - phit(f)| / max(L(f), 1). Throws Inconsistent when L(f) = 0
/// while the evaluations differ (truncation artifact).
double candidate_lower_bound(const MixedState& phi, const MixedState& phit,
                             const MoyalElement& f, std::size_t pad = 4);

/// Geometric grid {beta1, beta1/2, ...} down to the smallest beta with
/// dim > 2/beta + 2.
std::vector<double> default_beta_grid(std::size_t dim);

/// d(phi, phi o alpha_kappa): analytic upper |kappa|, lower from the
/// f_beta sweep at phase Xi = Arg kappa.
DistanceEstimate translation_distance(const MixedState& phi, cplx kappa,
                                      const SolverOptions& opts = {});

/// Subgradient ascent of (phi - phit)(F) / max(1, L(F)) over Hermitian
/// matrices, seeded with f_beta candidates and random Hermitian starts.
DistanceEstimate maximize_distance(const MixedState& phi, const MixedState& phit,
                                   const SolverOptions& opts = {});

/// Distance on the doubled space between (phi, delta^i) and (phit, delta^j).
DistanceEstimate double_distance(const MixedState& phi, int i,
                                 const MixedState& phit, int j, double lambda,
                                 std::optional<cplx> kappa_hint = std::nullopt,
                                 const SolverOptions& opts = {});

} // namespace moyal
