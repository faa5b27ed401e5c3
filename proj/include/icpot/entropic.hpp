#pragma once

#include "icpot/reduction.hpp"
#include "icpot/types.hpp"

namespace icpot {

struct EntropicConfig {
    double epsilon = 1.0;
    std::size_t max_iterations = 10000;
    double convergence_tol = 1e-9;
};

/// phi(t) = t (log t - 1) with phi(0) = 0.
double phi(double t);

/// Linear slack objective plus eps * (sum phi(P) + sum phi(u) + sum phi(v)).
double entropic_slack_objective(const SlackSolution& sol, const IcPotProblem& p, double eps);

/// <bar_C, bar_P> + eps * sum phi(bar_P) over the full augmented matrix.
/// Differs from the slack objective of the embedded triple by exactly
/// eps * phi(total transported mass).
double augmented_entropic_objective(const Matrix& bar_plan, const IcPotProblem& p, double eps);

/// Embeds a feasible (P, u, v) as [[P, u], [v^T, e]] with e the transported mass.
Matrix embed_augmented(const SlackSolution& sol);

/// Log-domain Sinkhorn on the augmented balanced problem. Requires strictly
/// positive augmented marginals. Every entry of the returned coupling is
/// strictly positive; the dummy row and column interact with all real points.
Matrix sinkhorn_augmented(const IcPotProblem& p, const EntropicConfig& cfg);

/// Mass ratios between the dummy points and the lightest real points:
/// bar_mu_{n+1} / min_j nu_j and bar_nu_{m+1} / min_i mu_i, alongside the raw
/// dummy masses. A zero-mass real point makes the matching ratio infinite.
struct DummyScaleReport {
    double dummy_source_mass = 0.0;  // |nu|_1
    double dummy_target_mass = 0.0;  // |mu|_1
    double dummy_source_over_min_target = 0.0;
    double dummy_target_over_min_source = 0.0;
};

DummyScaleReport dummy_scale_report(const IcPotProblem& p);

}  // namespace icpot
