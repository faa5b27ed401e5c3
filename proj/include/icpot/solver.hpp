#pragma once

#include "icpot/reduction.hpp"
#include "icpot/types.hpp"

namespace icpot {

struct SolverOptions {
    Tolerances tol;
    /// 0 means the default budget of 50 * (n + m + 2)^2 pivots.
    std::uint64_t max_pivots = 0;
    /// Optional deterministic tie-break perturbation, relative to the cost
    /// scale. Only degeneracy resolution is affected; reported objectives
    /// and duals always come from the unperturbed costs.
    double tie_break_perturbation = 0.0;
};

struct IcPotResult {
    SlackSolution solution;
    DualPotentials duals;
    SolveReport report;
};

struct BalancedResult {
    TransportPlan plan;
    DualPotentials potentials;
    SolveReport report;
};

/// Exact solve of the slack LP through its augmented balanced form. In
/// sparse mode transport is restricted to the admissible edge set, which
/// changes neither the optimal value nor the dual.
IcPotResult solve_icpot(const IcPotProblem& p, SolveMode mode = SolveMode::sparse,
                        const SolverOptions& opts = {});

/// Balanced Kantorovich transport between equal-mass marginals.
BalancedResult solve_balanced(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                              const Matrix& cost, const SolverOptions& opts = {});

/// Constant-cost partial transport: solve_icpot with c_s = c_t = A.
IcPotResult solve_partial_w(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                            const Matrix& cost, double unmatched_price,
                            const SolverOptions& opts = {});

}  // namespace icpot
