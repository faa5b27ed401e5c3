#pragma once

#include "icpot/types.hpp"

#include <vector>

namespace icpot {

/// Residuals of the primal constraints P1 + u = mu, P^T 1 + v = nu, plus the
/// negativity and objective-identity checks. Checks report, they never throw.
struct PrimalReport {
    double max_row_residual = 0.0;
    double max_col_residual = 0.0;
    double min_entry = 0.0;
    double objective_residual = 0.0;

    bool feasible(double tol, double mass_scale) const {
        return max_row_residual <= tol * (1.0 + mass_scale) &&
               max_col_residual <= tol * (1.0 + mass_scale) && min_entry >= -tol * (1.0 + mass_scale);
    }
};

/// Worst violation per dual constraint family of the capped dual.
struct DualReport {
    double max_pair_violation = 0.0;       // f_i + g_j - C_ij
    double max_source_cap_violation = 0.0; // f_i - c_s(i)
    double max_target_cap_violation = 0.0; // g_j - c_t(j)

    double worst() const;
    bool feasible(double tol, double cost_scale) const {
        return worst() <= tol * (1.0 + cost_scale);
    }
};

struct PairViolation {
    std::size_t i;
    std::size_t j;
    double amount;
};

struct IndexViolation {
    std::size_t index;
    double amount;
};

/// Every complementary-slackness condition that fails at the given tolerance:
/// active plan entries must make the pair constraint tight, positive slacks
/// must saturate the matching cap.
struct SlacknessReport {
    std::vector<PairViolation> pair_conditions;
    std::vector<IndexViolation> source_conditions;
    std::vector<IndexViolation> target_conditions;

    bool satisfied() const {
        return pair_conditions.empty() && source_conditions.empty() && target_conditions.empty();
    }
};

PrimalReport check_primal_feasibility(const SlackSolution& sol, const IcPotProblem& p);

DualReport check_dual_feasibility(const DualPotentials& duals, const IcPotProblem& p);

SlacknessReport check_complementary_slackness(const SlackSolution& sol, const DualPotentials& duals,
                                              const IcPotProblem& p, double tol);

/// Edges carrying mass above tol whose cost strictly exceeds the sum of the
/// local unmatched costs. Boundary edges (equality) are permitted.
std::vector<PairViolation> check_domination(const SlackSolution& sol, const IcPotProblem& p,
                                            double tol);

struct CertificateSummary {
    PrimalReport primal;
    DualReport dual;
    SlacknessReport slackness;
    std::vector<PairViolation> dominated_edges;
    double duality_gap = 0.0;
    bool all_passed = false;
};

CertificateSummary run_all_checks(const IcPotProblem& p, const SlackSolution& sol,
                                  const DualPotentials& duals, const Tolerances& tol = {});

}  // namespace icpot
