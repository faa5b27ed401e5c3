#include "icpot/certificates.hpp"

#include <algorithm>
#include <cmath>

namespace icpot {

double DualReport::worst() const {
    return std::max({max_pair_violation, max_source_cap_violation, max_target_cap_violation, 0.0});
}

PrimalReport check_primal_feasibility(const SlackSolution& sol, const IcPotProblem& p) {
    PrimalReport out;
    const Vec rows = sol.plan.row_sums();
    const Vec cols = sol.plan.col_sums();
    for (std::size_t i = 0; i < p.n(); ++i) {
        out.max_row_residual =
            std::max(out.max_row_residual, std::abs(rows[i] + sol.u[i] - p.mu.weights[i]));
    }
    for (std::size_t j = 0; j < p.m(); ++j) {
        out.max_col_residual =
            std::max(out.max_col_residual, std::abs(cols[j] + sol.v[j] - p.nu.weights[j]));
    }
    out.min_entry = 0.0;
    for (const auto& e : sol.plan.entries) out.min_entry = std::min(out.min_entry, e.mass);
    for (double u : sol.u) out.min_entry = std::min(out.min_entry, u);
    for (double v : sol.v) out.min_entry = std::min(out.min_entry, v);
    out.objective_residual = std::abs(sol.objective - slack_objective(p, sol));
    return out;
}

DualReport check_dual_feasibility(const DualPotentials& duals, const IcPotProblem& p) {
    DualReport out;
    for (std::size_t i = 0; i < p.n(); ++i) {
        for (std::size_t j = 0; j < p.m(); ++j) {
            out.max_pair_violation =
                std::max(out.max_pair_violation, duals.f[i] + duals.g[j] - p.cost(i, j));
        }
    }
    for (std::size_t i = 0; i < p.n(); ++i) {
        out.max_source_cap_violation =
            std::max(out.max_source_cap_violation, duals.f[i] - p.c_s[i]);
    }
    for (std::size_t j = 0; j < p.m(); ++j) {
        out.max_target_cap_violation =
            std::max(out.max_target_cap_violation, duals.g[j] - p.c_t[j]);
    }
    return out;
}

SlacknessReport check_complementary_slackness(const SlackSolution& sol, const DualPotentials& duals,
                                              const IcPotProblem& p, double tol) {
    SlacknessReport out;
    for (const auto& e : sol.plan.entries) {
        if (e.mass <= tol) continue;
        const double gap = std::abs(duals.f[e.i] + duals.g[e.j] - p.cost(e.i, e.j));
        if (gap > tol) out.pair_conditions.push_back({e.i, e.j, gap});
    }
    for (std::size_t i = 0; i < p.n(); ++i) {
        if (sol.u[i] <= tol) continue;
        const double gap = std::abs(duals.f[i] - p.c_s[i]);
        if (gap > tol) out.source_conditions.push_back({i, gap});
    }
    for (std::size_t j = 0; j < p.m(); ++j) {
        if (sol.v[j] <= tol) continue;
        const double gap = std::abs(duals.g[j] - p.c_t[j]);
        if (gap > tol) out.target_conditions.push_back({j, gap});
    }
    return out;
}

std::vector<PairViolation> check_domination(const SlackSolution& sol, const IcPotProblem& p,
                                            double tol) {
    std::vector<PairViolation> out;
    for (const auto& e : sol.plan.entries) {
        if (e.mass <= tol) continue;
        const double excess = p.cost(e.i, e.j) - p.c_s[e.i] - p.c_t[e.j];
        if (excess > tol) out.push_back({e.i, e.j, excess});
    }
    return out;
}

CertificateSummary run_all_checks(const IcPotProblem& p, const SlackSolution& sol,
                                  const DualPotentials& duals, const Tolerances& tol) {
    CertificateSummary out;
    out.primal = check_primal_feasibility(sol, p);
    out.dual = check_dual_feasibility(duals, p);
    out.slackness = check_complementary_slackness(sol, duals, p, tol.complementary);
    out.dominated_edges = check_domination(sol, p, tol.complementary);

    double dual_objective = 0.0;
    for (std::size_t i = 0; i < p.n(); ++i) dual_objective += duals.f[i] * p.mu.weights[i];
    for (std::size_t j = 0; j < p.m(); ++j) dual_objective += duals.g[j] * p.nu.weights[j];
    out.duality_gap = sol.objective - dual_objective;

    const double mass_scale = std::max(p.mu.total_mass(), p.nu.total_mass());
    const double cost_scale = p.cost.max_abs();
    const bool gap_ok = std::abs(out.duality_gap) <= tol.duality_gap * (1.0 + std::abs(sol.objective));
    const bool objective_ok =
        out.primal.objective_residual <= 1e-12 * (1.0 + std::abs(sol.objective));
    out.all_passed = out.primal.feasible(tol.feasibility, mass_scale) &&
                     out.dual.feasible(tol.complementary, cost_scale) && out.slackness.satisfied() &&
                     out.dominated_edges.empty() && gap_ok && objective_ok;
    return out;
}

}  // namespace icpot
