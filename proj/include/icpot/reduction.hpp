#pragma once

#include "icpot/types.hpp"

namespace icpot {

/// Balanced representation on supports extended by one dummy point per side:
/// bar_mu = (mu, |nu|_1), bar_nu = (nu, |mu|_1), bar_cost = [[C, c_s], [c_t^T, 0]].
struct AugmentedProblem {
    Vec bar_mu;
    Vec bar_nu;
    Matrix bar_cost;

    std::size_t n() const { return bar_mu.size() - 1; }
    std::size_t m() const { return bar_nu.size() - 1; }
};

/// Sorted sparse set of pairs (i, j) with C_ij <= c_s(i) + c_t(j) + tol.
/// Only such edges can carry mass at an optimum.
struct AdmissibleEdgeSet {
    std::vector<std::pair<std::size_t, std::size_t>> edges;

    bool contains(std::size_t i, std::size_t j) const;
    std::size_t size() const { return edges.size(); }
};

AugmentedProblem to_augmented(const IcPotProblem& p);

/// Extracts (P, u, v) from an augmented coupling: P is the top-left block,
/// u the last column, v the last row. Throws if bar_plan violates the
/// augmented marginals beyond tol.
SlackSolution from_augmented(const Matrix& bar_plan, const IcPotProblem& p,
                             double feasibility_tol = Tolerances{}.feasibility);

/// C_ij - c_s(i) - c_t(j): the separable rebate form of the edge cost.
double reduced_cost(const IcPotProblem& p, std::size_t i, std::size_t j);

AdmissibleEdgeSet admissible_edges(const IcPotProblem& p,
                                   double admissibility_tol = Tolerances{}.admissibility);

/// <c_s,mu> + <c_t,nu>: the additive constant relating the slack objective
/// to the reduced-cost inner product.
double rebate_constant(const IcPotProblem& p);

}  // namespace icpot
