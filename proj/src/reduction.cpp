#include "icpot/reduction.hpp"

#include <algorithm>
#include <cmath>

namespace icpot {

bool AdmissibleEdgeSet::contains(std::size_t i, std::size_t j) const {
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(i, j));
}

AugmentedProblem to_augmented(const IcPotProblem& p) {
    const std::size_t n = p.n();
    const std::size_t m = p.m();
    AugmentedProblem out;
    out.bar_mu = p.mu.weights;
    out.bar_mu.push_back(p.nu.total_mass());
    out.bar_nu = p.nu.weights;
    out.bar_nu.push_back(p.mu.total_mass());
    out.bar_cost = Matrix(n + 1, m + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) out.bar_cost(i, j) = p.cost(i, j);
        out.bar_cost(i, m) = p.c_s[i];
    }
    for (std::size_t j = 0; j < m; ++j) out.bar_cost(n, j) = p.c_t[j];
    out.bar_cost(n, m) = 0.0;  // dummy-dummy corner, exactly zero by definition
    return out;
}

SlackSolution from_augmented(const Matrix& bar_plan, const IcPotProblem& p, double feasibility_tol) {
    const std::size_t n = p.n();
    const std::size_t m = p.m();
    if (bar_plan.rows() != n + 1 || bar_plan.cols() != m + 1) {
        throw std::invalid_argument("augmented plan must be " + std::to_string(n + 1) + "x" +
                                    std::to_string(m + 1) + ", got " +
                                    std::to_string(bar_plan.rows()) + "x" +
                                    std::to_string(bar_plan.cols()));
    }
    const AugmentedProblem aug = to_augmented(p);
    const double scale = 1.0 + std::max(p.mu.total_mass(), p.nu.total_mass());
    for (std::size_t a = 0; a < n + 1; ++a) {
        double row = 0.0;
        for (std::size_t b = 0; b < m + 1; ++b) row += bar_plan(a, b);
        if (std::abs(row - aug.bar_mu[a]) > feasibility_tol * scale) {
            throw std::invalid_argument("augmented plan row " + std::to_string(a) +
                                        " violates its marginal by " +
                                        std::to_string(std::abs(row - aug.bar_mu[a])));
        }
    }
    for (std::size_t b = 0; b < m + 1; ++b) {
        double col = 0.0;
        for (std::size_t a = 0; a < n + 1; ++a) col += bar_plan(a, b);
        if (std::abs(col - aug.bar_nu[b]) > feasibility_tol * scale) {
            throw std::invalid_argument("augmented plan column " + std::to_string(b) +
                                        " violates its marginal by " +
                                        std::to_string(std::abs(col - aug.bar_nu[b])));
        }
    }

    SlackSolution sol;
    sol.plan.n = n;
    sol.plan.m = m;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (bar_plan(i, j) > 0.0) sol.plan.entries.push_back({i, j, bar_plan(i, j)});
        }
    }
    sol.u.resize(n);
    for (std::size_t i = 0; i < n; ++i) sol.u[i] = std::max(0.0, bar_plan(i, m));
    sol.v.resize(m);
    for (std::size_t j = 0; j < m; ++j) sol.v[j] = std::max(0.0, bar_plan(n, j));
    sol.objective = slack_objective(p, sol);
    return sol;
}

double reduced_cost(const IcPotProblem& p, std::size_t i, std::size_t j) {
    if (i >= p.n() || j >= p.m()) {
        throw std::invalid_argument("edge index (" + std::to_string(i) + ", " + std::to_string(j) +
                                    ") out of range for " + std::to_string(p.n()) + "x" +
                                    std::to_string(p.m()) + " problem");
    }
    return p.cost(i, j) - p.c_s[i] - p.c_t[j];
}

AdmissibleEdgeSet admissible_edges(const IcPotProblem& p, double admissibility_tol) {
    AdmissibleEdgeSet out;
    for (std::size_t i = 0; i < p.n(); ++i) {
        for (std::size_t j = 0; j < p.m(); ++j) {
            if (p.cost(i, j) <= p.c_s[i] + p.c_t[j] + admissibility_tol) {
                out.edges.emplace_back(i, j);
            }
        }
    }
    return out;  // construction order is already lexicographic
}

double rebate_constant(const IcPotProblem& p) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.n(); ++i) s += p.c_s[i] * p.mu.weights[i];
    for (std::size_t j = 0; j < p.m(); ++j) s += p.c_t[j] * p.nu.weights[j];
    return s;
}

}  // namespace icpot
