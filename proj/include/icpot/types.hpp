#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace icpot {

using Vec = std::vector<double>;

/// Dense row-major matrix, just large enough for transport costs and plans.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix from_rows(const std::vector<Vec>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const Vec& data() const { return data_; }
    Vec& data() { return data_; }

    double max_abs() const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Vec data_;
};

/// Shared numeric tolerances. Comparisons are absolute-plus-relative:
/// a residual r at scale s passes when r <= tol * (1 + s).
struct Tolerances {
    double feasibility = 1e-9;
    double admissibility = 1e-12;
    double duality_gap = 1e-8;
    double complementary = 1e-7;
};

/// Weighted points; coords are optional and only used by profile builders
/// and the synthetic benchmarks.
struct DiscreteMeasure {
    Vec weights;
    std::optional<std::vector<Vec>> coords;

    std::size_t size() const { return weights.size(); }
    double total_mass() const;
};

/// Full model specification: two marginals, a pairwise transport cost and
/// pointwise unmatched costs on both supports.
struct IcPotProblem {
    DiscreteMeasure mu;
    DiscreteMeasure nu;
    Matrix cost;
    Vec c_s;
    Vec c_t;

    std::size_t n() const { return mu.size(); }
    std::size_t m() const { return nu.size(); }
};

struct PlanEntry {
    std::size_t i;
    std::size_t j;
    double mass;
};

/// Sparse sub-coupling. Entries must be strictly positive, deduplicated and
/// within the marginals up to tolerance.
struct TransportPlan {
    std::vector<PlanEntry> entries;
    std::size_t n = 0;
    std::size_t m = 0;

    double total_mass() const;
    Vec row_sums() const;
    Vec col_sums() const;
    double cost_inner_product(const Matrix& cost) const;
};

/// Primal optimum of the slack formulation: plan plus the unmatched masses.
struct SlackSolution {
    TransportPlan plan;
    Vec u;
    Vec v;
    double objective = 0.0;
};

/// Potentials for the capped dual: f_i + g_j <= C_ij, f_i <= c_s(i), g_j <= c_t(j).
struct DualPotentials {
    Vec f;
    Vec g;
};

enum class SolveMode { full, sparse };

const char* to_string(SolveMode mode);

struct SolveReport {
    double primal_objective = 0.0;
    double dual_objective = 0.0;
    double duality_gap = 0.0;
    SolveMode solver_mode = SolveMode::full;
    std::size_t admissible_edge_count = 0;
    std::uint64_t iterations = 0;
};

/// Thrown when the pivoting loop exhausts its budget or breaks down
/// numerically; carries the best bound pair seen so far.
class SolveError : public std::runtime_error {
  public:
    SolveError(const std::string& what, double best_primal, double best_dual, std::uint64_t pivots)
        : std::runtime_error(what), best_primal_bound(best_primal), best_dual_bound(best_dual),
          pivots_done(pivots) {}

    double best_primal_bound;
    double best_dual_bound;
    std::uint64_t pivots_done;
};

/// Checks every type invariant and returns the problem unchanged.
/// Throws std::invalid_argument naming the offending field and index.
const IcPotProblem& validate_problem(const IcPotProblem& p);

/// <C,P> + <c_s,u> + <c_t,v> for a candidate solution.
double slack_objective(const IcPotProblem& p, const SlackSolution& sol);

/// Marginal residuals of P1 + u = mu and P^T 1 + v = nu (max over coordinates).
double max_marginal_residual(const IcPotProblem& p, const SlackSolution& sol);

/// Drops entries with mass <= floor; keeps the plan a valid sub-coupling.
TransportPlan drop_small_entries(const TransportPlan& plan, double floor);

}  // namespace icpot
