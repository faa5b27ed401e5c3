#include "icpot/types.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace icpot {

Matrix Matrix::from_rows(const std::vector<Vec>& rows) {
    Matrix out(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != out.cols()) {
            throw std::invalid_argument("ragged matrix: row " + std::to_string(i) +
                                        " has length " + std::to_string(rows[i].size()));
        }
        for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) = rows[i][j];
    }
    return out;
}

double Matrix::max_abs() const {
    double best = 0.0;
    for (double x : data_) best = std::max(best, std::abs(x));
    return best;
}

double DiscreteMeasure::total_mass() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

double TransportPlan::total_mass() const {
    double s = 0.0;
    for (const auto& e : entries) s += e.mass;
    return s;
}

Vec TransportPlan::row_sums() const {
    Vec r(n, 0.0);
    for (const auto& e : entries) r[e.i] += e.mass;
    return r;
}

Vec TransportPlan::col_sums() const {
    Vec c(m, 0.0);
    for (const auto& e : entries) c[e.j] += e.mass;
    return c;
}

double TransportPlan::cost_inner_product(const Matrix& cost) const {
    double s = 0.0;
    for (const auto& e : entries) s += cost(e.i, e.j) * e.mass;
    return s;
}

const char* to_string(SolveMode mode) {
    return mode == SolveMode::full ? "full" : "sparse";
}

namespace {

void check_entries_finite_nonneg(const Vec& v, const std::string& what, const std::string& index_name) {
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (!std::isfinite(v[k])) {
            throw std::invalid_argument("non-finite " + what + " at " + index_name + " " +
                                        std::to_string(k));
        }
        if (v[k] < 0.0) {
            throw std::invalid_argument("negative " + what + " at " + index_name + " " +
                                        std::to_string(k));
        }
    }
}

}  // namespace

const IcPotProblem& validate_problem(const IcPotProblem& p) {
    const std::size_t n = p.n();
    const std::size_t m = p.m();
    if (p.cost.rows() != n || p.cost.cols() != m) {
        throw std::invalid_argument("dimension mismatch: cost is " + std::to_string(p.cost.rows()) +
                                    "x" + std::to_string(p.cost.cols()) + " but mu has " +
                                    std::to_string(n) + " and nu has " + std::to_string(m) +
                                    " points");
    }
    if (p.c_s.size() != n) {
        throw std::invalid_argument("dimension mismatch: c_s has " + std::to_string(p.c_s.size()) +
                                    " entries, expected " + std::to_string(n));
    }
    if (p.c_t.size() != m) {
        throw std::invalid_argument("dimension mismatch: c_t has " + std::to_string(p.c_t.size()) +
                                    " entries, expected " + std::to_string(m));
    }
    if (p.mu.coords && p.mu.coords->size() != n) {
        throw std::invalid_argument("dimension mismatch: coords_mu has " +
                                    std::to_string(p.mu.coords->size()) + " points, expected " +
                                    std::to_string(n));
    }
    if (p.nu.coords && p.nu.coords->size() != m) {
        throw std::invalid_argument("dimension mismatch: coords_nu has " +
                                    std::to_string(p.nu.coords->size()) + " points, expected " +
                                    std::to_string(m));
    }
    check_entries_finite_nonneg(p.mu.weights, "mass", "source");
    check_entries_finite_nonneg(p.nu.weights, "mass", "target");
    check_entries_finite_nonneg(p.c_s, "unmatched cost", "source");
    check_entries_finite_nonneg(p.c_t, "unmatched cost", "target");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double c = p.cost(i, j);
            if (!std::isfinite(c)) {
                throw std::invalid_argument("non-finite transport cost at (" + std::to_string(i) +
                                            ", " + std::to_string(j) + ")");
            }
            if (c < 0.0) {
                throw std::invalid_argument("negative transport cost at (" + std::to_string(i) +
                                            ", " + std::to_string(j) + ")");
            }
        }
    }
    return p;
}

double slack_objective(const IcPotProblem& p, const SlackSolution& sol) {
    double s = sol.plan.cost_inner_product(p.cost);
    for (std::size_t i = 0; i < p.n(); ++i) s += p.c_s[i] * sol.u[i];
    for (std::size_t j = 0; j < p.m(); ++j) s += p.c_t[j] * sol.v[j];
    return s;
}

double max_marginal_residual(const IcPotProblem& p, const SlackSolution& sol) {
    Vec r = sol.plan.row_sums();
    Vec c = sol.plan.col_sums();
    double worst = 0.0;
    for (std::size_t i = 0; i < p.n(); ++i) {
        worst = std::max(worst, std::abs(r[i] + sol.u[i] - p.mu.weights[i]));
    }
    for (std::size_t j = 0; j < p.m(); ++j) {
        worst = std::max(worst, std::abs(c[j] + sol.v[j] - p.nu.weights[j]));
    }
    return worst;
}

TransportPlan drop_small_entries(const TransportPlan& plan, double floor) {
    TransportPlan out;
    out.n = plan.n;
    out.m = plan.m;
    for (const auto& e : plan.entries) {
        if (e.mass > floor) out.entries.push_back(e);
    }
    return out;
}

}  // namespace icpot
