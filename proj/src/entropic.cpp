#include "icpot/entropic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace icpot {

double phi(double t) {
    if (t == 0.0) return 0.0;
    return t * (std::log(t) - 1.0);
}

double entropic_slack_objective(const SlackSolution& sol, const IcPotProblem& p, double eps) {
    double linear = slack_objective(p, sol);
    if (eps == 0.0) return linear;
    double entropy = 0.0;
    for (const auto& e : sol.plan.entries) entropy += phi(e.mass);
    for (double u : sol.u) entropy += phi(u);
    for (double v : sol.v) entropy += phi(v);
    return linear + eps * entropy;
}

double augmented_entropic_objective(const Matrix& bar_plan, const IcPotProblem& p, double eps) {
    const AugmentedProblem aug = to_augmented(p);
    if (bar_plan.rows() != aug.bar_mu.size() || bar_plan.cols() != aug.bar_nu.size()) {
        throw std::invalid_argument("augmented coupling has the wrong shape");
    }
    double out = 0.0;
    for (std::size_t a = 0; a < bar_plan.rows(); ++a) {
        for (std::size_t b = 0; b < bar_plan.cols(); ++b) {
            out += aug.bar_cost(a, b) * bar_plan(a, b) + eps * phi(bar_plan(a, b));
        }
    }
    return out;
}

Matrix embed_augmented(const SlackSolution& sol) {
    const std::size_t n = sol.u.size();
    const std::size_t m = sol.v.size();
    Matrix bar(n + 1, m + 1, 0.0);
    double transported = 0.0;
    for (const auto& e : sol.plan.entries) {
        bar(e.i, e.j) += e.mass;
        transported += e.mass;
    }
    for (std::size_t i = 0; i < n; ++i) bar(i, m) = sol.u[i];
    for (std::size_t j = 0; j < m; ++j) bar(n, j) = sol.v[j];
    bar(n, m) = transported;
    return bar;
}

Matrix sinkhorn_augmented(const IcPotProblem& p, const EntropicConfig& cfg) {
    validate_problem(p);
    if (!(cfg.epsilon > 0.0)) {
        throw std::invalid_argument("sinkhorn requires epsilon > 0");
    }
    const AugmentedProblem aug = to_augmented(p);
    const std::size_t rows = aug.bar_mu.size();
    const std::size_t cols = aug.bar_nu.size();
    for (std::size_t a = 0; a < rows; ++a) {
        if (!(aug.bar_mu[a] > 0.0)) {
            throw std::invalid_argument("sinkhorn requires strictly positive marginals; augmented "
                                        "source " +
                                        std::to_string(a) + " has mass " +
                                        std::to_string(aug.bar_mu[a]));
        }
    }
    for (std::size_t b = 0; b < cols; ++b) {
        if (!(aug.bar_nu[b] > 0.0)) {
            throw std::invalid_argument("sinkhorn requires strictly positive marginals; augmented "
                                        "target " +
                                        std::to_string(b) + " has mass " +
                                        std::to_string(aug.bar_nu[b]));
        }
    }

    const double eps = cfg.epsilon;
    Vec alpha(rows, 0.0);
    Vec beta(cols, 0.0);
    Vec log_mu(rows), log_nu(cols);
    for (std::size_t a = 0; a < rows; ++a) log_mu[a] = std::log(aug.bar_mu[a]);
    for (std::size_t b = 0; b < cols; ++b) log_nu[b] = std::log(aug.bar_nu[b]);

    auto row_lse = [&](std::size_t a) {
        // log sum_b exp((beta_b - C_ab) / eps), stabilised.
        double peak = -std::numeric_limits<double>::infinity();
        for (std::size_t b = 0; b < cols; ++b) {
            peak = std::max(peak, (beta[b] - aug.bar_cost(a, b)) / eps);
        }
        double s = 0.0;
        for (std::size_t b = 0; b < cols; ++b) {
            s += std::exp((beta[b] - aug.bar_cost(a, b)) / eps - peak);
        }
        return peak + std::log(s);
    };
    auto col_lse = [&](std::size_t b) {
        double peak = -std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < rows; ++a) {
            peak = std::max(peak, (alpha[a] - aug.bar_cost(a, b)) / eps);
        }
        double s = 0.0;
        for (std::size_t a = 0; a < rows; ++a) {
            s += std::exp((alpha[a] - aug.bar_cost(a, b)) / eps - peak);
        }
        return peak + std::log(s);
    };

    double residual = std::numeric_limits<double>::infinity();
    std::size_t it = 0;
    for (; it < cfg.max_iterations; ++it) {
        for (std::size_t a = 0; a < rows; ++a) alpha[a] = eps * (log_mu[a] - row_lse(a));
        for (std::size_t b = 0; b < cols; ++b) beta[b] = eps * (log_nu[b] - col_lse(b));

        // Column marginals are exact right after the beta update; only the
        // row marginals can still be off.
        residual = 0.0;
        for (std::size_t a = 0; a < rows; ++a) {
            double row_sum = 0.0;
            for (std::size_t b = 0; b < cols; ++b) {
                row_sum += std::exp((alpha[a] + beta[b] - aug.bar_cost(a, b)) / eps);
            }
            residual = std::max(residual, std::abs(row_sum - aug.bar_mu[a]));
        }
        if (residual <= cfg.convergence_tol) break;
    }
    if (residual > cfg.convergence_tol) {
        throw SolveError("sinkhorn did not reach marginal residual " +
                             std::to_string(cfg.convergence_tol) + " within " +
                             std::to_string(cfg.max_iterations) + " iterations (residual " +
                             std::to_string(residual) + ")",
                         residual, 0.0, it);
    }

    Matrix bar(rows, cols, 0.0);
    for (std::size_t a = 0; a < rows; ++a) {
        for (std::size_t b = 0; b < cols; ++b) {
            bar(a, b) = std::exp((alpha[a] + beta[b] - aug.bar_cost(a, b)) / eps);
        }
    }
    return bar;
}

DummyScaleReport dummy_scale_report(const IcPotProblem& p) {
    validate_problem(p);
    DummyScaleReport out;
    const double inf = std::numeric_limits<double>::infinity();
    double min_mu = inf;
    for (double w : p.mu.weights) min_mu = std::min(min_mu, w);
    double min_nu = inf;
    for (double w : p.nu.weights) min_nu = std::min(min_nu, w);
    out.dummy_source_mass = p.nu.total_mass();
    out.dummy_target_mass = p.mu.total_mass();
    out.dummy_source_over_min_target = min_nu > 0.0 ? out.dummy_source_mass / min_nu : inf;
    out.dummy_target_over_min_source = min_mu > 0.0 ? out.dummy_target_mass / min_mu : inf;
    return out;
}

}  // namespace icpot
