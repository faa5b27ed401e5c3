#include "icpot/solver.hpp"

#include "icpot/network_simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace icpot {

namespace {

detail::TransportOptions to_engine_options(const SolverOptions& opts) {
    detail::TransportOptions out;
    out.max_pivots = opts.max_pivots;
    out.perturbation = opts.tie_break_perturbation;
    return out;
}

}  // namespace

IcPotResult solve_icpot(const IcPotProblem& p, SolveMode mode, const SolverOptions& opts) {
    validate_problem(p);
    const std::size_t n = p.n();
    const std::size_t m = p.m();

    const AdmissibleEdgeSet admissible = admissible_edges(p, opts.tol.admissibility);

    detail::TransportInstance inst;
    inst.supply = p.mu.weights;
    inst.supply.push_back(p.nu.total_mass());
    inst.demand = p.nu.weights;
    inst.demand.push_back(p.mu.total_mass());

    // Real edges first, then the rejection edges and the free corner. The
    // rejection edges plus the corner form a feasible spanning tree, so no
    // artificial arcs are ever needed.
    if (mode == SolveMode::full) {
        inst.arcs.reserve(n * m + n + m + 1);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                inst.arcs.push_back({static_cast<std::int32_t>(i), static_cast<std::int32_t>(j),
                                     p.cost(i, j)});
            }
        }
    } else {
        inst.arcs.reserve(admissible.size() + n + m + 1);
        for (const auto& [i, j] : admissible.edges) {
            inst.arcs.push_back(
                {static_cast<std::int32_t>(i), static_cast<std::int32_t>(j), p.cost(i, j)});
        }
    }
    const std::size_t real_arc_count = inst.arcs.size();
    std::vector<std::int64_t> tree;
    tree.reserve(n + m + 1);
    for (std::size_t i = 0; i < n; ++i) {
        tree.push_back(static_cast<std::int64_t>(inst.arcs.size()));
        inst.arcs.push_back({static_cast<std::int32_t>(i), static_cast<std::int32_t>(m), p.c_s[i]});
    }
    for (std::size_t j = 0; j < m; ++j) {
        tree.push_back(static_cast<std::int64_t>(inst.arcs.size()));
        inst.arcs.push_back({static_cast<std::int32_t>(n), static_cast<std::int32_t>(j), p.c_t[j]});
    }
    tree.push_back(static_cast<std::int64_t>(inst.arcs.size()));
    inst.arcs.push_back({static_cast<std::int32_t>(n), static_cast<std::int32_t>(m), 0.0});

    const detail::TransportResult res = detail::solve_transportation(inst, tree, to_engine_options(opts));

    IcPotResult out;
    out.solution.plan.n = n;
    out.solution.plan.m = m;
    for (std::size_t a = 0; a < real_arc_count; ++a) {
        if (res.flow[a] > 0.0) {
            out.solution.plan.entries.push_back({static_cast<std::size_t>(inst.arcs[a].tail),
                                                 static_cast<std::size_t>(inst.arcs[a].head),
                                                 res.flow[a]});
        }
    }
    std::sort(out.solution.plan.entries.begin(), out.solution.plan.entries.end(),
              [](const PlanEntry& a, const PlanEntry& b) {
                  return a.i != b.i ? a.i < b.i : a.j < b.j;
              });
    out.solution.u.assign(n, 0.0);
    out.solution.v.assign(m, 0.0);
    for (std::size_t k = 0; k < n; ++k) out.solution.u[k] = res.flow[real_arc_count + k];
    for (std::size_t k = 0; k < m; ++k) out.solution.v[k] = res.flow[real_arc_count + n + k];
    out.solution.objective = slack_objective(p, out.solution);

    // The engine's potentials solve the augmented dual. Shift so the dummy
    // source sits at zero, then clamp to the caps; at an optimum the clamp is
    // the identity whenever any transport occurs (the zero-cost corner arc is
    // then basic and ties the two dummy potentials together).
    const double shift = res.row_potential[n];
    out.duals.f.resize(n);
    out.duals.g.resize(m);
    for (std::size_t i = 0; i < n; ++i) {
        out.duals.f[i] = std::min(res.row_potential[i] - shift, p.c_s[i]);
    }
    for (std::size_t j = 0; j < m; ++j) {
        out.duals.g[j] = std::min(res.col_potential[j] + shift, p.c_t[j]);
    }

    out.report.primal_objective = out.solution.objective;
    out.report.dual_objective =
        std::inner_product(out.duals.f.begin(), out.duals.f.end(), p.mu.weights.begin(), 0.0) +
        std::inner_product(out.duals.g.begin(), out.duals.g.end(), p.nu.weights.begin(), 0.0);
    out.report.duality_gap = out.report.primal_objective - out.report.dual_objective;
    out.report.solver_mode = mode;
    out.report.admissible_edge_count = admissible.size();
    out.report.iterations = res.pivots;
    return out;
}

BalancedResult solve_balanced(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                              const Matrix& cost, const SolverOptions& opts) {
    const std::size_t n = mu.size();
    const std::size_t m = nu.size();
    if (cost.rows() != n || cost.cols() != m) {
        throw std::invalid_argument("balanced transport: cost matrix shape mismatch");
    }
    const double total_mu = mu.total_mass();
    const double total_nu = nu.total_mass();
    const double scale = 1.0 + std::max(total_mu, total_nu);
    if (std::abs(total_mu - total_nu) > opts.tol.feasibility * scale) {
        throw std::invalid_argument("balanced transport requires equal total masses, got " +
                                    std::to_string(total_mu) + " and " + std::to_string(total_nu));
    }

    detail::TransportInstance inst;
    inst.supply = mu.weights;
    inst.demand = nu.weights;
    inst.arcs.reserve(n * m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            inst.arcs.push_back(
                {static_cast<std::int32_t>(i), static_cast<std::int32_t>(j), cost(i, j)});
        }
    }
    const std::vector<std::int64_t> tree = detail::northwest_corner_tree(inst.supply, inst.demand);
    const detail::TransportResult res = detail::solve_transportation(inst, tree, to_engine_options(opts));

    BalancedResult out;
    out.plan.n = n;
    out.plan.m = m;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double f = res.flow[i * m + j];
            if (f > 0.0) out.plan.entries.push_back({i, j, f});
        }
    }
    // Potentials are defined up to a constant; pin the first source to zero.
    const double shift = n > 0 ? res.row_potential[0] : 0.0;
    out.potentials.f.resize(n);
    out.potentials.g.resize(m);
    for (std::size_t i = 0; i < n; ++i) out.potentials.f[i] = res.row_potential[i] - shift;
    for (std::size_t j = 0; j < m; ++j) out.potentials.g[j] = res.col_potential[j] + shift;

    out.report.primal_objective = res.objective;
    out.report.dual_objective =
        std::inner_product(out.potentials.f.begin(), out.potentials.f.end(), mu.weights.begin(), 0.0) +
        std::inner_product(out.potentials.g.begin(), out.potentials.g.end(), nu.weights.begin(), 0.0);
    out.report.duality_gap = out.report.primal_objective - out.report.dual_objective;
    out.report.solver_mode = SolveMode::full;
    out.report.admissible_edge_count = inst.arcs.size();
    out.report.iterations = res.pivots;
    return out;
}

IcPotResult solve_partial_w(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                            const Matrix& cost, double unmatched_price,
                            const SolverOptions& opts) {
    if (!(unmatched_price >= 0.0)) {
        throw std::invalid_argument("unmatched price must be nonnegative");
    }
    IcPotProblem p;
    p.mu = mu;
    p.nu = nu;
    p.cost = cost;
    p.c_s.assign(mu.size(), unmatched_price);
    p.c_t.assign(nu.size(), unmatched_price);
    return solve_icpot(p, SolveMode::sparse, opts);
}

}  // namespace icpot
