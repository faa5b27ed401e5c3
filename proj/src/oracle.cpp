#include "icpot/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace icpot {

namespace {

// The slack LP in standard equality form. Variables are laid out as
// [P_00 .. P_{n-1,m-1} (row-major), u_0 .. u_{n-1}, v_0 .. v_{m-1}];
// constraint r < n is the source row r, constraint n + c the target column c.
struct StandardForm {
    std::size_t n;
    std::size_t m;
    std::size_t num_vars;
    std::size_t num_rows;
    Vec objective;
    Vec rhs;

    explicit StandardForm(const IcPotProblem& p) : n(p.n()), m(p.m()) {
        num_vars = n * m + n + m;
        num_rows = n + m;
        objective.resize(num_vars);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < m; ++j) objective[i * m + j] = p.cost(i, j);
        }
        for (std::size_t i = 0; i < n; ++i) objective[n * m + i] = p.c_s[i];
        for (std::size_t j = 0; j < m; ++j) objective[n * m + n + j] = p.c_t[j];
        rhs = p.mu.weights;
        rhs.insert(rhs.end(), p.nu.weights.begin(), p.nu.weights.end());
    }

    double coefficient(std::size_t row, std::size_t var) const {
        if (var < n * m) {
            const std::size_t i = var / m;
            const std::size_t j = var % m;
            return (row == i || row == n + j) ? 1.0 : 0.0;
        }
        if (var < n * m + n) return row == var - n * m ? 1.0 : 0.0;
        return row == n + (var - n * m - n) ? 1.0 : 0.0;
    }
};

SlackSolution assemble(const IcPotProblem& p, const Vec& x) {
    const std::size_t n = p.n();
    const std::size_t m = p.m();
    SlackSolution sol;
    sol.plan.n = n;
    sol.plan.m = m;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double mass = x[i * m + j];
            if (mass > 0.0) sol.plan.entries.push_back({i, j, mass});
        }
    }
    sol.u.assign(x.begin() + n * m, x.begin() + n * m + n);
    sol.v.assign(x.begin() + n * m + n, x.end());
    for (double& w : sol.u) w = std::max(0.0, w);
    for (double& w : sol.v) w = std::max(0.0, w);
    sol.objective = slack_objective(p, sol);
    return sol;
}

}  // namespace

SlackSolution oracle_solve(const IcPotProblem& p) {
    validate_problem(p);
    if (p.n() * p.m() > 36) {
        throw std::invalid_argument("oracle_solve is restricted to n*m <= 36, got " +
                                    std::to_string(p.n() * p.m()));
    }
    const StandardForm lp(p);
    const std::size_t rows = lp.num_rows;
    const std::size_t cols = lp.num_vars;

    // Tableau with an extra rhs column and a reduced-cost row. The slack
    // variables u, v form a feasible identity basis, so no phase one.
    std::vector<Vec> tab(rows + 1, Vec(cols + 1, 0.0));
    std::vector<std::size_t> basis(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) tab[r][c] = lp.coefficient(r, c);
        tab[r][cols] = lp.rhs[r];
        basis[r] = lp.n * lp.m + r;
    }
    for (std::size_t c = 0; c < cols; ++c) {
        double rc = lp.objective[c];
        for (std::size_t r = 0; r < rows; ++r) rc -= lp.objective[basis[r]] * lp.coefficient(r, c);
        tab[rows][c] = rc;
    }

    const double eps = 1e-11 * (1.0 + p.cost.max_abs());
    const double ratio_eps = 1e-11;
    const std::uint64_t budget = 2000000;
    std::uint64_t iters = 0;
    while (true) {
        // Bland's rule: smallest-index entering column, smallest basic index
        // on ratio ties. Guarantees termination without perturbation.
        std::size_t enter = cols;
        for (std::size_t c = 0; c < cols; ++c) {
            if (tab[rows][c] < -eps) {
                enter = c;
                break;
            }
        }
        if (enter == cols) break;
        std::size_t leave = rows;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < rows; ++r) {
            if (tab[r][enter] > ratio_eps) {
                const double ratio = tab[r][cols] / tab[r][enter];
                if (ratio < best_ratio - 1e-15 ||
                    (ratio <= best_ratio + 1e-15 && (leave == rows || basis[r] < basis[leave]))) {
                    best_ratio = std::min(best_ratio, ratio);
                    leave = r;
                }
            }
        }
        if (leave == rows) {
            throw SolveError("oracle simplex: unbounded direction on a bounded LP", 0.0, 0.0, iters);
        }
        const double pivot = tab[leave][enter];
        for (std::size_t c = 0; c <= cols; ++c) tab[leave][c] /= pivot;
        for (std::size_t r = 0; r <= rows; ++r) {
            if (r == leave) continue;
            const double factor = tab[r][enter];
            if (factor == 0.0) continue;
            for (std::size_t c = 0; c <= cols; ++c) tab[r][c] -= factor * tab[leave][c];
        }
        basis[leave] = enter;
        if (++iters > budget) {
            throw SolveError("oracle simplex exceeded its iteration budget", 0.0, 0.0, iters);
        }
    }

    Vec x(cols, 0.0);
    for (std::size_t r = 0; r < rows; ++r) x[basis[r]] = std::max(0.0, tab[r][cols]);
    SlackSolution sol = assemble(p, x);

    if (p.n() * p.m() <= 9) {
        const double enumerated = oracle_enumerate_optimum(p);
        const double scale = 1.0 + std::abs(sol.objective);
        if (std::abs(enumerated - sol.objective) > 1e-8 * scale) {
            throw SolveError("oracle cross-check failed: simplex " + std::to_string(sol.objective) +
                                 " vs enumeration " + std::to_string(enumerated),
                             sol.objective, enumerated, iters);
        }
    }
    return sol;
}

double oracle_enumerate_optimum(const IcPotProblem& p) {
    validate_problem(p);
    const StandardForm lp(p);
    const std::size_t rows = lp.num_rows;
    const std::size_t cols = lp.num_vars;
    if (rows == 0) return 0.0;
    const double mass_scale =
        1.0 + std::max(p.mu.total_mass(), p.nu.total_mass());

    std::vector<std::size_t> pick(rows);
    for (std::size_t r = 0; r < rows; ++r) pick[r] = r;
    double best = std::numeric_limits<double>::infinity();

    // Walk every column subset of size rows in lexicographic order.
    while (true) {
        // Solve A_B x_B = b by Gaussian elimination with partial pivoting.
        std::vector<Vec> a(rows, Vec(rows + 1, 0.0));
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t k = 0; k < rows; ++k) a[r][k] = lp.coefficient(r, pick[k]);
            a[r][rows] = lp.rhs[r];
        }
        bool singular = false;
        for (std::size_t col = 0; col < rows && !singular; ++col) {
            std::size_t piv = col;
            for (std::size_t r = col + 1; r < rows; ++r) {
                if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
            }
            if (std::abs(a[piv][col]) < 1e-12) {
                singular = true;
                break;
            }
            std::swap(a[piv], a[col]);
            for (std::size_t r = 0; r < rows; ++r) {
                if (r == col) continue;
                const double factor = a[r][col] / a[col][col];
                if (factor == 0.0) continue;
                for (std::size_t k = col; k <= rows; ++k) a[r][k] -= factor * a[col][k];
            }
        }
        if (!singular) {
            bool feasible = true;
            double obj = 0.0;
            for (std::size_t k = 0; k < rows; ++k) {
                const double value = a[k][rows] / a[k][k];
                if (value < -1e-9 * mass_scale) {
                    feasible = false;
                    break;
                }
                obj += lp.objective[pick[k]] * std::max(0.0, value);
            }
            if (feasible) best = std::min(best, obj);
        }

        // Next combination.
        std::size_t idx = rows;
        while (idx > 0) {
            --idx;
            if (pick[idx] != cols - rows + idx) break;
            if (idx == 0) return best;
        }
        if (pick[idx] == cols - rows + idx) return best;
        ++pick[idx];
        for (std::size_t r = idx + 1; r < rows; ++r) pick[r] = pick[r - 1] + 1;
    }
}

}  // namespace icpot
