#include "icpot/solver.hpp"

#include "doctest.h"
#include "../support/instances.hpp"

#include "icpot/certificates.hpp"
#include "icpot/oracle.hpp"

#include <cmath>

using namespace icpot;

namespace {

void check_solver_contract(const IcPotProblem& p, const IcPotResult& res) {
    const double mass_scale = std::max(p.mu.total_mass(), p.nu.total_mass());
    CHECK(max_marginal_residual(p, res.solution) <= 1e-9 * (1.0 + mass_scale));
    const CertificateSummary cert = run_all_checks(p, res.solution, res.duals);
    CHECK(cert.all_passed);
}

}  // namespace

TEST_CASE("pointwise costs pick out the unique optimum of the tiebreak instance") {
    const IcPotProblem p = testing::two_source_tiebreak_instance();
    for (SolveMode mode : {SolveMode::full, SolveMode::sparse}) {
        const IcPotResult res = solve_icpot(p, mode);
        CHECK(res.solution.objective == doctest::Approx(0.3));
        REQUIRE(res.solution.plan.entries.size() == 1);
        CHECK(res.solution.plan.entries[0].i == 0);
        CHECK(res.solution.plan.entries[0].j == 0);
        CHECK(res.solution.plan.entries[0].mass == doctest::Approx(1.0));
        CHECK(res.solution.u[0] == doctest::Approx(0.0));
        CHECK(res.solution.u[1] == doctest::Approx(1.0));
        CHECK(res.solution.v[0] == doctest::Approx(0.0));
        check_solver_contract(p, res);
    }
}

TEST_CASE("a constant-cost model cannot separate the symmetric sources") {
    IcPotProblem constant = testing::two_source_tiebreak_instance();
    const double alpha = 0.5;
    const double beta = 0.5;
    constant.c_s = {alpha, alpha};
    constant.c_t = {beta};

    // The two single-edge plans are mirror images; under constant costs they
    // price identically, and both sit at the optimum.
    SlackSolution match_first;
    match_first.plan = {{{0, 0, 1.0}}, 2, 1};
    match_first.u = {0.0, 1.0};
    match_first.v = {0.0};
    SlackSolution match_second;
    match_second.plan = {{{1, 0, 1.0}}, 2, 1};
    match_second.u = {1.0, 0.0};
    match_second.v = {0.0};

    const double obj_first = slack_objective(constant, match_first);
    const double obj_second = slack_objective(constant, match_second);
    CHECK(obj_first == doctest::Approx(obj_second));

    const IcPotResult res = solve_icpot(constant, SolveMode::sparse);
    CHECK(res.solution.objective == doctest::Approx(obj_first));

    // The pointwise model breaks the tie: the swapped plan is strictly worse.
    const IcPotProblem pointwise = testing::two_source_tiebreak_instance();
    CHECK(slack_objective(pointwise, match_second) == doctest::Approx(1.3));
    CHECK(slack_objective(pointwise, match_first) == doctest::Approx(0.3));
}

TEST_CASE("free rejection yields the empty plan") {
    IcPotProblem p = testing::two_source_tiebreak_instance();
    p.c_s = {0.0, 0.0};
    p.c_t = {0.0};
    const IcPotResult res = solve_icpot(p, SolveMode::sparse);
    CHECK(res.solution.objective == doctest::Approx(0.0));
    CHECK(res.solution.plan.entries.empty());
    CHECK(res.solution.u == p.mu.weights);
    CHECK(res.solution.v == p.nu.weights);
    check_solver_contract(p, res);
}

TEST_CASE("prohibitive unmatched costs recover balanced transport") {
    Rng rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        IcPotProblem p;
        const std::size_t n = 4;
        p.mu.weights.assign(n, 0.0);
        p.nu.weights.assign(n, 0.0);
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            p.mu.weights[i] = rng.uniform(0.1, 1.0);
            total += p.mu.weights[i];
        }
        double nu_total = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            p.nu.weights[j] = rng.uniform(0.1, 1.0);
            nu_total += p.nu.weights[j];
        }
        for (std::size_t j = 0; j < n; ++j) p.nu.weights[j] *= total / nu_total;
        p.cost = Matrix(n, n);
        double max_cost = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                p.cost(i, j) = rng.uniform(0.0, 2.0);
                max_cost = std::max(max_cost, p.cost(i, j));
            }
        }
        p.c_s.assign(n, max_cost + 1.0);
        p.c_t.assign(n, max_cost + 1.0);

        const IcPotResult res = solve_icpot(p, SolveMode::sparse);
        const BalancedResult balanced = solve_balanced(p.mu, p.nu, p.cost);
        CHECK(res.solution.objective ==
              doctest::Approx(balanced.report.primal_objective).epsilon(1e-9));
        // Rejection never pays: everything is transported.
        double total_u = 0.0;
        for (double u : res.solution.u) total_u += u;
        CHECK(total_u == doctest::Approx(0.0).epsilon(1e-12));
        check_solver_contract(p, res);
    }
}

TEST_CASE("balanced transport with identical marginals and zero cost") {
    DiscreteMeasure mu;
    mu.weights = {0.5, 0.5};
    const BalancedResult res = solve_balanced(mu, mu, Matrix(2, 2, 0.0));
    CHECK(res.report.primal_objective == doctest::Approx(0.0));
}

TEST_CASE("balanced transport rejects mass mismatch") {
    DiscreteMeasure mu;
    mu.weights = {1.0};
    DiscreteMeasure nu;
    nu.weights = {2.0};
    CHECK_THROWS_AS(solve_balanced(mu, nu, Matrix(1, 1, 0.0)), std::invalid_argument);
}

TEST_CASE("balanced transport agrees with the oracle on random instances") {
    Rng rng(211);
    for (int trial = 0; trial < 15; ++trial) {
        const std::size_t n = 5;
        IcPotProblem p;
        p.mu.weights.assign(n, 1.0 / static_cast<double>(n));
        p.nu.weights.assign(n, 1.0 / static_cast<double>(n));
        p.cost = Matrix(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) p.cost(i, j) = rng.uniform(0.0, 3.0);
        }
        // Prohibitive rejection turns the slack oracle into a balanced oracle.
        p.c_s.assign(n, 10.0);
        p.c_t.assign(n, 10.0);
        const BalancedResult res = solve_balanced(p.mu, p.nu, p.cost);
        const SlackSolution reference = oracle_solve(p);
        CHECK(res.report.primal_objective ==
              doctest::Approx(reference.objective).epsilon(1e-9));
        CHECK(std::abs(res.report.duality_gap) <=
              1e-8 * (1.0 + std::abs(res.report.primal_objective)));
    }
}

TEST_CASE("augmented round trip reproduces the direct solve") {
    Rng rng(307);
    for (int trial = 0; trial < 30; ++trial) {
        const IcPotProblem p = testing::random_instance(rng);
        const AugmentedProblem aug = to_augmented(p);
        DiscreteMeasure bar_mu{aug.bar_mu, std::nullopt};
        DiscreteMeasure bar_nu{aug.bar_nu, std::nullopt};
        const BalancedResult balanced = solve_balanced(bar_mu, bar_nu, aug.bar_cost);
        Matrix bar_plan(p.n() + 1, p.m() + 1, 0.0);
        for (const auto& e : balanced.plan.entries) bar_plan(e.i, e.j) = e.mass;
        const SlackSolution from_balanced = from_augmented(bar_plan, p);

        const IcPotResult direct = solve_icpot(p, SolveMode::sparse);
        CHECK(from_balanced.objective ==
              doctest::Approx(direct.solution.objective)
                  .epsilon(1e-9));
    }
}

TEST_CASE("sparse and full modes agree and sparse never uses more edges") {
    Rng rng(401);
    for (int trial = 0; trial < 40; ++trial) {
        const IcPotProblem p = testing::random_instance(rng);
        const IcPotResult full = solve_icpot(p, SolveMode::full);
        const IcPotResult sparse = solve_icpot(p, SolveMode::sparse);
        CHECK(sparse.solution.objective ==
              doctest::Approx(full.solution.objective).epsilon(1e-9));
        CHECK(sparse.solution.plan.entries.size() <= full.solution.plan.entries.size() +
                                                         sparse.report.admissible_edge_count);
        // Sparse support must lie inside the admissible set.
        const AdmissibleEdgeSet edges = admissible_edges(p);
        for (const auto& e : sparse.solution.plan.entries) CHECK(edges.contains(e.i, e.j));
        check_solver_contract(p, full);
        check_solver_contract(p, sparse);
    }
}

TEST_CASE("solve_partial_w matches solve_icpot with constant vectors") {
    Rng rng(503);
    for (int trial = 0; trial < 10; ++trial) {
        IcPotProblem p = testing::random_instance(rng);
        const double price = 0.15;
        std::fill(p.c_s.begin(), p.c_s.end(), price);
        std::fill(p.c_t.begin(), p.c_t.end(), price);
        const IcPotResult direct = solve_icpot(p, SolveMode::sparse);
        const IcPotResult wrapped = solve_partial_w(p.mu, p.nu, p.cost, price);
        CHECK(wrapped.solution.objective == direct.solution.objective);
        REQUIRE(wrapped.solution.plan.entries.size() == direct.solution.plan.entries.size());
        for (std::size_t k = 0; k < wrapped.solution.plan.entries.size(); ++k) {
            CHECK(wrapped.solution.plan.entries[k].i == direct.solution.plan.entries[k].i);
            CHECK(wrapped.solution.plan.entries[k].j == direct.solution.plan.entries[k].j);
            CHECK(wrapped.solution.plan.entries[k].mass == direct.solution.plan.entries[k].mass);
        }
    }
}

TEST_CASE("solve_partial_w at zero price rejects everything") {
    const IcPotProblem p = testing::two_source_tiebreak_instance();
    const IcPotResult res = solve_partial_w(p.mu, p.nu, p.cost, 0.0);
    CHECK(res.solution.objective == doctest::Approx(0.0));
    CHECK(res.solution.plan.entries.empty());
}

TEST_CASE("transported mass grows with the constant price") {
    Rng rng(601);
    IcPotProblem p = testing::random_instance(rng);
    double previous = -1.0;
    for (double price : {0.0, 0.1, 0.3, 0.6, 1.0, 2.0}) {
        const IcPotResult res = solve_partial_w(p.mu, p.nu, p.cost, price);
        const double transported = res.solution.plan.total_mass();
        CHECK(transported >= previous - 1e-10);
        previous = transported;
    }
}

TEST_CASE("solver is deterministic") {
    Rng rng(701);
    const IcPotProblem p = testing::random_instance(rng);
    const IcPotResult a = solve_icpot(p, SolveMode::sparse);
    const IcPotResult b = solve_icpot(p, SolveMode::sparse);
    CHECK(a.solution.objective == b.solution.objective);
    REQUIRE(a.solution.plan.entries.size() == b.solution.plan.entries.size());
    for (std::size_t k = 0; k < a.solution.plan.entries.size(); ++k) {
        CHECK(a.solution.plan.entries[k].mass == b.solution.plan.entries[k].mass);
    }
    CHECK(a.report.iterations == b.report.iterations);
}

TEST_CASE("tie-break perturbation changes neither objectives nor feasibility") {
    Rng rng(809);
    for (int trial = 0; trial < 10; ++trial) {
        const IcPotProblem p = testing::random_instance(rng);
        SolverOptions opts;
        opts.tie_break_perturbation = 1e-13;
        const IcPotResult perturbed = solve_icpot(p, SolveMode::sparse, opts);
        const IcPotResult plain = solve_icpot(p, SolveMode::sparse);
        CHECK(perturbed.solution.objective ==
              doctest::Approx(plain.solution.objective).epsilon(1e-9));
        check_solver_contract(p, perturbed);
    }
}

TEST_CASE("pivot budget failure carries diagnostics") {
    Rng rng(907);
    const IcPotProblem p = testing::random_instance(rng);
    SolverOptions opts;
    opts.max_pivots = 1;
    try {
        solve_icpot(p, SolveMode::full, opts);
        // Tiny instances may legitimately finish within one pivot.
    } catch (const SolveError& err) {
        CHECK(err.pivots_done >= 1);
        CHECK(std::isfinite(err.best_primal_bound));
    }
}
