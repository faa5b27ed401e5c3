#include "icpot/certificates.hpp"

#include "doctest.h"
#include "../support/instances.hpp"

#include "icpot/solver.hpp"

using namespace icpot;

TEST_CASE("solver output passes primal feasibility") {
    const IcPotProblem p = testing::two_source_tiebreak_instance();
    const IcPotResult res = solve_icpot(p, SolveMode::sparse);
    const PrimalReport report = check_primal_feasibility(res.solution, p);
    CHECK(report.max_row_residual <= 1e-9);
    CHECK(report.max_col_residual <= 1e-9);
    CHECK(report.min_entry >= 0.0);
}

TEST_CASE("an inflated plan entry is flagged as a row residual") {
    const IcPotProblem p = testing::two_source_tiebreak_instance();
    IcPotResult res = solve_icpot(p, SolveMode::sparse);
    res.solution.plan.entries[0].mass += 0.1;
    const PrimalReport report = check_primal_feasibility(res.solution, p);
    CHECK(report.max_row_residual == doctest::Approx(0.1));
}

TEST_CASE("the all-rejected solution is primal feasible") {
    const IcPotProblem p = testing::two_source_tiebreak_instance();
    SlackSolution sol;
    sol.plan.n = 2;
    sol.plan.m = 1;
    sol.u = p.mu.weights;
    sol.v = p.nu.weights;
    sol.objective = slack_objective(p, sol);
    const PrimalReport report = check_primal_feasibility(sol, p);
    CHECK(report.max_row_residual == 0.0);
    CHECK(report.max_col_residual == 0.0);
}

TEST_CASE("zero potentials are dual feasible for nonnegative costs") {
    const IcPotProblem p = testing::two_source_tiebreak_instance();
    DualPotentials duals;
    duals.f = {0.0, 0.0};
    duals.g = {0.0};
    const DualReport report = check_dual_feasibility(duals, p);
    CHECK(report.worst() == 0.0);
}

TEST_CASE("the cap is tight where slack mass sits") {
    const IcPotProblem p = testing::two_source_tiebreak_instance();
    const IcPotResult res = solve_icpot(p, SolveMode::sparse);
    // Source 1 is rejected, so complementary slackness pins f_1 to its cap.
    CHECK(res.solution.u[1] > 0.0);
    CHECK(res.duals.f[1] == doctest::Approx(p.c_s[1]).epsilon(1e-12));
    CHECK(check_dual_feasibility(res.duals, p).worst() <= 1e-12);
}

TEST_CASE("a cap violation is reported") {
    const IcPotProblem p = testing::two_source_tiebreak_instance();
    DualPotentials duals;
    duals.f = {0.0, 0.0};
    duals.g = {p.c_t[0] + 0.5};
    const DualReport report = check_dual_feasibility(duals, p);
    CHECK(report.max_target_cap_violation == doctest::Approx(0.5));
}

TEST_CASE("complementary slackness passes vacuously, on the optimum, and fails when perturbed") {
    const IcPotProblem p = testing::two_source_tiebreak_instance();

    SlackSolution all_zero;
    all_zero.plan.n = 2;
    all_zero.plan.m = 1;
    all_zero.u = {0.0, 0.0};
    all_zero.v = {0.0};
    DualPotentials zero{{0.0, 0.0}, {0.0}};
    CHECK(check_complementary_slackness(all_zero, zero, p, 1e-7).satisfied());

    const IcPotResult res = solve_icpot(p, SolveMode::sparse);
    CHECK(check_complementary_slackness(res.solution, res.duals, p, 1e-7).satisfied());

    // A strictly dominated edge can never be dual-tight (the caps bound
    // f + g below its cost), so mass routed on it must break slackness.
    IcPotProblem skewed = p;
    skewed.cost(1, 0) = 1.2;
    IcPotResult tampered = solve_icpot(skewed, SolveMode::sparse);
    CHECK(check_complementary_slackness(tampered.solution, tampered.duals, skewed, 1e-7).satisfied());
    tampered.solution.plan.entries.push_back({1, 0, 0.5});
    const SlacknessReport report =
        check_complementary_slackness(tampered.solution, tampered.duals, skewed, 1e-7);
    REQUIRE(report.pair_conditions.size() == 1);
    CHECK(report.pair_conditions[0].i == 1);
    CHECK(report.pair_conditions[0].amount > 0.1);
}

TEST_CASE("domination flags only strictly dominated active edges") {
    const IcPotProblem p = testing::two_source_tiebreak_instance();

    SlackSolution dominated;
    dominated.plan.n = 2;
    dominated.plan.m = 1;
    dominated.plan.entries = {{1, 0, 1.0}};
    dominated.u = {1.0, 0.0};
    dominated.v = {0.0};
    IcPotProblem expensive = p;
    expensive.cost(1, 0) = 2.0;  // strictly above c_s(1) + c_t(0) = 1
    auto violations = check_domination(dominated, expensive, 1e-7);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].i == 1);
    CHECK(violations[0].amount == doctest::Approx(1.0));

    // Boundary edges carrying mass are allowed.
    IcPotProblem boundary = p;
    boundary.cost(1, 0) = 1.0;  // exactly c_s(1) + c_t(0)
    CHECK(check_domination(dominated, boundary, 1e-7).empty());
}

TEST_CASE("solver output is domination-free on random instances") {
    Rng rng(53);
    for (int trial = 0; trial < 200; ++trial) {
        const IcPotProblem p = testing::random_instance(rng);
        const IcPotResult res = solve_icpot(p, trial % 2 == 0 ? SolveMode::full : SolveMode::sparse);
        CHECK(check_domination(res.solution, p, 1e-7).empty());
    }
}

TEST_CASE("full certificate battery passes across scales") {
    Rng rng(59);
    testing::RandomInstanceOptions opt;
    opt.max_n = 12;
    opt.max_m = 12;
    opt.mixed_scales = true;
    for (int trial = 0; trial < 200; ++trial) {
        const IcPotProblem p = testing::random_instance(rng, opt);
        const IcPotResult res = solve_icpot(p, SolveMode::sparse);
        const CertificateSummary summary = run_all_checks(p, res.solution, res.duals);
        CHECK(summary.all_passed);
        CHECK(summary.primal.objective_residual <=
              1e-12 * (1.0 + std::abs(res.solution.objective)));
    }
}
