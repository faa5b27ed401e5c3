#include "icpot/types.hpp"

#include "doctest.h"
#include "../support/instances.hpp"

#include <limits>

using namespace icpot;

TEST_CASE("validate_problem accepts the two-source one-target instance") {
    const IcPotProblem p = testing::two_source_tiebreak_instance();
    CHECK_NOTHROW(validate_problem(p));
}

TEST_CASE("validate_problem names the offending entry") {
    IcPotProblem p = testing::two_source_tiebreak_instance();
    p.c_s[0] = -0.1;
    CHECK_THROWS_WITH_AS(validate_problem(p), "negative unmatched cost at source 0",
                         std::invalid_argument);
}

TEST_CASE("validate_problem rejects inconsistent shapes") {
    IcPotProblem p;
    p.mu.weights = {1.0, 1.0};
    p.nu.weights = {1.0, 1.0, 1.0};
    p.cost = Matrix(2, 3, 0.5);
    p.c_s = {0.1, 0.1};
    p.c_t = {0.1, 0.1};  // should have three entries
    CHECK_THROWS_AS(validate_problem(p), std::invalid_argument);
    try {
        validate_problem(p);
    } catch (const std::invalid_argument& err) {
        CHECK(std::string(err.what()).find("c_t") != std::string::npos);
    }
}

TEST_CASE("validate_problem rejects non-finite entries") {
    IcPotProblem p = testing::two_source_tiebreak_instance();
    p.cost(1, 0) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(validate_problem(p), std::invalid_argument);
}

TEST_CASE("zero-mass support points are allowed") {
    IcPotProblem p = testing::two_source_tiebreak_instance();
    p.mu.weights[1] = 0.0;
    CHECK_NOTHROW(validate_problem(p));
}

TEST_CASE("plan sums and objective helpers") {
    const IcPotProblem p = testing::two_source_tiebreak_instance();
    SlackSolution sol;
    sol.plan.n = 2;
    sol.plan.m = 1;
    sol.plan.entries = {{0, 0, 1.0}};
    sol.u = {0.0, 1.0};
    sol.v = {0.0};
    sol.objective = slack_objective(p, sol);
    CHECK(sol.objective == doctest::Approx(0.3));
    CHECK(max_marginal_residual(p, sol) == doctest::Approx(0.0));

    const Vec rows = sol.plan.row_sums();
    CHECK(rows[0] == 1.0);
    CHECK(rows[1] == 0.0);
}

TEST_CASE("drop_small_entries keeps sub-coupling membership") {
    Rng rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        const IcPotProblem p = testing::random_instance(rng);
        const SlackSolution sol = testing::random_feasible_solution(p, rng);
        const TransportPlan trimmed = drop_small_entries(sol.plan, 1e-3);
        const Vec rows = trimmed.row_sums();
        const Vec cols = trimmed.col_sums();
        for (std::size_t i = 0; i < p.n(); ++i) CHECK(rows[i] <= p.mu.weights[i] + 1e-12);
        for (std::size_t j = 0; j < p.m(); ++j) CHECK(cols[j] <= p.nu.weights[j] + 1e-12);
        for (const auto& e : trimmed.entries) CHECK(e.mass > 1e-3);
    }
}
