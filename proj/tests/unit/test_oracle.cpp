#include "icpot/oracle.hpp"

#include "doctest.h"
#include "../support/instances.hpp"

#include "icpot/solver.hpp"

using namespace icpot;

TEST_CASE("oracle reproduces the tiebreak optimum") {
    const IcPotProblem p = testing::two_source_tiebreak_instance();
    const SlackSolution sol = oracle_solve(p);
    CHECK(sol.objective == doctest::Approx(0.3));
    REQUIRE(sol.plan.entries.size() == 1);
    CHECK(sol.plan.entries[0].i == 0);
    CHECK(sol.plan.entries[0].mass == doctest::Approx(1.0));
}

TEST_CASE("oracle with free rejection returns zero") {
    IcPotProblem p = testing::two_source_tiebreak_instance();
    p.c_s = {0.0, 0.0};
    p.c_t = {0.0};
    CHECK(oracle_solve(p).objective == doctest::Approx(0.0));
}

TEST_CASE("oracle rejects large instances") {
    IcPotProblem p;
    p.mu.weights.assign(7, 1.0);
    p.nu.weights.assign(7, 1.0);
    p.cost = Matrix(7, 7, 1.0);
    p.c_s.assign(7, 1.0);
    p.c_t.assign(7, 1.0);
    CHECK_THROWS_AS(oracle_solve(p), std::invalid_argument);
}

TEST_CASE("simplex and enumeration agree on tiny instances") {
    Rng rng(13);
    testing::RandomInstanceOptions opt;
    opt.max_n = 3;
    opt.max_m = 3;
    for (int trial = 0; trial < 50; ++trial) {
        const IcPotProblem p = testing::random_instance(rng, opt);
        const SlackSolution sol = oracle_solve(p);  // cross-checks internally for n*m <= 9
        const double enumerated = oracle_enumerate_optimum(p);
        CHECK(sol.objective == doctest::Approx(enumerated).epsilon(1e-8));
    }
}

TEST_CASE("main solver matches the oracle in both modes") {
    Rng rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        const IcPotProblem p = testing::random_instance(rng);
        const SlackSolution reference = oracle_solve(p);
        const double scale = 1.0 + std::abs(reference.objective);
        const IcPotResult full = solve_icpot(p, SolveMode::full);
        const IcPotResult sparse = solve_icpot(p, SolveMode::sparse);
        CHECK(std::abs(full.solution.objective - reference.objective) <= 1e-8 * scale);
        CHECK(std::abs(sparse.solution.objective - reference.objective) <= 1e-8 * scale);
    }
}

TEST_CASE("oracle handles mixed mass scales") {
    Rng rng(19);
    testing::RandomInstanceOptions opt;
    opt.mixed_scales = true;
    for (int trial = 0; trial < 30; ++trial) {
        const IcPotProblem p = testing::random_instance(rng, opt);
        const SlackSolution reference = oracle_solve(p);
        const IcPotResult res = solve_icpot(p, SolveMode::sparse);
        CHECK(std::abs(res.solution.objective - reference.objective) <=
              1e-8 * (1.0 + std::abs(reference.objective)));
    }
}
