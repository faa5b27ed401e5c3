#include "icpot/io.hpp"

#include "doctest.h"
#include "../support/instances.hpp"

using namespace icpot;

TEST_CASE("problem JSON round trip") {
    Rng rng(91);
    IcPotProblem p = testing::random_instance(rng);
    p.mu.coords = std::vector<Vec>(p.n(), Vec{0.5, -1.0});
    const std::string text = io::problem_to_json_text(p);
    const IcPotProblem back = io::problem_from_json_text(text);
    CHECK(back.mu.weights == p.mu.weights);
    CHECK(back.nu.weights == p.nu.weights);
    CHECK(back.c_s == p.c_s);
    CHECK(back.c_t == p.c_t);
    REQUIRE(back.mu.coords.has_value());
    CHECK(back.mu.coords->at(0) == Vec{0.5, -1.0});
    for (std::size_t i = 0; i < p.n(); ++i) {
        for (std::size_t j = 0; j < p.m(); ++j) CHECK(back.cost(i, j) == p.cost(i, j));
    }
    // Serialization is byte-stable.
    CHECK(io::problem_to_json_text(back) == text);
}

TEST_CASE("problem JSON reports parse and schema errors") {
    CHECK_THROWS_AS(io::problem_from_json_text("{not json"), std::invalid_argument);
    CHECK_THROWS_AS(io::problem_from_json_text(R"({"mu": [1.0]})"), std::invalid_argument);
    // Schema is validated through the problem invariants as well.
    CHECK_THROWS_AS(io::problem_from_json_text(
                        R"({"mu": [1.0], "nu": [1.0], "cost": [[-1.0]], "c_s": [0.0], "c_t": [0.0]})"),
                    std::invalid_argument);
}

TEST_CASE("solution JSON round trip preserves the certificate verdict") {
    const IcPotProblem p = testing::two_source_tiebreak_instance();
    const IcPotResult solved = solve_icpot(p, SolveMode::sparse);
    const std::string text = io::solution_to_json_text(solved);
    const IcPotResult back = io::solution_from_json_text(text);
    CHECK(back.solution.objective == solved.solution.objective);
    CHECK(back.duals.f == solved.duals.f);
    CHECK(back.report.iterations == solved.report.iterations);
    const CertificateSummary summary = run_all_checks(p, back.solution, back.duals);
    CHECK(summary.all_passed);
}

TEST_CASE("geo case JSON bundle carries the grid metadata") {
    const geo::GeoCase geo_case = geo::simulate_geo_case(12);
    const std::string text = io::geo_case_to_json_text(geo_case);
    CHECK(text.find("log_k") != std::string::npos);
    CHECK(text.find("comparable_sar") != std::string::npos);
}
