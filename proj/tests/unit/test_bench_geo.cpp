#include "icpot/bench_geo.hpp"

#include "doctest.h"

#include "icpot/solver.hpp"

#include <cmath>

using namespace icpot;
using namespace icpot::geo;

TEST_CASE("simulation is deterministic in the seed") {
    const GeoCase a = simulate_geo_case(17);
    const GeoCase b = simulate_geo_case(17);
    CHECK(a.sar_energy == b.sar_energy);
    CHECK(a.swim_energy == b.swim_energy);
    CHECK(a.comparable_sar == b.comparable_sar);
}

TEST_CASE("the simulated pair carries mass and ground truth on both sides") {
    const GeoCase geo_case = simulate_geo_case(1);
    double sar_total = 0.0, swim_total = 0.0;
    std::size_t comp_sar = 0, noncomp_sar = 0, comp_swim = 0, noncomp_swim = 0;
    for (std::size_t z = 0; z < geo_case.grid.cells(); ++z) {
        sar_total += geo_case.sar_energy[z];
        swim_total += geo_case.swim_energy[z];
        comp_sar += geo_case.comparable_sar[z];
        noncomp_sar += geo_case.noncomparable_sar[z];
        comp_swim += geo_case.comparable_swim[z];
        noncomp_swim += geo_case.noncomparable_swim[z];
        // Masks only mark energetic cells and never overlap.
        CHECK((geo_case.comparable_sar[z] & geo_case.noncomparable_sar[z]) == 0);
        if (geo_case.sar_energy[z] == 0.0) {
            CHECK(geo_case.comparable_sar[z] == 0);
            CHECK(geo_case.noncomparable_sar[z] == 0);
        }
    }
    CHECK(sar_total > 0.0);
    CHECK(swim_total > sar_total);  // ghost halves plus speckle enlarge SWIM
    CHECK(comp_sar > 0);
    CHECK(noncomp_sar > 0);
    CHECK(comp_swim > 0);
    CHECK(noncomp_swim > 0);
}

TEST_CASE("degenerate scenario without sensor effects is fully comparable") {
    GeoScenarioParams params;
    params.swim_true_fraction = 1.0;   // no ambiguity ghost
    params.cutoff_attenuation = 0.0;   // no cutoff
    params.cutoff_redeposit = 0.0;
    params.one_sided_swim_prob = 0.0;
    const GeoCase geo_case = simulate_geo_case(2, params);
    // All comparable SWIM energy equals the SAR view up to the sensor gain,
    // so a generous constant price recovers everything cleanly.
    const GeoMetrics metrics = evaluate_geo(geo_case, GeoMethod::partial_w(3.0));
    CHECK(metrics.comparable_recovery == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(metrics.reliable_loss <= 1e-9);
}

TEST_CASE("mass accounting: transported plus unmatched equals each marginal") {
    const GeoCase geo_case = simulate_geo_case(3);
    GeoScenarioParams params;
    // Solve directly to inspect the solution bookkeeping.
    std::vector<std::size_t> src, tgt;
    for (std::size_t z = 0; z < geo_case.grid.cells(); ++z) {
        if (geo_case.sar_energy[z] > 0.0) src.push_back(z);
        if (geo_case.swim_energy[z] > 0.0) tgt.push_back(z);
    }
    IcPotProblem p;
    for (std::size_t z : src) p.mu.weights.push_back(geo_case.sar_energy[z]);
    for (std::size_t z : tgt) p.nu.weights.push_back(geo_case.swim_energy[z]);
    p.cost = spectral_cost(geo_case.grid, src, tgt);
    const GeoCostProfiles profiles = geo_cost_profiles(geo_case.diagnostics(), GeoCostParams{});
    for (std::size_t z : src) p.c_s.push_back(profiles.c_sar[z]);
    for (std::size_t z : tgt) p.c_t.push_back(profiles.c_swim[z]);

    const IcPotResult res = solve_icpot(p, SolveMode::sparse);
    double transported = res.solution.plan.total_mass();
    double unmatched_sar = 0.0;
    for (double u : res.solution.u) unmatched_sar += u;
    const double sar_total = p.mu.total_mass();
    CHECK(transported + unmatched_sar == doctest::Approx(sar_total).epsilon(1e-9));
    double unmatched_swim = 0.0;
    for (double v : res.solution.v) unmatched_swim += v;
    CHECK(transported + unmatched_swim == doctest::Approx(p.nu.total_mass()).epsilon(1e-9));
}

TEST_CASE("metrics are invariant under a joint rescaling of both spectra") {
    GeoCase geo_case = simulate_geo_case(4);
    const GeoMetrics base = evaluate_geo(geo_case, GeoMethod::icpot());
    for (double& x : geo_case.sar_energy) x *= 10.0;
    for (double& x : geo_case.swim_energy) x *= 10.0;
    // a_sar/a_swim are already normalized maps, so the profiles are unchanged.
    const GeoMetrics scaled = evaluate_geo(geo_case, GeoMethod::icpot());
    CHECK(scaled.comparable_recovery == doctest::Approx(base.comparable_recovery).epsilon(1e-9));
    CHECK(scaled.unmatch_precision == doctest::Approx(base.unmatch_precision).epsilon(1e-9));
    CHECK(scaled.reliable_loss == doctest::Approx(base.reliable_loss).epsilon(1e-9));
    CHECK(scaled.spurious_transport == doctest::Approx(base.spurious_transport).epsilon(1e-9));
}

TEST_CASE("cyclic cost symmetry and wrap") {
    const SpectrumGrid grid = SpectrumGrid::regular(8, 12, 0.01, 0.1);
    for (std::size_t a : {std::size_t{0}, std::size_t{17}, std::size_t{95}}) {
        for (std::size_t b : {std::size_t{3}, std::size_t{40}, std::size_t{88}}) {
            CHECK(spectral_distance(grid, a, b) == spectral_distance(grid, b, a));
        }
    }
    // First and last directions are one step apart, not n_phi - 1 steps.
    const double step = grid.phi[1] - grid.phi[0];
    CHECK(spectral_distance(grid, grid.index(0, 0), grid.index(0, grid.n_phi() - 1)) ==
          doctest::Approx(step));
}

TEST_CASE("metric bounds hold for every method") {
    const GeoCase geo_case = simulate_geo_case(6);
    for (const GeoMethod& method :
         {GeoMethod::partial_w(0.02), GeoMethod::partial_w(1.0), GeoMethod::icpot()}) {
        const GeoMetrics m = evaluate_geo(geo_case, method);
        for (double value : {m.comparable_recovery, m.unmatch_precision, m.reliable_loss,
                             m.spurious_transport}) {
            CHECK(value >= 0.0);
            CHECK(value <= 1.0);
        }
    }
}

TEST_CASE("tradeoff sweep endpoints") {
    const GeoCase geo_case = simulate_geo_case(8);
    const std::vector<TradeoffPoint> curve =
        partial_w_tradeoff_sweep(geo_case, {1e-4, 0.5, 2.5});
    REQUIRE(curve.size() == 4);
    CHECK(curve[0].comparable_recovery <= 0.35);     // vanishing price rejects nearly everything
    CHECK(curve[2].comparable_recovery >= 0.95);     // generous price recovers the system
    CHECK(curve[2].spurious_transport > curve[3].spurious_transport);  // pointwise point is cleaner
    CHECK(curve[3].is_pointwise);
}
