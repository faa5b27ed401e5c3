#include "icpot/bench_pu.hpp"

#include "doctest.h"

#include <cmath>

using namespace icpot;
using namespace icpot::pu;

TEST_CASE("generation is deterministic in the seed") {
    const PuConfig cfg = PuConfig::heterogeneous(42);
    const PuCase a = generate_pu_case(cfg);
    const PuCase b = generate_pu_case(cfg);
    REQUIRE(a.unlabeled.size() == b.unlabeled.size());
    REQUIRE(a.observed_positives.size() == b.observed_positives.size());
    for (std::size_t i = 0; i < a.unlabeled.size(); ++i) {
        CHECK(a.unlabeled[i] == b.unlabeled[i]);
    }
}

TEST_CASE("homogeneous selection keeps the fringe as observed as the center") {
    PuConfig cfg = PuConfig::homogeneous(7);
    cfg.n_pos = 4000;
    const PuCase pu_case = generate_pu_case(cfg);
    // Under SCAR-like sampling roughly rho of the positives are observed.
    const double observed_fraction = static_cast<double>(pu_case.observed_positives.size()) /
                                     static_cast<double>(cfg.n_pos);
    CHECK(observed_fraction > 0.9);
    CHECK(observed_fraction <= 1.0);
}

TEST_CASE("heterogeneous selection under-observes the fringe (3 sigma)") {
    PuConfig cfg = PuConfig::heterogeneous(11);
    cfg.n_pos = 6000;
    cfg.rho_fringe = 0.05;
    const PuCase pu_case = generate_pu_case(cfg);

    // Selection frequency of central vs fringe positives, pooling observed
    // and latent points back together.
    auto tally = [&](double lo, double hi) {
        std::size_t observed = 0, total = 0;
        for (const auto& pt : pu_case.observed_positives) {
            const double r = std::abs(pt[0]) / cfg.band_extent;
            if (r >= lo && r < hi) {
                ++observed;
                ++total;
            }
        }
        for (std::size_t i = 0; i < pu_case.unlabeled.size(); ++i) {
            if (pu_case.unlabeled_labels[i] < 0) continue;
            const double r = std::abs(pu_case.unlabeled[i][0]) / cfg.band_extent;
            if (r >= lo && r < hi) ++total;
        }
        return std::pair<std::size_t, std::size_t>{observed, total};
    };
    const auto [central_obs, central_total] = tally(0.0, 0.33);
    const auto [fringe_obs, fringe_total] = tally(0.67, 1.01);
    REQUIRE(central_total > 100);
    REQUIRE(fringe_total > 100);
    const double p_central = static_cast<double>(central_obs) / static_cast<double>(central_total);
    const double p_fringe = static_cast<double>(fringe_obs) / static_cast<double>(fringe_total);
    const double sigma = std::sqrt(p_central * (1.0 - p_central) / static_cast<double>(central_total) +
                                   p_fringe * (1.0 - p_fringe) / static_cast<double>(fringe_total));
    CHECK(p_central - p_fringe > 3.0 * sigma);
}

TEST_CASE("pipeline rejects an empty observed set") {
    PuCase empty;
    empty.unlabeled = {{0.0, 0.0}};
    empty.unlabeled_labels = {1};
    CHECK_THROWS_AS(pu_pipeline(empty, PuPolicy::partial_w, 0.5), std::invalid_argument);
}

TEST_CASE("pipeline is deterministic and reports the budgeted mass") {
    PuConfig cfg = PuConfig::heterogeneous(3);
    cfg.n_pos = 120;
    cfg.n_neg = 150;
    const PuCase pu_case = generate_pu_case(cfg);
    const double prior = pu_case.latent_positive_fraction();
    REQUIRE(prior > 0.0);

    const PuRunResult a = pu_pipeline(pu_case, PuPolicy::partial_w, prior);
    const PuRunResult b = pu_pipeline(pu_case, PuPolicy::partial_w, prior);
    CHECK(a.metrics.f1 == b.metrics.f1);
    CHECK(a.metrics.accuracy == b.metrics.accuracy);
    CHECK(a.transported_mass_fraction == b.transported_mass_fraction);

    // The budget construction transports exactly the prior mass.
    CHECK(a.transported_mass_fraction == doctest::Approx(prior).epsilon(1e-9));

    const PuRunResult aligned = pu_pipeline(pu_case, PuPolicy::icpot_aligned, prior);
    CHECK(aligned.metrics.f1 >= 0.0);
    CHECK(aligned.metrics.f1 <= 1.0);
    CHECK(aligned.metrics.accuracy <= 1.0);
}

TEST_CASE("aligned beats the baseline on a small heterogeneous case") {
    PuConfig cfg = PuConfig::heterogeneous(5);
    cfg.n_pos = 240;
    cfg.n_neg = 300;
    const PuCase pu_case = generate_pu_case(cfg);
    const double prior = pu_case.latent_positive_fraction();
    const double f1_baseline = pu_pipeline(pu_case, PuPolicy::partial_w, prior).metrics.f1;
    const double f1_aligned = pu_pipeline(pu_case, PuPolicy::icpot_aligned, prior).metrics.f1;
    CHECK(f1_aligned > f1_baseline);
}
