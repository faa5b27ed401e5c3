#pragma once

#include "icpot/grid.hpp"
#include "icpot/profiles.hpp"
#include "icpot/types.hpp"

#include <cstdint>
#include <vector>

namespace icpot::geo {

/// Knobs of the synthetic SWIM/SAR pair generator. Angles are radians on the
/// (log k, phi) grid; energies are relative to the main shared system.
struct GeoScenarioParams {
    std::size_t n_k = 32;
    std::size_t n_phi = 36;
    double k_min = 0.0126;
    double k_max = 0.0898;

    double second_shared_prob = 0.5;
    double one_sided_swim_prob = 0.4;

    /// Fraction of SWIM energy kept in the true propagation direction; the
    /// rest lands on the 180-degree ambiguity ghost.
    double swim_true_fraction = 0.65;
    /// Relative sensor gain of the SAR channel.
    double sar_gain = 0.6;

    /// Azimuth-cutoff operator: energy beyond the cutoff loses this fraction,
    /// and this share of the removed energy is re-deposited just below the
    /// cutoff along the same direction.
    double cutoff_attenuation = 0.85;
    double cutoff_redeposit = 0.65;

    /// Cells below floor_rel * max are zeroed (observation floor).
    double floor_rel = 0.02;
    std::uint64_t extra_seed_salt = 0;
};

/// One synthetic co-location: observed maps, sensor diagnostics and the
/// ground-truth comparability masks on both sides.
struct GeoCase {
    SpectrumGrid grid;
    Vec sar_energy;
    Vec swim_energy;
    Vec a_sar;
    Vec a_swim;
    Vec b_sar;
    Vec s_swim;
    std::vector<std::uint8_t> comparable_sar;
    std::vector<std::uint8_t> noncomparable_sar;
    std::vector<std::uint8_t> comparable_swim;
    std::vector<std::uint8_t> noncomparable_swim;

    GeoDiagnostics diagnostics() const { return {grid, a_sar, a_swim, b_sar, s_swim}; }
};

struct GeoMethod {
    bool use_pointwise_profiles = true;
    double constant_price = 0.0;
    GeoCostParams cost_params;

    static GeoMethod partial_w(double price) {
        GeoMethod m;
        m.use_pointwise_profiles = false;
        m.constant_price = price;
        return m;
    }
    static GeoMethod icpot(GeoCostParams params = {}) {
        GeoMethod m;
        m.use_pointwise_profiles = true;
        m.cost_params = params;
        return m;
    }
};

struct GeoMetrics {
    double comparable_recovery = 0.0;   // transported fraction of comparable SAR mass
    double unmatch_precision = 0.0;     // unmatched mass sitting on non-comparable support
    double reliable_loss = 0.0;         // comparable SAR mass left unmatched, over total SAR mass
    double spurious_transport = 0.0;    // plan mass incident to non-comparable cells, counted once
};

GeoCase simulate_geo_case(std::uint64_t seed, const GeoScenarioParams& params = {});

/// SAR -> SWIM transport with the cyclic Euclidean spectral cost and the
/// native relative masses of the two maps.
GeoMetrics evaluate_geo(const GeoCase& geo_case, const GeoMethod& method);

struct TradeoffPoint {
    double price = 0.0;  // NaN-free: only meaningful for the constant-cost rows
    bool is_pointwise = false;
    double spurious_transport = 0.0;
    double comparable_recovery = 0.0;
};

/// Constant-price sweep plus the single pointwise-profile point.
std::vector<TradeoffPoint> partial_w_tradeoff_sweep(const GeoCase& geo_case, const Vec& price_grid,
                                                    const GeoCostParams& icpot_params = {});

}  // namespace icpot::geo
