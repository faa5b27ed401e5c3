#include "icpot/bench_geo.hpp"

#include "icpot/rng.hpp"
#include "icpot/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace icpot::geo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double phi) {
    double w = std::fmod(phi, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w;
}

double signed_delta(double a, double b) {
    double d = std::fmod(a - b + kPi, kTwoPi);
    if (d < 0.0) d += kTwoPi;
    return d - kPi;
}

struct WaveSystem {
    double log_k0;
    double phi0;
    double sigma_log_k;
    double spread_exponent;  // cos^{2s}(dphi) on |dphi| < pi/2
    double amplitude;
};

/// Localized directional spectrum: log-normal along k, truncated
/// cosine-power spreading in direction.
void deposit(Vec& map, const SpectrumGrid& grid, const WaveSystem& sys, double phi_shift = 0.0) {
    for (std::size_t ik = 0; ik < grid.n_k(); ++ik) {
        const double dk = grid.log_k[ik] - sys.log_k0;
        const double radial = std::exp(-dk * dk / (2.0 * sys.sigma_log_k * sys.sigma_log_k));
        if (radial < 1e-12) continue;
        for (std::size_t iphi = 0; iphi < grid.n_phi(); ++iphi) {
            const double dphi = signed_delta(grid.phi[iphi], wrap_angle(sys.phi0 + phi_shift));
            if (std::abs(dphi) >= kPi / 2.0) continue;
            const double spread = std::pow(std::cos(dphi), sys.spread_exponent);
            map[grid.index(ik, iphi)] += sys.amplitude * radial * spread;
        }
    }
}

struct CutoffOperator {
    double phi_az;
    double cutoff_k;
    double attenuation;
    double redeposit;

    bool beyond(const SpectrumGrid& grid, std::size_t ik, std::size_t iphi) const {
        const double k = std::exp(grid.log_k[ik]);
        return k * std::abs(std::cos(grid.phi[iphi] - phi_az)) > cutoff_k;
    }

    /// Attenuates energy beyond the cutoff and folds part of it to the last
    /// admissible wavenumber along the same direction. `affected` receives
    /// the surviving displaced/attenuated energy.
    void apply(Vec& map, Vec& affected, const SpectrumGrid& grid) const {
        for (std::size_t iphi = 0; iphi < grid.n_phi(); ++iphi) {
            // Largest admissible k index for this direction.
            std::size_t fold_ik = 0;
            for (std::size_t ik = 0; ik < grid.n_k(); ++ik) {
                if (!beyond(grid, ik, iphi)) fold_ik = ik;
            }
            for (std::size_t ik = 0; ik < grid.n_k(); ++ik) {
                if (!beyond(grid, ik, iphi)) continue;
                const std::size_t z = grid.index(ik, iphi);
                const double removed = attenuation * map[z];
                map[z] -= removed;
                affected[z] += map[z];
                const double fold = redeposit * removed;
                if (fold > 0.0) {
                    const std::size_t fz = grid.index(fold_ik, iphi);
                    map[fz] += fold;
                    affected[fz] += fold;
                }
            }
        }
    }
};

void apply_floor(Vec& map, double floor_rel) {
    const double peak = *std::max_element(map.begin(), map.end());
    const double floor = floor_rel * peak;
    for (double& x : map) {
        if (x < floor) x = 0.0;
    }
}

Vec normalized(const Vec& map) {
    const double peak = *std::max_element(map.begin(), map.end());
    Vec out(map.size(), 0.0);
    if (peak > 0.0) {
        for (std::size_t z = 0; z < map.size(); ++z) out[z] = map[z] / peak;
    }
    return out;
}

}  // namespace

GeoCase simulate_geo_case(std::uint64_t seed, const GeoScenarioParams& params) {
    Rng rng(seed * 0x9e3779b97f4a7c15ULL + 1 + params.extra_seed_salt);
    GeoCase out;
    out.grid = SpectrumGrid::regular(params.n_k, params.n_phi, params.k_min, params.k_max);
    const SpectrumGrid& grid = out.grid;
    const std::size_t cells = grid.cells();
    const double log_span = grid.log_k.back() - grid.log_k.front();

    // Shared wave systems, visible to both sensors.
    std::vector<WaveSystem> shared;
    WaveSystem main_system;
    main_system.log_k0 = rng.uniform(grid.log_k.front() + 0.45 * log_span,
                                     grid.log_k.front() + 0.75 * log_span);
    main_system.phi0 = rng.uniform(0.0, kTwoPi);
    main_system.sigma_log_k = rng.uniform(0.15, 0.25);
    main_system.spread_exponent = rng.uniform(8.0, 16.0);
    main_system.amplitude = 1.0;
    shared.push_back(main_system);
    if (rng.bernoulli(params.second_shared_prob)) {
        WaveSystem second = main_system;
        second.log_k0 = main_system.log_k0 + (rng.bernoulli(0.5) ? 1.0 : -1.0) * rng.uniform(0.45, 0.7);
        second.log_k0 = std::clamp(second.log_k0, grid.log_k.front() + 0.2 * log_span,
                                   grid.log_k.back() - 0.1 * log_span);
        second.phi0 = main_system.phi0 + rng.uniform(-0.3, 0.3);
        second.sigma_log_k = rng.uniform(0.12, 0.2);
        second.amplitude = rng.uniform(0.4, 0.7);
        shared.push_back(second);
    }

    // Speckle sector on one side of the main lobe, and a one-sided SAR
    // component sitting just outside the sector.
    const double dir = rng.bernoulli(0.5) ? 1.0 : -1.0;
    const double sector_center = wrap_angle(main_system.phi0 + dir * rng.uniform(1.55, 1.95));
    const double sector_half_width = rng.uniform(0.25, 0.45);
    const double speckle_peak_log_k = rng.uniform(grid.log_k.front() + 0.3 * log_span,
                                                  grid.log_k.front() + 0.7 * log_span);
    const double speckle_amp = rng.uniform(0.25, 0.45);

    WaveSystem one_sided_sar;
    one_sided_sar.log_k0 = rng.uniform(grid.log_k.front() + 0.20 * log_span,
                                       grid.log_k.front() + 0.45 * log_span);
    one_sided_sar.phi0 = wrap_angle(main_system.phi0 - dir * rng.uniform(1.2, 1.6));
    one_sided_sar.sigma_log_k = rng.uniform(0.10, 0.18);
    one_sided_sar.spread_exponent = rng.uniform(100.0, 160.0);
    one_sided_sar.amplitude = rng.uniform(0.25, 0.5);

    const bool has_one_sided_swim = rng.bernoulli(params.one_sided_swim_prob);
    WaveSystem one_sided_swim;
    if (has_one_sided_swim) {
        const bool main_is_low = main_system.log_k0 < grid.log_k.front() + 0.5 * log_span;
        one_sided_swim.log_k0 = main_is_low ? grid.log_k.back() - 0.12 * log_span
                                            : grid.log_k.front() + 0.12 * log_span;
        one_sided_swim.phi0 = main_system.phi0 + rng.uniform(-0.2, 0.2);
        one_sided_swim.sigma_log_k = rng.uniform(0.10, 0.16);
        one_sided_swim.spread_exponent = rng.uniform(20.0, 40.0);
        one_sided_swim.amplitude = rng.uniform(0.2, 0.4);
    }

    // SWIM channel: true lobes plus the 180-degree ambiguity split, the
    // one-sided SWIM system and the speckle sector.
    Vec swim_comp(cells, 0.0), swim_noncomp(cells, 0.0), speckle(cells, 0.0);
    for (const auto& sys : shared) {
        WaveSystem true_part = sys;
        true_part.amplitude *= params.swim_true_fraction;
        deposit(swim_comp, grid, true_part);
        WaveSystem ghost = sys;
        ghost.amplitude *= 1.0 - params.swim_true_fraction;
        deposit(swim_noncomp, grid, ghost, kPi);
    }
    if (has_one_sided_swim) {
        WaveSystem true_part = one_sided_swim;
        true_part.amplitude *= params.swim_true_fraction;
        deposit(swim_noncomp, grid, true_part);
        WaveSystem ghost = one_sided_swim;
        ghost.amplitude *= 1.0 - params.swim_true_fraction;
        deposit(swim_noncomp, grid, ghost, kPi);
    }
    for (std::size_t ik = 0; ik < grid.n_k(); ++ik) {
        const double dk = grid.log_k[ik] - speckle_peak_log_k;
        const double radial = std::exp(-dk * dk / (2.0 * 0.6 * 0.6));
        for (std::size_t iphi = 0; iphi < grid.n_phi(); ++iphi) {
            if (std::abs(signed_delta(grid.phi[iphi], sector_center)) <= sector_half_width) {
                speckle[grid.index(ik, iphi)] += speckle_amp * radial;
            }
        }
    }

    // SAR channel: true directions only, then the azimuth-cutoff operator.
    Vec sar_comp(cells, 0.0), sar_noncomp(cells, 0.0), sar_affected(cells, 0.0);
    for (const auto& sys : shared) {
        WaveSystem scaled = sys;
        scaled.amplitude *= params.sar_gain;
        deposit(sar_comp, grid, scaled);
    }
    deposit(sar_noncomp, grid, one_sided_sar);

    CutoffOperator cutoff;
    cutoff.phi_az = wrap_angle(main_system.phi0 + rng.uniform(-0.25, 0.25));
    cutoff.cutoff_k = std::exp(main_system.log_k0) * rng.uniform(0.38, 0.50);
    cutoff.attenuation = params.cutoff_attenuation;
    cutoff.redeposit = params.cutoff_redeposit;
    cutoff.apply(sar_comp, sar_affected, grid);
    cutoff.apply(sar_noncomp, sar_affected, grid);

    // Observed maps with the observation floor, diagnostics, ground truth.
    out.sar_energy.assign(cells, 0.0);
    out.swim_energy.assign(cells, 0.0);
    for (std::size_t z = 0; z < cells; ++z) {
        out.sar_energy[z] = sar_comp[z] + sar_noncomp[z];
        out.swim_energy[z] = swim_comp[z] + swim_noncomp[z] + speckle[z];
    }
    apply_floor(out.sar_energy, params.floor_rel);
    apply_floor(out.swim_energy, params.floor_rel);

    out.a_sar = normalized(out.sar_energy);
    out.a_swim = normalized(out.swim_energy);
    out.b_sar.assign(cells, 0.0);
    out.s_swim.assign(cells, 0.0);
    out.comparable_sar.assign(cells, 0);
    out.noncomparable_sar.assign(cells, 0);
    out.comparable_swim.assign(cells, 0);
    out.noncomparable_swim.assign(cells, 0);
    for (std::size_t z = 0; z < cells; ++z) {
        if (out.sar_energy[z] > 0.0) {
            const double total = sar_comp[z] + sar_noncomp[z];
            out.b_sar[z] = std::clamp(sar_affected[z] / total, 0.0, 1.0);
            if (sar_comp[z] >= sar_noncomp[z]) {
                out.comparable_sar[z] = 1;
            } else {
                out.noncomparable_sar[z] = 1;
            }
        }
        if (out.swim_energy[z] > 0.0) {
            const double total = swim_comp[z] + swim_noncomp[z] + speckle[z];
            out.s_swim[z] = std::clamp(speckle[z] / total, 0.0, 1.0);
            if (swim_comp[z] >= swim_noncomp[z] + speckle[z]) {
                out.comparable_swim[z] = 1;
            } else {
                out.noncomparable_swim[z] = 1;
            }
        }
    }
    return out;
}

namespace {

struct SlicedProblem {
    IcPotProblem problem;
    std::vector<std::size_t> source_cells;
    std::vector<std::size_t> target_cells;
};

SlicedProblem build_problem(const GeoCase& geo_case, const GeoMethod& method) {
    SlicedProblem out;
    const std::size_t cells = geo_case.grid.cells();
    for (std::size_t z = 0; z < cells; ++z) {
        if (geo_case.sar_energy[z] > 0.0) out.source_cells.push_back(z);
        if (geo_case.swim_energy[z] > 0.0) out.target_cells.push_back(z);
    }
    if (out.source_cells.empty() || out.target_cells.empty()) {
        throw std::invalid_argument("geo case carries no mass on one side");
    }
    for (std::size_t z : out.source_cells) {
        out.problem.mu.weights.push_back(geo_case.sar_energy[z]);
    }
    for (std::size_t z : out.target_cells) {
        out.problem.nu.weights.push_back(geo_case.swim_energy[z]);
    }
    out.problem.cost = spectral_cost(geo_case.grid, out.source_cells, out.target_cells);
    if (method.use_pointwise_profiles) {
        const GeoCostProfiles profiles =
            geo_cost_profiles(geo_case.diagnostics(), method.cost_params);
        for (std::size_t z : out.source_cells) out.problem.c_s.push_back(profiles.c_sar[z]);
        for (std::size_t z : out.target_cells) out.problem.c_t.push_back(profiles.c_swim[z]);
    } else {
        out.problem.c_s.assign(out.source_cells.size(), method.constant_price);
        out.problem.c_t.assign(out.target_cells.size(), method.constant_price);
    }
    return out;
}

GeoMetrics metrics_from_solution(const GeoCase& geo_case, const SlicedProblem& sliced,
                                 const SlackSolution& sol) {
    const auto& src = sliced.source_cells;
    const auto& tgt = sliced.target_cells;

    double comparable_mass = 0.0;
    double comparable_unmatched = 0.0;
    double total_sar = 0.0;
    double unmatched_total = 0.0;
    double unmatched_on_noncomparable = 0.0;
    for (std::size_t i = 0; i < src.size(); ++i) {
        const double mass = sliced.problem.mu.weights[i];
        total_sar += mass;
        if (geo_case.comparable_sar[src[i]]) {
            comparable_mass += mass;
            comparable_unmatched += sol.u[i];
        }
        unmatched_total += sol.u[i];
        if (geo_case.noncomparable_sar[src[i]]) unmatched_on_noncomparable += sol.u[i];
    }
    for (std::size_t j = 0; j < tgt.size(); ++j) {
        unmatched_total += sol.v[j];
        if (geo_case.noncomparable_swim[tgt[j]]) unmatched_on_noncomparable += sol.v[j];
    }
    if (total_sar <= 0.0) {
        throw std::invalid_argument("geo case has zero SAR mass");
    }

    double transported = 0.0;
    double incident_to_noncomparable = 0.0;
    for (const auto& e : sol.plan.entries) {
        transported += e.mass;
        if (geo_case.noncomparable_sar[src[e.i]] || geo_case.noncomparable_swim[tgt[e.j]]) {
            incident_to_noncomparable += e.mass;  // union, so the overlap counts once
        }
    }

    GeoMetrics out;
    out.comparable_recovery =
        comparable_mass > 0.0 ? 1.0 - comparable_unmatched / comparable_mass : 1.0;
    out.unmatch_precision =
        unmatched_total > 0.0 ? unmatched_on_noncomparable / unmatched_total : 1.0;
    out.reliable_loss = comparable_unmatched / total_sar;
    out.spurious_transport = transported > 0.0 ? incident_to_noncomparable / transported : 0.0;
    return out;
}

}  // namespace

GeoMetrics evaluate_geo(const GeoCase& geo_case, const GeoMethod& method) {
    const SlicedProblem sliced = build_problem(geo_case, method);
    const IcPotResult solved = solve_icpot(sliced.problem, SolveMode::sparse);
    return metrics_from_solution(geo_case, sliced, solved.solution);
}

std::vector<TradeoffPoint> partial_w_tradeoff_sweep(const GeoCase& geo_case, const Vec& price_grid,
                                                    const GeoCostParams& icpot_params) {
    std::vector<TradeoffPoint> out;
    for (double price : price_grid) {
        const GeoMetrics metrics = evaluate_geo(geo_case, GeoMethod::partial_w(price));
        out.push_back({price, false, metrics.spurious_transport, metrics.comparable_recovery});
    }
    const GeoMetrics pointwise = evaluate_geo(geo_case, GeoMethod::icpot(icpot_params));
    out.push_back({0.0, true, pointwise.spurious_transport, pointwise.comparable_recovery});
    return out;
}

}  // namespace icpot::geo
