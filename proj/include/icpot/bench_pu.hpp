#pragma once

#include "icpot/solver.hpp"
#include "icpot/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace icpot::pu {

/// Synthetic positive-unlabeled geometry: positives on a horizontal band,
/// negatives on two lateral modes, and a covariate-dependent positive
/// selection probability interpolating rho_center at the band center down to
/// rho_fringe at the extremes.
struct PuConfig {
    std::size_t n_pos = 600;
    std::size_t n_neg = 1200;

    double band_center_x = 0.0;
    double band_half_width = 0.4;   // vertical
    double band_extent = 3.0;       // horizontal: x1 in [center - extent, center + extent]

    double neg_offset_x = 2.2;
    double neg_offset_y = 1.3;
    double neg_sigma = 0.28;

    double rho_center = 0.95;
    double rho_fringe = 0.95;  // equal to rho_center: homogeneous (SCAR-like) selection

    /// Transported-mass prior for the constant-cost baseline. Unset means the
    /// realized latent-positive fraction of the unlabeled pool.
    std::optional<double> mass_prior;

    std::uint64_t seed = 1;

    static PuConfig homogeneous(std::uint64_t seed);
    static PuConfig heterogeneous(std::uint64_t seed);
};

struct PuCase {
    std::vector<Vec> observed_positives;  // Y = +1, S = 1
    std::vector<Vec> unlabeled;           // {Y = +1, S = 0} plus all negatives
    std::vector<int> unlabeled_labels;    // latent Y in {+1, -1}

    double latent_positive_fraction() const;
};

enum class PuPolicy { partial_w, icpot_aligned, icpot_misaligned };

const char* to_string(PuPolicy policy);

/// Paper-scale policy prices. The aligned profile follows the horizontal
/// selection covariate; misaligned reverses it; the target side stays
/// constant throughout.
struct PuPolicyParams {
    double partial_w_price = 0.15;
    double c_min = 0.01;
    double c_max = 0.10;
    double target_price = 0.015;
    /// A pool point is classified positive when its matched outgoing mass
    /// exceeds this fraction of its marginal mass.
    double positive_threshold = 0.5;
};

struct PuMetrics {
    double f1 = 0.0;
    double accuracy = 0.0;
};

struct PuRunResult {
    SlackSolution solution;
    PuMetrics metrics;
    double transported_mass_fraction = 0.0;
};

PuCase generate_pu_case(const PuConfig& cfg);

/// Transport from the unlabeled pool to the observed positives under squared
/// Euclidean cost. The constant-cost baseline is budgeted to the mass prior
/// through the augmented-marginal construction; the pointwise policies leave
/// the transported mass endogenous and report it.
PuRunResult pu_pipeline(const PuCase& pu_case, PuPolicy policy, double mass_prior,
                        const PuPolicyParams& params = {});

struct PuSweepRow {
    std::string sweep;
    double x = 0.0;
    std::string regime;
    std::string policy;
    double mean_f1 = 0.0;
    double mean_gap_vs_partial_w = 0.0;
};

/// Selection-bias transition (x = 1 - rho_fringe / rho_center) and
/// negative-geometry sweeps, averaged over the given seeds.
std::vector<PuSweepRow> pu_sweeps(const PuConfig& base, const std::vector<std::uint64_t>& seeds,
                                  const PuPolicyParams& params = {});

}  // namespace icpot::pu
