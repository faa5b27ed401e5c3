#pragma once

#include "icpot/grid.hpp"
#include "icpot/types.hpp"

#include <vector>

namespace icpot {

/// Endpoints of the affine relevance-to-cost map.
struct AffineCostParams {
    double c_min = 0.0;
    double c_max = 1.0;
};

/// Per-point relevance in [0, 1]; larger values protect a point from rejection.
struct RelevanceScores {
    Vec r;
};

/// c_i = c_min + (c_max - c_min) * r_i. A constant score recovers the
/// constant-rebate model.
Vec affine_costs(const RelevanceScores& scores, const AffineCostParams& params);

enum class PuProfileMode { aligned, misaligned };

struct PuProfileResult {
    RelevanceScores scores;
    /// Set when every |x1| coincides; the scores are then all zero.
    bool degenerate_support = false;
};

/// Normalized horizontal magnitude of 2-D points, rescaled to [0, 1] over the
/// support. Misaligned mode reverses the profile.
PuProfileResult pu_selection_bias_profile(const std::vector<Vec>& points, PuProfileMode mode);

/// c_i = A + lambda_ent * (2 q_i - 1) with q_i = 1 - H(p_i) / log K.
Vec entropy_profile(const Matrix& posteriors, double base_price, double lambda_ent);

/// c_i = A + lambda_ps * r_i where r_i averages, over the k nearest neighbors
/// in unit-normalized feature space, the posterior mass on i's predicted class.
Vec prototype_support_profile(const Matrix& features, const Matrix& posteriors, double base_price,
                              double lambda_ps, std::size_t k);

/// Parameters of the spectral protection profiles. Everything is expressed on
/// the (log k, phi) grid; radii use the same units as spectral_distance.
struct GeoCostParams {
    double rho_loc = 0.16;
    double rho_sp = 0.20;
    double p_sp = 7.0;
    double gamma_cut = 0.75;
    double p_veto = 2.5;
    double beta_cut = 2.5;
    double beta_loc = 0.15;
    double eta_cut = 0.5;  // weight of undisplaced energy inside the SAR support map
    double alpha_sar_exponent = 0.35;
    double alpha_swim_exponent = 0.45;
    double c_min = 5e-5;
    double c_max = 3.0;
};

/// Diagnostic maps backing the geo profiles, all on the same grid with values
/// in [0, 1]: observed energies a_*, the cutoff/displacement map b_sar and the
/// speckle map s_swim.
struct GeoDiagnostics {
    SpectrumGrid grid;
    Vec a_sar;
    Vec a_swim;
    Vec b_sar;
    Vec s_swim;
};

struct GeoCostProfiles {
    Vec c_sar;   // source-side unmatched cost
    Vec c_swim;  // target-side unmatched cost
    Vec r_s;     // protection scores behind the affine map
    Vec r_t;
};

/// Protection scores from the sensor diagnostics:
///   r_s = clip[ alpha_sar * (beta_cut * b_sar^gamma_cut
///                            + beta_loc * q_swim * (1 - h_sp)^p_veto) ]
///   r_t = clip[ alpha_swim * q_sar * (1 - s_swim)^p_sp ]
/// with q_* the local-support maps and h_sp the speckle-support veto, then
/// the affine map to [c_min, c_max].
GeoCostProfiles geo_cost_profiles(const GeoDiagnostics& maps, const GeoCostParams& params);

}  // namespace icpot
