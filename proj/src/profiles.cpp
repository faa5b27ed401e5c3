#include "icpot/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace icpot {

Vec affine_costs(const RelevanceScores& scores, const AffineCostParams& params) {
    if (!(params.c_min >= 0.0) || !(params.c_max >= params.c_min)) {
        throw std::invalid_argument("affine cost parameters need 0 <= c_min <= c_max");
    }
    Vec out(scores.r.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double r = scores.r[i];
        if (!(r >= 0.0 && r <= 1.0)) {
            throw std::invalid_argument("relevance score out of [0, 1] at index " +
                                        std::to_string(i));
        }
        out[i] = params.c_min + (params.c_max - params.c_min) * r;
    }
    return out;
}

PuProfileResult pu_selection_bias_profile(const std::vector<Vec>& points, PuProfileMode mode) {
    PuProfileResult out;
    out.scores.r.resize(points.size());
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& pt : points) {
        if (pt.size() < 1) throw std::invalid_argument("pu profile expects 2-D points");
        const double a = std::abs(pt[0]);
        lo = std::min(lo, a);
        hi = std::max(hi, a);
    }
    if (points.empty() || hi - lo <= 0.0) {
        std::fill(out.scores.r.begin(), out.scores.r.end(), 0.0);
        out.degenerate_support = true;
        return out;
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double r = (std::abs(points[i][0]) - lo) / (hi - lo);
        out.scores.r[i] = mode == PuProfileMode::aligned ? r : 1.0 - r;
    }
    return out;
}

Vec entropy_profile(const Matrix& posteriors, double base_price, double lambda_ent) {
    const std::size_t n = posteriors.rows();
    const std::size_t k = posteriors.cols();
    if (k < 2) throw std::invalid_argument("entropy profile needs at least two classes");
    Vec out(n);
    const double log_k = std::log(static_cast<double>(k));
    for (std::size_t i = 0; i < n; ++i) {
        double row_sum = 0.0;
        double entropy = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            const double p = posteriors(i, c);
            if (p < -1e-12) {
                throw std::invalid_argument("negative posterior at row " + std::to_string(i));
            }
            row_sum += p;
            if (p > 0.0) entropy -= p * std::log(p);
        }
        if (std::abs(row_sum - 1.0) > 1e-6) {
            throw std::invalid_argument("posterior row " + std::to_string(i) +
                                        " sums to " + std::to_string(row_sum));
        }
        const double confidence = 1.0 - entropy / log_k;
        out[i] = base_price + lambda_ent * (2.0 * confidence - 1.0);
    }
    return out;
}

Vec prototype_support_profile(const Matrix& features, const Matrix& posteriors, double base_price,
                              double lambda_ps, std::size_t k) {
    const std::size_t n = features.rows();
    if (posteriors.rows() != n) {
        throw std::invalid_argument("features and posteriors disagree on the sample count");
    }
    if (k == 0 || k >= n) {
        throw std::invalid_argument("neighborhood size k must satisfy 1 <= k <= N-1");
    }

    // Unit-normalize each feature vector before the neighbor search.
    Matrix unit = features;
    for (std::size_t i = 0; i < n; ++i) {
        double norm = 0.0;
        for (std::size_t d = 0; d < unit.cols(); ++d) norm += unit(i, d) * unit(i, d);
        norm = std::sqrt(norm);
        if (norm > 0.0) {
            for (std::size_t d = 0; d < unit.cols(); ++d) unit(i, d) /= norm;
        }
    }

    std::vector<std::size_t> predicted(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t best = 0;
        for (std::size_t c = 1; c < posteriors.cols(); ++c) {
            if (posteriors(i, c) > posteriors(i, best)) best = c;
        }
        predicted[i] = best;
    }

    Vec out(n);
    std::vector<std::pair<double, std::size_t>> dist(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t l = 0; l < n; ++l) {
            double d2 = 0.0;
            for (std::size_t d = 0; d < unit.cols(); ++d) {
                const double diff = unit(i, d) - unit(l, d);
                d2 += diff * diff;
            }
            dist[l] = {d2, l};
        }
        dist[i].first = std::numeric_limits<double>::infinity();  // never your own neighbor
        std::nth_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k) - 1,
                         dist.end());
        double support = 0.0;
        for (std::size_t t = 0; t < k; ++t) support += posteriors(dist[t].second, predicted[i]);
        out[i] = base_price + lambda_ps * support / static_cast<double>(k);
    }
    return out;
}

namespace {

void require_unit_map(const Vec& map, std::size_t cells, const char* name) {
    if (map.size() != cells) {
        throw std::invalid_argument(std::string(name) + " does not match the grid size");
    }
    for (double x : map) {
        if (!(x >= 0.0 && x <= 1.0)) {
            throw std::invalid_argument(std::string(name) + " has a value outside [0, 1]");
        }
    }
}

}  // namespace

GeoCostProfiles geo_cost_profiles(const GeoDiagnostics& maps, const GeoCostParams& params) {
    const std::size_t cells = maps.grid.cells();
    require_unit_map(maps.a_sar, cells, "a_sar");
    require_unit_map(maps.a_swim, cells, "a_swim");
    require_unit_map(maps.b_sar, cells, "b_sar");
    require_unit_map(maps.s_swim, cells, "s_swim");

    Vec reliable_swim(cells), sar_support_seed(cells), speckle_seed(cells);
    for (std::size_t z = 0; z < cells; ++z) {
        reliable_swim[z] = maps.a_swim[z] * std::pow(1.0 - maps.s_swim[z], params.p_sp);
        sar_support_seed[z] =
            maps.a_sar[z] * (params.eta_cut + (1.0 - params.eta_cut) * maps.b_sar[z]);
        speckle_seed[z] = maps.a_swim[z] * maps.s_swim[z];
    }
    const Vec q_swim = local_support(reliable_swim, params.rho_loc, maps.grid);
    const Vec q_sar = local_support(sar_support_seed, params.rho_loc, maps.grid);
    const Vec h_sp = local_support(speckle_seed, params.rho_sp, maps.grid);

    GeoCostProfiles out;
    out.r_s.resize(cells);
    out.r_t.resize(cells);
    for (std::size_t z = 0; z < cells; ++z) {
        const double alpha_sar = std::pow(maps.a_sar[z], params.alpha_sar_exponent);
        const double alpha_swim = std::pow(maps.a_swim[z], params.alpha_swim_exponent);
        const double cut_branch = params.beta_cut * std::pow(maps.b_sar[z], params.gamma_cut);
        const double local_branch =
            params.beta_loc * q_swim[z] * std::pow(1.0 - h_sp[z], params.p_veto);
        out.r_s[z] = std::clamp(alpha_sar * (cut_branch + local_branch), 0.0, 1.0);
        out.r_t[z] = std::clamp(
            alpha_swim * q_sar[z] * std::pow(1.0 - maps.s_swim[z], params.p_sp), 0.0, 1.0);
    }
    const AffineCostParams affine{params.c_min, params.c_max};
    out.c_sar = affine_costs(RelevanceScores{out.r_s}, affine);
    out.c_swim = affine_costs(RelevanceScores{out.r_t}, affine);
    return out;
}

}  // namespace icpot
