#include "icpot/bench_pu.hpp"

#include "icpot/profiles.hpp"
#include "icpot/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace icpot::pu {

PuConfig PuConfig::homogeneous(std::uint64_t seed) {
    PuConfig cfg;
    cfg.seed = seed;
    cfg.rho_fringe = cfg.rho_center;
    return cfg;
}

PuConfig PuConfig::heterogeneous(std::uint64_t seed) {
    PuConfig cfg;
    cfg.seed = seed;
    cfg.rho_fringe = 0.07;
    return cfg;
}

double PuCase::latent_positive_fraction() const {
    if (unlabeled.empty()) return 0.0;
    std::size_t positives = 0;
    for (int y : unlabeled_labels) {
        if (y > 0) ++positives;
    }
    return static_cast<double>(positives) / static_cast<double>(unlabeled.size());
}

const char* to_string(PuPolicy policy) {
    switch (policy) {
        case PuPolicy::partial_w: return "partial_w";
        case PuPolicy::icpot_aligned: return "icpot_aligned";
        case PuPolicy::icpot_misaligned: return "icpot_misaligned";
    }
    return "unknown";
}

PuCase generate_pu_case(const PuConfig& cfg) {
    if (cfg.n_pos == 0 || cfg.n_neg == 0) {
        throw std::invalid_argument("pu generator needs at least one point per class");
    }
    if (!(cfg.rho_center > 0.0 && cfg.rho_center <= 1.0) ||
        !(cfg.rho_fringe > 0.0 && cfg.rho_fringe <= 1.0)) {
        throw std::invalid_argument("selection probabilities must lie in (0, 1]");
    }
    Rng rng(cfg.seed);
    PuCase out;

    for (std::size_t k = 0; k < cfg.n_pos; ++k) {
        const double x1 = cfg.band_center_x + rng.uniform(-cfg.band_extent, cfg.band_extent);
        const double x2 = rng.uniform(-cfg.band_half_width, cfg.band_half_width);
        const double rel = std::min(1.0, std::abs(x1 - cfg.band_center_x) / cfg.band_extent);
        const double rho = cfg.rho_center + (cfg.rho_fringe - cfg.rho_center) * rel;
        if (rng.bernoulli(rho)) {
            out.observed_positives.push_back({x1, x2});
        } else {
            out.unlabeled.push_back({x1, x2});
            out.unlabeled_labels.push_back(+1);
        }
    }
    for (std::size_t k = 0; k < cfg.n_neg; ++k) {
        const double side = k % 2 == 0 ? 1.0 : -1.0;
        const double x1 = rng.normal(side * cfg.neg_offset_x, cfg.neg_sigma);
        const double x2 = rng.normal(side * cfg.neg_offset_y, cfg.neg_sigma);
        out.unlabeled.push_back({x1, x2});
        out.unlabeled_labels.push_back(-1);
    }
    return out;
}

namespace {

Matrix squared_euclidean(const std::vector<Vec>& a, const std::vector<Vec>& b) {
    Matrix out(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            double d2 = 0.0;
            for (std::size_t d = 0; d < a[i].size(); ++d) {
                const double diff = a[i][d] - b[j][d];
                d2 += diff * diff;
            }
            out(i, j) = d2;
        }
    }
    return out;
}

}  // namespace

PuRunResult pu_pipeline(const PuCase& pu_case, PuPolicy policy, double mass_prior,
                        const PuPolicyParams& params) {
    if (pu_case.observed_positives.empty()) {
        throw std::invalid_argument("empty observed-positive set");
    }
    if (pu_case.unlabeled.empty()) {
        throw std::invalid_argument("empty unlabeled pool");
    }
    if (!(mass_prior > 0.0 && mass_prior < 1.0)) {
        throw std::invalid_argument("mass prior must lie in (0, 1)");
    }
    const std::size_t n = pu_case.unlabeled.size();
    const std::size_t m = pu_case.observed_positives.size();

    IcPotProblem problem;
    problem.mu.weights.assign(n, 1.0 / static_cast<double>(n));
    problem.cost = squared_euclidean(pu_case.unlabeled, pu_case.observed_positives);

    if (policy == PuPolicy::partial_w) {
        // Budgeted constant-cost baseline: the observed side carries exactly
        // the prior mass and a prohibitive target price forces it to be
        // filled, so the transported mass equals the prior.
        problem.nu.weights.assign(m, mass_prior / static_cast<double>(m));
        problem.c_s.assign(n, params.partial_w_price);
        problem.c_t.assign(m, 2.0 * problem.cost.max_abs() + 1.0);
    } else {
        problem.nu.weights.assign(m, 1.0 / static_cast<double>(m));
        const PuProfileResult profile = pu_selection_bias_profile(
            pu_case.unlabeled,
            policy == PuPolicy::icpot_aligned ? PuProfileMode::aligned : PuProfileMode::misaligned);
        problem.c_s = affine_costs(profile.scores, AffineCostParams{params.c_min, params.c_max});
        problem.c_t.assign(m, params.target_price);
    }

    const IcPotResult solved = solve_icpot(problem, SolveMode::sparse);

    // Classification: a pool point is positive when most of its mass ships out.
    const Vec outgoing = solved.solution.plan.row_sums();
    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const bool predicted = outgoing[i] > params.positive_threshold * problem.mu.weights[i];
        const bool actual = pu_case.unlabeled_labels[i] > 0;
        if (predicted && actual) ++tp;
        else if (predicted && !actual) ++fp;
        else if (!predicted && !actual) ++tn;
        else ++fn;
    }

    PuRunResult out;
    out.solution = solved.solution;
    const double precision = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
    const double recall = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
    out.metrics.f1 = precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
    out.metrics.accuracy = static_cast<double>(tp + tn) / static_cast<double>(n);
    out.transported_mass_fraction = solved.solution.plan.total_mass();
    return out;
}

namespace {

struct RegimeMeans {
    double partial_w = 0.0;
    double aligned = 0.0;
    double misaligned = 0.0;
};

RegimeMeans mean_f1_over_seeds(const PuConfig& base, const std::vector<std::uint64_t>& seeds,
                               const PuPolicyParams& params) {
    RegimeMeans sums;
    for (std::uint64_t seed : seeds) {
        PuConfig cfg = base;
        cfg.seed = seed;
        const PuCase pu_case = generate_pu_case(cfg);
        const double prior = cfg.mass_prior.value_or(pu_case.latent_positive_fraction());
        sums.partial_w += pu_pipeline(pu_case, PuPolicy::partial_w, prior, params).metrics.f1;
        sums.aligned += pu_pipeline(pu_case, PuPolicy::icpot_aligned, prior, params).metrics.f1;
        sums.misaligned += pu_pipeline(pu_case, PuPolicy::icpot_misaligned, prior, params).metrics.f1;
    }
    const double count = static_cast<double>(seeds.size());
    sums.partial_w /= count;
    sums.aligned /= count;
    sums.misaligned /= count;
    return sums;
}

}  // namespace

std::vector<PuSweepRow> pu_sweeps(const PuConfig& base, const std::vector<std::uint64_t>& seeds,
                                  const PuPolicyParams& params) {
    std::vector<PuSweepRow> rows;

    // Continuous selection-bias transition at fixed geometry.
    const Vec fringe_grid = {0.95, 0.80, 0.60, 0.45, 0.30, 0.20, 0.10, 0.03};
    for (double fringe : fringe_grid) {
        PuConfig cfg = base;
        cfg.rho_center = 0.95;
        cfg.rho_fringe = fringe;
        const RegimeMeans means = mean_f1_over_seeds(cfg, seeds, params);
        const double x = 1.0 - fringe / cfg.rho_center;
        rows.push_back({"bias", x, "heterogeneous", "icpot_aligned", means.aligned,
                        means.aligned - means.partial_w});
        rows.push_back({"bias", x, "heterogeneous", "icpot_misaligned", means.misaligned,
                        means.misaligned - means.partial_w});
        rows.push_back({"bias", x, "heterogeneous", "partial_w", means.partial_w, 0.0});
    }

    // Sensitivity of both regimes to the vertical offset of the negatives.
    const Vec offset_grid = {0.6, 0.8, 1.0, 1.2, 1.5, 2.0};
    for (double offset : offset_grid) {
        for (bool heterogeneous : {false, true}) {
            PuConfig cfg = heterogeneous ? PuConfig::heterogeneous(base.seed)
                                         : PuConfig::homogeneous(base.seed);
            cfg.n_pos = base.n_pos;
            cfg.n_neg = base.n_neg;
            cfg.neg_offset_y = offset;
            const RegimeMeans means = mean_f1_over_seeds(cfg, seeds, params);
            const char* regime = heterogeneous ? "heterogeneous" : "homogeneous";
            rows.push_back({"negative_offset", offset, regime, "partial_w", means.partial_w, 0.0});
            rows.push_back({"negative_offset", offset, regime, "icpot_aligned", means.aligned,
                            means.aligned - means.partial_w});
        }
    }
    return rows;
}

}  // namespace icpot::pu
