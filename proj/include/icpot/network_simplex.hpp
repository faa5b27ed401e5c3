#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace icpot::detail {

/// One directed arc of a bipartite transportation instance: row `tail`
/// (0..rows-1) ships to column `head` (0..cols-1) at unit cost `cost`.
struct TransportArc {
    std::int32_t tail;
    std::int32_t head;
    double cost;
};

struct TransportInstance {
    std::vector<double> supply;
    std::vector<double> demand;
    std::vector<TransportArc> arcs;
};

struct TransportOptions {
    /// 0 means the default budget of 50 * (rows + cols)^2 pivots.
    std::uint64_t max_pivots = 0;
    /// Relative magnitude of the deterministic cost perturbation used for
    /// tie-breaking; 0 disables it. Reported objectives and potentials always
    /// use the unperturbed costs.
    double perturbation = 0.0;
};

struct TransportResult {
    std::vector<double> flow;            // per arc, same order as instance.arcs
    std::vector<double> row_potential;   // f with f_r + g_c <= cost on every arc
    std::vector<double> col_potential;   // g, tight on basic arcs
    double objective = 0.0;
    std::uint64_t pivots = 0;
};

/// Primal network simplex on a spanning-tree basis. `initial_tree` must list
/// rows+cols-1 arc indices forming a feasible spanning tree of the bipartite
/// graph. Entering arcs are found by deterministic block search with a Bland
/// fallback under long degenerate streaks, so the method always terminates.
TransportResult solve_transportation(const TransportInstance& inst,
                                     std::span<const std::int64_t> initial_tree,
                                     const TransportOptions& opts = {});

/// Northwest-corner style initial basis for a dense instance whose arcs are
/// laid out row-major (arc id = i * cols + j). Valid whenever total supply
/// equals total demand.
std::vector<std::int64_t> northwest_corner_tree(const std::vector<double>& supply,
                                                const std::vector<double>& demand);

}  // namespace icpot::detail
