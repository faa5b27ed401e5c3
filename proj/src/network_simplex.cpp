#include "icpot/network_simplex.hpp"

#include "icpot/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace icpot::detail {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double hash_unit(std::uint64_t x) {
    return static_cast<double>(splitmix64(x) >> 11) * 0x1.0p-53;
}

}  // namespace

std::vector<std::int64_t> northwest_corner_tree(const std::vector<double>& supply,
                                                const std::vector<double>& demand) {
    const std::size_t rows = supply.size();
    const std::size_t cols = demand.size();
    std::vector<std::int64_t> tree;
    tree.reserve(rows + cols - 1);
    std::vector<double> rem_a = supply;
    std::vector<double> rem_b = demand;
    std::size_t i = 0;
    std::size_t j = 0;
    while (true) {
        tree.push_back(static_cast<std::int64_t>(i * cols + j));
        const double t = std::min(rem_a[i], rem_b[j]);
        rem_a[i] -= t;
        rem_b[j] -= t;
        if (i + 1 == rows && j + 1 == cols) break;
        // Advance one index at a time so the basis keeps rows+cols-1 arcs
        // even through degenerate steps.
        if (j + 1 == cols || (rem_a[i] <= rem_b[j] && i + 1 < rows)) {
            ++i;
        } else {
            ++j;
        }
    }
    return tree;
}

namespace {

class NetworkSimplex {
  public:
    NetworkSimplex(const TransportInstance& inst, std::span<const std::int64_t> initial_tree,
                   const TransportOptions& opts)
        : inst_(inst) {
        rows_ = static_cast<std::int32_t>(inst.supply.size());
        cols_ = static_cast<std::int32_t>(inst.demand.size());
        nodes_ = rows_ + cols_;
        arcs_ = static_cast<std::int64_t>(inst.arcs.size());

        const double total_supply = std::accumulate(inst.supply.begin(), inst.supply.end(), 0.0);
        const double total_demand = std::accumulate(inst.demand.begin(), inst.demand.end(), 0.0);
        mass_scale_ = 1.0 + std::max(total_supply, total_demand);
        if (std::abs(total_supply - total_demand) > 1e-9 * mass_scale_) {
            throw std::invalid_argument("transportation instance is unbalanced: supply " +
                                        std::to_string(total_supply) + " vs demand " +
                                        std::to_string(total_demand));
        }

        double max_cost = 0.0;
        for (const auto& a : inst.arcs) max_cost = std::max(max_cost, std::abs(a.cost));
        cost_scale_ = 1.0 + max_cost;
        enter_tol_ = 1e-12 * cost_scale_;

        perturbed_ = opts.perturbation > 0.0;
        pivot_cost_.resize(arcs_);
        const double pert = opts.perturbation * cost_scale_;
        for (std::int64_t a = 0; a < arcs_; ++a) {
            pivot_cost_[a] = inst.arcs[a].cost +
                             (perturbed_ ? pert * hash_unit(static_cast<std::uint64_t>(a)) : 0.0);
        }

        if (static_cast<std::int64_t>(initial_tree.size()) != nodes_ - 1) {
            throw std::invalid_argument("initial tree must have " + std::to_string(nodes_ - 1) +
                                        " arcs, got " + std::to_string(initial_tree.size()));
        }
        flow_.assign(arcs_, 0.0);
        in_tree_.assign(arcs_, false);
        tree_adj_.assign(nodes_, {});
        for (std::int64_t a : initial_tree) {
            if (a < 0 || a >= arcs_) throw std::invalid_argument("initial tree arc out of range");
            if (in_tree_[a]) throw std::invalid_argument("initial tree repeats an arc");
            in_tree_[a] = true;
            tree_adj_[tail_node(a)].push_back(a);
            tree_adj_[head_node(a)].push_back(a);
        }

        parent_.assign(nodes_, -1);
        parent_arc_.assign(nodes_, -1);
        depth_.assign(nodes_, 0);
        pi_.assign(nodes_, 0.0);
        visit_mark_.assign(nodes_, 0);
        root_ = nodes_ - 1;
        rebuild_tree_from(root_);
        recompute_flows();

        budget_ = opts.max_pivots != 0 ? opts.max_pivots
                                       : 50ull * static_cast<std::uint64_t>(nodes_) *
                                             static_cast<std::uint64_t>(nodes_);
        block_size_ = std::max<std::int64_t>(
            64, static_cast<std::int64_t>(std::sqrt(static_cast<double>(arcs_))));
    }

    TransportResult run() {
        std::uint64_t degenerate_streak = 0;
        bool bland = false;
        const std::uint64_t streak_limit = 8ull * static_cast<std::uint64_t>(nodes_) + 64;
        const std::uint64_t refresh_interval = 4ull * static_cast<std::uint64_t>(nodes_) + 256;

        while (true) {
            const std::int64_t e = bland ? find_entering_bland() : find_entering_block();
            if (e < 0) break;
            if (pivots_ >= budget_) {
                throw SolveError("network simplex exceeded its pivot budget of " +
                                     std::to_string(budget_),
                                 current_primal(), current_dual(), pivots_);
            }
            const double delta = pivot(e);
            ++pivots_;
            if (pivots_ % refresh_interval == 0) {
                // Re-derive potentials and flows from the tree to cap the
                // incremental floating-point drift.
                rebuild_tree_from(root_);
                recompute_flows();
            }
            if (delta <= 1e-14 * mass_scale_) {
                if (++degenerate_streak > streak_limit) bland = true;
            } else {
                degenerate_streak = 0;
                bland = false;
            }
        }
        return extract();
    }

  private:
    std::int32_t tail_node(std::int64_t a) const { return inst_.arcs[a].tail; }
    std::int32_t head_node(std::int64_t a) const { return rows_ + inst_.arcs[a].head; }
    bool is_row(std::int32_t x) const { return x < rows_; }
    std::int32_t other_end(std::int64_t a, std::int32_t x) const {
        const std::int32_t t = tail_node(a);
        return x == t ? head_node(a) : t;
    }

    double reduced_cost(std::int64_t a) const {
        return pivot_cost_[a] + pi_[tail_node(a)] - pi_[head_node(a)];
    }

    /// BFS over the current basic arcs, assigning parent/depth/potential.
    /// When `start` is not the root, the caller must have already set its
    /// parent, parent arc, depth and potential.
    void rebuild_tree_from(std::int32_t start) {
        bfs_queue_.clear();
        bfs_queue_.push_back(start);
        ++epoch_;
        visit_mark_[start] = epoch_;
        if (start == root_) {
            parent_[root_] = -1;
            parent_arc_[root_] = -1;
            depth_[root_] = 0;
            pi_[root_] = 0.0;
        }
        for (std::size_t qi = 0; qi < bfs_queue_.size(); ++qi) {
            const std::int32_t x = bfs_queue_[qi];
            for (std::int64_t a : tree_adj_[x]) {
                const std::int32_t y = other_end(a, x);
                if (visit_mark_[y] == epoch_ || a == parent_arc_[x]) continue;
                visit_mark_[y] = epoch_;
                parent_[y] = x;
                parent_arc_[y] = a;
                depth_[y] = depth_[x] + 1;
                // Basic arcs are tight: pi_head = cost + pi_tail.
                if (y == head_node(a)) {
                    pi_[y] = pivot_cost_[a] + pi_[tail_node(a)];
                } else {
                    pi_[y] = pi_[head_node(a)] - pivot_cost_[a];
                }
                bfs_queue_.push_back(y);
            }
        }
        if (start == root_ && static_cast<std::int64_t>(bfs_queue_.size()) != nodes_) {
            throw std::invalid_argument("initial tree does not span the bipartite graph");
        }
    }

    /// Exact basic flows by leaf elimination; independent of pivot history.
    void recompute_flows() {
        std::fill(flow_.begin(), flow_.end(), 0.0);
        std::vector<std::int32_t> order(nodes_);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](std::int32_t a, std::int32_t b) { return depth_[a] > depth_[b]; });
        std::vector<double> acc(nodes_);
        for (std::int32_t x = 0; x < nodes_; ++x) {
            acc[x] = is_row(x) ? inst_.supply[x] : -inst_.demand[x - rows_];
        }
        for (std::int32_t x : order) {
            if (x == root_) continue;
            const std::int64_t a = parent_arc_[x];
            const double f = (x == tail_node(a)) ? acc[x] : -acc[x];
            if (f < -1e-9 * mass_scale_) {
                throw std::invalid_argument("initial tree is infeasible: arc " + std::to_string(a) +
                                            " would carry flow " + std::to_string(f));
            }
            flow_[a] = std::max(0.0, f);
            acc[parent_[x]] += acc[x];
        }
    }

    std::int64_t find_entering_block() {
        std::int64_t scanned = 0;
        while (scanned < arcs_) {
            std::int64_t best = -1;
            double best_rc = -enter_tol_;
            const std::int64_t stop = scanned + block_size_;
            for (; scanned < stop && scanned < arcs_; ++scanned) {
                const std::int64_t a = cursor_;
                cursor_ = cursor_ + 1 == arcs_ ? 0 : cursor_ + 1;
                if (in_tree_[a]) continue;
                const double rc = reduced_cost(a);
                if (rc < best_rc) {
                    best_rc = rc;
                    best = a;
                }
            }
            if (best >= 0) return best;
        }
        return -1;
    }

    std::int64_t find_entering_bland() {
        for (std::int64_t a = 0; a < arcs_; ++a) {
            if (!in_tree_[a] && reduced_cost(a) < -enter_tol_) return a;
        }
        return -1;
    }

    /// One basis exchange. Returns the amount of flow pushed around the cycle.
    double pivot(std::int64_t e) {
        const std::int32_t u = tail_node(e);
        const std::int32_t v = head_node(e);

        // Collect the two tree paths up to the common ancestor. Cycle
        // direction is u -> v along the entering arc; an arc traversed with
        // the cycle gains flow (+1), against it loses flow (-1).
        cycle_arcs_.clear();
        cycle_signs_.clear();
        std::int32_t x = u;
        std::int32_t y = v;
        while (depth_[x] > depth_[y]) {
            cycle_arcs_.push_back(parent_arc_[x]);
            cycle_signs_.push_back(is_row(x) ? -1 : +1);
            x = parent_[x];
        }
        while (depth_[y] > depth_[x]) {
            cycle_arcs_.push_back(parent_arc_[y]);
            cycle_signs_.push_back(is_row(y) ? +1 : -1);
            y = parent_[y];
        }
        while (x != y) {
            cycle_arcs_.push_back(parent_arc_[x]);
            cycle_signs_.push_back(is_row(x) ? -1 : +1);
            x = parent_[x];
            cycle_arcs_.push_back(parent_arc_[y]);
            cycle_signs_.push_back(is_row(y) ? +1 : -1);
            y = parent_[y];
        }

        double delta = std::numeric_limits<double>::infinity();
        std::int64_t leaving = -1;
        const double tie = 1e-15 * mass_scale_;
        for (std::size_t k = 0; k < cycle_arcs_.size(); ++k) {
            if (cycle_signs_[k] != -1) continue;
            const std::int64_t a = cycle_arcs_[k];
            const double bound = flow_[a];
            if (leaving < 0 || bound < delta - tie) {
                delta = bound;
                leaving = a;
            } else if (bound <= delta + tie) {
                delta = std::min(delta, bound);
                if (a < leaving) leaving = a;
            }
        }
        if (leaving < 0) {
            throw SolveError("transportation cycle without a blocking arc", current_primal(),
                             current_dual(), pivots_);
        }

        flow_[e] += delta;
        for (std::size_t k = 0; k < cycle_arcs_.size(); ++k) {
            flow_[cycle_arcs_[k]] += cycle_signs_[k] * delta;
        }
        flow_[leaving] = 0.0;

        // Swap the basis arcs and re-hang the detached subtree from the
        // entering arc's endpoint that lies inside it.
        const std::int32_t l_tail = tail_node(leaving);
        const std::int32_t l_head = head_node(leaving);
        const std::int32_t child = depth_[l_tail] > depth_[l_head] ? l_tail : l_head;

        in_tree_[leaving] = false;
        erase_adj(l_tail, leaving);
        erase_adj(l_head, leaving);

        const bool u_detached = in_subtree_of(u, child);
        const std::int32_t p = u_detached ? u : v;
        const std::int32_t q = u_detached ? v : u;

        parent_[p] = q;
        parent_arc_[p] = e;
        depth_[p] = depth_[q] + 1;
        if (p == head_node(e)) {
            pi_[p] = pivot_cost_[e] + pi_[tail_node(e)];
        } else {
            pi_[p] = pi_[head_node(e)] - pivot_cost_[e];
        }
        rebuild_tree_from(p);

        in_tree_[e] = true;
        tree_adj_[tail_node(e)].push_back(e);
        tree_adj_[head_node(e)].push_back(e);
        return delta;
    }

    bool in_subtree_of(std::int32_t x, std::int32_t top) const {
        // The detached side is exactly the nodes whose root path passes
        // through `top` in the pre-pivot tree.
        while (depth_[x] > depth_[top]) x = parent_[x];
        return x == top;
    }

    void erase_adj(std::int32_t node, std::int64_t arc) {
        auto& adj = tree_adj_[node];
        adj.erase(std::find(adj.begin(), adj.end(), arc));
    }

    double current_primal() const {
        double obj = 0.0;
        for (std::int64_t a = 0; a < arcs_; ++a) obj += inst_.arcs[a].cost * flow_[a];
        return obj;
    }

    double current_dual() const {
        double obj = 0.0;
        for (std::int32_t r = 0; r < rows_; ++r) obj += -pi_[r] * inst_.supply[r];
        for (std::int32_t c = 0; c < cols_; ++c) obj += pi_[rows_ + c] * inst_.demand[c];
        return obj;
    }

    TransportResult extract() {
        // Rebuild potentials and flows from the final tree using unperturbed
        // costs, so reported numbers carry neither pivot drift nor the
        // tie-break perturbation.
        if (perturbed_) {
            for (std::int64_t a = 0; a < arcs_; ++a) pivot_cost_[a] = inst_.arcs[a].cost;
        }
        rebuild_tree_from(root_);
        recompute_flows();

        TransportResult out;
        out.flow = flow_;
        out.row_potential.resize(rows_);
        out.col_potential.resize(cols_);
        for (std::int32_t r = 0; r < rows_; ++r) out.row_potential[r] = -pi_[r];
        for (std::int32_t c = 0; c < cols_; ++c) out.col_potential[c] = pi_[rows_ + c];
        out.pivots = pivots_;
        out.objective = current_primal();
        return out;
    }

    const TransportInstance& inst_;
    std::int32_t rows_ = 0;
    std::int32_t cols_ = 0;
    std::int32_t nodes_ = 0;
    std::int64_t arcs_ = 0;
    std::int32_t root_ = 0;
    double mass_scale_ = 1.0;
    double cost_scale_ = 1.0;
    double enter_tol_ = 0.0;
    bool perturbed_ = false;
    std::uint64_t budget_ = 0;
    std::uint64_t pivots_ = 0;
    std::int64_t block_size_ = 64;
    std::int64_t cursor_ = 0;
    std::uint32_t epoch_ = 0;

    std::vector<double> pivot_cost_;
    std::vector<double> flow_;
    std::vector<bool> in_tree_;
    std::vector<std::vector<std::int64_t>> tree_adj_;
    std::vector<std::int32_t> parent_;
    std::vector<std::int64_t> parent_arc_;
    std::vector<std::int32_t> depth_;
    std::vector<double> pi_;
    std::vector<std::uint32_t> visit_mark_;
    std::vector<std::int32_t> bfs_queue_;
    std::vector<std::int64_t> cycle_arcs_;
    std::vector<int> cycle_signs_;
};

}  // namespace

TransportResult solve_transportation(const TransportInstance& inst,
                                     std::span<const std::int64_t> initial_tree,
                                     const TransportOptions& opts) {
    NetworkSimplex simplex(inst, initial_tree, opts);
    return simplex.run();
}

}  // namespace icpot::detail
