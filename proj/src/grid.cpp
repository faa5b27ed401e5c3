#include "icpot/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace icpot {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

SpectrumGrid SpectrumGrid::regular(std::size_t n_k, std::size_t n_phi, double k_min, double k_max) {
    if (n_k < 2 || n_phi < 2 || !(k_min > 0.0) || !(k_max > k_min)) {
        throw std::invalid_argument("invalid spectrum grid parameters");
    }
    SpectrumGrid g;
    g.log_k.resize(n_k);
    const double lo = std::log(k_min);
    const double hi = std::log(k_max);
    for (std::size_t i = 0; i < n_k; ++i) {
        g.log_k[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n_k - 1);
    }
    g.phi.resize(n_phi);
    for (std::size_t j = 0; j < n_phi; ++j) {
        g.phi[j] = kTwoPi * static_cast<double>(j) / static_cast<double>(n_phi);
    }
    return g;
}

double cyclic_phi_distance(double a, double b) {
    double d = std::fmod(std::abs(a - b), kTwoPi);
    return d > std::numbers::pi ? kTwoPi - d : d;
}

double spectral_distance(const SpectrumGrid& grid, std::size_t cell_a, std::size_t cell_b) {
    const std::size_t nphi = grid.n_phi();
    const double dk = grid.log_k[cell_a / nphi] - grid.log_k[cell_b / nphi];
    const double dphi = cyclic_phi_distance(grid.phi[cell_a % nphi], grid.phi[cell_b % nphi]);
    return std::hypot(dk, dphi);
}

Matrix spectral_cost(const SpectrumGrid& grid, const std::vector<std::size_t>& source_cells,
                     const std::vector<std::size_t>& target_cells) {
    Matrix out(source_cells.size(), target_cells.size());
    for (std::size_t i = 0; i < source_cells.size(); ++i) {
        for (std::size_t j = 0; j < target_cells.size(); ++j) {
            out(i, j) = spectral_distance(grid, source_cells[i], target_cells[j]);
        }
    }
    return out;
}

Vec local_support(const Vec& map, double radius, const SpectrumGrid& grid) {
    if (map.size() != grid.cells()) {
        throw std::invalid_argument("local_support: map size does not match the grid");
    }
    const std::size_t nk = grid.n_k();
    const std::size_t nphi = grid.n_phi();

    // Offsets reaching at most `radius` away; phi wraps.
    const double dk_step = nk > 1 ? (grid.log_k.back() - grid.log_k.front()) /
                                        static_cast<double>(nk - 1)
                                  : 1.0;
    const double dphi_step = kTwoPi / static_cast<double>(nphi);
    const int reach_k = static_cast<int>(std::floor(radius / dk_step));
    const int reach_phi = std::min<int>(static_cast<int>(nphi) / 2,
                                        static_cast<int>(std::floor(radius / dphi_step)));

    Vec out(map.size(), 0.0);
    for (std::size_t ik = 0; ik < nk; ++ik) {
        for (std::size_t iphi = 0; iphi < nphi; ++iphi) {
            double best = 0.0;
            for (int dk = -reach_k; dk <= reach_k; ++dk) {
                const int jk = static_cast<int>(ik) + dk;
                if (jk < 0 || jk >= static_cast<int>(nk)) continue;
                for (int dphi = -reach_phi; dphi <= reach_phi; ++dphi) {
                    const int jphi =
                        (static_cast<int>(iphi) + dphi + static_cast<int>(nphi)) %
                        static_cast<int>(nphi);
                    const double dist =
                        std::hypot(static_cast<double>(dk) * dk_step,
                                   cyclic_phi_distance(grid.phi[iphi],
                                                       grid.phi[static_cast<std::size_t>(jphi)]));
                    if (dist > radius) continue;
                    best = std::max(best,
                                    map[grid.index(static_cast<std::size_t>(jk),
                                                   static_cast<std::size_t>(jphi))]);
                }
            }
            out[grid.index(ik, iphi)] = best;
        }
    }
    const double peak = *std::max_element(out.begin(), out.end());
    if (peak > 0.0) {
        for (double& x : out) x /= peak;
    }
    return out;
}

}  // namespace icpot
