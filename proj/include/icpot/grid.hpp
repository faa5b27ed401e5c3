#pragma once

#include "icpot/types.hpp"

#include <cstddef>
#include <vector>

namespace icpot {

/// North-referenced spectral grid over wavenumber magnitude and propagation
/// direction. The working coordinates are (log k, phi) with phi cyclic.
struct SpectrumGrid {
    Vec log_k;  // strictly increasing
    Vec phi;    // strictly increasing, covering [0, 2 pi)

    std::size_t n_k() const { return log_k.size(); }
    std::size_t n_phi() const { return phi.size(); }
    std::size_t cells() const { return n_k() * n_phi(); }
    std::size_t index(std::size_t ik, std::size_t iphi) const { return ik * n_phi() + iphi; }

    static SpectrumGrid regular(std::size_t n_k, std::size_t n_phi, double k_min, double k_max);
};

/// Shortest angular difference, in [0, pi].
double cyclic_phi_distance(double a, double b);

/// Euclidean distance in (log k, phi) with the angular wrap.
double spectral_distance(const SpectrumGrid& grid, std::size_t cell_a, std::size_t cell_b);

/// Cost matrix between two cell subsets of the same grid.
Matrix spectral_cost(const SpectrumGrid& grid, const std::vector<std::size_t>& source_cells,
                     const std::vector<std::size_t>& target_cells);

/// Spreads the positive part of a map inside a (log k, phi) ball of the given
/// radius (max-dilation), then rescales so the output peaks at 1. An all-zero
/// map stays zero.
Vec local_support(const Vec& map, double radius, const SpectrumGrid& grid);

}  // namespace icpot
