#pragma once

#include <cstdint>

namespace icpot {

/// Small deterministic generator (xoshiro256**). Distributions are spelled
/// out here so seeded runs reproduce bit-for-bit across standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    /// Uniform in [0, 1).
    double uniform();

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi);

    /// Standard normal via Box-Muller.
    double normal();

    double normal(double mean, double stddev);

    /// True with probability prob.
    bool bernoulli(double prob);

    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound);

  private:
    std::uint64_t s_[4];
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

}  // namespace icpot
