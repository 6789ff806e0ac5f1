// rng.hpp — deterministic, platform-independent random streams
#pragma once

#include <cstdint>
#include <random>

namespace corrproj::rng {

// splitmix64 mixing step; advances the state and returns one output word
std::uint64_t splitmix64(std::uint64_t& state);

// substream seed for realization k of an ensemble with the given base seed;
// deterministic and collision-resistant across (base, k)
std::uint64_t realization_seed(std::uint64_t base, std::uint64_t k);

// standard-normal stream built on std::mt19937_64 raw output (which the
// standard pins bit-for-bit) and an explicit Box-Muller transform, so the
// sampled values are identical on every platform for a fixed seed
class GaussianStream {
  public:
    explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

    // one N(0,1) variate
    double next();

    // uniform in (0,1] (never 0, so log() is safe)
    double next_open_unit();

  private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

} // namespace corrproj::rng
