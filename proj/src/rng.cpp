// rng.cpp — splitmix64 seeding and Box-Muller normals on mt19937_64 words
#include "corrproj/rng.hpp"

#include <cmath>

namespace corrproj::rng {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr double kTwoPi = 6.283185307179586476925286766559;
// 2^-53: maps a 53-bit word into [0,1)
constexpr double kScale53 = 1.0 / 9007199254740992.0;
} // namespace

std::uint64_t splitmix64(std::uint64_t& state) {
    state += kGolden;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t realization_seed(std::uint64_t base, std::uint64_t k) {
    std::uint64_t state = base;
    const std::uint64_t mixed_base = splitmix64(state);
    state = mixed_base ^ ((k + 1) * kGolden);
    return splitmix64(state);
}

double GaussianStream::next_open_unit() {
    // (x >> 11) + 1 lies in [1, 2^53], so the result is in (0, 1]
    return static_cast<double>((engine_() >> 11) + 1) * kScale53;
}

double GaussianStream::next() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    const double u1 = next_open_unit();
    const double u2 = static_cast<double>(engine_() >> 11) * kScale53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = kTwoPi * u2;
    cached_ = r * std::sin(theta);
    has_cached_ = true;
    return r * std::cos(theta);
}

} // namespace corrproj::rng
