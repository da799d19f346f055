#ifndef OMLASER_RNG_HPP
#define OMLASER_RNG_HPP

#include <cmath>
#include <cstdint>
#include <utility>

namespace omlaser {

/// Counter-based pseudo-random stream (splitmix64 over an incrementing
/// counter). Streams keyed by (seed, stream_id) are independent, cheap to
/// construct anywhere, and give bit-identical sequences on every platform,
/// which keeps parallel ensembles reproducible.
class RandomStream {
   public:
    RandomStream(std::uint64_t seed, std::uint64_t stream_id)
        : counter_(mix(seed + 0x9e3779b97f4a7c15ull * (stream_id + 1))) {}

    std::uint64_t next_u64() {
        counter_ += 0x9e3779b97f4a7c15ull;
        return mix(counter_);
    }

    /// Uniform on (0, 1].
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * (uniform() - 0x1.0p-53); }

    /// Pair of independent standard normals (Box-Muller).
    std::pair<double, double> normal_pair() {
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 6.283185307179586476925286766559 * u2;
        return {r * std::cos(t), r * std::sin(t)};
    }

   private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ull;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebull;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t counter_;
};

}  // namespace omlaser

#endif
