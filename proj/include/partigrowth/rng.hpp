#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace partigrowth {

/// SplitMix64 finalizer, used to decorrelate (seed, stream) pairs.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Reproducible random stream identified by (seed, stream).
///
/// Draws are derived by hand from the raw 64-bit engine output so that the
/// sequence does not depend on the standard library's distribution code.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream)
        : seed_(seed), stream_(stream), engine_(splitmix64(splitmix64(seed) ^ splitmix64(~stream))) {}

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream() const noexcept { return stream_; }

    std::uint64_t bits() { return engine_(); }

    /// Uniform on (0, 1]; never returns 0, so log() is always finite.
    double uniform() { return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53; }

    /// Uniform integer in [0, n) by Lemire's multiply-shift with rejection.
    std::uint64_t below(std::uint64_t n) {
        unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * n;
        auto low = static_cast<std::uint64_t>(m);
        if (low < n) {
            const std::uint64_t threshold = -n % n;
            while (low < threshold) {
                m = static_cast<unsigned __int128>(engine_()) * n;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    double exponential(double rate) { return -std::log(uniform()) / rate; }

    /// Number of failures before the first success when each trial fails with
    /// probability e^{log_fail}; log_fail < 0.
    std::int64_t geometric_failures(double log_fail) {
        return static_cast<std::int64_t>(std::floor(std::log(uniform()) / log_fail));
    }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
};

}  // namespace partigrowth
