#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace steinso {

// splitmix64, used to spread user seeds and derive substream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Derived seed for worker / trial / draw index `index`. Feeding the result to
// RngStream reproduces RngStream::substream(seed, index).
inline std::uint64_t subseed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed) + 0x9E3779B97F4A7C15ULL * (index + 1);
}

// Seeded random stream. One stream per logical task; parallel code derives
// independent streams with substream(seed, worker_index) instead of sharing.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    static RngStream substream(std::uint64_t seed, std::uint64_t index) {
        return RngStream(subseed(seed, index));
    }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; the sine partner is cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u = 0.0;
        do {
            u = uniform();
        } while (u <= 0.0);
        const double v = uniform();
        const double r = std::sqrt(-2.0 * std::log(u));
        const double two_pi_v = 2.0 * M_PI * v;
        spare_ = r * std::sin(two_pi_v);
        has_spare_ = true;
        return r * std::cos(two_pi_v);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace steinso
