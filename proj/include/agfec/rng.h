#ifndef AGFEC_RNG_H
#define AGFEC_RNG_H

#include <cstdint>
#include <vector>

namespace agfec {

// SplitMix64 finalizer. Doubles as the 64-bit mixing hash used everywhere a
// seed is derived from (master seed, frame index, purpose) tuples, so serial
// and parallel runs draw identical streams.
std::uint64_t mix64(std::uint64_t x);

// Stream seed for a (seed, a, b) tuple, e.g. (master, frame, purpose).
std::uint64_t substream_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b);

// xoshiro256++ seeded through SplitMix64 state expansion. Gaussians come from
// Box-Muller (no rejection loop, so the draw count per sample is fixed).
// All outputs are platform-independent given the same seed, up to libm ulps
// in the transcendental calls.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    // uniform in [0, n), n > 0; rejection sampling keeps it unbiased
    std::uint64_t below(std::uint64_t n);

    // uniform in [0, 1) with 53 random bits
    double uniform01();

    // standard normal
    double gaussian();

    // Fisher-Yates using below(); deterministic for a given seed
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t s_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace agfec

#endif
