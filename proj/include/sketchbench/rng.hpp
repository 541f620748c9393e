#pragma once

#include <cmath>
#include <cstdint>

namespace skb {

// All randomness in the library flows through this generator so that results
// are reproducible bit-for-bit across platforms from a 64-bit seed alone.
//
// Construction: xoshiro256** with its state expanded from the seed by
// SplitMix64. Substreams (per column, per trial, ...) are derived by mixing
// the stream index into the seed with the same SplitMix64 finalizer before
// expansion, so the order in which substreams are consumed never changes
// their output.
//
// Gaussian variates come from Box-Muller on purpose: the platform's
// std::normal_distribution is implementation-defined and would break
// cross-platform reproducibility.

namespace detail {

inline uint64_t splitmix64(uint64_t& state) noexcept {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline uint64_t rotl64(uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
}

} // namespace detail

// Mixes a stream index into a seed; used to split independent substreams.
inline uint64_t split_seed(uint64_t seed, uint64_t stream) noexcept {
    uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
    return detail::splitmix64(s);
}

class Rng {
public:
    explicit Rng(uint64_t seed) noexcept {
        uint64_t sm = seed;
        for (auto& word : state_) word = detail::splitmix64(sm);
    }

    Rng(uint64_t seed, uint64_t stream) noexcept : Rng(split_seed(seed, stream)) {}

    uint64_t next_u64() noexcept {
        const uint64_t result = detail::rotl64(state_[1] * 5, 7) * 9;
        const uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = detail::rotl64(state_[3], 45);
        return result;
    }

    // Uniform on [0, 1).
    double uniform() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform on (0, 1]; safe under log().
    double uniform_pos() noexcept {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // Uniform on the open interval (0, 1); safe under tan(pi*(u-1/2)).
    double uniform_open() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller: r = sqrt(-2 ln u1), angle = 2 pi u2,
    // returning r cos(angle) first and caching r sin(angle) for the next call.
    double gaussian() noexcept {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform_pos();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    // Standard Cauchy via inverse CDF on (0,1).
    double cauchy() noexcept {
        return std::tan(3.14159265358979323846 * (uniform_open() - 0.5));
    }

    bool bernoulli(double prob) noexcept { return uniform() < prob; }

    // +1 or -1 with equal probability.
    double sign() noexcept { return (next_u64() >> 63) ? 1.0 : -1.0; }

    // Uniform integer in [0, bound) by rejection-free multiply-shift.
    uint64_t below(uint64_t bound) noexcept {
        // Lemire reduction; bias is < 2^-64 * bound, irrelevant at desk scale.
        return static_cast<uint64_t>(
            (static_cast<__uint128_t>(next_u64()) * bound) >> 64);
    }

private:
    uint64_t state_[4] = {};
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace skb
