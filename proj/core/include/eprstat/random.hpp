#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace eprstat {

/// Root of a deterministic family of random streams. Stream k is derived
/// from (root, k) alone, so replicate k draws the same numbers whether it
/// runs first, last, or on another thread.
struct Seed {
    std::uint64_t root = 0;

    /// Child seed for counter `k`.
    Seed split(std::uint64_t k) const noexcept;

    friend bool operator==(const Seed&, const Seed&) = default;
};

/// SplitMix64 finalizer (Stafford variant 13). Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t state) noexcept : state_(state) {}

    result_type operator()() noexcept { return mix64(state_ += 0x9e3779b97f4a7c15ull); }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

private:
    std::uint64_t state_;
};

/// xoshiro256++ (Blackman & Vigna), state filled from SplitMix64.
class Xoshiro256pp {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256pp(Seed seed) noexcept;

    result_type operator()() noexcept;

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

private:
    std::uint64_t s_[4];
};

/// Inverse-CDF sampler over a fixed discrete distribution. Zero-weight
/// outcomes are never returned.
class DiscreteSampler {
public:
    DiscreteSampler() = default;
    /// `weights` must be nonnegative with a positive sum; they are
    /// normalized by that sum.
    explicit DiscreteSampler(std::span<const double> weights);

    std::uint32_t operator()(Xoshiro256pp& rng) const noexcept;
    std::uint32_t draw(double u) const noexcept;

private:
    std::vector<double> cumulative_;
    std::uint32_t last_positive_ = 0;
};

}  // namespace eprstat
