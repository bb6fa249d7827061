#include "eprstat/random.hpp"

#include <bit>

#include "eprstat/error.hpp"

namespace eprstat {

Seed Seed::split(std::uint64_t k) const noexcept
{
    // Two rounds of mixing so that nearby roots and nearby counters land
    // on unrelated streams.
    return Seed{mix64(mix64(root) ^ mix64(k + 0x632be59bd9b4e019ull))};
}

Xoshiro256pp::Xoshiro256pp(Seed seed) noexcept
{
    SplitMix64 init(seed.root);
    for (auto& word : s_) {
        word = init();
    }
}

Xoshiro256pp::result_type Xoshiro256pp::operator()() noexcept
{
    const std::uint64_t result = std::rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
}

DiscreteSampler::DiscreteSampler(std::span<const double> weights)
{
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) {
            throw Error(ErrorCode::InvalidDistribution, "negative or NaN weight");
        }
        total += w;
    }
    if (!(total > 0.0)) {
        throw Error(ErrorCode::InvalidDistribution, "weights sum to zero");
    }
    cumulative_.reserve(weights.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        cumulative_.push_back(acc / total);
        if (weights[i] > 0.0) {
            last_positive_ = static_cast<std::uint32_t>(i);
        }
    }
}

std::uint32_t DiscreteSampler::draw(double u) const noexcept
{
    // Linear scan: r is tiny.
    for (std::uint32_t i = 0; i < cumulative_.size(); ++i) {
        if (u < cumulative_[i]) {
            return i;
        }
    }
    return last_positive_;
}

std::uint32_t DiscreteSampler::operator()(Xoshiro256pp& rng) const noexcept
{
    return draw(rng.uniform());
}

}  // namespace eprstat
