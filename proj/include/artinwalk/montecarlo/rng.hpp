#pragma once

/**
 * @file rng.hpp
 * @brief Reproducible random streams: one mt19937_64 per replica, seeded by mixing
 *        the master seed with the replica index.
 */

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace artinwalk {

/// The splitmix64 finaliser.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t replica_seed(std::uint64_t master, std::uint64_t replica) noexcept
{
    return splitmix64(splitmix64(master) ^ (replica * 0xd1342543de82ef95ULL + 1));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform on [0, 1) from the top 53 bits.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 gen_;
};

/// Inverse-CDF sampling over a fixed list of weights.
class DiscreteSampler {
public:
    explicit DiscreteSampler(const std::vector<double>& weights)
    {
        double s = 0.0;
        for (double w : weights) {
            if (w < 0.0) throw std::invalid_argument("negative weight");
            s += w;
            cdf_.push_back(s);
        }
        if (cdf_.empty() || s <= 0.0) throw std::invalid_argument("empty distribution");
        for (double& c : cdf_) c /= s;
        cdf_.back() = 1.0;
    }

    std::size_t operator()(Rng& rng) const
    {
        const double u = rng.uniform();
        const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        return static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - cdf_.begin(), static_cast<std::ptrdiff_t>(cdf_.size()) - 1));
    }

private:
    std::vector<double> cdf_;
};

} // namespace artinwalk
