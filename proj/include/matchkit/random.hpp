#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace matchkit {

std::uint64_t splitmix64(std::uint64_t x);

/// mt19937_64 seeded from splitmix64(seed, stream). Floating-point and range
/// helpers are implemented here rather than through <random> distributions so
/// that sequences are identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, 1).
    double uniform();
    /// Uniform integer in [lo, hi].
    std::int64_t range(std::int64_t lo, std::int64_t hi);
    bool bernoulli(double p) { return uniform() < p; }
    template <class T>
    void shuffle(std::vector<T>& xs)
    {
        for (std::size_t i = xs.size(); i > 1; --i)
            std::swap(xs[i - 1], xs[static_cast<std::size_t>(range(0, static_cast<std::int64_t>(i) - 1))]);
    }
    /// Index drawn proportionally to the (nonnegative) weights.
    std::size_t weighted(const std::vector<double>& weights);

private:
    std::mt19937_64 engine_;
};

inline constexpr const char* kRngAlgorithm = "mt19937_64+splitmix64";

}  // namespace matchkit
