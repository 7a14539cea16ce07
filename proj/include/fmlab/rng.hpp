#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace fmlab {

// splitmix64. Self-contained so that seeded runs emit identical bytes on
// every platform (std::uniform_int_distribution is not pinned by the
// standard).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound); bound > 0. Rejection-free multiply-shift,
    // bias negligible for desk-scale bounds.
    std::uint64_t below(std::uint64_t bound) noexcept {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

    // Uniform in [lo, hi] inclusive.
    std::uint64_t range(std::uint64_t lo, std::uint64_t hi) noexcept {
        return lo + below(hi - lo + 1);
    }

    double unit() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool coin() noexcept { return next() & 1; }

    // k distinct values from [0, m), ascending.
    std::vector<std::uint32_t> sample(std::uint32_t m, std::uint32_t k) {
        std::vector<std::uint32_t> pool(m);
        for (std::uint32_t i = 0; i < m; ++i) pool[i] = i;
        for (std::uint32_t i = 0; i < k; ++i) {
            auto j = static_cast<std::uint32_t>(range(i, m - 1));
            std::swap(pool[i], pool[j]);
        }
        pool.resize(k);
        std::sort(pool.begin(), pool.end());
        return pool;
    }

private:
    std::uint64_t state_;
};

}  // namespace fmlab
