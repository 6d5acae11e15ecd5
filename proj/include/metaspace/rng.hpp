#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace metaspace {

/// Seeded generator with value mappings written out explicitly, so a given
/// seed produces the same stream on every standard library (the std
/// distributions are implementation-defined).
class Rng
{
public:
    explicit Rng(std::uint64_t seed) : m_engine(seed) {}

    std::uint64_t next() { return m_engine(); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform in [0, n). n must be > 0.
    std::uint64_t below(std::uint64_t n);

    /// Uniform in [lo, hi], inclusive.
    int between(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1)); }

    double between(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    bool chance(double p) { return uniform() < p; }

    template <typename T>
    const T& pick(std::span<const T> items)
    {
        return items[below(items.size())];
    }

    template <typename It>
    void shuffle(It first, It last)
    {
        auto n = static_cast<std::uint64_t>(last - first);
        for (std::uint64_t i = n; i > 1; --i) {
            std::uint64_t j = below(i);
            using std::swap;
            swap(first[i - 1], first[j]);
        }
    }

private:
    std::mt19937_64 m_engine;
};

/// Combines seeds into an independent stream seed (splitmix64 finalizer).
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

template <typename... Rest>
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, Rest... rest)
{
    return mix_seed(mix_seed(a, b), static_cast<std::uint64_t>(rest)...);
}

/// 64-bit FNV-1a; stable across platforms unlike std::hash.
std::uint64_t stable_hash(std::string_view text);

} // namespace metaspace
