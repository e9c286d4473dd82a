#pragma once

#include <cstdint>
#include <deque>
#include <random>
#include <vector>

namespace elt {

/// SplitMix64 finalizer. Used to derive independent seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Folds `value` into `seed`; order-sensitive, so (a, b) and (b, a) differ.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t value) noexcept {
    return splitmix64(seed ^ splitmix64(value + 0x632be59bd9b4e019ULL));
}

/// Seeded random stream. Every stochastic routine takes one explicitly.
///
/// A scripted source replays a fixed list of values first (each call to
/// `next_u64` or `below` consumes one entry) and then falls back to the
/// engine seeded with `seed`. Tests use it to force tournament draws and
/// swap positions.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    static RandomSource scripted(std::vector<std::uint64_t> values, std::uint64_t seed = 0);

    std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next_u64();

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound);

    bool coin() { return below(2) == 1; }

    /// Uniform double in [0, 1).
    double unit();

    /// A fresh stream keyed by (seed, stream_id); shares no state with *this.
    RandomSource derive(std::uint64_t stream_id) const { return RandomSource(mix_seed(seed_, stream_id)); }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    std::deque<std::uint64_t> script_;
};

}  // namespace elt
