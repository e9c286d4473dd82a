#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "elt/random.hpp"

namespace elt {

/// Fixed-length bitstring packed into 64-bit words. Position 0 is the
/// leftmost character of the textual form and bit 0 of the first word.
class Genome {
public:
    Genome() = default;

    /// All-zero genome of length n (n >= 1).
    explicit Genome(std::size_t n);

    /// Parses a string of '0'/'1' characters.
    static Genome from_string(std::string_view bits);

    std::size_t size() const noexcept { return n_; }

    bool get(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }
    void set(std::size_t i, bool value) noexcept {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (value)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }
    void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    /// Number of 1-bits in positions [first, last).
    std::size_t count_range(std::size_t first, std::size_t last) const noexcept;

    Genome complement() const;

    std::string to_string() const;

    friend bool operator==(const Genome&, const Genome&) = default;

private:
    friend Genome random_genome(std::size_t n, RandomSource& rng);
    friend std::size_t ones_count(const Genome& g) noexcept;

    void clear_padding() noexcept;

    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Uniform random genome: each bit independently 1 with probability 1/2.
/// Consumes one 64-bit draw per word.
Genome random_genome(std::size_t n, RandomSource& rng);

std::size_t ones_count(const Genome& g) noexcept;

struct Individual {
    Genome genome;
    long fitness = 0;
    long aux = 0;  // auxiliary (potential) value; equals fitness on plateau-free functions
};

using Population = std::vector<Individual>;

}  // namespace elt
