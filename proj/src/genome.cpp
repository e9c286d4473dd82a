#include "elt/genome.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace elt {

Genome::Genome(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {
    if (n == 0) throw std::invalid_argument("Genome: length must be at least 1");
}

Genome Genome::from_string(std::string_view bits) {
    Genome g(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1')
            g.set(i, true);
        else if (bits[i] != '0')
            throw std::invalid_argument("Genome: expected only '0' and '1' characters");
    }
    return g;
}

std::size_t Genome::count_range(std::size_t first, std::size_t last) const noexcept {
    std::size_t count = 0;
    while (first < last) {
        const std::size_t word = first >> 6;
        const std::size_t offset = first & 63;
        const std::size_t take = std::min<std::size_t>(64 - offset, last - first);
        std::uint64_t bits = words_[word] >> offset;
        if (take < 64) bits &= (std::uint64_t{1} << take) - 1;
        count += static_cast<std::size_t>(std::popcount(bits));
        first += take;
    }
    return count;
}

Genome Genome::complement() const {
    Genome out = *this;
    for (auto& w : out.words_) w = ~w;
    out.clear_padding();
    return out;
}

std::string Genome::to_string() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

void Genome::clear_padding() noexcept {
    const std::size_t tail = n_ & 63;
    if (tail != 0) words_.back() &= (std::uint64_t{1} << tail) - 1;
}

Genome random_genome(std::size_t n, RandomSource& rng) {
    Genome g(n);
    for (auto& w : g.words_) w = rng.next_u64();
    g.clear_padding();
    return g;
}

std::size_t ones_count(const Genome& g) noexcept {
    std::size_t count = 0;
    for (const auto w : g.words_) count += static_cast<std::size_t>(std::popcount(w));
    return count;
}

}  // namespace elt
