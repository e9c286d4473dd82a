#include <doctest.h>

#include <set>
#include <stdexcept>

#include "elt/genome.hpp"
#include "elt/random.hpp"

using namespace elt;

TEST_CASE("random_genome with a forced 1 draw yields [1]") {
    auto rng = RandomSource::scripted({1});
    CHECK(random_genome(1, rng).to_string() == "1");
}

TEST_CASE("random_genome is reproducible for a fixed seed") {
    RandomSource a(99), b(99);
    const auto first = random_genome(8, a);
    CHECK(first == random_genome(8, b));
    CHECK(first.size() == 8);

    // Sequences, not just single draws, coincide.
    for (int i = 0; i < 20; ++i) CHECK(random_genome(130, a) == random_genome(130, b));
}

TEST_CASE("random_genome bits are fair") {
    RandomSource rng(5);
    double total = 0;
    for (int i = 0; i < 100; ++i) total += static_cast<double>(ones_count(random_genome(10000, rng)));
    const double mean = total / 100.0;
    CHECK(mean >= 4800.0);
    CHECK(mean <= 5200.0);
}

TEST_CASE("zero-length genomes are rejected") {
    RandomSource rng(1);
    CHECK_THROWS_AS(Genome(0), std::invalid_argument);
    CHECK_THROWS_AS(random_genome(0, rng), std::invalid_argument);
}

TEST_CASE("ones_count") {
    CHECK(ones_count(Genome::from_string("0000")) == 0);
    CHECK(ones_count(Genome::from_string("1111")) == 4);
    CHECK(ones_count(Genome::from_string("10110")) == 3);
    CHECK_THROWS_AS(Genome::from_string("10x"), std::invalid_argument);
}

TEST_CASE("complement and range counts agree with a per-bit scan") {
    RandomSource rng(17);
    for (const std::size_t n : {1, 2, 63, 64, 65, 127, 128, 200}) {
        for (int rep = 0; rep < 10; ++rep) {
            const auto g = random_genome(n, rng);
            const auto text = g.to_string();
            CHECK(Genome::from_string(text) == g);

            std::size_t naive = 0;
            for (const char c : text) naive += c == '1';
            CHECK(ones_count(g) == naive);
            CHECK(ones_count(g.complement()) == n - naive);

            const auto lo = static_cast<std::size_t>(rng.below(n));
            const auto hi = lo + static_cast<std::size_t>(rng.below(n - lo + 1));
            std::size_t in_range = 0;
            for (std::size_t i = lo; i < hi; ++i) in_range += g.get(i);
            CHECK(g.count_range(lo, hi) == in_range);
        }
    }
}

TEST_CASE("position 0 is the leftmost character") {
    Genome g(5);
    g.set(0, true);
    CHECK(g.to_string() == "10000");
    g.flip(4);
    CHECK(g.to_string() == "10001");
}

TEST_CASE("RandomSource streams") {
    RandomSource a(1);
    CHECK(a.derive(0).next_u64() != a.derive(1).next_u64());
    CHECK(a.derive(3).next_u64() == RandomSource(1).derive(3).next_u64());

    RandomSource r(8);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 1000; ++i) {
        const auto v = r.below(7);
        CHECK(v < 7);
        seen.insert(v);
        const double u = r.unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    CHECK(seen.size() == 7);
    CHECK_THROWS_AS(r.below(0), std::invalid_argument);

    auto scripted = RandomSource::scripted({5});
    CHECK_THROWS_AS(scripted.below(3), std::logic_error);
}
