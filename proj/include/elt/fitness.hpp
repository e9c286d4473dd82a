#pragma once

#include <cstddef>
#include <string>

#include "elt/genome.hpp"

namespace elt {

enum class FitnessKind { OneMax, PlateauRoyalRoad };

/// OneMax, or a royal-road function whose fitness counts complete
/// contiguous blocks ("bins") of `gamma` ones. The plateau variant uses
/// OneMax as its auxiliary value.
struct FitnessSpec {
    FitnessKind kind = FitnessKind::OneMax;
    std::size_t n = 0;
    std::size_t gamma = 1;  // bin length; PlateauRoyalRoad only

    static FitnessSpec one_max(std::size_t n) { return {FitnessKind::OneMax, n, 1}; }
    static FitnessSpec plateau(std::size_t n, std::size_t gamma) { return {FitnessKind::PlateauRoyalRoad, n, gamma}; }

    /// Throws std::invalid_argument unless n >= 1 and, for the plateau
    /// kind, gamma >= 1 divides n. gamma == 1 is accepted as the
    /// degenerate case that reproduces OneMax.
    void validate() const;

    std::size_t bins() const noexcept { return kind == FitnessKind::OneMax ? n : n / gamma; }
    long max_fitness() const noexcept { return static_cast<long>(bins()); }

    std::string describe() const;

    friend bool operator==(const FitnessSpec&, const FitnessSpec&) = default;
};

struct Evaluation {
    long fitness = 0;
    long aux = 0;
};

Evaluation evaluate(const FitnessSpec& spec, const Genome& g);

bool is_optimum(const FitnessSpec& spec, const Genome& g);

/// Builds an Individual with cached fitness and aux value.
Individual make_individual(const FitnessSpec& spec, Genome g);

const char* to_string(FitnessKind kind);
FitnessKind parse_fitness_kind(const std::string& name);

}  // namespace elt
