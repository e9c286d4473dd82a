#include "elt/fitness.hpp"

#include <stdexcept>

namespace elt {

void FitnessSpec::validate() const {
    if (n == 0) throw std::invalid_argument("fitness: genome length must be at least 1");
    if (kind == FitnessKind::PlateauRoyalRoad) {
        if (gamma == 0) throw std::invalid_argument("fitness: plateau length gamma must be positive");
        if (n % gamma != 0) throw std::invalid_argument("fitness: gamma must divide n");
    }
}

std::string FitnessSpec::describe() const {
    if (kind == FitnessKind::OneMax) return "onemax(n=" + std::to_string(n) + ")";
    return "plateau(n=" + std::to_string(n) + ",gamma=" + std::to_string(gamma) + ")";
}

Evaluation evaluate(const FitnessSpec& spec, const Genome& g) {
    if (g.size() != spec.n) throw std::invalid_argument("fitness: genome length does not match spec");
    const auto ones = static_cast<long>(ones_count(g));
    if (spec.kind == FitnessKind::OneMax) return {ones, ones};

    long complete = 0;
    for (std::size_t start = 0; start < spec.n; start += spec.gamma)
        if (g.count_range(start, start + spec.gamma) == spec.gamma) ++complete;
    return {complete, ones};
}

bool is_optimum(const FitnessSpec& spec, const Genome& g) {
    return evaluate(spec, g).fitness == spec.max_fitness();
}

Individual make_individual(const FitnessSpec& spec, Genome g) {
    const auto e = evaluate(spec, g);
    return Individual{std::move(g), e.fitness, e.aux};
}

const char* to_string(FitnessKind kind) {
    return kind == FitnessKind::OneMax ? "onemax" : "plateau";
}

FitnessKind parse_fitness_kind(const std::string& name) {
    if (name == "onemax") return FitnessKind::OneMax;
    if (name == "plateau") return FitnessKind::PlateauRoyalRoad;
    throw std::invalid_argument("unknown fitness kind '" + name + "' (expected onemax or plateau)");
}

}  // namespace elt
