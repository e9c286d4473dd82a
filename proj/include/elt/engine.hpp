#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "elt/fitness.hpp"
#include "elt/genome.hpp"
#include "elt/random.hpp"

namespace elt {

/// Elitism-levels partition of a population at one generation.
struct ElitismPartition {
    std::size_t alpha = 0;        // members at the best fitness
    std::size_t beta1 = 0;        // members at the best fitness strictly below k
    std::size_t beta_minus1 = 0;  // everyone else
    std::size_t alpha_star = 0;   // members of alpha holding the largest aux value
    long k = 0;                   // best fitness
    long best_aux = 0;            // aux value of the alpha_star members

    std::size_t size() const noexcept { return alpha + beta1 + beta_minus1; }
    friend bool operator==(const ElitismPartition&, const ElitismPartition&) = default;
};

enum class InitMode { UniformRandom, BalancedBins };
enum class Termination { Optimum, GenerationCap };
enum class Algorithm { MuPlusLambda1BS, Rls };

/// ceil(50 * mu * n * ln(n + 1)).
std::uint64_t default_generation_cap(std::size_t mu, std::size_t n);

struct EngineConfig {
    std::size_t mu = 2;
    std::size_t lambda = 2;  // pool size; lambda / 2 parent pairs
    FitnessSpec spec;
    std::uint64_t generation_cap = 0;  // 0 selects default_generation_cap
    InitMode init_mode = InitMode::UniformRandom;

    /// Throws std::invalid_argument on mu < 2, odd or zero lambda, or an invalid spec.
    void validate() const;
    std::uint64_t effective_cap() const;
};

struct RunRecord {
    Algorithm algorithm = Algorithm::MuPlusLambda1BS;
    std::uint64_t seed = 0;
    FitnessSpec spec;
    std::size_t mu = 0;
    std::size_t lambda = 0;
    std::uint64_t generations = 0;
    std::uint64_t evaluations = 0;
    std::vector<ElitismPartition> trace;  // trace[0] is the initial population
    Termination terminated = Termination::GenerationCap;

    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

using ParentPair = std::pair<Individual, Individual>;

/// Binary tournament: two draws with replacement, the fitter one wins and a
/// fair coin settles ties. Returns the index of the winner.
std::size_t tournament_select(std::span<const Individual> pop, RandomSource& rng);

/// lambda tournament winners, consecutive winners paired.
std::vector<ParentPair> fill_pool(std::span<const Individual> pop, std::size_t lambda, RandomSource& rng);

/// 1-Bit-Swap: one uniform position in each parent (first parent drawn
/// first), values exchanged, both children re-evaluated.
ParentPair one_bit_swap(const ParentPair& parents, const FitnessSpec& spec, RandomSource& rng);

/// Elitist replacement.
///
/// Elite candidates are the current best members plus every offspring at
/// least as fit. Offspring strictly fitter than the current best come
/// first, then the retained best members, then equally fit offspring; the
/// first mu are kept, ties broken uniformly. Remaining slots take non-elite
/// offspring uniformly without replacement and, when the pool runs out,
/// non-elite survivors the same way.
Population replace(Population pop, std::vector<Individual> offspring, RandomSource& rng);

/// Number of members at fitness >= k after replace(), given alpha members
/// at k and `candidates` offspring at fitness >= k. Independent of the
/// random tie-breaks.
std::size_t elites_after_replace(std::size_t mu, std::size_t alpha, std::size_t candidates) noexcept;

ElitismPartition classify_partition(std::span<const Individual> pop);

Population initial_population(const EngineConfig& config, RandomSource& rng);

/// Selection, swap and replacement for one generation.
Population step(Population pop, const EngineConfig& config, RandomSource& rng);

RunRecord run(const EngineConfig& config, std::uint64_t seed);

/// Same as run() but from a given starting population (size must equal mu).
RunRecord run_from(const EngineConfig& config, Population start, std::uint64_t seed);

/// Randomized local search on OneMax: flip one uniform bit, keep it unless
/// fitness drops. generations counts flip attempts; evaluations = steps + 1.
RunRecord run_rls_baseline(const FitnessSpec& spec, std::uint64_t seed, std::uint64_t step_cap = 0);
RunRecord run_rls_baseline(const FitnessSpec& spec, Genome start, std::uint64_t seed, std::uint64_t step_cap = 0);

/// Checks trace invariants: partition totals, non-decreasing best fitness,
/// evaluation accounting and trace length. Returns the violations found.
std::vector<std::string> check_run_invariants(const RunRecord& record);

const char* to_string(Termination t);
const char* to_string(InitMode m);
InitMode parse_init_mode(const std::string& name);

}  // namespace elt
