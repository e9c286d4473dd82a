#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "elt/engine.hpp"
#include "elt/fitness.hpp"
#include "elt/genome.hpp"
#include "elt/random.hpp"

namespace elt {

/// A concrete starting population for one-generation experiments.
struct PopulationSpec {
    FitnessSpec fitness;
    std::vector<Genome> genomes;

    static PopulationSpec from_strings(const FitnessSpec& fitness, const std::vector<std::string>& bits);

    /// Canonical OneMax population: `alpha` members with k leading ones,
    /// `beta1` with k-1 and `beta_minus1` with k-2 (k >= 2 when beta_minus1 > 0).
    static PopulationSpec from_counts(std::size_t n, long k, std::size_t alpha, std::size_t beta1,
                                      std::size_t beta_minus1);

    std::size_t mu() const noexcept { return genomes.size(); }
    Population expand() const;
};

/// Outcome of one generation relative to the starting best fitness k.
/// A "new elite" is a member at fitness >= k beyond the alpha already there.
struct GenerationOutcome {
    std::size_t mu = 0, alpha = 0;
    long k = 0;
    std::vector<double> elite_count_distribution;  // index = number of new elites, 0..mu-alpha
    double exactly_one_new_elite = 0;
    double at_least_one_new_elite = 0;
    double improvement = 0;  // some member strictly above k afterwards
};

inline constexpr std::size_t kEnumerationMaxMu = 6;
inline constexpr std::size_t kEnumerationMaxLambda = 6;
inline constexpr std::size_t kEnumerationMaxN = 12;

/// Exact one-generation probabilities by enumerating every tournament draw,
/// tie coin and swap position. Pairs in the pool are independent and
/// identically distributed, so each pair is enumerated once and the
/// per-pair outcome distribution is convolved lambda/2 times. Refuses
/// instances beyond mu <= 6, lambda <= 6, n <= 12.
GenerationOutcome exact_generation_success(const PopulationSpec& spec, std::size_t lambda);

struct Estimate {
    std::uint64_t successes = 0;
    std::uint64_t trials = 0;
    double p() const { return trials == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(trials); }
    /// Binomial standard error sqrt(p(1-p)/trials).
    double standard_error() const;
};

struct MonteCarloOutcome {
    Estimate exactly_one_new_elite;
    Estimate at_least_one_new_elite;
    Estimate improvement;
    std::vector<std::uint64_t> elite_count_histogram;
};

inline constexpr std::uint64_t kMonteCarloBlock = 1024;

/// Simulates `trials` generations with the engine's own step(). Trials run
/// in fixed blocks with per-block streams derived from one draw of `rng`,
/// so the result does not depend on the worker count. workers <= 1 runs the
/// serial reference loop.
MonteCarloOutcome monte_carlo_success(const PopulationSpec& spec, std::size_t lambda, std::uint64_t trials,
                                      RandomSource& rng, int workers = 1);

/// |estimate - exact| <= sigmas * stderr; with zero stderr the values must match exactly.
bool agrees(const Estimate& estimate, double exact, double sigmas = 4.0);

struct ProbeResult {
    double p_sel = 0, phi = 0;
    std::size_t lambda = 0, m = 0;
    double p_e = 0;       // (lambda/2) p_sel phi
    double p_e_star = 0;  // sum over r = 1..m of exactly-one-success terms
    bool holds = false;   // p_e_star >= p_e
};

ProbeResult appendix_a_probe(double p_sel, double phi, std::size_t lambda, std::size_t m);

/// The default probe grid: p_sel and phi over a log-spaced set, lambda in
/// {2, 4, 10, 20, 50}, m in {1, ceil(N/2), N} with N = lambda/2.
std::vector<ProbeResult> appendix_a_region();

struct PlateauComparison {
    std::size_t n = 0, gamma = 0, mu = 0, lambda = 0;
    Estimate f1;  // OneMax: a new elite joins
    Estimate f2;  // plateau: a new super-elite joins
    bool ordering_holds = false;  // p_f2 <= p_f1
    double gap_sigmas = 0;        // (p_f1 - p_f2) / sqrt(se1^2 + se2^2)
};

/// Matched starting genomes for the plateau experiment: member 0 has
/// floor(n/2)+1 leading ones, the rest one or two fewer, alternating. The
/// same genomes hold a unique elite under OneMax and a unique super-elite
/// under the plateau function.
std::vector<Genome> plateau_comparison_genomes(std::size_t n, std::size_t mu);

PlateauComparison plateau_comparison(std::size_t n, std::size_t gamma, std::size_t mu, std::size_t lambda,
                                     std::uint64_t trials, RandomSource& rng, int workers = 1);

}  // namespace elt
