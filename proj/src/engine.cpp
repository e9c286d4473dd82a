#include "elt/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace elt {

namespace {

// Moves `count` uniformly chosen items of `from` (without replacement) to the back of `to`.
void take_uniform(std::vector<Individual>& from, std::size_t count, RandomSource& rng,
                  std::vector<Individual>& to) {
    count = std::min(count, from.size());
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(from.size() - i));
        std::swap(from[i], from[j]);
        to.push_back(std::move(from[i]));
    }
}

long best_fitness(std::span<const Individual> pop) {
    long best = pop.front().fitness;
    for (const auto& ind : pop) best = std::max(best, ind.fitness);
    return best;
}

Genome balanced_genome(const FitnessSpec& spec, RandomSource& rng) {
    Genome g(spec.n);
    const std::size_t bin = spec.kind == FitnessKind::OneMax ? spec.n : spec.gamma;
    std::vector<std::size_t> positions(bin);
    for (std::size_t start = 0; start < spec.n; start += bin) {
        std::iota(positions.begin(), positions.end(), start);
        const std::size_t ones = bin / 2;
        for (std::size_t i = 0; i < ones; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng.below(bin - i));
            std::swap(positions[i], positions[j]);
            g.set(positions[i], true);
        }
    }
    return g;
}

}  // namespace

std::uint64_t default_generation_cap(std::size_t mu, std::size_t n) {
    return static_cast<std::uint64_t>(
        std::ceil(50.0 * static_cast<double>(mu) * static_cast<double>(n) * std::log(static_cast<double>(n) + 1.0)));
}

void EngineConfig::validate() const {
    spec.validate();
    if (mu < 2) throw std::invalid_argument("engine: mu must be at least 2");
    if (lambda < 2 || lambda % 2 != 0) throw std::invalid_argument("engine: lambda must be even and at least 2");
}

std::uint64_t EngineConfig::effective_cap() const {
    return generation_cap != 0 ? generation_cap : default_generation_cap(mu, spec.n);
}

std::size_t tournament_select(std::span<const Individual> pop, RandomSource& rng) {
    const auto first = static_cast<std::size_t>(rng.below(pop.size()));
    const auto second = static_cast<std::size_t>(rng.below(pop.size()));
    if (pop[first].fitness > pop[second].fitness) return first;
    if (pop[second].fitness > pop[first].fitness) return second;
    return rng.coin() ? second : first;
}

std::vector<ParentPair> fill_pool(std::span<const Individual> pop, std::size_t lambda, RandomSource& rng) {
    std::vector<ParentPair> pool;
    pool.reserve(lambda / 2);
    for (std::size_t i = 0; i + 1 < lambda; i += 2) {
        const auto a = tournament_select(pop, rng);
        const auto b = tournament_select(pop, rng);
        pool.emplace_back(pop[a], pop[b]);
    }
    return pool;
}

ParentPair one_bit_swap(const ParentPair& parents, const FitnessSpec& spec, RandomSource& rng) {
    const auto n = parents.first.genome.size();
    if (parents.second.genome.size() != n) throw std::invalid_argument("one_bit_swap: parent lengths differ");
    const auto p = static_cast<std::size_t>(rng.below(n));
    const auto q = static_cast<std::size_t>(rng.below(n));
    Genome a = parents.first.genome;
    Genome b = parents.second.genome;
    const bool va = a.get(p);
    a.set(p, b.get(q));
    b.set(q, va);
    return {make_individual(spec, std::move(a)), make_individual(spec, std::move(b))};
}

std::size_t elites_after_replace(std::size_t mu, std::size_t alpha, std::size_t candidates) noexcept {
    return std::min(mu, alpha + candidates);
}

Population replace(Population pop, std::vector<Individual> offspring, RandomSource& rng) {
    const std::size_t mu = pop.size();
    const long best = best_fitness(pop);

    std::vector<Individual> retained, survivors, better, equal, rest;
    for (auto& ind : pop) (ind.fitness == best ? retained : survivors).push_back(std::move(ind));
    for (auto& ind : offspring) {
        if (ind.fitness > best)
            better.push_back(std::move(ind));
        else if (ind.fitness == best)
            equal.push_back(std::move(ind));
        else
            rest.push_back(std::move(ind));
    }

    Population next;
    next.reserve(mu);

    // Strict improvements, best first; uniform shuffle before the stable sort breaks ties fairly.
    if (!better.empty()) {
        std::vector<Individual> shuffled;
        shuffled.reserve(better.size());
        take_uniform(better, better.size(), rng, shuffled);
        std::stable_sort(shuffled.begin(), shuffled.end(),
                         [](const Individual& x, const Individual& y) { return x.fitness > y.fitness; });
        for (auto& ind : shuffled) {
            if (next.size() == mu) break;
            next.push_back(std::move(ind));
        }
    }
    if (next.size() + retained.size() <= mu) {
        for (auto& ind : retained) next.push_back(std::move(ind));
    } else {
        take_uniform(retained, mu - next.size(), rng, next);
    }
    take_uniform(equal, mu - next.size(), rng, next);
    take_uniform(rest, mu - next.size(), rng, next);
    take_uniform(survivors, mu - next.size(), rng, next);
    return next;
}

ElitismPartition classify_partition(std::span<const Individual> pop) {
    ElitismPartition part;
    if (pop.empty()) return part;
    const long k = best_fitness(pop);
    bool has_lower = false;
    long next_best = 0;
    long best_aux = 0;
    bool first_elite = true;
    for (const auto& ind : pop) {
        if (ind.fitness == k) {
            best_aux = first_elite ? ind.aux : std::max(best_aux, ind.aux);
            first_elite = false;
        } else if (!has_lower || ind.fitness > next_best) {
            next_best = ind.fitness;
            has_lower = true;
        }
    }
    part.k = k;
    part.best_aux = best_aux;
    for (const auto& ind : pop) {
        if (ind.fitness == k) {
            ++part.alpha;
            if (ind.aux == best_aux) ++part.alpha_star;
        } else if (ind.fitness == next_best) {
            ++part.beta1;
        } else {
            ++part.beta_minus1;
        }
    }
    return part;
}

Population initial_population(const EngineConfig& config, RandomSource& rng) {
    Population pop;
    pop.reserve(config.mu);
    for (std::size_t i = 0; i < config.mu; ++i) {
        Genome g = config.init_mode == InitMode::BalancedBins ? balanced_genome(config.spec, rng)
                                                              : random_genome(config.spec.n, rng);
        pop.push_back(make_individual(config.spec, std::move(g)));
    }
    return pop;
}

Population step(Population pop, const EngineConfig& config, RandomSource& rng) {
    auto pool = fill_pool(pop, config.lambda, rng);
    std::vector<Individual> offspring;
    offspring.reserve(config.lambda);
    for (const auto& parents : pool) {
        auto children = one_bit_swap(parents, config.spec, rng);
        offspring.push_back(std::move(children.first));
        offspring.push_back(std::move(children.second));
    }
    return replace(std::move(pop), std::move(offspring), rng);
}

RunRecord run(const EngineConfig& config, std::uint64_t seed) {
    config.validate();
    RandomSource rng(seed);
    auto start = initial_population(config, rng);
    return run_from(config, std::move(start), seed);
}

RunRecord run_from(const EngineConfig& config, Population pop, std::uint64_t seed) {
    config.validate();
    if (pop.size() != config.mu) throw std::invalid_argument("run_from: population size must equal mu");
    // Streams for initialization and evolution are kept apart so run_from
    // on a hand-built population draws the same evolution stream as run().
    RandomSource rng = RandomSource(seed).derive(1);

    RunRecord record;
    record.seed = seed;
    record.spec = config.spec;
    record.mu = config.mu;
    record.lambda = config.lambda;
    record.evaluations = config.mu;
    record.trace.push_back(classify_partition(pop));

    const long target = config.spec.max_fitness();
    const std::uint64_t cap = config.effective_cap();
    while (record.trace.back().k < target && record.generations < cap) {
        pop = step(std::move(pop), config, rng);
        ++record.generations;
        record.evaluations += 2 * config.lambda;
        record.trace.push_back(classify_partition(pop));
    }
    record.terminated = record.trace.back().k >= target ? Termination::Optimum : Termination::GenerationCap;
    return record;
}

RunRecord run_rls_baseline(const FitnessSpec& spec, std::uint64_t seed, std::uint64_t step_cap) {
    spec.validate();
    RandomSource rng(seed);
    return run_rls_baseline(spec, random_genome(spec.n, rng), seed, step_cap);
}

RunRecord run_rls_baseline(const FitnessSpec& spec, Genome start, std::uint64_t seed, std::uint64_t step_cap) {
    spec.validate();
    if (spec.kind != FitnessKind::OneMax) throw std::invalid_argument("rls baseline: OneMax only");
    if (start.size() != spec.n) throw std::invalid_argument("rls baseline: start genome length mismatch");
    RandomSource rng = RandomSource(seed).derive(1);
    const std::uint64_t cap = step_cap != 0 ? step_cap : default_generation_cap(1, spec.n);

    Individual current = make_individual(spec, std::move(start));
    auto snapshot = [&current] {
        return ElitismPartition{1, 0, 0, 1, current.fitness, current.aux};
    };

    RunRecord record;
    record.algorithm = Algorithm::Rls;
    record.seed = seed;
    record.spec = spec;
    record.mu = 1;
    record.lambda = 0;
    record.evaluations = 1;
    record.trace.push_back(snapshot());

    const long target = spec.max_fitness();
    while (current.fitness < target && record.generations < cap) {
        const auto pos = static_cast<std::size_t>(rng.below(spec.n));
        // Only a 0 -> 1 flip keeps fitness from dropping.
        if (!current.genome.get(pos)) {
            current.genome.set(pos, true);
            ++current.fitness;
            ++current.aux;
        }
        ++record.generations;
        ++record.evaluations;
        record.trace.push_back(snapshot());
    }
    record.terminated = current.fitness >= target ? Termination::Optimum : Termination::GenerationCap;
    return record;
}

std::vector<std::string> check_run_invariants(const RunRecord& record) {
    std::vector<std::string> issues;
    if (record.trace.size() != record.generations + 1)
        issues.push_back("trace length " + std::to_string(record.trace.size()) + " != generations + 1");
    const std::size_t mu = record.mu;
    for (std::size_t g = 0; g < record.trace.size(); ++g) {
        const auto& part = record.trace[g];
        if (part.size() != mu) issues.push_back("generation " + std::to_string(g) + ": partition does not sum to mu");
        if (part.alpha < 1 || part.alpha_star > part.alpha)
            issues.push_back("generation " + std::to_string(g) + ": alpha/alpha_star out of range");
        if (g > 0 && part.k < record.trace[g - 1].k)
            issues.push_back("generation " + std::to_string(g) + ": best fitness decreased");
    }
    const std::uint64_t expected = record.algorithm == Algorithm::Rls
                                       ? record.generations + 1
                                       : record.mu + 2 * record.lambda * record.generations;
    if (record.evaluations != expected)
        issues.push_back("evaluations " + std::to_string(record.evaluations) + " != " + std::to_string(expected));
    return issues;
}

const char* to_string(Termination t) { return t == Termination::Optimum ? "optimum" : "generation_cap"; }

const char* to_string(InitMode m) { return m == InitMode::UniformRandom ? "uniform_random" : "balanced_bins"; }

InitMode parse_init_mode(const std::string& name) {
    if (name == "uniform_random") return InitMode::UniformRandom;
    if (name == "balanced_bins") return InitMode::BalancedBins;
    throw std::invalid_argument("unknown init mode '" + name + "'");
}

}  // namespace elt
