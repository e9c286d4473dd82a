#include "elt/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

#include <omp.h>

namespace elt {

namespace {

// Per-trial classification: bucket into a histogram plus one flag.
struct TrialResult {
    std::size_t bucket = 0;
    bool flag = false;
};

struct Tally {
    std::vector<std::uint64_t> histogram;
    std::uint64_t flagged = 0;
};

using Classifier = std::function<TrialResult(const Population&)>;

Tally simulate_block(const Population& start, const EngineConfig& config, std::uint64_t count, RandomSource rng,
                     std::size_t buckets, const Classifier& classify) {
    Tally t{std::vector<std::uint64_t>(buckets, 0), 0};
    for (std::uint64_t i = 0; i < count; ++i) {
        const auto next = step(start, config, rng);
        const auto r = classify(next);
        ++t.histogram[r.bucket];
        if (r.flag) ++t.flagged;
    }
    return t;
}

// Fixed-size blocks keyed by index; the serial loop and the OpenMP loop
// visit the same blocks with the same streams.
Tally simulate(const Population& start, const EngineConfig& config, std::uint64_t trials, std::uint64_t base,
               std::size_t buckets, int workers, const Classifier& classify) {
    const std::uint64_t blocks = (trials + kMonteCarloBlock - 1) / kMonteCarloBlock;
    std::vector<Tally> partial(blocks);
    auto block_size = [&](std::uint64_t b) { return std::min(kMonteCarloBlock, trials - b * kMonteCarloBlock); };

    if (workers <= 1) {
        for (std::uint64_t b = 0; b < blocks; ++b)
            partial[b] = simulate_block(start, config, block_size(b), RandomSource(mix_seed(base, b)), buckets, classify);
    } else {
        const auto nblocks = static_cast<long long>(blocks);
#pragma omp parallel for schedule(dynamic) num_threads(workers)
        for (long long b = 0; b < nblocks; ++b) {
            const auto ub = static_cast<std::uint64_t>(b);
            partial[ub] = simulate_block(start, config, block_size(ub), RandomSource(mix_seed(base, ub)), buckets,
                                         classify);
        }
    }

    Tally total{std::vector<std::uint64_t>(buckets, 0), 0};
    for (const auto& t : partial) {
        for (std::size_t i = 0; i < buckets; ++i) total.histogram[i] += t.histogram[i];
        total.flagged += t.flagged;
    }
    return total;
}

EngineConfig one_generation_config(const PopulationSpec& spec, std::size_t lambda) {
    EngineConfig config;
    config.mu = spec.mu();
    config.lambda = lambda;
    config.spec = spec.fitness;
    config.validate();
    return config;
}

double binomial(std::size_t n, std::size_t r) {
    double c = 1.0;
    for (std::size_t i = 1; i <= r; ++i) c = c * static_cast<double>(n - r + i) / static_cast<double>(i);
    return c;
}

}  // namespace

PopulationSpec PopulationSpec::from_strings(const FitnessSpec& fitness, const std::vector<std::string>& bits) {
    PopulationSpec spec{fitness, {}};
    for (const auto& s : bits) {
        auto g = Genome::from_string(s);
        if (g.size() != fitness.n) throw std::invalid_argument("population spec: genome length mismatch");
        spec.genomes.push_back(std::move(g));
    }
    return spec;
}

PopulationSpec PopulationSpec::from_counts(std::size_t n, long k, std::size_t alpha, std::size_t beta1,
                                           std::size_t beta_minus1) {
    if (alpha < 1) throw std::invalid_argument("population spec: alpha must be at least 1");
    if (k < 0 || static_cast<std::size_t>(k) > n) throw std::invalid_argument("population spec: k must lie in [0, n]");
    if (beta1 > 0 && k < 1) throw std::invalid_argument("population spec: beta1 needs k >= 1");
    if (beta_minus1 > 0 && k < 2) throw std::invalid_argument("population spec: beta-1 needs k >= 2");
    PopulationSpec spec{FitnessSpec::one_max(n), {}};
    auto prefix = [n](long ones) {
        Genome g(n);
        for (long i = 0; i < ones; ++i) g.set(static_cast<std::size_t>(i), true);
        return g;
    };
    for (std::size_t i = 0; i < alpha; ++i) spec.genomes.push_back(prefix(k));
    for (std::size_t i = 0; i < beta1; ++i) spec.genomes.push_back(prefix(k - 1));
    for (std::size_t i = 0; i < beta_minus1; ++i) spec.genomes.push_back(prefix(k - 2));
    return spec;
}

Population PopulationSpec::expand() const {
    fitness.validate();
    Population pop;
    pop.reserve(genomes.size());
    for (const auto& g : genomes) pop.push_back(make_individual(fitness, g));
    return pop;
}

GenerationOutcome exact_generation_success(const PopulationSpec& spec, std::size_t lambda) {
    const std::size_t mu = spec.mu();
    const std::size_t n = spec.fitness.n;
    if (mu > kEnumerationMaxMu || lambda > kEnumerationMaxLambda || n > kEnumerationMaxN)
        throw std::invalid_argument("exact_generation_success: instance exceeds the enumeration guard "
                                    "(mu <= 6, lambda <= 6, n <= 12)");
    const EngineConfig config = one_generation_config(spec, lambda);
    const Population pop = spec.expand();
    const auto part = classify_partition(pop);
    const long k = part.k;

    // Winner distribution of one tournament: both draws and the tie coin.
    std::vector<double> win(mu, 0.0);
    const double draw_weight = 1.0 / static_cast<double>(mu * mu * 2);
    for (std::size_t first = 0; first < mu; ++first)
        for (std::size_t second = 0; second < mu; ++second)
            for (int coin = 0; coin < 2; ++coin) {
                std::size_t winner;
                if (pop[first].fitness > pop[second].fitness)
                    winner = first;
                else if (pop[second].fitness > pop[first].fitness)
                    winner = second;
                else
                    winner = coin == 1 ? second : first;
                win[winner] += draw_weight;
            }

    // One pair: distribution over (offspring at >= k, any offspring above k).
    double pair_dist[3][2] = {};
    const double swap_weight = 1.0 / static_cast<double>(n * n);
    for (std::size_t i = 0; i < mu; ++i)
        for (std::size_t j = 0; j < mu; ++j) {
            const double w = win[i] * win[j];
            if (w == 0.0) continue;
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t q = 0; q < n; ++q) {
                    Genome a = pop[i].genome;
                    Genome b = pop[j].genome;
                    const bool va = a.get(p);
                    a.set(p, b.get(q));
                    b.set(q, va);
                    const long fa = evaluate(config.spec, a).fitness;
                    const long fb = evaluate(config.spec, b).fitness;
                    const int at_least = (fa >= k) + (fb >= k);
                    const int above = (fa > k || fb > k) ? 1 : 0;
                    pair_dist[at_least][above] += w * swap_weight;
                }
        }

    // Convolve over the lambda/2 independent pairs.
    const std::size_t max_candidates = lambda;
    std::vector<std::array<double, 2>> dist(max_candidates + 1, {0.0, 0.0});
    dist[0][0] = 1.0;
    for (std::size_t pair = 0; pair < lambda / 2; ++pair) {
        std::vector<std::array<double, 2>> next(max_candidates + 1, {0.0, 0.0});
        for (std::size_t c = 0; c <= max_candidates; ++c)
            for (int s = 0; s < 2; ++s) {
                if (dist[c][s] == 0.0) continue;
                for (std::size_t add = 0; add < 3 && c + add <= max_candidates; ++add)
                    for (int t = 0; t < 2; ++t) next[c + add][s | t] += dist[c][s] * pair_dist[add][t];
            }
        dist = std::move(next);
    }

    GenerationOutcome out;
    out.mu = mu;
    out.alpha = part.alpha;
    out.k = k;
    out.elite_count_distribution.assign(mu - part.alpha + 1, 0.0);
    for (std::size_t c = 0; c <= max_candidates; ++c)
        for (int s = 0; s < 2; ++s) {
            const std::size_t added = elites_after_replace(mu, part.alpha, c) - part.alpha;
            out.elite_count_distribution[added] += dist[c][s];
            if (s == 1) out.improvement += dist[c][s];
        }
    if (out.elite_count_distribution.size() > 1) out.exactly_one_new_elite = out.elite_count_distribution[1];
    for (std::size_t i = 1; i < out.elite_count_distribution.size(); ++i)
        out.at_least_one_new_elite += out.elite_count_distribution[i];
    return out;
}

double Estimate::standard_error() const {
    if (trials == 0) return 0.0;
    const double q = p();
    return std::sqrt(q * (1.0 - q) / static_cast<double>(trials));
}

MonteCarloOutcome monte_carlo_success(const PopulationSpec& spec, std::size_t lambda, std::uint64_t trials,
                                      RandomSource& rng, int workers) {
    const EngineConfig config = one_generation_config(spec, lambda);
    const Population start = spec.expand();
    const auto part = classify_partition(start);
    const std::size_t alpha = part.alpha;
    const long k = part.k;

    const Classifier classify = [alpha, k](const Population& next) {
        std::size_t at_least = 0;
        bool above = false;
        for (const auto& ind : next) {
            if (ind.fitness >= k) ++at_least;
            if (ind.fitness > k) above = true;
        }
        return TrialResult{at_least - alpha, above};
    };
    const Tally t = simulate(start, config, trials, rng.next_u64(), spec.mu() + 1, workers, classify);

    MonteCarloOutcome out;
    out.elite_count_histogram.assign(t.histogram.begin(), t.histogram.begin() + (spec.mu() - alpha + 1));
    out.exactly_one_new_elite = {t.histogram.size() > 1 ? t.histogram[1] : 0, trials};
    out.at_least_one_new_elite = {trials - t.histogram[0], trials};
    out.improvement = {t.flagged, trials};
    return out;
}

bool agrees(const Estimate& estimate, double exact, double sigmas) {
    const double se = estimate.standard_error();
    const double diff = std::abs(estimate.p() - exact);
    if (se == 0.0) return diff <= 1e-12;
    return diff <= sigmas * se;
}

ProbeResult appendix_a_probe(double p_sel, double phi, std::size_t lambda, std::size_t m) {
    if (!(p_sel >= 0.0 && p_sel <= 1.0) || !(phi >= 0.0 && phi <= 1.0))
        throw std::domain_error("appendix_a_probe: p_sel and phi must lie in [0, 1]");
    if (lambda < 2 || lambda % 2 != 0) throw std::domain_error("appendix_a_probe: lambda must be even and >= 2");
    const std::size_t pairs = lambda / 2;
    if (m < 1 || m > pairs) throw std::domain_error("appendix_a_probe: m must lie in [1, lambda/2]");

    ProbeResult r{p_sel, phi, lambda, m, 0.0, 0.0, false};
    r.p_e = static_cast<double>(pairs) * p_sel * phi;
    for (std::size_t i = 1; i <= m; ++i) {
        const double rr = static_cast<double>(i);
        r.p_e_star += binomial(pairs, i) * std::pow(p_sel, rr) * std::pow(1.0 - p_sel, static_cast<double>(pairs - i)) *
                      rr * phi * std::pow(1.0 - phi, rr - 1.0);
    }
    r.holds = r.p_e_star >= r.p_e;
    return r;
}

std::vector<ProbeResult> appendix_a_region() {
    const std::vector<double> p_sels = {0.01, 0.05, 0.1, 0.2, 0.5, 1.0};
    const std::vector<double> phis = {0.0, 0.01, 0.05, 0.1, 0.2, 0.5};
    const std::vector<std::size_t> lambdas = {2, 4, 10, 20, 50};
    std::vector<ProbeResult> rows;
    for (const auto lambda : lambdas) {
        const std::size_t pairs = lambda / 2;
        std::vector<std::size_t> ms = {1, (pairs + 1) / 2, pairs};
        ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
        for (const auto m : ms)
            for (const double p : p_sels)
                for (const double f : phis) rows.push_back(appendix_a_probe(p, f, lambda, m));
    }
    return rows;
}

std::vector<Genome> plateau_comparison_genomes(std::size_t n, std::size_t mu) {
    if (n < 2) throw std::invalid_argument("plateau comparison: n must be at least 2");
    const std::size_t top = n / 2 + 1;
    std::vector<Genome> genomes;
    for (std::size_t i = 0; i < mu; ++i) {
        const std::size_t ones = i == 0 ? top : top - 1 - ((i - 1) % 2);
        Genome g(n);
        for (std::size_t b = 0; b < ones; ++b) g.set(b, true);
        genomes.push_back(std::move(g));
    }
    return genomes;
}

PlateauComparison plateau_comparison(std::size_t n, std::size_t gamma, std::size_t mu, std::size_t lambda,
                                     std::uint64_t trials, RandomSource& rng, int workers) {
    const auto genomes = plateau_comparison_genomes(n, mu);
    const PopulationSpec f1{FitnessSpec::one_max(n), genomes};
    const PopulationSpec f2{FitnessSpec::plateau(n, gamma), genomes};
    f2.fitness.validate();
    const std::uint64_t base = rng.next_u64();

    const Population start1 = f1.expand();
    const auto part1 = classify_partition(start1);
    const Classifier elite = [&part1](const Population& next) {
        std::size_t count = 0;
        for (const auto& ind : next)
            if (ind.fitness >= part1.k) ++count;
        return TrialResult{0, count > part1.alpha};
    };

    const Population start2 = f2.expand();
    const auto part2 = classify_partition(start2);
    const Classifier super_elite = [&part2](const Population& next) {
        std::size_t count = 0;
        for (const auto& ind : next)
            if (ind.fitness > part2.k || (ind.fitness == part2.k && ind.aux >= part2.best_aux)) ++count;
        return TrialResult{0, count > part2.alpha_star};
    };

    const auto t1 = simulate(start1, one_generation_config(f1, lambda), trials, base, 1, workers, elite);
    const auto t2 = simulate(start2, one_generation_config(f2, lambda), trials, base, 1, workers, super_elite);

    PlateauComparison out;
    out.n = n;
    out.gamma = gamma;
    out.mu = mu;
    out.lambda = lambda;
    out.f1 = {t1.flagged, trials};
    out.f2 = {t2.flagged, trials};
    out.ordering_holds = out.f2.p() <= out.f1.p();
    const double se = std::hypot(out.f1.standard_error(), out.f2.standard_error());
    const double gap = out.f1.p() - out.f2.p();
    out.gap_sigmas = se == 0.0 ? (gap == 0.0 ? 0.0 : std::copysign(INFINITY, gap)) : gap / se;
    return out;
}

}  // namespace elt
