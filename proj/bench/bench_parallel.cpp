// Serial reference vs OpenMP paths for the two data-parallel kernels:
// Monte-Carlo generation sampling and seed sweeps.
#include <chrono>
#include <iostream>

#include <omp.h>

#include "elt/harness.hpp"
#include "elt/oracle.hpp"

namespace {

template <typename F>
double seconds(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
    const int threads = omp_get_max_threads();
    std::cout << "max threads: " << threads << "\n";

    const auto spec = elt::PopulationSpec::from_counts(8, 4, 1, 2, 1);
    for (const int workers : {1, threads}) {
        elt::RandomSource rng(7);
        elt::MonteCarloOutcome result;
        const double t = seconds([&] { result = elt::monte_carlo_success(spec, 4, 1'000'000, rng, workers); });
        std::cout << "monte_carlo  workers=" << workers << "  " << t << " s  p=" << result.at_least_one_new_elite.p()
                  << "\n";
    }

    elt::ExperimentConfig config;
    config.ns = {64, 128};
    config.mus = {2, 4};
    config.lambdas = {2};
    config.seeds = 50;
    for (const int workers : {1, threads}) {
        config.workers = workers;
        elt::SweepResult result;
        const double t = seconds([&] { result = elt::run_sweep(config); });
        std::cout << "sweep        workers=" << workers << "  " << t << " s  mean_gen(n=128,mu=4)="
                  << result.cells.back().mean_generations << "\n";
    }
    return 0;
}
