#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "elt/engine.hpp"
#include "elt/fitness.hpp"

namespace elt {

/// Sweep configuration, read from a flat JSON object:
///
///   {
///     "n": [32, 64], "mu": [2], "lambda": [2],
///     "fitness": "onemax",           // or "plateau" together with "gamma"
///     "gamma": 3,
///     "seeds": 100, "base_seed": 1,
///     "generation_cap": 0,           // 0 = ceil(50 mu n ln(n+1))
///     "init_mode": "uniform_random", // or "balanced_bins"
///     "out_dir": "out", "workers": 1, "write_traces": false
///   }
///
/// Unknown keys are rejected. Only "n", "mu" and "lambda" are required.
struct ExperimentConfig {
    std::vector<std::size_t> ns;
    std::vector<std::size_t> mus;
    std::vector<std::size_t> lambdas;
    FitnessKind fitness = FitnessKind::OneMax;
    std::size_t gamma = 1;
    std::size_t seeds = 1;
    std::uint64_t base_seed = 1;
    std::uint64_t generation_cap = 0;
    InitMode init_mode = InitMode::UniformRandom;
    std::filesystem::path out_dir;
    int workers = 1;
    bool write_traces = false;

    static ExperimentConfig from_json_text(const std::string& text);
    static ExperimentConfig load(const std::filesystem::path& path);

    void validate() const;

    FitnessSpec fitness_spec(std::size_t n) const;

    /// 16 hex digits identifying every field that affects results
    /// (out_dir, workers and write_traces are excluded).
    std::string hash() const;
};

/// Seed of replicate r in cell (n, mu, lambda). Depends only on those
/// values and the base seed, never on grid position:
///   mix(mix(mix(mix(base, n), mu), lambda), r)
std::uint64_t cell_seed(std::uint64_t base_seed, std::size_t n, std::size_t mu, std::size_t lambda,
                        std::size_t replicate);

/// One finished run without its trace.
struct RunSummary {
    std::size_t n = 0, mu = 0, lambda = 0, replicate = 0;
    std::uint64_t seed = 0;
    std::uint64_t generations = 0;
    std::uint64_t evaluations = 0;
    Termination terminated = Termination::Optimum;
};

struct CellSummary {
    std::size_t n = 0, mu = 0, lambda = 0, seed_count = 0;
    double mean_generations = 0;
    double median_generations = 0;
    double std_generations = 0;  // sample standard deviation
    double mean_evaluations = 0;
    std::size_t cap_hits = 0;
};

struct SweepResult {
    std::string config_hash;
    std::vector<RunSummary> runs;
    std::vector<CellSummary> cells;
    std::vector<std::string> invariant_violations;
};

/// Runs every (n, mu, lambda, replicate) cell. Runs are independent and
/// execute on up to config.workers OpenMP threads (1 = serial loop); the
/// result is identical for any worker count. Every run's trace is checked
/// with check_run_invariants. When out_dir is set the CSVs are written
/// there, and an unwritable directory fails before any run starts.
SweepResult run_sweep(const ExperimentConfig& config);

std::vector<CellSummary> summarize(const std::vector<RunSummary>& runs);

void write_summary_csv(std::ostream& os, const std::vector<CellSummary>& cells, const std::string& config_hash);
void write_runs_csv(std::ostream& os, const std::vector<RunSummary>& runs, const std::string& config_hash);
void write_trace_csv(std::ostream& os, const RunRecord& record, const std::string& config_hash);

std::vector<CellSummary> read_summary_csv(std::istream& is);

enum class FitUnit { Generations, Evaluations };

/// Least-squares fit of mean runtime to a mu n ln n + b mu n.
struct FitResult {
    double a = 0, b = 0;
    double r_squared = 0;  // clamped to [0, 1]
    FitUnit unit = FitUnit::Generations;
    std::size_t mu = 0, lambda = 0;
    std::size_t points = 0;
};

/// Fits cell means at one (mu, lambda). The evaluations unit uses the
/// per-generation charge, mean_evaluations - mu = 2 lambda mean_generations,
/// so switching units scales a and b by exactly 2 lambda. Needs at least
/// three distinct n.
FitResult fit_scaling(const std::vector<CellSummary>& cells, FitUnit unit);

const char* to_string(FitUnit unit);
FitUnit parse_fit_unit(const std::string& name);

/// FNV-1a 64-bit hash rendered as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

}  // namespace elt
