#include "elt/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "elt/analytics.hpp"
#include "elt/engine.hpp"
#include "elt/harness.hpp"
#include "elt/oracle.hpp"
#include "elt/verification.hpp"

namespace elt {

namespace {

namespace fs = std::filesystem;

std::string params_hash(const nlohmann::json& params) { return fnv1a_hex(params.dump()); }

std::ofstream open_output(const fs::path& dir, const std::string& file) {
    fs::create_directories(dir);
    std::ofstream os(dir / file);
    if (!os) throw std::runtime_error("cannot write " + (dir / file).string());
    return os;
}

int report_checks(const std::vector<CheckResult>& checks, std::ostream& out) {
    std::size_t passed = 0;
    for (const auto& c : checks) {
        out << (c.passed ? "PASS " : "FAIL ") << c.name;
        if (!c.detail.empty()) out << "  [" << c.detail << "]";
        out << '\n';
        if (c.passed) ++passed;
    }
    out << passed << "/" << checks.size() << " checks passed\n";
    return passed == checks.size() ? 0 : 1;
}

struct RunOptions {
    std::size_t n = 16, mu = 2, lambda = 2, gamma = 0;
    std::uint64_t seed = 1, cap = 0;
    std::string init = "uniform_random";
    std::string trace;
    bool rls = false;
};

int do_run(const RunOptions& o, std::ostream& out) {
    const FitnessSpec spec = o.gamma == 0 ? FitnessSpec::one_max(o.n) : FitnessSpec::plateau(o.n, o.gamma);
    RunRecord record;
    if (o.rls) {
        record = run_rls_baseline(spec, o.seed, o.cap);
    } else {
        EngineConfig config{o.mu, o.lambda, spec, o.cap, parse_init_mode(o.init)};
        record = run(config, o.seed);
    }
    const nlohmann::json params = {{"command", "run"}, {"n", o.n},     {"mu", o.mu},   {"lambda", o.lambda},
                                   {"gamma", o.gamma}, {"seed", o.seed}, {"cap", o.cap}, {"init", o.init},
                                   {"rls", o.rls}};
    const auto hash = params_hash(params);
    const auto& last = record.trace.back();
    out << "algorithm=" << (o.rls ? "rls" : "mu+lambda-1bs") << '\n'
        << "fitness=" << spec.describe() << '\n'
        << "mu=" << record.mu << " lambda=" << record.lambda << " seed=" << record.seed << '\n'
        << "generations=" << record.generations << '\n'
        << "evaluations=" << record.evaluations << '\n'
        << "terminated=" << to_string(record.terminated) << '\n'
        << "final_k=" << last.k << " alpha=" << last.alpha << " alpha_star=" << last.alpha_star
        << " beta1=" << last.beta1 << " beta_minus1=" << last.beta_minus1 << '\n'
        << "config_hash=" << hash << '\n';
    if (!o.trace.empty()) {
        std::ofstream os(o.trace);
        if (!os) throw std::runtime_error("cannot write " + o.trace);
        write_trace_csv(os, record, hash);
    }
    const auto issues = check_run_invariants(record);
    for (const auto& issue : issues) out << "invariant violated: " << issue << '\n';
    return issues.empty() ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Elitism-levels laboratory for the (mu+lambda) EA with 1-Bit-Swap"};
    app.require_subcommand(1);

    RunOptions run_opts;
    auto* run_cmd = app.add_subcommand("run", "Single seeded run; prints a RunRecord summary");
    run_cmd->add_option("--n", run_opts.n, "Genome length")->check(CLI::PositiveNumber);
    run_cmd->add_option("--mu", run_opts.mu, "Population size");
    run_cmd->add_option("--lambda", run_opts.lambda, "Pool size (even)");
    run_cmd->add_option("--gamma", run_opts.gamma, "Plateau length; 0 selects OneMax");
    run_cmd->add_option("--seed", run_opts.seed, "Seed");
    run_cmd->add_option("--cap", run_opts.cap, "Generation cap; 0 selects the default");
    run_cmd->add_option("--init", run_opts.init, "uniform_random or balanced_bins");
    run_cmd->add_option("--trace", run_opts.trace, "Write the per-generation trace CSV here");
    run_cmd->add_flag("--rls", run_opts.rls, "Run the randomized local search baseline instead");

    std::string config_path, out_dir;
    int workers = 0;
    auto* sweep_cmd = app.add_subcommand("sweep", "Seeded grid sweep from a JSON config");
    sweep_cmd->add_option("--config", config_path, "Experiment config (JSON)")->required();
    sweep_cmd->add_option("--out", out_dir, "Output directory (overrides out_dir)");
    sweep_cmd->add_option("--workers", workers, "Worker threads (overrides workers)");

    std::uint64_t trials = 100000, seed = 2024;
    int vp_workers = 1;
    auto* vp_cmd = app.add_subcommand("verify-probabilities", "Exact enumeration vs Monte-Carlo vs formulas");
    vp_cmd->add_option("--trials", trials, "Monte-Carlo trials per fixture");
    vp_cmd->add_option("--seed", seed, "Seed");
    vp_cmd->add_option("--workers", vp_workers, "Worker threads");

    std::string vb_out;
    auto* vb_cmd = app.add_subcommand("verify-bounds", "Level-sum, special-function and bound identity suites");
    vb_cmd->add_option("--seed", seed, "Seed for randomized instances");
    vb_cmd->add_option("--out", vb_out, "Also write bound_sweep.csv and level_coefficients.csv here");

    std::size_t probe_lambda = 10, probe_m = 5;
    double probe_p = 0.1, probe_phi = 0.2;
    std::string probe_out;
    auto* probe_cmd = app.add_subcommand("probe-appendix-a", "Single-representative vs exactly-one inequality probe");
    probe_cmd->add_option("--lambda", probe_lambda, "Pool size");
    probe_cmd->add_option("--p-sel", probe_p, "Selection probability");
    probe_cmd->add_option("--phi", probe_phi, "Swap success probability");
    probe_cmd->add_option("--m", probe_m, "Upper limit of the r-sum");
    probe_cmd->add_option("--out", probe_out, "Write probe_region.csv here");

    std::size_t cp_n = 12, cp_gamma = 3, cp_mu = 4, cp_lambda = 4;
    std::uint64_t cp_trials = 100000, cp_seed = 2024;
    int cp_workers = 1;
    std::string cp_out;
    auto* cp_cmd = app.add_subcommand("compare-plateau", "P(new elite) on OneMax vs P(new super-elite) on plateaus");
    cp_cmd->add_option("--n", cp_n, "Genome length");
    cp_cmd->add_option("--gamma", cp_gamma, "Plateau length");
    cp_cmd->add_option("--mu", cp_mu, "Population size");
    cp_cmd->add_option("--lambda", cp_lambda, "Pool size");
    cp_cmd->add_option("--trials", cp_trials, "Monte-Carlo trials");
    cp_cmd->add_option("--seed", cp_seed, "Seed");
    cp_cmd->add_option("--workers", cp_workers, "Worker threads");
    cp_cmd->add_option("--out", cp_out, "Write plateau_comparison.csv here");

    std::string fit_summary, fit_unit = "generations";
    std::size_t fit_mu = 0, fit_lambda = 0;
    auto* fit_cmd = app.add_subcommand("fit", "Fit a mu n ln n + b mu n to a sweep summary CSV");
    fit_cmd->add_option("--summary", fit_summary, "summary.csv from `sweep`")->required();
    fit_cmd->add_option("--unit", fit_unit, "generations or evaluations");
    fit_cmd->add_option("--mu", fit_mu, "Use only cells with this mu");
    fit_cmd->add_option("--lambda", fit_lambda, "Use only cells with this lambda");

    std::string plot_out, plot_summary;
    std::size_t plot_n = 64, plot_mu = 2, plot_lambda = 2;
    std::uint64_t plot_seed = 1;
    auto* plot_cmd = app.add_subcommand("plot-data", "Two-column data files for external plotting");
    plot_cmd->add_option("--out", plot_out, "Output directory")->required();
    plot_cmd->add_option("--n", plot_n, "Genome length for traces and bound curves");
    plot_cmd->add_option("--mu", plot_mu, "Population size");
    plot_cmd->add_option("--lambda", plot_lambda, "Pool size");
    plot_cmd->add_option("--seed", plot_seed, "Seed for the traced run");
    plot_cmd->add_option("--summary", plot_summary, "Sweep summary.csv for scaling series");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*run_cmd) return do_run(run_opts, out);

        if (*sweep_cmd) {
            auto config = ExperimentConfig::load(config_path);
            if (!out_dir.empty()) config.out_dir = out_dir;
            if (workers > 0) config.workers = workers;
            const auto result = run_sweep(config);
            write_summary_csv(out, result.cells, result.config_hash);
            for (const auto& v : result.invariant_violations) err << "invariant violated: " << v << '\n';
            if (!config.out_dir.empty()) out << "wrote " << (config.out_dir / "summary.csv").string() << '\n';
            return result.invariant_violations.empty() ? 0 : 1;
        }

        if (*vp_cmd) return report_checks(verify_probabilities_suite(trials, seed, vp_workers), out);

        if (*vb_cmd) {
            const int status = report_checks(verify_bounds_suite(seed), out);
            if (!vb_out.empty()) {
                const nlohmann::json params = {{"command", "verify-bounds"}, {"c", 1}};
                const auto hash = params_hash(params);
                auto os = open_output(vb_out, "bound_sweep.csv");
                os << "n,mu,lambda,delta,bound,k_range,exact_sum,asymptotic_value,ratio,config_hash\n";
                for (const auto& r : bound_sweep({16, 32, 64, 128, 256}, {2, 4, 8, 16}, {2, 4, 8}, 1.0))
                    os << r.n << ',' << r.mu << ',' << r.lambda << ',' << r.delta << ',' << r.bound << ','
                       << r.k_first << ".." << r.k_last << ',' << std::setprecision(10) << r.exact_sum << ','
                       << r.asymptotic_value << ',' << r.ratio << ',' << hash << '\n';
                auto cs = open_output(vb_out, "level_coefficients.csv");
                cs << "n,mu,k,quad_b0,quad_b1,quad_positive_on_1_mu,cubic_b0,cubic_b1,cubic_b2,config_hash\n";
                for (const long n : {16L, 64L})
                    for (const double mu : {2.0, 4.0, 8.0})
                        for (long k = 3; k <= n - 3; ++k) {
                            const auto q = simple_level_coefficients(mu, k, n);
                            const auto c = refined_level_coefficients(mu, k, n);
                            bool positive = true;
                            for (double a = 1; a <= mu; ++a) positive = positive && a * a + q.b1 * a + q.b0 > 0.0;
                            cs << n << ',' << mu << ',' << k << ',' << q.b0 << ',' << q.b1 << ','
                               << (positive ? "true" : "false") << ',' << c.b0 << ',' << c.b1 << ',' << c.b2 << ','
                               << hash << '\n';
                        }
            }
            return status;
        }

        if (*probe_cmd) {
            const auto r = appendix_a_probe(probe_p, probe_phi, probe_lambda, probe_m);
            out << std::setprecision(10) << "p_e=" << r.p_e << " p_e_star=" << r.p_e_star
                << " holds=" << (r.holds ? "true" : "false") << '\n';
            const auto region = appendix_a_region();
            std::size_t holds = 0;
            for (const auto& row : region) holds += row.holds ? 1 : 0;
            out << "region: inequality holds on " << holds << " of " << region.size() << " grid points\n";
            if (!probe_out.empty()) {
                const auto hash = params_hash({{"command", "probe-appendix-a"}, {"grid", "default"}});
                auto os = open_output(probe_out, "probe_region.csv");
                os << "p_sel,phi,lambda,m,p_e,p_e_star,holds,config_hash\n" << std::setprecision(12);
                for (const auto& row : region)
                    os << row.p_sel << ',' << row.phi << ',' << row.lambda << ',' << row.m << ',' << row.p_e << ','
                       << row.p_e_star << ',' << (row.holds ? "true" : "false") << ',' << hash << '\n';
            }
            return 0;
        }

        if (*cp_cmd) {
            RandomSource rng(cp_seed);
            const auto r = plateau_comparison(cp_n, cp_gamma, cp_mu, cp_lambda, cp_trials, rng, cp_workers);
            out << std::setprecision(8) << "p_f1=" << r.f1.p() << " se=" << r.f1.standard_error() << '\n'
                << "p_f2=" << r.f2.p() << " se=" << r.f2.standard_error() << '\n'
                << "ordering_holds=" << (r.ordering_holds ? "true" : "false") << " gap_sigmas=" << r.gap_sigmas
                << '\n';
            if (!cp_out.empty()) {
                const auto hash = params_hash({{"command", "compare-plateau"}, {"n", cp_n}, {"gamma", cp_gamma},
                                               {"mu", cp_mu}, {"lambda", cp_lambda}, {"trials", cp_trials},
                                               {"seed", cp_seed}});
                auto os = open_output(cp_out, "plateau_comparison.csv");
                os << "n,gamma,mu,lambda,trials,p_f1,se_f1,p_f2,se_f2,ordering_holds,gap_sigmas,config_hash\n"
                   << std::setprecision(10) << r.n << ',' << r.gamma << ',' << r.mu << ',' << r.lambda << ','
                   << cp_trials << ',' << r.f1.p() << ',' << r.f1.standard_error() << ',' << r.f2.p() << ','
                   << r.f2.standard_error() << ',' << (r.ordering_holds ? "true" : "false") << ',' << r.gap_sigmas
                   << ',' << hash << '\n';
            }
            return 0;
        }

        if (*fit_cmd) {
            std::ifstream in(fit_summary);
            if (!in) throw std::invalid_argument("cannot open " + fit_summary);
            auto cells = read_summary_csv(in);
            std::erase_if(cells, [&](const CellSummary& c) {
                return (fit_mu != 0 && c.mu != fit_mu) || (fit_lambda != 0 && c.lambda != fit_lambda);
            });
            const auto fit = fit_scaling(cells, parse_fit_unit(fit_unit));
            out << std::setprecision(10) << "unit=" << to_string(fit.unit) << " mu=" << fit.mu
                << " lambda=" << fit.lambda << " points=" << fit.points << '\n'
                << "a=" << fit.a << '\n'
                << "b=" << fit.b << '\n'
                << "r_squared=" << fit.r_squared << '\n';
            return 0;
        }

        if (*plot_cmd) {
            const fs::path dir = plot_out;
            const auto hash = params_hash({{"command", "plot-data"}, {"n", plot_n}, {"mu", plot_mu},
                                           {"lambda", plot_lambda}, {"seed", plot_seed}});
            auto series = [&](const std::string& file, const std::string& x, const std::string& y) {
                auto os = open_output(dir, file);
                os << "# x=" << x << " y=" << y << " config_hash=" << hash << '\n' << std::setprecision(10);
                return os;
            };

            const auto record = run(EngineConfig{plot_mu, plot_lambda, FitnessSpec::one_max(plot_n)}, plot_seed);
            {
                auto a = series("alpha_trace.dat", "generation", "alpha");
                auto k = series("best_fitness_trace.dat", "generation", "best_fitness");
                for (std::size_t g = 0; g < record.trace.size(); ++g) {
                    a << g << ' ' << record.trace[g].alpha << '\n';
                    k << g << ' ' << record.trace[g].k << '\n';
                }
            }
            const auto params = BoundParams::reciprocal(static_cast<double>(plot_mu), static_cast<double>(plot_lambda),
                                                        static_cast<long>(plot_n), 1.0);
            {
                auto s = series("traverse_simple.dat", "k", "generations_bound");
                for (long k = 2; k <= params.n - 2; ++k) s << k << ' ' << simple_traverse_bound(params, k) << '\n';
                auto r = series("traverse_refined.dat", "k", "generations_bound");
                for (long k = 3; k <= params.n - 3; ++k) r << k << ' ' << refined_traverse_bound(params, k) << '\n';
                auto se = series("simple_bound_vs_n.dat", "n", "exact_generations_bound");
                auto re = series("refined_bound_vs_n.dat", "n", "exact_generations_bound");
                for (long n = 8; n <= static_cast<long>(std::max<std::size_t>(plot_n, 8)); n *= 2) {
                    const auto p = BoundParams::reciprocal(params.mu, params.lambda, n, 1.0);
                    se << n << ' ' << simple_runtime_bound(p).exact << '\n';
                    re << n << ' ' << refined_runtime_bound(p).exact << '\n';
                }
            }
            if (!plot_summary.empty()) {
                std::ifstream in(plot_summary);
                if (!in) throw std::invalid_argument("cannot open " + plot_summary);
                const auto cells = read_summary_csv(in);
                std::map<std::pair<std::size_t, std::size_t>, std::vector<const CellSummary*>> groups;
                for (const auto& c : cells) groups[{c.mu, c.lambda}].push_back(&c);
                for (const auto& [key, members] : groups) {
                    auto os = series("scaling_mu" + std::to_string(key.first) + "_lambda" +
                                         std::to_string(key.second) + ".dat",
                                     "n", "mean_generations");
                    for (const auto* c : members) os << c->n << ' ' << c->mean_generations << '\n';
                }
            }
            out << "wrote plot data to " << dir.string() << '\n';
            return 0;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}

}  // namespace elt
