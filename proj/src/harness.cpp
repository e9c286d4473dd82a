#include "elt/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <json.hpp>
#include <omp.h>

#include "elt/random.hpp"

namespace elt {

namespace {

using nlohmann::json;

template <typename T>
std::vector<T> positive_list(const json& j, const char* key) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument(std::string("config: '") + key + "' must be a non-empty array");
    std::vector<T> out;
    for (const auto& v : j) {
        if (!v.is_number_unsigned() || v.get<T>() == 0)
            throw std::invalid_argument(std::string("config: '") + key + "' entries must be positive integers");
        out.push_back(v.get<T>());
    }
    return out;
}

std::string format_double(double v) {
    std::ostringstream os;
    os << std::setprecision(10) << v;
    return os.str();
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    return fields;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");

    static const std::set<std::string> known = {"n",     "mu",         "lambda",         "fitness",   "gamma",
                                                "seeds", "base_seed",  "generation_cap", "init_mode", "out_dir",
                                                "workers", "write_traces"};
    for (const auto& [key, value] : j.items())
        if (!known.contains(key)) throw std::invalid_argument("config: unknown key '" + key + "'");
    for (const char* required : {"n", "mu", "lambda"})
        if (!j.contains(required)) throw std::invalid_argument(std::string("config: missing key '") + required + "'");

    ExperimentConfig c;
    try {
        c.ns = positive_list<std::size_t>(j["n"], "n");
        c.mus = positive_list<std::size_t>(j["mu"], "mu");
        c.lambdas = positive_list<std::size_t>(j["lambda"], "lambda");
        if (j.contains("fitness")) c.fitness = parse_fitness_kind(j["fitness"].get<std::string>());
        if (j.contains("gamma")) c.gamma = j["gamma"].get<std::size_t>();
        if (j.contains("seeds")) c.seeds = j["seeds"].get<std::size_t>();
        if (j.contains("base_seed")) c.base_seed = j["base_seed"].get<std::uint64_t>();
        if (j.contains("generation_cap")) c.generation_cap = j["generation_cap"].get<std::uint64_t>();
        if (j.contains("init_mode")) c.init_mode = parse_init_mode(j["init_mode"].get<std::string>());
        if (j.contains("out_dir")) c.out_dir = j["out_dir"].get<std::string>();
        if (j.contains("workers")) c.workers = j["workers"].get<int>();
        if (j.contains("write_traces")) c.write_traces = j["write_traces"].get<bool>();
    } catch (const json::type_error& e) {
        throw std::invalid_argument(std::string("config: wrong value type: ") + e.what());
    }
    c.validate();
    return c;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return from_json_text(text.str());
}

void ExperimentConfig::validate() const {
    if (ns.empty() || mus.empty() || lambdas.empty()) throw std::invalid_argument("config: grids must be non-empty");
    if (seeds < 1) throw std::invalid_argument("config: seeds must be at least 1");
    if (workers < 1) throw std::invalid_argument("config: workers must be at least 1");
    for (const auto n : ns) fitness_spec(n).validate();
    for (const auto mu : mus)
        for (const auto lambda : lambdas) EngineConfig{mu, lambda, fitness_spec(ns.front()), 0, init_mode}.validate();
}

FitnessSpec ExperimentConfig::fitness_spec(std::size_t n) const {
    return fitness == FitnessKind::OneMax ? FitnessSpec::one_max(n) : FitnessSpec::plateau(n, gamma);
}

std::string ExperimentConfig::hash() const {
    json j = {{"n", ns},
              {"mu", mus},
              {"lambda", lambdas},
              {"fitness", to_string(fitness)},
              {"gamma", fitness == FitnessKind::OneMax ? 1 : gamma},
              {"seeds", seeds},
              {"base_seed", base_seed},
              {"generation_cap", generation_cap},
              {"init_mode", to_string(init_mode)}};
    return fnv1a_hex(j.dump());
}

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

std::uint64_t cell_seed(std::uint64_t base_seed, std::size_t n, std::size_t mu, std::size_t lambda,
                        std::size_t replicate) {
    std::uint64_t s = mix_seed(base_seed, n);
    s = mix_seed(s, mu);
    s = mix_seed(s, lambda);
    return mix_seed(s, replicate);
}

SweepResult run_sweep(const ExperimentConfig& config) {
    config.validate();
    const std::string hash = config.hash();

    if (!config.out_dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(config.out_dir, ec);
        const auto probe = config.out_dir / ".write_probe";
        std::ofstream test(probe);
        if (ec || !test) throw std::runtime_error("sweep: output directory is not writable: " + config.out_dir.string());
        test.close();
        std::filesystem::remove(probe, ec);
        if (config.write_traces) std::filesystem::create_directories(config.out_dir / "traces");
    }

    struct Job {
        std::size_t n, mu, lambda, replicate;
    };
    std::vector<Job> jobs;
    for (const auto n : config.ns)
        for (const auto mu : config.mus)
            for (const auto lambda : config.lambdas)
                for (std::size_t r = 0; r < config.seeds; ++r) jobs.push_back({n, mu, lambda, r});

    std::vector<RunSummary> runs(jobs.size());
    std::vector<std::vector<std::string>> issues(jobs.size());

    auto execute = [&](std::size_t i) {
        const auto& job = jobs[i];
        EngineConfig engine{job.mu, job.lambda, config.fitness_spec(job.n), config.generation_cap, config.init_mode};
        const std::uint64_t seed = cell_seed(config.base_seed, job.n, job.mu, job.lambda, job.replicate);
        const RunRecord record = run(engine, seed);
        for (auto& issue : check_run_invariants(record))
            issues[i].push_back("n=" + std::to_string(job.n) + " mu=" + std::to_string(job.mu) +
                                " lambda=" + std::to_string(job.lambda) + " replicate=" +
                                std::to_string(job.replicate) + ": " + issue);
        runs[i] = {job.n, job.mu, job.lambda, job.replicate, seed, record.generations, record.evaluations,
                   record.terminated};
        if (config.write_traces && !config.out_dir.empty()) {
            std::ostringstream name;
            name << "trace_n" << job.n << "_mu" << job.mu << "_lambda" << job.lambda << "_r" << job.replicate << ".csv";
            std::ofstream out(config.out_dir / "traces" / name.str());
            write_trace_csv(out, record, hash);
        }
    };

    if (config.workers <= 1) {
        for (std::size_t i = 0; i < jobs.size(); ++i) execute(i);
    } else {
        const auto count = static_cast<long long>(jobs.size());
#pragma omp parallel for schedule(dynamic) num_threads(config.workers)
        for (long long i = 0; i < count; ++i) execute(static_cast<std::size_t>(i));
    }

    SweepResult result;
    result.config_hash = hash;
    result.runs = std::move(runs);
    result.cells = summarize(result.runs);
    for (auto& list : issues)
        for (auto& issue : list) result.invariant_violations.push_back(std::move(issue));

    if (!config.out_dir.empty()) {
        std::ofstream summary(config.out_dir / "summary.csv");
        write_summary_csv(summary, result.cells, hash);
        std::ofstream runs_out(config.out_dir / "runs.csv");
        write_runs_csv(runs_out, result.runs, hash);
        if (!summary || !runs_out) throw std::runtime_error("sweep: failed writing CSV output");
    }
    return result;
}

std::vector<CellSummary> summarize(const std::vector<RunSummary>& runs) {
    // Cells in first-appearance order.
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> order;
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::vector<const RunSummary*>> groups;
    for (const auto& r : runs) {
        const auto key = std::make_tuple(r.n, r.mu, r.lambda);
        auto [it, inserted] = groups.try_emplace(key);
        if (inserted) order.push_back(key);
        it->second.push_back(&r);
    }

    std::vector<CellSummary> cells;
    for (const auto& key : order) {
        const auto& members = groups[key];
        CellSummary c;
        std::tie(c.n, c.mu, c.lambda) = key;
        c.seed_count = members.size();
        std::vector<double> gens;
        double sum_evals = 0;
        for (const auto* r : members) {
            gens.push_back(static_cast<double>(r->generations));
            sum_evals += static_cast<double>(r->evaluations);
            if (r->terminated == Termination::GenerationCap) ++c.cap_hits;
        }
        const double count = static_cast<double>(gens.size());
        double sum = 0;
        for (const double g : gens) sum += g;
        c.mean_generations = sum / count;
        c.mean_evaluations = sum_evals / count;
        double ss = 0;
        for (const double g : gens) ss += (g - c.mean_generations) * (g - c.mean_generations);
        c.std_generations = gens.size() > 1 ? std::sqrt(ss / (count - 1.0)) : 0.0;
        std::sort(gens.begin(), gens.end());
        const std::size_t mid = gens.size() / 2;
        c.median_generations = gens.size() % 2 == 1 ? gens[mid] : 0.5 * (gens[mid - 1] + gens[mid]);
        cells.push_back(c);
    }
    return cells;
}

void write_summary_csv(std::ostream& os, const std::vector<CellSummary>& cells, const std::string& config_hash) {
    os << "n,mu,lambda,seed_count,mean_generations,median_generations,std_generations,mean_evaluations,cap_hits,"
          "config_hash\n";
    for (const auto& c : cells)
        os << c.n << ',' << c.mu << ',' << c.lambda << ',' << c.seed_count << ',' << format_double(c.mean_generations)
           << ',' << format_double(c.median_generations) << ',' << format_double(c.std_generations) << ','
           << format_double(c.mean_evaluations) << ',' << c.cap_hits << ',' << config_hash << '\n';
}

void write_runs_csv(std::ostream& os, const std::vector<RunSummary>& runs, const std::string& config_hash) {
    os << "n,mu,lambda,replicate,seed,generations,evaluations,terminated,config_hash\n";
    for (const auto& r : runs)
        os << r.n << ',' << r.mu << ',' << r.lambda << ',' << r.replicate << ',' << r.seed << ',' << r.generations
           << ',' << r.evaluations << ',' << to_string(r.terminated) << ',' << config_hash << '\n';
}

void write_trace_csv(std::ostream& os, const RunRecord& record, const std::string& config_hash) {
    os << "generation,k,alpha,alpha_star,beta1,beta_minus1,best_fitness,best_aux,config_hash\n";
    for (std::size_t g = 0; g < record.trace.size(); ++g) {
        const auto& p = record.trace[g];
        os << g << ',' << p.k << ',' << p.alpha << ',' << p.alpha_star << ',' << p.beta1 << ',' << p.beta_minus1
           << ',' << p.k << ',' << p.best_aux << ',' << config_hash << '\n';
    }
}

std::vector<CellSummary> read_summary_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("summary csv: empty input");
    const auto header = split_csv_line(line);
    std::map<std::string, std::size_t> column;
    for (std::size_t i = 0; i < header.size(); ++i) column[header[i]] = i;
    for (const char* name : {"n", "mu", "lambda", "seed_count", "mean_generations", "median_generations",
                             "std_generations", "mean_evaluations", "cap_hits"})
        if (!column.contains(name)) throw std::invalid_argument(std::string("summary csv: missing column ") + name);

    std::vector<CellSummary> cells;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != header.size()) throw std::invalid_argument("summary csv: ragged row");
        try {
            CellSummary c;
            c.n = std::stoul(f[column["n"]]);
            c.mu = std::stoul(f[column["mu"]]);
            c.lambda = std::stoul(f[column["lambda"]]);
            c.seed_count = std::stoul(f[column["seed_count"]]);
            c.mean_generations = std::stod(f[column["mean_generations"]]);
            c.median_generations = std::stod(f[column["median_generations"]]);
            c.std_generations = std::stod(f[column["std_generations"]]);
            c.mean_evaluations = std::stod(f[column["mean_evaluations"]]);
            c.cap_hits = std::stoul(f[column["cap_hits"]]);
            cells.push_back(c);
        } catch (const std::logic_error&) {
            throw std::invalid_argument("summary csv: malformed number in row: " + line);
        }
    }
    return cells;
}

FitResult fit_scaling(const std::vector<CellSummary>& cells, FitUnit unit) {
    if (cells.empty()) throw std::invalid_argument("fit: no data");
    const std::size_t mu = cells.front().mu;
    const std::size_t lambda = cells.front().lambda;
    std::set<std::size_t> distinct_n;
    for (const auto& c : cells) {
        if (c.mu != mu || c.lambda != lambda) throw std::invalid_argument("fit: all cells must share one (mu, lambda)");
        distinct_n.insert(c.n);
    }
    if (distinct_n.size() < 3) throw std::invalid_argument("fit: need at least three distinct n values");

    // Normal equations for y = a x1 + b x2 with x1 = mu n ln n, x2 = mu n.
    double s11 = 0, s12 = 0, s22 = 0, s1y = 0, s2y = 0, sy = 0;
    std::vector<double> ys, x1s, x2s;
    for (const auto& c : cells) {
        const double n = static_cast<double>(c.n);
        const double m = static_cast<double>(c.mu);
        const double x1 = m * n * std::log(n);
        const double x2 = m * n;
        const double y = unit == FitUnit::Generations ? c.mean_generations : c.mean_evaluations - m;
        s11 += x1 * x1;
        s12 += x1 * x2;
        s22 += x2 * x2;
        s1y += x1 * y;
        s2y += x2 * y;
        sy += y;
        ys.push_back(y);
        x1s.push_back(x1);
        x2s.push_back(x2);
    }
    const double det = s11 * s22 - s12 * s12;
    if (std::abs(det) <= 1e-12 * s11 * s22) throw std::invalid_argument("fit: degenerate design");

    FitResult fit;
    fit.unit = unit;
    fit.mu = mu;
    fit.lambda = lambda;
    fit.points = cells.size();
    fit.a = (s1y * s22 - s2y * s12) / det;
    fit.b = (s11 * s2y - s12 * s1y) / det;

    const double mean_y = sy / static_cast<double>(ys.size());
    double ss_res = 0, ss_tot = 0;
    for (std::size_t i = 0; i < ys.size(); ++i) {
        const double r = ys[i] - (fit.a * x1s[i] + fit.b * x2s[i]);
        ss_res += r * r;
        ss_tot += (ys[i] - mean_y) * (ys[i] - mean_y);
    }
    fit.r_squared = ss_tot == 0.0 ? (ss_res == 0.0 ? 1.0 : 0.0) : std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0);
    return fit;
}

const char* to_string(FitUnit unit) { return unit == FitUnit::Generations ? "generations" : "evaluations"; }

FitUnit parse_fit_unit(const std::string& name) {
    if (name == "generations") return FitUnit::Generations;
    if (name == "evaluations") return FitUnit::Evaluations;
    throw std::invalid_argument("unknown fit unit '" + name + "'");
}

}  // namespace elt
