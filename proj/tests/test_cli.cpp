#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "elt/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "elt");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    const int code = elt::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("elt_test_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

double field(const std::string& text, const std::string& key) {
    // Keys sit at the start of a line or after a space.
    for (const std::string lead : {"\n", " "}) {
        const auto pos = (lead + text).find(lead + key + "=");
        if (pos != std::string::npos) return std::stod(text.substr(pos + key.size() + 1));
    }
    FAIL("missing key " << key);
    return 0;
}

}  // namespace

TEST_CASE("run is reproducible") {
    const auto a = invoke({"run", "--n", "16", "--mu", "2", "--lambda", "2", "--seed", "7"});
    const auto b = invoke({"run", "--n", "16", "--mu", "2", "--lambda", "2", "--seed", "7"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("terminated=optimum") != std::string::npos);
    CHECK(field(a.out, "evaluations") == 2 + 4 * field(a.out, "generations"));

    const auto rls = invoke({"run", "--n", "20", "--rls", "--seed", "3"});
    CHECK(rls.code == 0);
    CHECK(rls.out.find("algorithm=rls") != std::string::npos);
}

TEST_CASE("run writes a trace") {
    const auto dir = scratch("trace");
    const auto r = invoke({"run", "--n", "12", "--gamma", "3", "--mu", "4", "--lambda", "4", "--trace",
                           (dir / "t.csv").string()});
    CHECK(r.code == 0);
    std::ifstream in(dir / "t.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "generation,k,alpha,alpha_star,beta1,beta_minus1,best_fitness,best_aux,config_hash");
}

TEST_CASE("errors exit nonzero") {
    CHECK(invoke({}).code != 0);
    CHECK(invoke({"frobnicate"}).code != 0);
    CHECK(invoke({"run", "--lambda", "3"}).code != 0);
    CHECK(invoke({"fit", "--summary", "/nonexistent.csv"}).code != 0);

    const auto dir = scratch("badconfig");
    std::ofstream(dir / "c.json") << R"({"n":[8],"mu":[2],"lambda":[2],"colour":"blue"})";
    const auto bad = invoke({"sweep", "--config", (dir / "c.json").string()});
    CHECK(bad.code != 0);
    CHECK(bad.err.find("colour") != std::string::npos);
    std::ofstream(dir / "d.json") << "{not json";
    CHECK(invoke({"sweep", "--config", (dir / "d.json").string()}).code != 0);
}

TEST_CASE("verify-bounds passes and writes tables") {
    const auto dir = scratch("bounds");
    const auto r = invoke({"verify-bounds", "--out", dir.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("checks passed") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(fs::exists(dir / "bound_sweep.csv"));
    CHECK(fs::exists(dir / "level_coefficients.csv"));
}

TEST_CASE("verify-probabilities passes") {
    const auto r = invoke({"verify-probabilities", "--trials", "20000"});
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("probe reports the counterexample and the region") {
    const auto dir = scratch("probe");
    const auto r = invoke({"probe-appendix-a", "--lambda", "10", "--p-sel", "0.1", "--phi", "0.2", "--m", "5", "--out",
                           dir.string()});
    CHECK(r.code == 0);
    CHECK(field(r.out, "p_e") == doctest::Approx(0.1));
    CHECK(field(r.out, "p_e_star") == doctest::Approx(0.0922368).epsilon(1e-5));
    std::ifstream in(dir / "probe_region.csv");
    std::string line;
    std::size_t rows = 0;
    std::getline(in, line);
    CHECK(line.find("p_e_star") != std::string::npos);
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 432);
}

TEST_CASE("compare-plateau") {
    const auto r = invoke({"compare-plateau", "--n", "12", "--gamma", "3", "--mu", "4", "--lambda", "4", "--trials", "20000"});
    CHECK(r.code == 0);
    CHECK(field(r.out, "p_f1") > field(r.out, "p_f2"));
}

TEST_CASE("sweep then fit") {
    const auto dir = scratch("sweep");
    std::ofstream(dir / "c.json") << R"({"n":[32,64,128,256],"mu":[2],"lambda":[2],"seeds":100,"base_seed":1})";
    const auto s = invoke({"sweep", "--config", (dir / "c.json").string(), "--out", (dir / "out").string()});
    REQUIRE(s.code == 0);
    const auto f = invoke({"fit", "--summary", (dir / "out" / "summary.csv").string()});
    CHECK(f.code == 0);
    CHECK(field(f.out, "r_squared") >= 0.98);

    const auto e = invoke({"fit", "--summary", (dir / "out" / "summary.csv").string(), "--unit", "evaluations"});
    CHECK(field(e.out, "a") == doctest::Approx(4.0 * field(f.out, "a")).epsilon(1e-8));

    const auto p = invoke({"plot-data", "--out", (dir / "plots").string(), "--n", "32", "--summary",
                           (dir / "out" / "summary.csv").string()});
    CHECK(p.code == 0);
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(dir / "plots")) {
        ++files;
        std::ifstream in(entry.path());
        std::string line;
        std::getline(in, line);
        CHECK(line.rfind("# ", 0) == 0);
        std::size_t rows = 0;
        while (std::getline(in, line)) {
            std::istringstream ss(line);
            double x = 0, y = 0;
            std::string extra;
            CHECK(static_cast<bool>(ss >> x >> y));
            CHECK_FALSE(static_cast<bool>(ss >> extra));
            ++rows;
        }
        CHECK(rows > 0);
    }
    CHECK(files == 7);
}
