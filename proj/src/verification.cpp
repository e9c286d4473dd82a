#include "elt/verification.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "elt/analytics.hpp"
#include "elt/special_functions.hpp"

namespace elt {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

CheckResult check(std::string name, bool ok, std::string detail = {}) {
    return {std::move(name), ok, std::move(detail)};
}

}  // namespace

std::vector<ProbabilityFixture> small_fixtures() {
    std::vector<ProbabilityFixture> fixtures;
    fixtures.push_back({"two-bit-complements", PopulationSpec::from_strings(FitnessSpec::one_max(2), {"10", "01"}), 2});
    fixtures.push_back({"all-optimal", PopulationSpec::from_strings(FitnessSpec::one_max(4), {"1111", "1111"}), 2});

    struct Counts {
        std::size_t n;
        long k;
        std::size_t alpha, beta1, beta_minus1, lambda;
    };
    const Counts counts[] = {
        {4, 2, 1, 1, 0, 2}, {6, 3, 1, 1, 1, 2}, {6, 3, 1, 1, 1, 4}, {8, 4, 1, 2, 1, 4},
        {8, 5, 2, 1, 1, 4}, {8, 6, 1, 0, 3, 2}, {8, 4, 4, 0, 0, 4}, {5, 3, 2, 2, 0, 2},
    };
    for (const auto& c : counts) {
        std::ostringstream name;
        name << "counts(n=" << c.n << ",k=" << c.k << ",a=" << c.alpha << ",b1=" << c.beta1
             << ",b-1=" << c.beta_minus1 << ",lambda=" << c.lambda << ")";
        fixtures.push_back({name.str(), PopulationSpec::from_counts(c.n, c.k, c.alpha, c.beta1, c.beta_minus1),
                            c.lambda, true, c.beta1});
    }

    RandomSource rng(20240601);
    for (const std::size_t mu : {2, 3, 4})
        for (const std::size_t n : {3, 6, 8})
            for (const std::size_t lambda : {2, 4}) {
                PopulationSpec spec{FitnessSpec::one_max(n), {}};
                for (std::size_t i = 0; i < mu; ++i) spec.genomes.push_back(random_genome(n, rng));
                std::ostringstream name;
                name << "random(mu=" << mu << ",n=" << n << ",lambda=" << lambda << ")";
                fixtures.push_back({name.str(), std::move(spec), lambda});
            }
    fixtures.push_back({"plateau(n=6,gamma=2)",
                        PopulationSpec::from_strings(FitnessSpec::plateau(6, 2), {"111000", "110100", "101010"}), 4});
    return fixtures;
}

std::vector<CheckResult> verify_bounds_suite(std::uint64_t seed) {
    std::vector<CheckResult> out;
    RandomSource rng(seed);

    out.push_back(check("phi2(2,10) = 0.18", std::abs(phi(2, 2, 10) - 0.18) <= 1e-15, fmt(phi(2, 2, 10))));
    out.push_back(check("phi3(3,10) = 0.66", std::abs(phi(3, 3, 10) - 0.66) <= 1e-15, fmt(phi(3, 3, 10))));
    out.push_back(check("phi4(3,10) = 0.08", std::abs(phi(4, 3, 10) - 0.08) <= 1e-15, fmt(phi(4, 3, 10))));

    bool vanish = true, in_range = true;
    for (long n = 2; n <= 128; ++n) {
        vanish = vanish && phi(2, 1, n) == 0.0 && phi(4, 2, n) == 0.0;
        for (long k = 1; k <= n; ++k)
            for (int j = 1; j <= 4; ++j) {
                const double v = phi(j, k, n);
                in_range = in_range && v >= 0.0 && v <= 1.0;
            }
    }
    out.push_back(check("phi2(1,n) = phi4(2,n) = 0 for 2 <= n <= 128", vanish));
    out.push_back(check("0 <= phi_j(k,n) <= 1 for 1 <= k <= n <= 128", in_range));

    double worst_sq = 0.0, worst_cube = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double r = 10.0 * (1.0 - rng.unit());  // (0, 10]
        const auto m = 1 + rng.below(1000);
        const auto q = quadratic_level_sum(r * r, 2.0 * r, m);
        worst_sq = std::max(worst_sq, q.closed_form ? std::abs(*q.closed_form - q.direct) : INFINITY);
        const double rho = 10.0 * (1.0 - rng.unit());
        const auto c = cubic_level_sum(rho * rho * rho, 3.0 * rho * rho, 3.0 * rho, m);
        worst_cube = std::max(worst_cube, c.closed_form ? std::abs(*c.closed_form - c.direct) : INFINITY);
    }
    out.push_back(check("trigamma closed form = direct sum (100 perfect squares)", worst_sq <= 1e-9, "max error " + fmt(worst_sq)));
    out.push_back(check("tetragamma closed form = direct sum (100 perfect cubes)", worst_cube <= 1e-9, "max error " + fmt(worst_cube)));

    double worst_pf = 0.0;
    for (long n = 5; n <= 512; ++n) {
        const auto b = simple_runtime_bound(BoundParams::reciprocal(2, 2, n, 1));
        worst_pf = std::max(worst_pf, std::abs(b.exact - b.partial_fractions) / b.exact);
    }
    out.push_back(check("partial-fraction identity for 5 <= n <= 512", worst_pf <= 1e-12, "max relative error " + fmt(worst_pf)));

    const double basel = std::numbers::pi * std::numbers::pi / 6.0;
    out.push_back(check("trigamma(1) = pi^2/6", std::abs(trigamma(1.0) - basel) <= 1e-10, fmt(trigamma(1.0))));
    double worst_rec = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double x = 0.01 + 50.0 * rng.unit();
        worst_rec = std::max(worst_rec, std::abs(digamma(x + 1.0) - digamma(x) - 1.0 / x));
    }
    out.push_back(check("digamma(x+1) - digamma(x) = 1/x (50 points)", worst_rec <= 1e-10, "max error " + fmt(worst_rec)));
    const double euler = harmonic(1000000) - std::log(1e6);
    out.push_back(check("H(1e6) - ln(1e6) = 0.577216", std::abs(euler - 0.577216) <= 1e-5, fmt(euler)));

    bool ordered = true;
    double max_ratio = 0.0;
    for (const long n : {16L, 32L, 64L, 128L, 256L})
        for (const double mu : {2.0, 4.0, 8.0, 16.0})
            for (const double lambda : {2.0, 4.0, 8.0}) {
                const auto params = BoundParams::reciprocal(mu, lambda, n, 1.0);
                const double ratio = refined_runtime_bound(params).exact / simple_runtime_bound(params).exact;
                ordered = ordered && ratio <= 1.0;
                max_ratio = std::max(max_ratio, ratio);
            }
    out.push_back(check("refined bound <= simple bound on the sweep grid", ordered, "max refined/simple " + fmt(max_ratio)));

    bool events_ok = true;
    for (std::size_t mu = 2; mu <= 8; ++mu)
        for (std::size_t alpha = 1; alpha <= mu; ++alpha)
            for (std::size_t beta1 = 0; alpha + beta1 <= mu; ++beta1)
                for (const std::size_t lambda : {2, 4, 6})
                    for (long k = 2; k <= 10; ++k) {
                        const auto e = event_probs(alpha, beta1, mu, lambda, k, 10);
                        for (const double p : {e.p_e1, e.p_e2, e.p_e3, e.p_e4}) events_ok = events_ok && p >= 0.0 && p <= 1.0;
                        if (alpha == mu) events_ok = events_ok && e.p_e1 == 0.0 && e.p_e2 == 0.0;
                        if (alpha + beta1 == mu) events_ok = events_ok && e.p_e3 == 0.0 && e.p_e4 == 0.0;
                    }
    out.push_back(check("event probabilities in [0,1] and vanish on empty pair types (lambda <= 6)", events_ok));
    return out;
}

std::vector<CheckResult> verify_probabilities_suite(std::uint64_t trials, std::uint64_t seed, int workers) {
    std::vector<CheckResult> out;
    RandomSource rng(seed);
    for (const auto& f : small_fixtures()) {
        const auto exact = exact_generation_success(f.population, f.lambda);
        double total = 0.0;
        for (const double p : exact.elite_count_distribution) total += p;
        out.push_back(check(f.name + ": distribution sums to 1", std::abs(total - 1.0) <= 1e-12, fmt(total)));

        auto stream = rng.derive(out.size());
        const auto mc = monte_carlo_success(f.population, f.lambda, trials, stream, workers);
        const bool ok = agrees(mc.exactly_one_new_elite, exact.exactly_one_new_elite) &&
                        agrees(mc.at_least_one_new_elite, exact.at_least_one_new_elite) &&
                        agrees(mc.improvement, exact.improvement);
        out.push_back(check(f.name + ": exact vs Monte-Carlo within 4 stderr", ok,
                            "at_least_one exact " + fmt(exact.at_least_one_new_elite) + " mc " +
                                fmt(mc.at_least_one_new_elite.p())));

        if (f.canonical) {
            const auto e = event_probs(exact.alpha, f.beta1, exact.mu, f.lambda, exact.k,
                                       static_cast<long>(f.population.fitness.n));
            const bool same_sign = (e.s > 0.0) == (exact.exactly_one_new_elite > 0.0);
            out.push_back(check(f.name + ": analytic S and exact P(one new elite) agree in sign", same_sign,
                                "S " + fmt(e.s) + " exact " + fmt(exact.exactly_one_new_elite)));
        }
    }
    return out;
}

}  // namespace elt
