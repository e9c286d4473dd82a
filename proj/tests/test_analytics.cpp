#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "elt/analytics.hpp"
#include "elt/random.hpp"
#include "elt/special_functions.hpp"

using namespace elt;

TEST_CASE("phi examples") {
    CHECK(phi(2, 2, 10) == doctest::Approx(0.18).epsilon(1e-15));
    CHECK(phi(4, 2, 10) == 0.0);
    CHECK(phi(3, 3, 10) == doctest::Approx(0.66).epsilon(1e-15));
    CHECK(phi(4, 3, 10) == doctest::Approx(0.08).epsilon(1e-15));
    CHECK(phi(1, 5, 10) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(phi(2, 1, 10) == 0.0);
    CHECK(phi(4, 1, 10) == 0.0);
    CHECK(phi(3, 1, 10) == 0.0);
    CHECK_THROWS_AS(phi(2, 0, 10), std::domain_error);
    CHECK_THROWS_AS(phi(2, 11, 10), std::domain_error);
    CHECK_THROWS_AS(phi(5, 3, 10), std::invalid_argument);
}

TEST_CASE("phi stays in [0, 1]") {
    for (long n = 1; n <= 60; ++n)
        for (long k = 1; k <= n; ++k)
            for (int j = 1; j <= 4; ++j) {
                const double v = phi(j, k, n);
                CHECK(v >= 0.0);
                CHECK(v <= 1.0);
            }
    const auto s = swap_probabilities(4, 9);
    CHECK(s.phi3 == phi(3, 4, 9));
}

TEST_CASE("event_probs examples") {
    const auto e = event_probs(1, 1, 4, 4, 5, 10);
    CHECK(e.p_e1 == doctest::Approx(0.05625).epsilon(1e-14));
    CHECK(e.p_e2 == doctest::Approx(0.03375).epsilon(1e-14));
    CHECK(e.s == doctest::Approx(e.p_e1 + e.p_e2 + e.p_e3 + e.p_e4).epsilon(1e-15));

    const auto full = event_probs(4, 0, 4, 4, 5, 10);
    CHECK(full.p_e1 == 0.0);
    CHECK(full.p_e2 == 0.0);
    CHECK(full.p_e3 == 0.0);
    CHECK(full.p_e4 == 0.0);

    const auto saturated = event_probs(2, 2, 4, 4, 5, 10);
    CHECK(saturated.p_e3 == 0.0);
    CHECK(saturated.p_e4 == 0.0);
    CHECK(saturated.p_e1 > 0.0);

    CHECK_THROWS_AS(event_probs(0, 1, 4, 4, 5, 10), std::domain_error);
    CHECK_THROWS_AS(event_probs(3, 2, 4, 4, 5, 10), std::domain_error);
    CHECK_THROWS_AS(event_probs(1, 1, 4, 3, 5, 10), std::domain_error);
}

TEST_CASE("event_probs are probabilities for small pools") {
    for (std::size_t mu = 2; mu <= 8; ++mu)
        for (std::size_t alpha = 1; alpha <= mu; ++alpha)
            for (std::size_t beta1 = 0; alpha + beta1 <= mu; ++beta1)
                for (std::size_t lambda = 2; lambda <= 6; lambda += 2)
                    for (long k = 2; k <= 12; ++k) {
                        const auto e = event_probs(alpha, beta1, mu, lambda, k, 12);
                        for (const double p : {e.p_e1, e.p_e2, e.p_e3, e.p_e4}) {
                            CHECK(p >= 0.0);
                            CHECK(p <= 1.0);
                        }
                        if (beta1 == 0) {
                            CHECK(e.p_e1 == 0.0);
                            CHECK(e.p_e2 == 0.0);
                            CHECK(e.p_e4 == 0.0);
                        }
                    }
}

TEST_CASE("quadratic level sum examples") {
    const auto a = quadratic_level_sum(1, 2, 3);
    CHECK(a.direct == doctest::Approx(1.0 / 4 + 1.0 / 9 + 1.0 / 16).epsilon(1e-15));
    REQUIRE(a.closed_form.has_value());
    CHECK(std::abs(*a.closed_form - a.direct) <= 1e-12);
    CHECK(*a.shift == doctest::Approx(1.0));

    CHECK(quadratic_level_sum(1, 2, 0).direct == 0.0);
    CHECK(quadratic_level_sum(4, 4, 1).direct == doctest::Approx(1.0 / 9).epsilon(1e-15));

    // a^2 + a + 1 is no perfect square.
    const auto general = quadratic_level_sum(1, 1, 4);
    CHECK_FALSE(general.closed_form.has_value());
    CHECK(general.direct == doctest::Approx(1.0 / 3 + 1.0 / 7 + 1.0 / 13 + 1.0 / 21).epsilon(1e-15));

    // a^2 + a - 2 vanishes at a = 1.
    CHECK_THROWS_AS(quadratic_level_sum(-2, 1, 3), std::domain_error);
    // (a - 2)^2 vanishes at a = 2.
    CHECK_THROWS_AS(quadratic_level_sum(4, -4, 3), std::domain_error);
}

TEST_CASE("cubic level sum examples") {
    const auto a = cubic_level_sum(1, 3, 3, 2);
    CHECK(a.direct == doctest::Approx(1.0 / 8 + 1.0 / 27).epsilon(1e-15));
    REQUIRE(a.closed_form.has_value());
    CHECK(std::abs(*a.closed_form - a.direct) <= 1e-12);

    CHECK(cubic_level_sum(1, 3, 3, 0).direct == 0.0);
    const auto zero = cubic_level_sum(0, 0, 0, 3);
    CHECK(zero.direct == doctest::Approx(1.0 + 1.0 / 8 + 1.0 / 27).epsilon(1e-15));
    REQUIRE(zero.closed_form.has_value());
    CHECK(std::abs(*zero.closed_form - zero.direct) <= 1e-12);

    CHECK_THROWS_AS(cubic_level_sum(-8, 12, -6, 3), std::domain_error);  // (a-2)^3
}

TEST_CASE("closed forms on random perfect powers") {
    RandomSource rng(2718);
    for (int i = 0; i < 100; ++i) {
        const double r = 10.0 * (1.0 - rng.unit());  // (0, 10]
        const auto m = 1 + rng.below(1000);
        const auto q = quadratic_level_sum(r * r, 2 * r, m);
        REQUIRE(q.closed_form.has_value());
        CHECK(std::abs(*q.closed_form - q.direct) <= 1e-9);
        CHECK(std::abs(trigamma(r + 1) - trigamma(r + double(m) + 1) - q.direct) <= 1e-9);

        const double rho = 10.0 * (1.0 - rng.unit());
        const auto c = cubic_level_sum(rho * rho * rho, 3 * rho * rho, 3 * rho, m);
        REQUIRE(c.closed_form.has_value());
        CHECK(std::abs(*c.closed_form - c.direct) <= 1e-9);
    }
}

TEST_CASE("simple traverse bound") {
    const auto p = BoundParams::reciprocal(4, 4, 10, 1);
    CHECK(p.delta == 0.25);
    CHECK(simple_traverse_bound(p, 2) == doctest::Approx(400.0 / 9).epsilon(1e-14));

    auto doubled = p;
    doubled.lambda = 8;
    for (long k = 2; k <= 10; ++k) CHECK(simple_traverse_bound(doubled, k) * 2 == doctest::Approx(simple_traverse_bound(p, k)).epsilon(1e-15));

    // mu = 1, delta = 1, lambda = 2, k = 2: 2 / (2 * 0.18).
    CHECK(simple_traverse_bound(BoundParams::reciprocal(1, 2, 10, 1), 2) == doctest::Approx(2.0 / 0.36).epsilon(1e-14));

    CHECK_THROWS_AS(simple_traverse_bound(p, 1), std::domain_error);
    CHECK_THROWS_AS(BoundParams::reciprocal(4, 3, 10, 1).validate(), std::domain_error);
    CHECK_THROWS_AS(BoundParams::reciprocal(4, 4, 10, 0.5).validate(), std::domain_error);
    CHECK_THROWS_AS(BoundParams::reciprocal(4, 4, 10, 5).validate(), std::domain_error);
}

TEST_CASE("simple runtime bound") {
    BoundParams p = BoundParams::reciprocal(2, 2, 6, 1);
    const auto b = simple_runtime_bound(p);
    CHECK(b.exact == doctest::Approx(72.0 * (0.2 + 0.125 + 1.0 / 9)).epsilon(1e-14));
    CHECK(b.k_first == 2);
    CHECK(b.k_last == 4);
    CHECK(b.label == "O(mu n log n)");
    CHECK(simple_runtime_bound(BoundParams::power_law(4, 2, 16, 0.5)).label.rfind("O(mu^(1+", 0) == 0);
    CHECK_THROWS_AS(simple_runtime_bound(BoundParams::reciprocal(2, 2, 4, 1)), std::domain_error);

    for (long n = 5; n <= 512; ++n) {
        const auto r = simple_runtime_bound(BoundParams::reciprocal(2, 2, n, 1));
        CHECK(std::abs(r.exact - r.partial_fractions) <= 1e-12 * r.exact);
    }

    double inner = 0;
    for (long k = 2; k <= 98; ++k) inner += 1.0 / double((k - 1) * (100 - k + 1));
    CHECK(std::abs(inner - 2 * std::log(99.0) / 100) <= 0.1 * (2 * std::log(99.0) / 100));
}

TEST_CASE("refined traverse bound") {
    const auto p = BoundParams::reciprocal(4, 4, 10, 1);
    CHECK(refined_traverse_bound(p, 3) == doctest::Approx(32.0 / (4 * (8 * 0.66 + 0.08))).epsilon(1e-14));
    CHECK_THROWS_AS(refined_traverse_bound(p, 2), std::domain_error);
    CHECK_THROWS_AS(refined_traverse_bound(p, 8), std::domain_error);

    BoundParams explicit_delta = p;
    explicit_delta.delta = 0.25;
    CHECK(refined_traverse_bound(explicit_delta, 4) == refined_traverse_bound(p, 4));

    // Larger 2 mu phi3 + phi4 gives a smaller bound.
    const auto wide = BoundParams::reciprocal(4, 4, 40, 1);
    for (long k = 3; k < 37; ++k) {
        const double dk = 2 * 4 * phi(3, k, 40) + phi(4, k, 40);
        const double dk1 = 2 * 4 * phi(3, k + 1, 40) + phi(4, k + 1, 40);
        if (dk < dk1) CHECK(refined_traverse_bound(wide, k) > refined_traverse_bound(wide, k + 1));
        if (dk > dk1) CHECK(refined_traverse_bound(wide, k) < refined_traverse_bound(wide, k + 1));
    }
}

TEST_CASE("refined runtime bound") {
    const auto p = BoundParams::reciprocal(4, 4, 64, 1);
    const auto r = refined_runtime_bound(p);
    CHECK(r.k_first == 3);
    CHECK(r.k_last == 63);

    double direct = 0;
    for (long k = 3; k <= 63; ++k) direct += 1.0 / (2 * 4 * phi(3, k, 64) + phi(4, k, 64));
    direct *= 2 * 0.25 * 64 / 4;
    CHECK(std::abs(r.exact - direct) <= 1e-12 * direct);
    CHECK(std::abs(r.exact - 93.87071931589) <= 1e-8);

    CHECK(r.asymptotic == doctest::Approx(2 * 0.25 * 16 * 64 * std::log(61.0) / 4).epsilon(1e-14));
    CHECK(r.exact <= r.asymptotic);
    // The asymptotic form overshoots the finite sum by more than 2x here.
    CHECK(r.ratio() > 2.0);
    CHECK(r.ratio() < 10.0);

    CHECK(r.exact_evaluations(4) == 8 * r.exact);
    CHECK(r.asymptotic_evaluations(4) == 8 * r.asymptotic);
    CHECK_THROWS_AS(refined_runtime_bound(BoundParams::reciprocal(4, 4, 6, 1)), std::domain_error);
}

TEST_CASE("termwise majorant holds where it is positive") {
    for (const long n : {16, 64, 200}) {
        const auto rows = refined_termwise_comparison(BoundParams::reciprocal(4, 4, n, 1));
        bool some_fail = false;
        for (const auto& row : rows) {
            const double q = double(row.k * row.k) - 4.0 * double(n + 2) * double(row.k) + 2.0 * double(n) * double(n + 1);
            if (q > 0) CHECK(row.holds);
            else CHECK_FALSE(row.holds);
            some_fail |= !row.holds;
        }
        CHECK(some_fail);
    }
}

TEST_CASE("refined bound does not exceed the simple bound on a grid") {
    for (const long n : {16, 32, 64, 128, 256})
        for (const double mu : {2.0, 4.0, 8.0, 16.0})
            for (const double lambda : {2.0, 4.0, 8.0}) {
                const auto p = BoundParams::reciprocal(mu, lambda, n, 1);
                CHECK(refined_runtime_bound(p).exact <= simple_runtime_bound(p).exact);
            }
    const auto rows = bound_sweep({16, 32}, {2, 4}, {2}, 1);
    CHECK(rows.size() == 8);
    for (const auto& row : rows) CHECK(row.ratio == doctest::Approx(row.asymptotic_value / row.exact_sum));
}

TEST_CASE("level coefficients") {
    const auto s = simple_level_coefficients(4, 5, 10);
    CHECK(s.leading == doctest::Approx(phi(2, 5, 10) - 8 * phi(1, 5, 10)));
    const auto c = refined_level_coefficients(4, 5, 10);
    CHECK(c.leading == doctest::Approx(2 * (4 * phi(3, 5, 10) - phi(4, 5, 10))));
}
