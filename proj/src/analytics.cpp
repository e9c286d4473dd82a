#include "elt/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "elt/special_functions.hpp"

namespace elt {

namespace {

bool close_to(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)}); }

void require_positive(double value, double at) {
    if (!(value > 0.0)) {
        std::ostringstream msg;
        msg << "level sum: polynomial is not positive at a = " << at;
        throw std::domain_error(msg.str());
    }
}

double refined_term(double mu, long k, long n) {
    const auto p = swap_probabilities(k, n);
    return 1.0 / (2.0 * mu * p.phi3 + p.phi4);
}

}  // namespace

double phi(int j, long k, long n) {
    if (n < 1 || k < 1 || k > n) throw std::domain_error("phi: fitness level k must lie in [1, n]");
    const double kk = static_cast<double>(k);
    const double nn = static_cast<double>(n);
    const double n2 = nn * nn;
    switch (j) {
        case 1: return kk * (nn - kk + 1.0) / n2;
        case 2: return 2.0 * (kk - 1.0) * (nn - kk + 1.0) / n2;
        case 3: return k < 2 ? 0.0 : (kk * (kk - 2.0) + (nn - kk) * (nn - kk + 2.0)) / n2;
        case 4: return k < 2 ? 0.0 : (nn - kk + 1.0) * (kk - 2.0) / n2;
        default: throw std::invalid_argument("phi: index must be 1..4");
    }
}

SwapProbabilities swap_probabilities(long k, long n) {
    return {phi(1, k, n), phi(2, k, n), phi(3, k, n), phi(4, k, n)};
}

EventProbabilities event_probs(std::size_t alpha, std::size_t beta1, std::size_t mu, std::size_t lambda, long k,
                               long n) {
    if (alpha < 1 || alpha + beta1 > mu) throw std::domain_error("event_probs: need 1 <= alpha and alpha + beta1 <= mu");
    if (lambda == 0 || lambda % 2 != 0) throw std::domain_error("event_probs: lambda must be even and positive");
    const auto p = swap_probabilities(k, n);
    const double a = static_cast<double>(alpha) / static_cast<double>(mu);
    const double b = static_cast<double>(beta1) / static_cast<double>(mu);
    const double pairs = static_cast<double>(lambda) / 2.0;
    const double not_elite = static_cast<double>(mu - alpha) / static_cast<double>(mu);
    const double low = static_cast<double>(mu - alpha - beta1) / static_cast<double>(mu);  // share of beta-1 members

    EventProbabilities e;
    e.p_e1 = 2.0 * pairs * p.phi1 * a * b * not_elite;
    e.p_e2 = pairs * p.phi2 * (b * not_elite) * (b * not_elite);
    e.p_e3 = 2.0 * pairs * a * low * low * p.phi3;
    e.p_e4 = 2.0 * pairs * b * not_elite * low * low * p.phi4;
    e.s = e.p_e1 + e.p_e2 + e.p_e3 + e.p_e4;
    return e;
}

PolynomialLevelSum quadratic_level_sum(double b0, double b1, std::uint64_t m) {
    PolynomialLevelSum out;
    out.coefficients = {b0, b1};
    out.upper = m;
    for (std::uint64_t i = m; i >= 1; --i) {
        const double a = static_cast<double>(i);
        const double value = a * a + b1 * a + b0;
        require_positive(value, a);
        out.direct += 1.0 / value;
    }
    const double r = b1 / 2.0;
    if (close_to(b1 * b1, 4.0 * b0) && r > -1.0) {
        out.shift = r;
        out.closed_form = m == 0 ? 0.0 : trigamma(r + 1.0) - trigamma(r + static_cast<double>(m) + 1.0);
    }
    return out;
}

PolynomialLevelSum cubic_level_sum(double b0, double b1, double b2, std::uint64_t m) {
    PolynomialLevelSum out;
    out.coefficients = {b0, b1, b2};
    out.upper = m;
    for (std::uint64_t i = m; i >= 1; --i) {
        const double a = static_cast<double>(i);
        const double value = ((a + b2) * a + b1) * a + b0;
        require_positive(value, a);
        out.direct += 1.0 / value;
    }
    const double rho = b2 / 3.0;
    if (close_to(b1, 3.0 * rho * rho) && close_to(b0, rho * rho * rho) && rho > -1.0) {
        out.shift = rho;
        out.closed_form =
            m == 0 ? 0.0 : (polygamma(2, rho + static_cast<double>(m) + 1.0) - polygamma(2, rho + 1.0)) / 2.0;
    }
    return out;
}

BoundParams BoundParams::reciprocal(double mu, double lambda, long n, double c) {
    BoundParams p;
    p.mu = mu;
    p.lambda = lambda;
    p.n = n;
    p.regime = DeltaRegime::Reciprocal;
    p.c = c;
    p.delta = c / mu;
    return p;
}

BoundParams BoundParams::power_law(double mu, double lambda, long n, double eps1) {
    BoundParams p;
    p.mu = mu;
    p.lambda = lambda;
    p.n = n;
    p.regime = DeltaRegime::PowerLaw;
    p.eps1 = eps1;
    p.delta = std::pow(mu, -eps1);
    return p;
}

void BoundParams::validate() const {
    if (!(delta > 0.0 && delta <= 1.0)) throw std::domain_error("bound params: delta must lie in (0, 1]");
    if (delta * mu < 1.0 - 1e-12) throw std::domain_error("bound params: delta * mu must be at least 1");
    if (!(lambda > 0.0) || std::fmod(lambda, 2.0) != 0.0) throw std::domain_error("bound params: lambda must be even");
}

double simple_traverse_bound(const BoundParams& params, long k) {
    params.validate();
    if (k < 2 || k > params.n) throw std::domain_error("simple_traverse_bound: phi2(k) vanishes outside [2, n]");
    return 2.0 * params.mu * params.mu * params.mu * params.delta / (params.lambda * phi(2, k, params.n));
}

RuntimeBound simple_runtime_bound(const BoundParams& params) {
    params.validate();
    const long n = params.n;
    if (n < 5) throw std::domain_error("simple_runtime_bound: needs n >= 5");
    const double nn = static_cast<double>(n);
    const double front = params.mu * params.mu * params.mu * nn * nn * params.delta / params.lambda;

    double direct = 0.0, left = 0.0, right = 0.0;
    for (long k = 2; k <= n - 2; ++k) {
        const double kk = static_cast<double>(k);
        direct += 1.0 / ((kk - 1.0) * (nn - kk + 1.0));
        left += 1.0 / (kk - 1.0);
        right += 1.0 / (nn - kk + 1.0);
    }

    RuntimeBound out;
    out.k_first = 2;
    out.k_last = n - 2;
    out.exact = front * direct;
    out.partial_fractions = front * (left + right) / nn;
    out.asymptotic = params.delta * params.mu * params.mu * params.mu * nn / params.lambda * std::log(nn - 1.0);
    if (params.regime == DeltaRegime::Reciprocal) {
        out.label = "O(mu n log n)";
    } else {
        std::ostringstream label;
        label << "O(mu^(1+" << 1.0 - params.eps1 << ") n log n)";
        out.label = label.str();
    }
    return out;
}

double refined_traverse_bound(const BoundParams& params, long k) {
    params.validate();
    if (k < 3 || k > params.n - 3) throw std::domain_error("refined_traverse_bound: k must lie in [3, n-3]");
    return 2.0 * params.delta * params.mu * params.mu * params.mu / params.lambda * refined_term(params.mu, k, params.n);
}

RuntimeBound refined_runtime_bound(const BoundParams& params) {
    params.validate();
    const long n = params.n;
    if (n < 7) throw std::domain_error("refined_runtime_bound: needs n >= 7");
    const double nn = static_cast<double>(n);
    double sum = 0.0;
    for (long k = 3; k <= n - 1; ++k) sum += refined_term(params.mu, k, n);

    RuntimeBound out;
    out.k_first = 3;
    out.k_last = n - 1;
    out.exact = 2.0 * params.delta * params.mu * params.mu * params.mu / params.lambda * sum;
    out.asymptotic = 2.0 * params.delta * params.mu * params.mu * nn * std::log(nn - 3.0) / params.lambda;
    if (params.regime == DeltaRegime::Reciprocal) {
        out.label = "c mu n log n / lambda - O(mu n / lambda)";
    } else {
        std::ostringstream label;
        label << "c mu^(1+" << 1.0 - params.eps1 << ") n log n / lambda";
        out.label = label.str();
    }
    return out;
}

std::vector<TermwiseComparison> refined_termwise_comparison(const BoundParams& params) {
    const long n = params.n;
    const double nn = static_cast<double>(n);
    std::vector<TermwiseComparison> rows;
    for (long k = 3; k <= n - 1; ++k) {
        const double kk = static_cast<double>(k);
        const double quad = kk * kk - 4.0 * (nn + 2.0) * kk + 2.0 * nn * (nn + 1.0);
        TermwiseComparison row;
        row.k = k;
        row.term = refined_term(params.mu, k, n);
        row.majorant = quad == 0.0 ? INFINITY : nn * nn / params.mu / quad;
        row.holds = row.majorant > 0.0 && row.term <= row.majorant;
        rows.push_back(row);
    }
    return rows;
}

QuadraticLevelCoefficients simple_level_coefficients(double mu, long k, long n) {
    const auto p = swap_probabilities(k, n);
    QuadraticLevelCoefficients q;
    q.leading = p.phi2 - 2.0 * mu * p.phi1;
    q.b0 = mu * mu * p.phi2 / q.leading;
    q.b1 = 2.0 * mu * (mu * p.phi1 - p.phi2) / q.leading;
    return q;
}

CubicLevelCoefficients refined_level_coefficients(double mu, long k, long n) {
    const auto p = swap_probabilities(k, n);
    CubicLevelCoefficients c;
    c.leading = 2.0 * (mu * p.phi3 - p.phi4);
    c.b2 = (p.phi2 - 4.0 * mu * mu * p.phi3 - 2.0 * mu * p.phi1 - 6.0 * mu * p.phi4) / c.leading;
    c.b1 = 2.0 * mu * (mu * p.phi1 + mu * mu * p.phi3 - 3.0 * mu * p.phi4 - p.phi2) / c.leading;
    c.b0 = mu * mu * (2.0 * mu * p.phi4 + p.phi2) / c.leading;
    return c;
}

std::vector<BoundSweepRow> bound_sweep(const std::vector<long>& ns, const std::vector<double>& mus,
                                       const std::vector<double>& lambdas, double c) {
    std::vector<BoundSweepRow> rows;
    for (const long n : ns)
        for (const double mu : mus)
            for (const double lambda : lambdas) {
                const auto params = BoundParams::reciprocal(mu, lambda, n, c);
                const auto simple = simple_runtime_bound(params);
                const auto refined = refined_runtime_bound(params);
                for (const auto* b : {&simple, &refined}) {
                    BoundSweepRow row;
                    row.n = n;
                    row.mu = mu;
                    row.lambda = lambda;
                    row.delta = params.delta;
                    row.bound = b == &simple ? "simple" : "refined";
                    row.k_first = b->k_first;
                    row.k_last = b->k_last;
                    row.exact_sum = b->exact;
                    row.asymptotic_value = b->asymptotic;
                    row.ratio = b->ratio();
                    rows.push_back(row);
                }
            }
    return rows;
}

}  // namespace elt
