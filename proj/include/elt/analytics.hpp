#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace elt {

// Swap-success probabilities of 1-Bit-Swap at best fitness level k on
// OneMax of length n, one per parent-pair type:
//   phi1  <alpha, beta1>     phi2  <beta1, beta1>
//   phi3  <alpha, beta-1>    phi4  <beta1, beta-1>
struct SwapProbabilities {
    double phi1 = 0, phi2 = 0, phi3 = 0, phi4 = 0;
};

/// phi_j(k, n) for j in 1..4 and 1 <= k <= n. phi3 and phi4 are 0 for k < 2 (no
/// beta-1 parent exists there).
double phi(int j, long k, long n);
SwapProbabilities swap_probabilities(long k, long n);

/// First-order probabilities of the four success events for one generation.
/// Each term is the pool-pair count times one pair's success probability,
/// so for large lambda the values are expected counts rather than
/// probabilities and may exceed 1.
struct EventProbabilities {
    double p_e1 = 0, p_e2 = 0, p_e3 = 0, p_e4 = 0;
    double s = 0;
};

EventProbabilities event_probs(std::size_t alpha, std::size_t beta1, std::size_t mu, std::size_t lambda, long k,
                               long n);

/// sum_{a=1..m} 1 / p(a) for a monic polynomial p, evaluated directly, with
/// the polygamma closed form attached when p is a perfect power (a + shift)^d.
struct PolynomialLevelSum {
    std::vector<double> coefficients;  // constant term first; the leading 1 is implicit
    std::uint64_t upper = 0;
    double direct = 0;
    std::optional<double> closed_form;
    std::optional<double> shift;
};

/// sum_{a=1..m} 1/(a^2 + b1 a + b0). Throws std::domain_error if the
/// polynomial is not positive at every a in [1, m].
PolynomialLevelSum quadratic_level_sum(double b0, double b1, std::uint64_t m);

/// sum_{a=1..m} 1/(a^3 + b2 a^2 + b1 a + b0). Same domain rule.
PolynomialLevelSum cubic_level_sum(double b0, double b1, double b2, std::uint64_t m);

enum class DeltaRegime { Reciprocal, PowerLaw };

/// Parameters of the runtime bounds. delta is the elite fraction to reach
/// before an improvement is taken as near certain: delta = c / mu
/// (Reciprocal) or delta = mu^(-eps1) (PowerLaw).
struct BoundParams {
    double mu = 1;
    double lambda = 2;
    long n = 0;
    double delta = 1;
    DeltaRegime regime = DeltaRegime::Reciprocal;
    double c = 1;
    double eps1 = 0.5;

    static BoundParams reciprocal(double mu, double lambda, long n, double c);
    static BoundParams power_law(double mu, double lambda, long n, double eps1);

    /// 0 < delta <= 1, delta * mu >= 1, lambda even and positive.
    void validate() const;
};

/// Bound on generations spent at one fitness level, exact finite sum
/// alongside the asymptotic approximation.
struct RuntimeBound {
    double exact = 0;             // generations
    double partial_fractions = 0; // same sum via the partial-fraction split (simple bound only)
    double asymptotic = 0;        // generations
    std::string label;
    long k_first = 0, k_last = 0;

    double exact_evaluations(double lambda) const { return 2.0 * lambda * exact; }
    double asymptotic_evaluations(double lambda) const { return 2.0 * lambda * asymptotic; }
    double ratio() const { return asymptotic / exact; }
};

/// 2 mu^3 delta / (lambda phi2(k)); requires 2 <= k <= n.
double simple_traverse_bound(const BoundParams& params, long k);

/// (mu^3 n^2 delta / lambda) sum_{k=2..n-2} 1/((k-1)(n-k+1)); asymptotic
/// (delta mu^3 n / lambda) ln(n-1). Requires n >= 5.
RuntimeBound simple_runtime_bound(const BoundParams& params);

/// 2 delta mu^3 / (lambda (2 mu phi3(k) + phi4(k))); requires 3 <= k <= n-3.
double refined_traverse_bound(const BoundParams& params, long k);

/// (2 delta mu^3 / lambda) sum_{k=3..n-1} 1/(2 mu phi3 + phi4); asymptotic
/// 2 delta mu^2 n ln(n-3) / lambda. Requires n >= 7.
RuntimeBound refined_runtime_bound(const BoundParams& params);

/// One summand of the refined sum against its claimed termwise majorant
/// (n^2 / mu) / (k^2 - 4(n+2)k + 2n(n+1)).
struct TermwiseComparison {
    long k = 0;
    double term = 0;
    double majorant = 0;
    bool holds = false;  // majorant is positive and >= term
};

std::vector<TermwiseComparison> refined_termwise_comparison(const BoundParams& params);

/// Monic level-sum coefficients derived from (mu, phi) and the leading
/// factor divided out. The coefficients can be negative, in which case the
/// level sum may leave its positivity domain.
struct QuadraticLevelCoefficients {
    double leading = 0;  // phi2 - 2 mu phi1
    double b0 = 0, b1 = 0;
};
struct CubicLevelCoefficients {
    double leading = 0;  // b3 / lambda = 2 (mu phi3 - phi4)
    double b0 = 0, b1 = 0, b2 = 0;  // b'_0, b'_1, b'_2
};

QuadraticLevelCoefficients simple_level_coefficients(double mu, long k, long n);
CubicLevelCoefficients refined_level_coefficients(double mu, long k, long n);

/// Row of a bound sweep.
struct BoundSweepRow {
    long n = 0;
    double mu = 0, lambda = 0, delta = 0;
    std::string bound;  // "simple" or "refined"
    long k_first = 0, k_last = 0;
    double exact_sum = 0, asymptotic_value = 0, ratio = 0;
};

std::vector<BoundSweepRow> bound_sweep(const std::vector<long>& ns, const std::vector<double>& mus,
                                       const std::vector<double>& lambdas, double c);

}  // namespace elt
