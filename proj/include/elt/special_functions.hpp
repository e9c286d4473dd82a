#pragma once

#include <cstdint>

namespace elt {

/// psi_0 (digamma), psi_1 (trigamma) and psi_2 for x > 0.
///
/// Shifts x upward with the recurrence until x >= 12, then sums the
/// Bernoulli asymptotic series. Absolute error is below 1e-12 on (0, 1e6].
double polygamma(int order, double x);

inline double digamma(double x) { return polygamma(0, x); }
inline double trigamma(double x) { return polygamma(1, x); }

/// H(m) = sum_{j=1..m} 1/j, summed smallest term first.
double harmonic(std::uint64_t m);

}  // namespace elt
