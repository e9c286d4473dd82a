#include "elt/special_functions.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace elt {

namespace {

constexpr double kShift = 12.0;

// B_2, B_4, ..., B_16
constexpr std::array<double, 8> kBernoulli = {
    1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0,
};

double digamma_tail(double x) {
    const double inv2 = 1.0 / (x * x);
    double term = inv2;
    double series = 0.0;
    for (std::size_t i = 0; i < kBernoulli.size(); ++i) {
        const double two_k = 2.0 * static_cast<double>(i + 1);
        series += kBernoulli[i] / two_k * term;
        term *= inv2;
    }
    return std::log(x) - 0.5 / x - series;
}

double trigamma_tail(double x) {
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double term = inv2 * inv;  // x^-(2k+1) for k = 1
    double series = 0.0;
    for (const double b : kBernoulli) {
        series += b * term;
        term *= inv2;
    }
    return inv + 0.5 * inv2 + series;
}

double tetragamma_tail(double x) {
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double term = inv2 * inv2;  // x^-(2k+2) for k = 1
    double series = 0.0;
    for (std::size_t i = 0; i < kBernoulli.size(); ++i) {
        const double two_k_plus_1 = 2.0 * static_cast<double>(i + 1) + 1.0;
        series += two_k_plus_1 * kBernoulli[i] * term;
        term *= inv2;
    }
    return -inv2 - inv2 * inv - series;
}

}  // namespace

double polygamma(int order, double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw std::domain_error("polygamma: argument must be positive and finite");
    if (order < 0 || order > 2) throw std::invalid_argument("polygamma: order must be 0, 1 or 2");

    // psi_m(x) = psi_m(x + 1) - (-1)^m m! / x^(m+1)
    double shift = 0.0;
    while (x < kShift) {
        switch (order) {
            case 0: shift -= 1.0 / x; break;
            case 1: shift += 1.0 / (x * x); break;
            default: shift -= 2.0 / (x * x * x); break;
        }
        x += 1.0;
    }
    switch (order) {
        case 0: return shift + digamma_tail(x);
        case 1: return shift + trigamma_tail(x);
        default: return shift + tetragamma_tail(x);
    }
}

double harmonic(std::uint64_t m) {
    double sum = 0.0;
    for (std::uint64_t j = m; j >= 1; --j) sum += 1.0 / static_cast<double>(j);
    return sum;
}

}  // namespace elt
