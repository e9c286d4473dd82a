#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "elt/oracle.hpp"

namespace elt {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Small one-generation fixtures (mu <= 4, n <= 8, lambda <= 4).
struct ProbabilityFixture {
    std::string name;
    PopulationSpec population;
    std::size_t lambda = 2;
    bool canonical = false;  // built by PopulationSpec::from_counts
    std::size_t beta1 = 0;   // partition counts of canonical fixtures
};

std::vector<ProbabilityFixture> small_fixtures();

/// Formula identities, level-sum closed forms, special functions and bound
/// orderings.
std::vector<CheckResult> verify_bounds_suite(std::uint64_t seed);

/// Exact enumeration against Monte-Carlo and the analytic event sum on
/// every small fixture.
std::vector<CheckResult> verify_probabilities_suite(std::uint64_t trials, std::uint64_t seed, int workers);

}  // namespace elt
