#include "elt/random.hpp"

#include <stdexcept>

namespace elt {

RandomSource RandomSource::scripted(std::vector<std::uint64_t> values, std::uint64_t seed) {
    RandomSource rng(seed);
    rng.script_.assign(values.begin(), values.end());
    return rng;
}

std::uint64_t RandomSource::next_u64() {
    if (!script_.empty()) {
        const auto v = script_.front();
        script_.pop_front();
        return v;
    }
    return engine_();
}

std::uint64_t RandomSource::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("RandomSource::below: bound must be positive");
    if (!script_.empty()) {
        const auto v = script_.front();
        script_.pop_front();
        if (v >= bound) throw std::logic_error("RandomSource: scripted value out of range");
        return v;
    }
    // Rejection sampling keeps the draw exactly uniform.
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t r = engine_();
        if (r >= threshold) return r % bound;
    }
}

double RandomSource::unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

}  // namespace elt
