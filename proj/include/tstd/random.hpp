#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tstd/spec.hpp"
#include "tstd/trace.hpp"

namespace tstd {

/// mt19937_64 with a portable unbiased bounded draw, so seeded output is identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [lo, hi], inclusive.
    std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);
    std::size_t index(std::size_t size) { return static_cast<std::size_t>(uniform(0, size - 1)); }
    bool chance(std::uint64_t numerator, std::uint64_t denominator) { return uniform(1, denominator) <= numerator; }

private:
    std::mt19937_64 engine_;
};

/// Independent stream for trial `index` of a seeded batch.
Rng trial_rng(std::uint64_t seed, std::uint64_t index);

TimeInterval random_interval(Rng& rng, std::size_t max_len, const std::vector<std::string>& alphabet);

Trace random_trace(Rng& rng, const std::vector<std::string>& channels, std::size_t ticks, std::size_t max_len,
                   const std::vector<std::string>& alphabet);

/// `tags` plus one tag that none of them equals.
std::vector<std::string> probe_alphabet(std::vector<std::string> tags);

struct RandomSpecOptions {
    std::size_t max_states = 4;
    std::size_t max_inputs = 2;
    std::size_t max_outputs = 2;
    std::size_t max_transitions_per_state = 3;
    std::size_t max_vars = 1;
    std::vector<std::string> alphabet{"a", "b", "c"};
};

/// A reference-correct spec (no validation errors). A share of the results are Moore-style so both
/// causality classes occur.
TSTDSpec random_spec(Rng& rng, const RandomSpecOptions& options = {});

}  // namespace tstd
