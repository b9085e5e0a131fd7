#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tstd/spec.hpp"
#include "tstd/trace.hpp"

namespace tstd {

struct Configuration {
    std::string state;
    VarEnv env;

    friend bool operator==(const Configuration&, const Configuration&) = default;
};

Configuration initial_configuration(const TSTDSpec& spec);

struct StepResult {
    Configuration next;
    TickOutputs outputs;  // exactly one interval per Out channel
};

/// Fires the first enabled transition, or stutters (same configuration, empty outputs) if none is enabled.
StepResult step(const TSTDSpec& spec, const Configuration& cfg, const TickInputs& inputs);

/// One output tick per input tick. Throws ChannelMismatch unless the trace channels are exactly the In channels.
Trace run(const TSTDSpec& spec, const Trace& inputs);

/// Anything with a channel signature that maps an input trace to an equally long output trace.
struct Behavior {
    std::set<std::string> inputs;
    std::set<std::string> outputs;
    std::vector<std::string> tags;  // seeds the random-trace alphabet
    std::function<Trace(const Trace&)> run;
};

Behavior behavior_of(const TSTDSpec& spec);

struct CausalityWitness {
    std::size_t trial = 0;
    std::size_t cut = 0;       // inputs agree before this tick and differ at it
    std::size_t tick = 0;      // first tick <= cut with differing outputs
    std::string channel;       // output channel that differs at `tick`
    Trace first_input;
    Trace second_input;
    Trace first_output;
    Trace second_output;
};

struct ProbeResult {
    std::optional<CausalityWitness> witness;  // empty: consistent with strong causality

    bool refuted() const noexcept { return witness.has_value(); }
};

/// Randomized search for a pair of inputs that agree before tick t, differ at t, and produce different
/// outputs at some tick <= t. Deterministic for a given seed, independent of thread count.
ProbeResult probe_causality(const TSTDSpec& spec, std::size_t trials, std::size_t horizon, std::uint64_t seed);

struct SimulationWitness {
    std::size_t trial = 0;
    std::string channel;
    Trace input;
    TimeInterval first;   // untimed abstraction of the first behavior's output on `channel`
    TimeInterval second;
};

struct SimulationResult {
    std::optional<SimulationWitness> witness;  // empty: agree on every sampled trace

    bool agree() const noexcept { return !witness.has_value(); }
};

/// Compares per-channel untimed abstractions of both outputs on one input trace.
std::optional<SimulationWitness> compare_untimed(const Behavior& a, const Behavior& b, const Trace& input);

/// Bounded refutation check of untimed equivalence on random traces. Throws ChannelMismatch when the
/// channel signatures differ.
SimulationResult check_untimed_simulation(const Behavior& a, const Behavior& b, std::size_t trials,
                                          std::size_t horizon, std::uint64_t seed);
SimulationResult check_untimed_simulation(const TSTDSpec& a, const TSTDSpec& b, std::size_t trials,
                                          std::size_t horizon, std::uint64_t seed);

/// Runs every trace through the spec.
std::vector<Trace> run_batch(const TSTDSpec& spec, const std::vector<Trace>& inputs);

namespace serial {

// Single-threaded references for the parallel kernels above; results must match exactly.
ProbeResult probe_causality(const TSTDSpec& spec, std::size_t trials, std::size_t horizon, std::uint64_t seed);
SimulationResult check_untimed_simulation(const Behavior& a, const Behavior& b, std::size_t trials,
                                          std::size_t horizon, std::uint64_t seed);
std::vector<Trace> run_batch(const TSTDSpec& spec, const std::vector<Trace>& inputs);

}  // namespace serial

}  // namespace tstd
