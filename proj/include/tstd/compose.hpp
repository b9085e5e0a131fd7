#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "tstd/executor.hpp"
#include "tstd/spec.hpp"
#include "tstd/trace.hpp"

namespace tstd {

/// Built-in component: output at tick t is the input from tick t - ticks (empty before that).
/// Ports: `in`, `out`.
struct DelayComponent {
    std::size_t ticks = 1;
};

/// Built-in component: per tick, `left` followed by `right`. Ports: `left`, `right`, `out`.
struct MergeComponent {};

struct ComponentInstance {
    std::string id;
    std::variant<std::shared_ptr<const TSTDSpec>, DelayComponent, MergeComponent> kind;

    static ComponentInstance spec(std::string id, TSTDSpec spec);
    static ComponentInstance delay(std::string id, std::size_t ticks);
    static ComponentInstance merge(std::string id);

    const TSTDSpec* as_spec() const;
    std::vector<std::string> in_ports() const;
    std::vector<std::string> out_ports() const;
};

/// A component port, or a network boundary port when `instance` is empty.
struct Endpoint {
    std::optional<std::string> instance;
    std::string port;

    static Endpoint external(std::string name) { return {std::nullopt, std::move(name)}; }
    static Endpoint of(std::string instance, std::string port) { return {std::move(instance), std::move(port)}; }
    bool is_external() const noexcept { return !instance.has_value(); }

    /// `extern NAME` or `ID.PORT`.
    std::string path() const;

    friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

struct Wire {
    Endpoint from;
    Endpoint to;
};

struct NetworkIssue {
    enum class Subject { Instance, Wire, ExternalInput, ExternalOutput };

    Subject subject = Subject::Wire;
    std::size_t index = 0;
    std::string message;
};

class NetworkError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct NetworkBuild;

class Network {
public:
    const std::vector<ComponentInstance>& instances() const noexcept { return instances_; }
    const std::vector<Wire>& wires() const noexcept { return wires_; }
    const std::vector<std::string>& external_inputs() const noexcept { return external_inputs_; }
    const std::vector<std::string>& external_outputs() const noexcept { return external_outputs_; }

    /// Delay instances and Strong specs: tick-t output does not read tick-t input.
    bool is_strong(std::size_t instance) const { return strong_[instance]; }
    std::optional<std::size_t> find(const std::string& id) const;

    /// Source driving a component input port or an external output.
    const Endpoint& driver(const Endpoint& sink) const;

private:
    friend NetworkBuild build_network(std::vector<ComponentInstance>, std::vector<Wire>, std::vector<std::string>,
                                      std::vector<std::string>);
    Network() = default;

    std::vector<ComponentInstance> instances_;
    std::vector<Wire> wires_;
    std::vector<std::string> external_inputs_;
    std::vector<std::string> external_outputs_;
    std::vector<bool> strong_;
};

struct NetworkBuild {
    std::optional<Network> network;
    std::vector<NetworkIssue> issues;
};

/// Checks wiring totality: every component input and external output driven exactly once, all names resolve.
NetworkBuild build_network(std::vector<ComponentInstance> instances, std::vector<Wire> wires,
                           std::vector<std::string> external_inputs, std::vector<std::string> external_outputs);

/// Same-tick data dependencies between instances; nodes are instance indices. A wire A -> B is an edge
/// only when both A and B are weakly causal (Spec classified Weak, or Merge).
struct DependencyGraph {
    std::vector<std::string> nodes;
    std::vector<std::vector<std::size_t>> successors;  // sorted, deduplicated

    bool has_edge(std::size_t from, std::size_t to) const;
    std::size_t edge_count() const;
};

DependencyGraph instantaneous_dependency_graph(const Network& net);

struct FeedbackResult {
    std::vector<std::string> cycle;  // empty: well-formed

    bool well_formed() const noexcept { return cycle.empty(); }
};

/// Well-formed iff every feedback loop passes through a Delay or a Strong component.
FeedbackResult check_feedback_wellformed(const Network& net);

/// Tick-by-tick evaluation in a topological order of the dependency graph. Throws NetworkError on an
/// ill-formed network and ChannelMismatch when the input channels are not the external inputs.
Trace run_network(const Network& net, const Trace& external_inputs);

/// Runs the first `ticks` ticks; throws std::out_of_range if the input trace is shorter.
Trace run_network(const Network& net, const Trace& external_inputs, std::size_t ticks);

Behavior behavior_of(const Network& net);

}  // namespace tstd
