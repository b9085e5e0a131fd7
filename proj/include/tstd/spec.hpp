#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tstd/stream.hpp"

namespace tstd {

enum class Direction { In, Out };

struct ChannelDecl {
    std::string name;
    Direction direction = Direction::In;

    friend bool operator==(const ChannelDecl&, const ChannelDecl&) = default;
};

struct VarDecl {
    std::string name;
    std::int64_t initial = 0;

    friend bool operator==(const VarDecl&, const VarDecl&) = default;
};

/// Predicate over the interval seen on one input channel during the current tick.
struct IntervalPattern {
    enum class Kind { Any, Empty, NonEmpty, Contains, LenEq, LenGe, FirstIs };

    Kind kind = Kind::Any;
    std::optional<Message> message;  // Contains, FirstIs
    std::size_t count = 0;           // LenEq, LenGe

    static IntervalPattern any() { return {}; }
    static IntervalPattern empty() { return {Kind::Empty, std::nullopt, 0}; }
    static IntervalPattern non_empty() { return {Kind::NonEmpty, std::nullopt, 0}; }
    static IntervalPattern contains(Message m) { return {Kind::Contains, std::move(m), 0}; }
    static IntervalPattern first_is(Message m) { return {Kind::FirstIs, std::move(m), 0}; }
    static IntervalPattern len_eq(std::size_t k) { return {Kind::LenEq, std::nullopt, k}; }
    static IntervalPattern len_ge(std::size_t k) { return {Kind::LenGe, std::nullopt, k}; }

    bool matches(const TimeInterval& interval) const;

    friend bool operator==(const IntervalPattern&, const IntervalPattern&) = default;
};

struct IntervalGuard {
    std::string channel;
    IntervalPattern pattern;

    friend bool operator==(const IntervalGuard&, const IntervalGuard&) = default;
};

enum class Relation { Less, LessEq, Equal, NotEqual, GreaterEq, Greater };

bool holds(Relation rel, std::int64_t lhs, std::int64_t rhs) noexcept;

struct VarGuard {
    std::string var;
    Relation relation = Relation::Equal;
    std::int64_t bound = 0;

    friend bool operator==(const VarGuard&, const VarGuard&) = default;
};

/// Either a literal message sequence or a copy of an input channel's current interval.
struct OutputAction {
    std::string channel;
    std::optional<std::string> pass_from;  // set: Pass, unset: Literal
    TimeInterval literal;

    static OutputAction emit(std::string channel, TimeInterval messages)
    {
        return {std::move(channel), std::nullopt, std::move(messages)};
    }
    static OutputAction pass(std::string channel, std::string source)
    {
        return {std::move(channel), std::move(source), {}};
    }
    bool is_pass() const noexcept { return pass_from.has_value(); }

    friend bool operator==(const OutputAction&, const OutputAction&) = default;
};

struct VarUpdate {
    enum class Kind { Set, Add };

    std::string var;
    Kind kind = Kind::Set;
    std::int64_t value = 0;

    friend bool operator==(const VarUpdate&, const VarUpdate&) = default;
};

struct Transition {
    std::string source;
    std::vector<IntervalGuard> interval_guards;
    std::vector<VarGuard> var_guards;
    std::vector<OutputAction> outputs;
    std::vector<VarUpdate> updates;
    std::string target;

    friend bool operator==(const Transition&, const Transition&) = default;
};

using VarEnv = std::map<std::string, std::int64_t>;
using TickInputs = std::map<std::string, TimeInterval>;
using TickOutputs = std::map<std::string, TimeInterval>;

/// A timed state transition diagram. Transition order breaks ties between enabled transitions.
struct TSTDSpec {
    std::string name;
    std::vector<ChannelDecl> channels;
    std::vector<VarDecl> vars;
    std::vector<std::string> states;
    std::string initial;
    std::vector<Transition> transitions;

    std::vector<std::string> inputs() const;
    std::vector<std::string> outputs() const;
    VarEnv initial_env() const;

    /// Tags appearing in guards and literal outputs, sorted and deduplicated.
    std::vector<std::string> mentioned_tags() const;

    friend bool operator==(const TSTDSpec&, const TSTDSpec&) = default;
};

enum class Severity { Error, Warning };

/// Locates a finding inside a spec so front ends can map it back to source text.
struct SpecLocation {
    enum class Kind { Spec, Channel, Var, State, Initial, Transition };

    Kind kind = Kind::Spec;
    std::size_t index = 0;  // into the corresponding list
};

struct Finding {
    Severity severity = Severity::Error;
    std::string message;
    SpecLocation where;
};

struct ValidationReport {
    std::vector<Finding> findings;

    std::size_t error_count() const;
    std::size_t warning_count() const;
    bool ok() const { return error_count() == 0; }
};

/// Reference, uniqueness and initial-state errors; overlap and reachability warnings.
ValidationReport validate_spec(const TSTDSpec& spec);

/// Indices into spec.transitions of the transitions enabled in this tick, in declaration order.
/// Throws std::logic_error for an undeclared state.
std::vector<std::size_t> enabled_transitions(const TSTDSpec& spec, const std::string& state, const VarEnv& env,
                                             const TickInputs& inputs);

enum class CausalityClass { Strong, Weak };

std::string_view to_string(CausalityClass c) noexcept;

/// Sufficient syntactic test for strong causality: output at tick t is fixed by the state entered before t.
CausalityClass classify_causality_syntactic(const TSTDSpec& spec);

/// For a spec classified Strong: the outputs it emits in `state`, whatever the inputs.
TickOutputs strong_outputs(const TSTDSpec& spec, const std::string& state);

}  // namespace tstd
