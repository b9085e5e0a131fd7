#include "tstd/spec.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>
#include <stdexcept>

namespace tstd {

bool IntervalPattern::matches(const TimeInterval& interval) const
{
    switch (kind) {
    case Kind::Any: return true;
    case Kind::Empty: return interval.empty();
    case Kind::NonEmpty: return !interval.empty();
    case Kind::Contains: return std::find(interval.begin(), interval.end(), *message) != interval.end();
    case Kind::LenEq: return interval.size() == count;
    case Kind::LenGe: return interval.size() >= count;
    case Kind::FirstIs: return !interval.empty() && interval.front() == *message;
    }
    return false;
}

bool holds(Relation rel, std::int64_t lhs, std::int64_t rhs) noexcept
{
    switch (rel) {
    case Relation::Less: return lhs < rhs;
    case Relation::LessEq: return lhs <= rhs;
    case Relation::Equal: return lhs == rhs;
    case Relation::NotEqual: return lhs != rhs;
    case Relation::GreaterEq: return lhs >= rhs;
    case Relation::Greater: return lhs > rhs;
    }
    return false;
}

std::vector<std::string> TSTDSpec::inputs() const
{
    std::vector<std::string> out;
    for (const auto& c : channels)
        if (c.direction == Direction::In)
            out.push_back(c.name);
    return out;
}

std::vector<std::string> TSTDSpec::outputs() const
{
    std::vector<std::string> out;
    for (const auto& c : channels)
        if (c.direction == Direction::Out)
            out.push_back(c.name);
    return out;
}

VarEnv TSTDSpec::initial_env() const
{
    VarEnv env;
    for (const auto& v : vars)
        env[v.name] = v.initial;
    return env;
}

std::vector<std::string> TSTDSpec::mentioned_tags() const
{
    std::set<std::string> tags;
    for (const auto& t : transitions) {
        for (const auto& g : t.interval_guards)
            if (g.pattern.message)
                tags.insert(g.pattern.message->tag());
        for (const auto& o : t.outputs)
            for (const auto& m : o.literal)
                tags.insert(m.tag());
    }
    return {tags.begin(), tags.end()};
}

std::size_t ValidationReport::error_count() const
{
    return static_cast<std::size_t>(std::count_if(findings.begin(), findings.end(),
                                                  [](const Finding& f) { return f.severity == Severity::Error; }));
}

std::size_t ValidationReport::warning_count() const
{
    return findings.size() - error_count();
}

namespace {

// Integer interval with a finite exclusion set; used for var-guard contradiction checks.
struct IntConstraint {
    std::int64_t lo = std::numeric_limits<std::int64_t>::min();
    std::int64_t hi = std::numeric_limits<std::int64_t>::max();
    std::set<std::int64_t> excluded;

    void add(Relation rel, std::int64_t b)
    {
        constexpr auto min = std::numeric_limits<std::int64_t>::min();
        constexpr auto max = std::numeric_limits<std::int64_t>::max();
        switch (rel) {
        case Relation::Less:
            if (b == min) {
                lo = max;
                hi = min;
            } else {
                hi = std::min(hi, b - 1);
            }
            break;
        case Relation::LessEq: hi = std::min(hi, b); break;
        case Relation::Equal:
            lo = std::max(lo, b);
            hi = std::min(hi, b);
            break;
        case Relation::NotEqual: excluded.insert(b); break;
        case Relation::GreaterEq: lo = std::max(lo, b); break;
        case Relation::Greater:
            if (b == max) {
                lo = max;
                hi = min;
            } else {
                lo = std::max(lo, b + 1);
            }
            break;
        }
    }

    bool satisfiable() const
    {
        if (lo > hi)
            return false;
        // Width fits in unsigned 64 bits minus one; exclusions are few.
        const auto width = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
        std::uint64_t inside = 0;
        for (auto x : excluded)
            if (x >= lo && x <= hi)
                ++inside;
        return inside == 0 || width >= inside;
    }
};

bool patterns_may_overlap(const IntervalPattern& a, const IntervalPattern& b)
{
    using K = IntervalPattern::Kind;
    return a.kind == K::Any || b.kind == K::Any || a == b;
}

const IntervalPattern* guard_for(const Transition& t, const std::string& channel)
{
    for (const auto& g : t.interval_guards)
        if (g.channel == channel)
            return &g.pattern;
    return nullptr;
}

bool guards_may_overlap(const Transition& a, const Transition& b)
{
    static const IntervalPattern any_pattern{};
    std::set<std::string> channels;
    for (const auto& g : a.interval_guards)
        channels.insert(g.channel);
    for (const auto& g : b.interval_guards)
        channels.insert(g.channel);
    for (const auto& ch : channels) {
        const IntervalPattern* pa = guard_for(a, ch);
        const IntervalPattern* pb = guard_for(b, ch);
        if (!patterns_may_overlap(pa ? *pa : any_pattern, pb ? *pb : any_pattern))
            return false;
    }
    std::map<std::string, IntConstraint> constraints;
    for (const auto* t : {&a, &b})
        for (const auto& g : t->var_guards)
            constraints[g.var].add(g.relation, g.bound);
    return std::all_of(constraints.begin(), constraints.end(), [](const auto& c) { return c.second.satisfiable(); });
}

class Validator {
public:
    explicit Validator(const TSTDSpec& spec) : spec_(spec) {}

    ValidationReport run()
    {
        check_declarations();
        for (std::size_t i = 0; i < spec_.transitions.size(); ++i)
            check_transition(i);
        check_overlaps();
        check_reachability();
        return std::move(report_);
    }

private:
    void error(SpecLocation::Kind kind, std::size_t index, std::string msg)
    {
        report_.findings.push_back({Severity::Error, std::move(msg), {kind, index}});
    }
    void warning(SpecLocation::Kind kind, std::size_t index, std::string msg)
    {
        report_.findings.push_back({Severity::Warning, std::move(msg), {kind, index}});
    }

    void check_declarations()
    {
        using K = SpecLocation::Kind;
        if (!is_identifier(spec_.name))
            error(K::Spec, 0, "component name '" + spec_.name + "' is not an identifier");

        bool has_out = false;
        for (std::size_t i = 0; i < spec_.channels.size(); ++i) {
            const auto& c = spec_.channels[i];
            if (!is_identifier(c.name))
                error(K::Channel, i, "channel name '" + c.name + "' is not an identifier");
            if (!channels_.emplace(c.name, c.direction).second)
                error(K::Channel, i, "duplicate channel '" + c.name + "'");
            has_out = has_out || c.direction == Direction::Out;
        }
        if (!has_out)
            error(K::Spec, 0, "component declares no output channel");

        for (std::size_t i = 0; i < spec_.vars.size(); ++i) {
            const auto& v = spec_.vars[i];
            if (!is_identifier(v.name))
                error(K::Var, i, "variable name '" + v.name + "' is not an identifier");
            if (channels_.count(v.name))
                error(K::Var, i, "variable '" + v.name + "' clashes with a channel name");
            if (!vars_.insert(v.name).second)
                error(K::Var, i, "duplicate variable '" + v.name + "'");
        }

        for (std::size_t i = 0; i < spec_.states.size(); ++i) {
            const auto& s = spec_.states[i];
            if (!is_identifier(s))
                error(K::State, i, "state name '" + s + "' is not an identifier");
            if (!states_.insert(s).second)
                error(K::State, i, "duplicate state '" + s + "'");
        }
        if (spec_.states.empty())
            error(K::Spec, 0, "component declares no states");
        if (spec_.initial.empty())
            error(K::Initial, 0, "no initial state");
        else if (!states_.count(spec_.initial))
            error(K::Initial, 0, "initial state '" + spec_.initial + "' is not declared");
    }

    bool is_channel(const std::string& name, Direction d) const
    {
        auto it = channels_.find(name);
        return it != channels_.end() && it->second == d;
    }

    void check_transition(std::size_t i)
    {
        using K = SpecLocation::Kind;
        const Transition& t = spec_.transitions[i];
        const std::string where = "transition " + std::to_string(i + 1) + " (" + t.source + " -> " + t.target + "): ";
        if (!states_.count(t.source))
            error(K::Transition, i, where + "source state '" + t.source + "' is not declared");
        if (!states_.count(t.target))
            error(K::Transition, i, where + "target state '" + t.target + "' is not declared");

        std::set<std::string> seen;
        for (const auto& g : t.interval_guards) {
            if (!is_channel(g.channel, Direction::In))
                error(K::Transition, i, where + "guard channel '" + g.channel + "' is not an input channel");
            if (!seen.insert(g.channel).second)
                error(K::Transition, i, where + "more than one guard on channel '" + g.channel + "'");
        }
        for (const auto& g : t.var_guards)
            if (!vars_.count(g.var))
                error(K::Transition, i, where + "guard variable '" + g.var + "' is not declared");

        seen.clear();
        for (const auto& o : t.outputs) {
            if (!is_channel(o.channel, Direction::Out))
                error(K::Transition, i, where + "emit channel '" + o.channel + "' is not an output channel");
            if (!seen.insert(o.channel).second)
                error(K::Transition, i, where + "more than one emit on channel '" + o.channel + "'");
            if (o.pass_from && !is_channel(*o.pass_from, Direction::In))
                error(K::Transition, i, where + "pass source '" + *o.pass_from + "' is not an input channel");
        }

        seen.clear();
        for (const auto& u : t.updates) {
            if (!vars_.count(u.var))
                error(K::Transition, i, where + "updated variable '" + u.var + "' is not declared");
            if (!seen.insert(u.var).second)
                error(K::Transition, i, where + "more than one update of variable '" + u.var + "'");
        }
    }

    void check_overlaps()
    {
        const auto& ts = spec_.transitions;
        for (std::size_t i = 0; i < ts.size(); ++i)
            for (std::size_t j = i + 1; j < ts.size(); ++j)
                if (ts[i].source == ts[j].source && guards_may_overlap(ts[i], ts[j]))
                    warning(SpecLocation::Kind::Transition, j,
                            "transitions " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                " from state '" + ts[i].source + "' may be enabled together; the earlier one wins");
    }

    void check_reachability()
    {
        if (!states_.count(spec_.initial))
            return;
        std::set<std::string> reached{spec_.initial};
        std::deque<std::string> frontier{spec_.initial};
        while (!frontier.empty()) {
            const std::string s = frontier.front();
            frontier.pop_front();
            for (const auto& t : spec_.transitions)
                if (t.source == s && states_.count(t.target) && reached.insert(t.target).second)
                    frontier.push_back(t.target);
        }
        for (std::size_t i = 0; i < spec_.states.size(); ++i)
            if (!reached.count(spec_.states[i]))
                warning(SpecLocation::Kind::State, i, "state '" + spec_.states[i] + "' is unreachable");
    }

    const TSTDSpec& spec_;
    ValidationReport report_;
    std::map<std::string, Direction> channels_;
    std::set<std::string> vars_;
    std::set<std::string> states_;
};

// Outputs on every Out channel, with missing actions read as the empty literal.
TickOutputs literal_outputs(const TSTDSpec& spec, const Transition& t)
{
    TickOutputs out;
    for (const auto& name : spec.outputs())
        out[name];
    for (const auto& o : t.outputs)
        out[o.channel] = o.literal;
    return out;
}

bool is_total(const Transition& t)
{
    return t.var_guards.empty() &&
           std::all_of(t.interval_guards.begin(), t.interval_guards.end(),
                       [](const IntervalGuard& g) { return g.pattern.kind == IntervalPattern::Kind::Any; });
}

std::vector<const Transition*> outgoing(const TSTDSpec& spec, const std::string& state)
{
    std::vector<const Transition*> out;
    for (const auto& t : spec.transitions)
        if (t.source == state)
            out.push_back(&t);
    return out;
}

bool all_empty(const TickOutputs& outs)
{
    return std::all_of(outs.begin(), outs.end(), [](const auto& e) { return e.second.empty(); });
}

}  // namespace

ValidationReport validate_spec(const TSTDSpec& spec)
{
    return Validator(spec).run();
}

std::vector<std::size_t> enabled_transitions(const TSTDSpec& spec, const std::string& state, const VarEnv& env,
                                             const TickInputs& inputs)
{
    if (std::find(spec.states.begin(), spec.states.end(), state) == spec.states.end())
        throw std::logic_error("enabled_transitions: unknown state '" + state + "'");

    static const TimeInterval nothing;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < spec.transitions.size(); ++i) {
        const Transition& t = spec.transitions[i];
        if (t.source != state)
            continue;
        const bool intervals_ok =
            std::all_of(t.interval_guards.begin(), t.interval_guards.end(), [&](const IntervalGuard& g) {
                auto it = inputs.find(g.channel);
                return g.pattern.matches(it == inputs.end() ? nothing : it->second);
            });
        if (!intervals_ok)
            continue;
        const bool vars_ok = std::all_of(t.var_guards.begin(), t.var_guards.end(), [&](const VarGuard& g) {
            auto it = env.find(g.var);
            return it != env.end() && holds(g.relation, it->second, g.bound);
        });
        if (vars_ok)
            out.push_back(i);
    }
    return out;
}

std::string_view to_string(CausalityClass c) noexcept
{
    return c == CausalityClass::Strong ? "strong" : "weak";
}

CausalityClass classify_causality_syntactic(const TSTDSpec& spec)
{
    for (const auto& t : spec.transitions)
        for (const auto& o : t.outputs)
            if (o.is_pass())
                return CausalityClass::Weak;

    for (const auto& state : spec.states) {
        const auto outs = outgoing(spec, state);
        if (outs.empty())
            continue;
        const TickOutputs common = literal_outputs(spec, *outs.front());
        for (const Transition* t : outs)
            if (literal_outputs(spec, *t) != common)
                return CausalityClass::Weak;
        if (all_empty(common))
            continue;
        if (outs.size() != 1 || !is_total(*outs.front()))
            return CausalityClass::Weak;
    }
    return CausalityClass::Strong;
}

TickOutputs strong_outputs(const TSTDSpec& spec, const std::string& state)
{
    const auto outs = outgoing(spec, state);
    if (outs.size() == 1 && is_total(*outs.front()))
        return literal_outputs(spec, *outs.front());
    TickOutputs silent;
    for (const auto& name : spec.outputs())
        silent[name];
    return silent;
}

}  // namespace tstd
