#include "tstd/compose.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <queue>
#include <set>

namespace tstd {

ComponentInstance ComponentInstance::spec(std::string id, TSTDSpec spec)
{
    return {std::move(id), std::make_shared<const TSTDSpec>(std::move(spec))};
}

ComponentInstance ComponentInstance::delay(std::string id, std::size_t ticks)
{
    return {std::move(id), DelayComponent{ticks}};
}

ComponentInstance ComponentInstance::merge(std::string id)
{
    return {std::move(id), MergeComponent{}};
}

const TSTDSpec* ComponentInstance::as_spec() const
{
    const auto* p = std::get_if<std::shared_ptr<const TSTDSpec>>(&kind);
    return p ? p->get() : nullptr;
}

std::vector<std::string> ComponentInstance::in_ports() const
{
    if (const TSTDSpec* s = as_spec())
        return s->inputs();
    if (std::holds_alternative<DelayComponent>(kind))
        return {"in"};
    return {"left", "right"};
}

std::vector<std::string> ComponentInstance::out_ports() const
{
    if (const TSTDSpec* s = as_spec())
        return s->outputs();
    return {"out"};
}

std::string Endpoint::path() const
{
    return instance ? *instance + "." + port : "extern " + port;
}

std::optional<std::size_t> Network::find(const std::string& id) const
{
    for (std::size_t i = 0; i < instances_.size(); ++i)
        if (instances_[i].id == id)
            return i;
    return std::nullopt;
}

const Endpoint& Network::driver(const Endpoint& sink) const
{
    for (const auto& w : wires_)
        if (w.to == sink)
            return w.from;
    throw std::logic_error("no wire drives " + sink.path());
}

namespace {

bool contains(const std::vector<std::string>& v, const std::string& x)
{
    return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace

NetworkBuild build_network(std::vector<ComponentInstance> instances, std::vector<Wire> wires,
                           std::vector<std::string> external_inputs, std::vector<std::string> external_outputs)
{
    using S = NetworkIssue::Subject;
    NetworkBuild result;
    auto issue = [&](S subject, std::size_t index, std::string msg) {
        result.issues.push_back({subject, index, std::move(msg)});
    };

    std::map<std::string, std::size_t> ids;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        const auto& inst = instances[i];
        if (!is_identifier(inst.id))
            issue(S::Instance, i, "instance id '" + inst.id + "' is not an identifier");
        if (!ids.emplace(inst.id, i).second)
            issue(S::Instance, i, "duplicate instance id '" + inst.id + "'");
        if (const TSTDSpec* spec = inst.as_spec()) {
            for (const auto& f : validate_spec(*spec).findings)
                if (f.severity == Severity::Error)
                    issue(S::Instance, i, "instance '" + inst.id + "': " + f.message);
        } else if (const auto* d = std::get_if<DelayComponent>(&inst.kind); d && d->ticks == 0) {
            issue(S::Instance, i, "instance '" + inst.id + "': delay must be at least 1 tick");
        }
    }

    std::set<std::string> seen;
    for (std::size_t i = 0; i < external_inputs.size(); ++i)
        if (!seen.insert(external_inputs[i]).second)
            issue(S::ExternalInput, i, "duplicate external input '" + external_inputs[i] + "'");
    seen.clear();
    for (std::size_t i = 0; i < external_outputs.size(); ++i)
        if (!seen.insert(external_outputs[i]).second)
            issue(S::ExternalOutput, i, "duplicate external output '" + external_outputs[i] + "'");

    std::map<std::string, std::size_t> drive_count;  // sink path -> wires
    for (std::size_t w = 0; w < wires.size(); ++w) {
        const Wire& wire = wires[w];
        const std::string prefix = "wire " + wire.from.path() + " -> " + wire.to.path() + ": ";
        bool ok = true;
        if (wire.from.is_external()) {
            if (!contains(external_inputs, wire.from.port)) {
                issue(S::Wire, w, prefix + "'" + wire.from.port + "' is not an external input");
                ok = false;
            }
        } else if (auto it = ids.find(*wire.from.instance); it == ids.end()) {
            issue(S::Wire, w, prefix + "unknown instance id '" + *wire.from.instance + "'");
            ok = false;
        } else if (!contains(instances[it->second].out_ports(), wire.from.port)) {
            issue(S::Wire, w, prefix + "'" + wire.from.path() + "' is not an output port");
            ok = false;
        }

        if (wire.to.is_external()) {
            if (!contains(external_outputs, wire.to.port)) {
                issue(S::Wire, w, prefix + "'" + wire.to.port + "' is not an external output");
                ok = false;
            }
        } else if (auto it = ids.find(*wire.to.instance); it == ids.end()) {
            issue(S::Wire, w, prefix + "unknown instance id '" + *wire.to.instance + "'");
            ok = false;
        } else if (!contains(instances[it->second].in_ports(), wire.to.port)) {
            issue(S::Wire, w, prefix + "'" + wire.to.path() + "' is not an input port");
            ok = false;
        }

        if (ok && ++drive_count[wire.to.path()] == 2)
            issue(S::Wire, w, prefix + "'" + wire.to.path() + "' is driven by more than one wire");
    }

    for (std::size_t i = 0; i < instances.size(); ++i)
        for (const auto& port : instances[i].in_ports()) {
            const std::string path = Endpoint::of(instances[i].id, port).path();
            if (!drive_count.count(path))
                issue(S::Instance, i, "input port '" + path + "' is not driven");
        }
    for (std::size_t i = 0; i < external_outputs.size(); ++i) {
        const std::string path = Endpoint::external(external_outputs[i]).path();
        if (!drive_count.count(path))
            issue(S::ExternalOutput, i, "external output '" + external_outputs[i] + "' is not driven");
    }

    if (!result.issues.empty())
        return result;

    Network net;
    net.strong_.reserve(instances.size());
    for (const auto& inst : instances) {
        const TSTDSpec* spec = inst.as_spec();
        net.strong_.push_back(spec ? classify_causality_syntactic(*spec) == CausalityClass::Strong
                                   : std::holds_alternative<DelayComponent>(inst.kind));
    }
    net.instances_ = std::move(instances);
    net.wires_ = std::move(wires);
    net.external_inputs_ = std::move(external_inputs);
    net.external_outputs_ = std::move(external_outputs);
    result.network = std::move(net);
    return result;
}

bool DependencyGraph::has_edge(std::size_t from, std::size_t to) const
{
    const auto& s = successors.at(from);
    return std::binary_search(s.begin(), s.end(), to);
}

std::size_t DependencyGraph::edge_count() const
{
    std::size_t n = 0;
    for (const auto& s : successors)
        n += s.size();
    return n;
}

DependencyGraph instantaneous_dependency_graph(const Network& net)
{
    DependencyGraph g;
    for (const auto& inst : net.instances())
        g.nodes.push_back(inst.id);
    g.successors.resize(g.nodes.size());
    for (const auto& w : net.wires()) {
        if (w.from.is_external() || w.to.is_external())
            continue;
        const std::size_t a = *net.find(*w.from.instance);
        const std::size_t b = *net.find(*w.to.instance);
        // Strong sources publish their tick-t output before any tick-t input is read.
        if (!net.is_strong(a) && !net.is_strong(b))
            g.successors[a].push_back(b);
    }
    for (auto& s : g.successors) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    return g;
}

FeedbackResult check_feedback_wellformed(const Network& net)
{
    const DependencyGraph g = instantaneous_dependency_graph(net);
    enum class Color { White, Grey, Black };
    std::vector<Color> color(g.nodes.size(), Color::White);
    std::vector<std::size_t> path;

    // Iterative DFS; the grey path is the current stack.
    for (std::size_t root = 0; root < g.nodes.size(); ++root) {
        if (color[root] != Color::White)
            continue;
        std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
        color[root] = Color::Grey;
        path.push_back(root);
        while (!stack.empty()) {
            auto& [node, next] = stack.back();
            if (next < g.successors[node].size()) {
                const std::size_t succ = g.successors[node][next++];
                if (color[succ] == Color::Grey) {
                    auto from = std::find(path.begin(), path.end(), succ);
                    FeedbackResult r;
                    for (auto it = from; it != path.end(); ++it)
                        r.cycle.push_back(g.nodes[*it]);
                    return r;
                }
                if (color[succ] == Color::White) {
                    color[succ] = Color::Grey;
                    path.push_back(succ);
                    stack.emplace_back(succ, 0);
                }
            } else {
                color[node] = Color::Black;
                path.pop_back();
                stack.pop_back();
            }
        }
    }
    return {};
}

namespace {

std::vector<std::size_t> topological_order(const DependencyGraph& g)
{
    std::vector<std::size_t> indegree(g.nodes.size(), 0);
    for (const auto& s : g.successors)
        for (auto b : s)
            ++indegree[b];
    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
    for (std::size_t i = 0; i < indegree.size(); ++i)
        if (indegree[i] == 0)
            ready.push(i);
    std::vector<std::size_t> order;
    while (!ready.empty()) {
        const std::size_t n = ready.top();
        ready.pop();
        order.push_back(n);
        for (auto b : g.successors[n])
            if (--indegree[b] == 0)
                ready.push(b);
    }
    return order;
}

// Per-run mutable state of every instance.
struct InstanceState {
    Configuration config;                // Spec
    std::deque<TimeInterval> pipeline;   // Delay
};

class NetworkRunner {
public:
    explicit NetworkRunner(const Network& net) : net_(net)
    {
        const auto& insts = net.instances();
        state_.resize(insts.size());
        in_drivers_.resize(insts.size());
        for (std::size_t i = 0; i < insts.size(); ++i) {
            if (const TSTDSpec* spec = insts[i].as_spec())
                state_[i].config = initial_configuration(*spec);
            else if (const auto* d = std::get_if<DelayComponent>(&insts[i].kind))
                state_[i].pipeline.assign(d->ticks, TimeInterval{});
            for (const auto& port : insts[i].in_ports())
                in_drivers_[i].emplace_back(port, net.driver(Endpoint::of(insts[i].id, port)).path());
        }
        order_ = topological_order(instantaneous_dependency_graph(net));
    }

    Trace run(const Trace& inputs, std::size_t ticks)
    {
        const auto& outs = net_.external_outputs();
        std::map<std::string, std::vector<TimeInterval>> cols;
        for (const auto& name : outs)
            cols[name].reserve(ticks);

        for (std::size_t tick = 0; tick < ticks; ++tick) {
            signals_.clear();
            for (const auto& name : net_.external_inputs())
                signals_[Endpoint::external(name).path()] = inputs.at(name)[tick];
            for (std::size_t i = 0; i < net_.instances().size(); ++i)
                if (net_.is_strong(i))
                    emit_strong(i);
            for (std::size_t i : order_)
                if (!net_.is_strong(i))
                    fire_weak(i);
            for (std::size_t i = 0; i < net_.instances().size(); ++i)
                if (net_.is_strong(i))
                    advance_strong(i);
            for (const auto& name : outs)
                cols[name].push_back(signals_.at(net_.driver(Endpoint::external(name)).path()));
        }

        std::map<std::string, StreamPrefix> out;
        for (auto& [name, col] : cols)
            out.emplace(name, StreamPrefix(std::move(col)));
        return out.empty() ? Trace({}, ticks) : Trace(std::move(out));
    }

private:
    TickInputs gather(std::size_t i) const
    {
        TickInputs in;
        for (const auto& [port, source] : in_drivers_[i])
            in.emplace(port, signals_.at(source));
        return in;
    }

    void publish(std::size_t i, TickOutputs outputs)
    {
        const std::string& id = net_.instances()[i].id;
        for (auto& [port, iv] : outputs)
            signals_[id + "." + port] = std::move(iv);
    }

    void emit_strong(std::size_t i)
    {
        const auto& inst = net_.instances()[i];
        if (const TSTDSpec* spec = inst.as_spec())
            publish(i, strong_outputs(*spec, state_[i].config.state));
        else
            publish(i, {{"out", state_[i].pipeline.front()}});
    }

    void advance_strong(std::size_t i)
    {
        const auto& inst = net_.instances()[i];
        TickInputs in = gather(i);
        if (const TSTDSpec* spec = inst.as_spec()) {
            state_[i].config = step(*spec, state_[i].config, in).next;
        } else {
            auto& pipe = state_[i].pipeline;
            pipe.pop_front();
            pipe.push_back(std::move(in.at("in")));
        }
    }

    void fire_weak(std::size_t i)
    {
        const auto& inst = net_.instances()[i];
        TickInputs in = gather(i);
        if (const TSTDSpec* spec = inst.as_spec()) {
            StepResult r = step(*spec, state_[i].config, in);
            state_[i].config = std::move(r.next);
            publish(i, std::move(r.outputs));
        } else {
            TimeInterval merged = std::move(in.at("left"));
            const TimeInterval& right = in.at("right");
            merged.insert(merged.end(), right.begin(), right.end());
            publish(i, {{"out", std::move(merged)}});
        }
    }

    const Network& net_;
    std::vector<InstanceState> state_;
    std::vector<std::vector<std::pair<std::string, std::string>>> in_drivers_;  // (port, source path)
    std::vector<std::size_t> order_;
    std::map<std::string, TimeInterval> signals_;  // source path -> current interval
};

}  // namespace

Trace run_network(const Network& net, const Trace& external_inputs, std::size_t ticks)
{
    const FeedbackResult fb = check_feedback_wellformed(net);
    if (!fb.well_formed()) {
        std::string cycle;
        for (const auto& id : fb.cycle)
            cycle += (cycle.empty() ? "" : " -> ") + id;
        throw NetworkError("network has an instantaneous feedback cycle: " + cycle);
    }
    const std::set<std::string> expected(net.external_inputs().begin(), net.external_inputs().end());
    if (external_inputs.channel_names() != expected)
        throw ChannelMismatch("input trace channels do not match the network's external inputs");
    if (ticks > external_inputs.length())
        throw std::out_of_range("input trace has " + std::to_string(external_inputs.length()) + " ticks, " +
                                std::to_string(ticks) + " requested");
    return NetworkRunner(net).run(external_inputs, ticks);
}

Trace run_network(const Network& net, const Trace& external_inputs)
{
    return run_network(net, external_inputs, external_inputs.length());
}

Behavior behavior_of(const Network& net)
{
    Behavior b;
    b.inputs = {net.external_inputs().begin(), net.external_inputs().end()};
    b.outputs = {net.external_outputs().begin(), net.external_outputs().end()};
    std::set<std::string> tags;
    for (const auto& inst : net.instances())
        if (const TSTDSpec* s = inst.as_spec())
            for (auto& t : s->mentioned_tags())
                tags.insert(t);
    b.tags = {tags.begin(), tags.end()};
    b.run = [net](const Trace& t) { return run_network(net, t); };
    return b;
}

}  // namespace tstd
