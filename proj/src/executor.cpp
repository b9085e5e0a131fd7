#include "tstd/executor.hpp"

#include <algorithm>
#include <atomic>
#include <limits>

#include "tstd/random.hpp"

namespace tstd {

namespace {

constexpr std::size_t kProbeMaxLen = 3;

std::int64_t wrapping_add(std::int64_t a, std::int64_t b)
{
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) + static_cast<std::uint64_t>(b));
}

TickInputs inputs_at(const Trace& trace, std::size_t tick)
{
    TickInputs in;
    for (const auto& [name, s] : trace.channels())
        in.emplace(name, s[tick]);
    return in;
}

void require_signature(const std::set<std::string>& expected, const Trace& trace, const char* what)
{
    if (trace.channel_names() != expected) {
        std::string msg = std::string(what) + ": trace channels {";
        for (const auto& c : trace.channel_names())
            msg += " " + c;
        msg += " } do not match {";
        for (const auto& c : expected)
            msg += " " + c;
        throw ChannelMismatch(msg + " }");
    }
}

std::optional<CausalityWitness> probe_trial(const TSTDSpec& spec, const std::vector<std::string>& inputs,
                                            const std::vector<std::string>& alphabet, std::size_t horizon,
                                            std::uint64_t seed, std::size_t trial)
{
    Rng rng = trial_rng(seed, trial);
    const Trace u = random_trace(rng, inputs, horizon, kProbeMaxLen, alphabet);
    const std::size_t cut = static_cast<std::size_t>(rng.uniform(0, horizon - 1));
    const std::string& changed = inputs[rng.index(inputs.size())];

    TimeInterval original = u.at(changed)[cut];
    TimeInterval replacement = random_interval(rng, kProbeMaxLen, alphabet);
    for (int attempt = 0; attempt < 8 && replacement == original; ++attempt)
        replacement = random_interval(rng, kProbeMaxLen, alphabet);
    if (replacement == original) {
        if (replacement.empty())
            replacement.emplace_back(alphabet.front());
        else
            replacement.pop_back();
    }

    std::map<std::string, StreamPrefix> cols = u.channels();
    std::vector<TimeInterval> column = cols.at(changed).intervals();
    column[cut] = std::move(replacement);
    cols[changed] = StreamPrefix(std::move(column));
    Trace u2(std::move(cols));

    Trace out1 = run(spec, u);
    Trace out2 = run(spec, u2);
    for (std::size_t tick = 0; tick <= cut; ++tick)
        for (const auto& [name, s] : out1.channels())
            if (s[tick] != out2.at(name)[tick])
                return CausalityWitness{trial, cut, tick, name, u, std::move(u2), std::move(out1), std::move(out2)};
    return std::nullopt;
}

struct ProbeSetup {
    std::vector<std::string> inputs;
    std::vector<std::string> alphabet;
    bool runnable = false;
};

ProbeSetup probe_setup(const TSTDSpec& spec, std::size_t trials, std::size_t horizon)
{
    ProbeSetup p{spec.inputs(), probe_alphabet(spec.mentioned_tags()), false};
    p.runnable = trials > 0 && horizon > 0 && !p.inputs.empty();
    return p;
}

std::optional<SimulationWitness> simulation_trial(const Behavior& a, const Behavior& b,
                                                  const std::vector<std::string>& inputs,
                                                  const std::vector<std::string>& alphabet, std::size_t horizon,
                                                  std::uint64_t seed, std::size_t trial)
{
    Rng rng = trial_rng(seed, trial);
    const Trace input = random_trace(rng, inputs, horizon, kProbeMaxLen, alphabet);
    auto w = compare_untimed(a, b, input);
    if (w)
        w->trial = trial;
    return w;
}

std::vector<std::string> simulation_alphabet(const Behavior& a, const Behavior& b)
{
    std::vector<std::string> tags = a.tags;
    tags.insert(tags.end(), b.tags.begin(), b.tags.end());
    return probe_alphabet(std::move(tags));
}

void require_same_signature(const Behavior& a, const Behavior& b)
{
    if (a.inputs != b.inputs || a.outputs != b.outputs)
        throw ChannelMismatch("untimed simulation needs identical input and output channel names");
}

}  // namespace

Configuration initial_configuration(const TSTDSpec& spec)
{
    return {spec.initial, spec.initial_env()};
}

StepResult step(const TSTDSpec& spec, const Configuration& cfg, const TickInputs& inputs)
{
    StepResult r{cfg, {}};
    for (const auto& name : spec.outputs())
        r.outputs[name];

    const auto enabled = enabled_transitions(spec, cfg.state, cfg.env, inputs);
    if (enabled.empty())
        return r;

    const Transition& t = spec.transitions[enabled.front()];
    for (const auto& o : t.outputs) {
        if (o.pass_from) {
            auto it = inputs.find(*o.pass_from);
            r.outputs[o.channel] = it == inputs.end() ? TimeInterval{} : it->second;
        } else {
            r.outputs[o.channel] = o.literal;
        }
    }
    for (const auto& u : t.updates) {
        auto& slot = r.next.env[u.var];
        slot = u.kind == VarUpdate::Kind::Set ? u.value : wrapping_add(cfg.env.at(u.var), u.value);
    }
    r.next.state = t.target;
    return r;
}

Trace run(const TSTDSpec& spec, const Trace& inputs)
{
    const auto in_names = spec.inputs();
    require_signature({in_names.begin(), in_names.end()}, inputs, "run");

    const auto out_names = spec.outputs();
    std::map<std::string, std::vector<TimeInterval>> cols;
    for (const auto& name : out_names)
        cols[name].reserve(inputs.length());

    Configuration cfg = initial_configuration(spec);
    for (std::size_t tick = 0; tick < inputs.length(); ++tick) {
        StepResult r = step(spec, cfg, inputs_at(inputs, tick));
        for (auto& [name, iv] : r.outputs)
            cols[name].push_back(std::move(iv));
        cfg = std::move(r.next);
    }

    std::map<std::string, StreamPrefix> out;
    for (auto& [name, col] : cols)
        out.emplace(name, StreamPrefix(std::move(col)));
    return Trace(std::move(out));
}

Behavior behavior_of(const TSTDSpec& spec)
{
    const auto ins = spec.inputs();
    const auto outs = spec.outputs();
    return {{ins.begin(), ins.end()},
            {outs.begin(), outs.end()},
            spec.mentioned_tags(),
            [spec](const Trace& t) { return run(spec, t); }};
}

std::optional<SimulationWitness> compare_untimed(const Behavior& a, const Behavior& b, const Trace& input)
{
    const Trace out_a = a.run(input);
    const Trace out_b = b.run(input);
    for (const auto& name : a.outputs) {
        TimeInterval ua = untimed_abstraction(out_a.at(name));
        TimeInterval ub = untimed_abstraction(out_b.at(name));
        if (ua != ub)
            return SimulationWitness{0, name, input, std::move(ua), std::move(ub)};
    }
    return std::nullopt;
}

ProbeResult probe_causality(const TSTDSpec& spec, std::size_t trials, std::size_t horizon, std::uint64_t seed)
{
    const ProbeSetup p = probe_setup(spec, trials, horizon);
    if (!p.runnable)
        return {};

    std::vector<std::optional<CausalityWitness>> found(trials);
    std::atomic<std::size_t> first{trials};
    const auto n = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto trial = static_cast<std::size_t>(i);
        if (trial > first.load(std::memory_order_relaxed))
            continue;
        found[trial] = probe_trial(spec, p.inputs, p.alphabet, horizon, seed, trial);
        if (found[trial]) {
            std::size_t cur = first.load();
            while (trial < cur && !first.compare_exchange_weak(cur, trial)) {
            }
        }
    }
    const std::size_t idx = first.load();
    return idx < trials ? ProbeResult{std::move(found[idx])} : ProbeResult{};
}

SimulationResult check_untimed_simulation(const Behavior& a, const Behavior& b, std::size_t trials,
                                          std::size_t horizon, std::uint64_t seed)
{
    require_same_signature(a, b);
    const std::vector<std::string> inputs(a.inputs.begin(), a.inputs.end());
    const auto alphabet = simulation_alphabet(a, b);

    std::vector<std::optional<SimulationWitness>> found(trials);
    std::atomic<std::size_t> first{trials};
    const auto n = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto trial = static_cast<std::size_t>(i);
        if (trial > first.load(std::memory_order_relaxed))
            continue;
        found[trial] = simulation_trial(a, b, inputs, alphabet, horizon, seed, trial);
        if (found[trial]) {
            std::size_t cur = first.load();
            while (trial < cur && !first.compare_exchange_weak(cur, trial)) {
            }
        }
    }
    const std::size_t idx = first.load();
    return idx < trials ? SimulationResult{std::move(found[idx])} : SimulationResult{};
}

SimulationResult check_untimed_simulation(const TSTDSpec& a, const TSTDSpec& b, std::size_t trials,
                                          std::size_t horizon, std::uint64_t seed)
{
    return check_untimed_simulation(behavior_of(a), behavior_of(b), trials, horizon, seed);
}

std::vector<Trace> run_batch(const TSTDSpec& spec, const std::vector<Trace>& inputs)
{
    std::vector<Trace> out(inputs.size());
    const auto n = static_cast<std::int64_t>(inputs.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = run(spec, inputs[static_cast<std::size_t>(i)]);
    return out;
}

namespace serial {

ProbeResult probe_causality(const TSTDSpec& spec, std::size_t trials, std::size_t horizon, std::uint64_t seed)
{
    const ProbeSetup p = probe_setup(spec, trials, horizon);
    if (!p.runnable)
        return {};
    for (std::size_t trial = 0; trial < trials; ++trial)
        if (auto w = probe_trial(spec, p.inputs, p.alphabet, horizon, seed, trial))
            return {std::move(w)};
    return {};
}

SimulationResult check_untimed_simulation(const Behavior& a, const Behavior& b, std::size_t trials,
                                          std::size_t horizon, std::uint64_t seed)
{
    require_same_signature(a, b);
    const std::vector<std::string> inputs(a.inputs.begin(), a.inputs.end());
    const auto alphabet = simulation_alphabet(a, b);
    for (std::size_t trial = 0; trial < trials; ++trial)
        if (auto w = simulation_trial(a, b, inputs, alphabet, horizon, seed, trial))
            return {std::move(w)};
    return {};
}

std::vector<Trace> run_batch(const TSTDSpec& spec, const std::vector<Trace>& inputs)
{
    std::vector<Trace> out;
    out.reserve(inputs.size());
    for (const auto& t : inputs)
        out.push_back(run(spec, t));
    return out;
}

}  // namespace serial

}  // namespace tstd
