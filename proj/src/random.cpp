#include "tstd/random.hpp"

#include <algorithm>
#include <limits>

namespace tstd {

std::uint64_t Rng::uniform(std::uint64_t lo, std::uint64_t hi)
{
    const std::uint64_t span = hi - lo;
    if (span == std::numeric_limits<std::uint64_t>::max())
        return engine_();
    const std::uint64_t range = span + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return lo + x % range;
}

Rng trial_rng(std::uint64_t seed, std::uint64_t index)
{
    // splitmix64 finalizer over the pair
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return Rng(z ^ (z >> 31));
}

TimeInterval random_interval(Rng& rng, std::size_t max_len, const std::vector<std::string>& alphabet)
{
    const std::size_t len = static_cast<std::size_t>(rng.uniform(0, max_len));
    TimeInterval out;
    if (alphabet.empty())
        return out;
    out.reserve(len);
    for (std::size_t i = 0; i < len; ++i)
        out.emplace_back(alphabet[rng.index(alphabet.size())]);
    return out;
}

Trace random_trace(Rng& rng, const std::vector<std::string>& channels, std::size_t ticks, std::size_t max_len,
                   const std::vector<std::string>& alphabet)
{
    std::map<std::string, std::vector<TimeInterval>> cols;
    for (const auto& ch : channels)
        cols[ch].reserve(ticks);
    for (std::size_t t = 0; t < ticks; ++t)
        for (const auto& ch : channels)
            cols[ch].push_back(random_interval(rng, max_len, alphabet));
    std::map<std::string, StreamPrefix> out;
    for (auto& [name, col] : cols)
        out.emplace(name, StreamPrefix(std::move(col)));
    if (out.empty())
        return Trace({}, ticks);
    return Trace(std::move(out));
}

std::vector<std::string> probe_alphabet(std::vector<std::string> tags)
{
    std::sort(tags.begin(), tags.end());
    tags.erase(std::unique(tags.begin(), tags.end()), tags.end());
    std::string fresh = "fresh";
    for (int i = 0; std::binary_search(tags.begin(), tags.end(), fresh); ++i)
        fresh = "fresh" + std::to_string(i);
    tags.push_back(fresh);
    return tags;
}

namespace {

IntervalPattern random_pattern(Rng& rng, const std::vector<std::string>& alphabet)
{
    switch (rng.uniform(0, 6)) {
    case 0: return IntervalPattern::any();
    case 1: return IntervalPattern::empty();
    case 2: return IntervalPattern::non_empty();
    case 3: return IntervalPattern::contains(Message(alphabet[rng.index(alphabet.size())]));
    case 4: return IntervalPattern::len_eq(rng.uniform(0, 3));
    case 5: return IntervalPattern::len_ge(rng.uniform(1, 3));
    default: return IntervalPattern::first_is(Message(alphabet[rng.index(alphabet.size())]));
    }
}

OutputAction random_output(Rng& rng, const std::string& channel, const std::vector<std::string>& inputs,
                           const std::vector<std::string>& alphabet, bool allow_pass)
{
    if (allow_pass && !inputs.empty() && rng.chance(1, 4))
        return OutputAction::pass(channel, inputs[rng.index(inputs.size())]);
    return OutputAction::emit(channel, random_interval(rng, 2, alphabet));
}

}  // namespace

TSTDSpec random_spec(Rng& rng, const RandomSpecOptions& options)
{
    TSTDSpec spec;
    spec.name = "Random";
    const std::size_t n_in = rng.uniform(1, std::max<std::size_t>(1, options.max_inputs));
    const std::size_t n_out = rng.uniform(1, std::max<std::size_t>(1, options.max_outputs));
    std::vector<std::string> inputs, outputs;
    for (std::size_t i = 0; i < n_in; ++i) {
        inputs.push_back("i" + std::to_string(i));
        spec.channels.push_back({inputs.back(), Direction::In});
    }
    for (std::size_t i = 0; i < n_out; ++i) {
        outputs.push_back("o" + std::to_string(i));
        spec.channels.push_back({outputs.back(), Direction::Out});
    }
    const std::size_t n_vars = rng.uniform(0, options.max_vars);
    for (std::size_t i = 0; i < n_vars; ++i)
        spec.vars.push_back({"v" + std::to_string(i), static_cast<std::int64_t>(rng.uniform(0, 2))});

    const std::size_t n_states = rng.uniform(1, std::max<std::size_t>(1, options.max_states));
    for (std::size_t i = 0; i < n_states; ++i)
        spec.states.push_back("S" + std::to_string(i));
    spec.initial = spec.states.front();

    // 0: unconstrained (mostly weak), 1: silent outputs everywhere, 2: Moore-style
    const auto style = rng.uniform(0, 2);
    for (const auto& state : spec.states) {
        const bool moore_total = style == 2 && rng.chance(1, 2);
        const std::size_t n_trans =
            moore_total ? 1 : static_cast<std::size_t>(rng.uniform(0, options.max_transitions_per_state));
        for (std::size_t k = 0; k < n_trans; ++k) {
            Transition t;
            t.source = state;
            t.target = spec.states[rng.index(spec.states.size())];
            if (!moore_total) {
                for (const auto& in : inputs)
                    if (rng.chance(2, 3))
                        t.interval_guards.push_back({in, random_pattern(rng, options.alphabet)});
                for (const auto& v : spec.vars)
                    if (rng.chance(1, 3))
                        t.var_guards.push_back({v.name, static_cast<Relation>(rng.uniform(0, 5)),
                                                static_cast<std::int64_t>(rng.uniform(0, 4))});
            }
            for (const auto& out : outputs) {
                if (style == 1 || (style == 2 && !moore_total))
                    continue;
                if (style == 2 || rng.chance(2, 3))
                    t.outputs.push_back(random_output(rng, out, inputs, options.alphabet, style == 0));
            }
            for (const auto& v : spec.vars)
                if (rng.chance(1, 2))
                    t.updates.push_back({v.name, rng.chance(1, 2) ? VarUpdate::Kind::Set : VarUpdate::Kind::Add,
                                         static_cast<std::int64_t>(rng.uniform(0, 2))});
            spec.transitions.push_back(std::move(t));
        }
    }
    return spec;
}

}  // namespace tstd
