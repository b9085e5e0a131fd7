// tstd: command-line front end for timed streams, TSTD components and networks.
//
// Exit codes: 0 success, 1 check refuted / ill-formed / data mismatch, 2 usage or parse error, 3 i/o error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "tstd/compose.hpp"
#include "tstd/dsl.hpp"
#include "tstd/executor.hpp"
#include "tstd/random.hpp"

namespace {

using namespace tstd;

enum Exit : int { kOk = 0, kRefuted = 1, kUsage = 2, kIo = 3 };

struct Failure {
    int code;
    std::string message;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Failure{kIo, "cannot read '" + path + "'"};
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& data)
{
    if (path.empty()) {
        std::cout << data;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    out << data;
    if (!out)
        throw Failure{kIo, "cannot write '" + path + "'"};
}

[[noreturn]] void fail_parse(const std::string& path, const std::vector<Diagnostic>& errors)
{
    std::ostringstream msg;
    bool io = false;
    for (std::size_t i = 0; i < errors.size(); ++i) {
        msg << (i ? "\n" : "") << path << ":" << to_string(errors[i]);
        io = io || errors[i].category == Diagnostic::Category::Io;
    }
    throw Failure{io ? kIo : kUsage, msg.str()};
}

bool is_table(const std::string& path, const std::string& format)
{
    if (format == "table")
        return true;
    if (format == "textual")
        return false;
    return std::filesystem::path(path).extension() == ".ttab";
}

ComponentSource load_source(const std::string& path, const std::string& format)
{
    const std::string text = read_file(path);
    auto parsed = is_table(path, format) ? parse_table_source(text) : parse_component_source(text);
    if (!parsed.value)
        fail_parse(path, parsed.errors);
    return std::move(*parsed.value);
}

TSTDSpec load_spec(const std::string& path, const std::string& format = "")
{
    const std::string text = read_file(path);
    auto parsed = is_table(path, format) ? parse_table(text) : parse_component(text);
    if (!parsed.value)
        fail_parse(path, parsed.errors);
    return std::move(*parsed.value);
}

Network load_network(const std::string& path)
{
    const std::string text = read_file(path);
    auto parsed = parse_network(text, file_loader(std::filesystem::path(path).parent_path().string()));
    if (!parsed.value)
        fail_parse(path, parsed.errors);
    return std::move(*parsed.value);
}

Trace load_trace(const std::string& path)
{
    auto parsed = parse_trace(read_file(path));
    if (!parsed.value)
        fail_parse(path, parsed.errors);
    return std::move(*parsed.value);
}

Behavior load_behavior(const std::string& path)
{
    if (std::filesystem::path(path).extension() == ".tnet")
        return behavior_of(load_network(path));
    return behavior_of(load_spec(path));
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

// Applies `op` to every channel of the trace.
template <class Op>
Trace map_channels(const Trace& t, Op op)
{
    std::map<std::string, StreamPrefix> out;
    for (const auto& [name, s] : t.channels())
        out.emplace(name, op(s));
    return out.empty() ? Trace({}, op(StreamPrefix::silent(t.length())).length()) : Trace(std::move(out));
}

int cmd_validate(const std::string& path, const std::string& format)
{
    const ComponentSource src = load_source(path, format);
    const ValidationReport report = validate_spec(src.spec);
    for (const auto& f : report.findings) {
        const SourceSpan at = src.locate(f.where);
        std::cout << path << ":" << at.line << ":" << at.column << ": "
                  << (f.severity == Severity::Error ? "error" : "warning") << ": " << f.message << '\n';
    }
    std::cout << report.error_count() << " error(s), " << report.warning_count() << " warning(s)\n";
    return report.ok() ? kOk : kRefuted;
}

int cmd_simulate(const std::string& spec_path, const std::string& trace_path, const std::string& out,
                 const std::string& format)
{
    const TSTDSpec spec = load_spec(spec_path, format);
    const Trace input = load_trace(trace_path);
    Trace output;
    try {
        output = run(spec, input);
    } catch (const ChannelMismatch& e) {
        throw Failure{kRefuted, e.what()};
    }
    write_output(out, print_trace(output));
    (out.empty() ? std::cerr : std::cout) << "simulated " << output.length() << " ticks\n";
    return kOk;
}

struct StreamArgs {
    std::string op;
    std::vector<std::string> inputs;
    std::size_t n = 1;
    std::string strategy = "all-first";
    std::size_t d = 1;
    bool pad = false;
    std::string out;
};

int cmd_stream(const StreamArgs& a)
{
    if ((a.op == "split" || a.op == "join") && a.n == 0)
        throw Failure{kUsage, "-n must be at least 1"};
    const std::size_t want_inputs = a.op == "merge" ? 2 : 1;
    if (a.inputs.size() != want_inputs)
        throw Failure{kUsage, a.op + " takes " + std::to_string(want_inputs) + " trace file(s)"};

    const Trace t = load_trace(a.inputs[0]);
    Trace result;
    try {
        if (a.op == "split") {
            const SplitStrategy strategy = parse_split_strategy(a.strategy);
            result = map_channels(t, [&](const StreamPrefix& s) { return split(s, a.n, strategy); });
        } else if (a.op == "join") {
            const std::size_t padding = a.pad ? (a.n - t.length() % a.n) % a.n : 0;
            result = map_channels(t, [&](const StreamPrefix& s) {
                std::vector<TimeInterval> iv = s.intervals();
                iv.resize(iv.size() + padding);
                return join(StreamPrefix(std::move(iv)), a.n);
            });
        } else if (a.op == "merge") {
            const Trace right = load_trace(a.inputs[1]);
            if (t.channel_names() != right.channel_names())
                throw Failure{kRefuted, "merge needs traces over the same channels"};
            std::map<std::string, StreamPrefix> merged;
            for (const auto& [name, s] : t.channels())
                merged.emplace(name, timed_merge(s, right.at(name)));
            result = merged.empty() ? Trace({}, t.length()) : Trace(std::move(merged));
        } else if (a.op == "abstract") {
            result = map_channels(t, [](const StreamPrefix& s) { return StreamPrefix({untimed_abstraction(s)}); });
        } else {
            result = map_channels(t, [&](const StreamPrefix& s) { return delay_stream(s, a.d); });
        }
    } catch (const StreamError& e) {
        throw Failure{e.kind() == StreamError::Kind::InvalidGranularity ? kUsage : kRefuted, e.what()};
    } catch (const std::invalid_argument& e) {
        throw Failure{kUsage, e.what()};
    }
    write_output(a.out, print_trace(result));
    return kOk;
}

int cmd_check_causality(const std::string& path, std::size_t trials, std::size_t horizon, std::uint64_t seed)
{
    const TSTDSpec spec = load_spec(path);
    const CausalityClass syntactic = classify_causality_syntactic(spec);
    std::cout << "syntactic: " << to_string(syntactic) << '\n';
    const ProbeResult r = probe_causality(spec, trials, horizon, seed);
    if (!r.witness) {
        std::cout << "consistent-with-strong (" << trials << " trials, horizon " << horizon << ", seed " << seed
                  << ")\n";
        return kOk;
    }
    const CausalityWitness& w = *r.witness;
    std::cout << "refuted-strong: inputs first differ at tick " << w.cut << ", output '" << w.channel
              << "' differs at tick " << w.tick << " (trial " << w.trial << ")\n";
    std::cout << "# witness input A\n" << print_trace(w.first_input);
    std::cout << "# witness input B\n" << print_trace(w.second_input);
    std::cout << "# output A\n" << print_trace(w.first_output);
    std::cout << "# output B\n" << print_trace(w.second_output);
    return kRefuted;
}

int cmd_check_untimed(const std::string& a, const std::string& b, std::size_t trials, std::size_t horizon,
                      std::uint64_t seed)
{
    const Behavior ba = load_behavior(a);
    const Behavior bb = load_behavior(b);
    SimulationResult r;
    try {
        r = check_untimed_simulation(ba, bb, trials, horizon, seed);
    } catch (const ChannelMismatch& e) {
        throw Failure{kRefuted, e.what()};
    }
    if (r.agree()) {
        std::cout << "agree (" << trials << " trials, horizon " << horizon << ", seed " << seed << ")\n";
        return kOk;
    }
    const SimulationWitness& w = *r.witness;
    std::cout << "disagree: untimed output on '" << w.channel << "' differs (trial " << w.trial << ")\n";
    std::cout << "# first:  " << to_string(w.first) << '\n';
    std::cout << "# second: " << to_string(w.second) << '\n';
    std::cout << "# witness input\n" << print_trace(w.input);
    return kRefuted;
}

int cmd_check_feedback(const std::string& path)
{
    const FeedbackResult r = check_feedback_wellformed(load_network(path));
    if (r.well_formed()) {
        std::cout << "well-formed\n";
        return kOk;
    }
    std::cout << "ill-formed: instantaneous cycle";
    for (const auto& id : r.cycle)
        std::cout << ' ' << id;
    std::cout << '\n';
    return kRefuted;
}

int cmd_compose(const std::string& net_path, const std::string& trace_path, std::optional<std::size_t> ticks,
                const std::string& out)
{
    const Network net = load_network(net_path);
    const Trace input = load_trace(trace_path);
    const FeedbackResult fb = check_feedback_wellformed(net);
    if (!fb.well_formed()) {
        std::string cycle;
        for (const auto& id : fb.cycle)
            cycle += " " + id;
        throw Failure{kRefuted, "ill-formed network, instantaneous cycle:" + cycle};
    }
    Trace output;
    try {
        output = run_network(net, input, ticks.value_or(input.length()));
    } catch (const ChannelMismatch& e) {
        throw Failure{kRefuted, e.what()};
    } catch (const std::out_of_range& e) {
        throw Failure{kRefuted, e.what()};
    }
    write_output(out, print_trace(output));
    (out.empty() ? std::cerr : std::cout) << "composed " << output.length() << " ticks\n";
    return kOk;
}

int cmd_gen_trace(const std::string& channels_arg, std::size_t ticks, std::uint64_t seed, std::size_t max_len,
                  const std::string& alphabet_arg, const std::string& out)
{
    const auto channels = split_list(channels_arg);
    const auto alphabet = split_list(alphabet_arg);
    if (channels.empty())
        throw Failure{kUsage, "--channels must name at least one channel"};
    for (const auto& c : channels)
        if (!is_identifier(c))
            throw Failure{kUsage, "invalid channel name '" + c + "'"};
    if (std::set<std::string>(channels.begin(), channels.end()).size() != channels.size())
        throw Failure{kUsage, "duplicate channel in --channels"};
    if (alphabet.empty() && max_len > 0)
        throw Failure{kUsage, "--alphabet must name at least one tag"};
    for (const auto& tag : alphabet)
        if (!is_identifier(tag))
            throw Failure{kUsage, "invalid tag '" + tag + "'"};
    Rng rng(seed);
    write_output(out, print_trace(random_trace(rng, channels, ticks, max_len, alphabet)));
    return kOk;
}

int cmd_export_dot(const std::string& path, const std::string& format)
{
    std::cout << export_dot(load_spec(path, format));
    return kOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Timed streams, timed state transition diagrams and synchronous networks"};
    app.require_subcommand(1);
    const std::vector<std::string> formats{"textual", "table"};

    std::string format;
    std::string spec_path, trace_path, out_path, net_path;

    auto* validate = app.add_subcommand("validate", "Parse and validate a component");
    validate->add_option("spec", spec_path, "Component file (.tstd or .ttab)")->required();
    validate->add_option("--format", format, "Input style")->check(CLI::IsMember(formats));

    auto* simulate = app.add_subcommand("simulate", "Run a component on an input trace");
    simulate->add_option("spec", spec_path)->required();
    simulate->add_option("trace", trace_path)->required();
    simulate->add_option("--out", out_path, "Output trace file (default: stdout)");
    simulate->add_option("--format", format)->check(CLI::IsMember(formats));

    StreamArgs sargs;
    auto* stream = app.add_subcommand("stream", "Apply a stream operator to every channel of a trace");
    stream->require_subcommand(1);
    for (const char* op : {"split", "join", "merge", "abstract", "delay"}) {
        auto* sub = stream->add_subcommand(op);
        sub->add_option("traces", sargs.inputs)->required();
        sub->add_option("--out", sargs.out);
        if (std::string(op) == "split" || std::string(op) == "join")
            sub->add_option("-n", sargs.n, "Granularity factor")->required();
        if (std::string(op) == "split")
            sub->add_option("--strategy", sargs.strategy)->check(CLI::IsMember({"all-first", "all-last", "spread"}));
        if (std::string(op) == "join")
            sub->add_flag("--pad", sargs.pad, "Append empty ticks up to the next multiple of n");
        if (std::string(op) == "delay")
            sub->add_option("-d", sargs.d, "Delay in ticks");
        sub->callback([&sargs, op] { sargs.op = op; });
    }

    std::size_t trials = 200, horizon = 16;
    std::uint64_t seed = 0;
    std::vector<std::string> check_paths;
    auto* check = app.add_subcommand("check", "Causality, untimed simulation and feedback checks");
    check->require_subcommand(1);
    std::string check_kind;
    for (const char* kind : {"causality", "untimed-sim", "feedback"}) {
        auto* sub = check->add_subcommand(kind);
        sub->add_option("paths", check_paths)->required()->expected(std::string(kind) == "untimed-sim" ? 2 : 1);
        if (std::string(kind) != "feedback") {
            sub->add_option("--trials", trials)->capture_default_str();
            sub->add_option("--horizon", horizon)->capture_default_str();
            sub->add_option("--seed", seed)->capture_default_str();
        }
        sub->callback([&check_kind, kind] { check_kind = kind; });
    }

    std::optional<std::size_t> ticks;
    auto* compose = app.add_subcommand("compose", "Run a component network on an input trace");
    compose->add_option("network", net_path)->required();
    compose->add_option("trace", trace_path)->required();
    compose->add_option("--ticks", ticks, "Ticks to run (default: trace length)");
    compose->add_option("--out", out_path);

    std::string channels, alphabet = "a,b,c";
    std::size_t gen_ticks = 0, max_len = 3;
    std::uint64_t gen_seed = 0;
    auto* gen = app.add_subcommand("gen-trace", "Generate a seeded random trace");
    gen->add_option("--channels", channels, "Comma-separated channel names")->required();
    gen->add_option("--ticks", gen_ticks)->required();
    gen->add_option("--seed", gen_seed)->capture_default_str();
    gen->add_option("--max-len", max_len)->capture_default_str();
    gen->add_option("--alphabet", alphabet)->capture_default_str();
    gen->add_option("--out", out_path);

    auto* dot = app.add_subcommand("export-dot", "Print a component as a Graphviz digraph");
    dot->add_option("spec", spec_path)->required();
    dot->add_option("--format", format)->check(CLI::IsMember(formats));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*validate)
            return cmd_validate(spec_path, format);
        if (*simulate)
            return cmd_simulate(spec_path, trace_path, out_path, format);
        if (*stream)
            return cmd_stream(sargs);
        if (*check) {
            if (check_kind == "causality")
                return cmd_check_causality(check_paths.at(0), trials, horizon, seed);
            if (check_kind == "untimed-sim")
                return cmd_check_untimed(check_paths.at(0), check_paths.at(1), trials, horizon, seed);
            return cmd_check_feedback(check_paths.at(0));
        }
        if (*compose)
            return cmd_compose(net_path, trace_path, ticks, out_path);
        if (*gen)
            return cmd_gen_trace(channels, gen_ticks, gen_seed, max_len, alphabet, out_path);
        if (*dot)
            return cmd_export_dot(spec_path, format);
    } catch (const Failure& f) {
        std::cerr << "tstd: " << f.message << '\n';
        return f.code;
    } catch (const std::exception& e) {
        std::cerr << "tstd: " << e.what() << '\n';
        return kRefuted;
    }
    return kUsage;
}
