#include <sstream>

#include "text_cursor.hpp"

namespace tstd {

using detail::Cursor;
using detail::ParseFailure;

std::string to_string(const Diagnostic& d)
{
    return std::to_string(d.span.line) + ":" + std::to_string(d.span.column) + ": " + d.message;
}

std::string to_string(const IntervalPattern& p)
{
    using K = IntervalPattern::Kind;
    switch (p.kind) {
    case K::Any: return "any";
    case K::Empty: return "empty";
    case K::NonEmpty: return "nonempty";
    case K::Contains: return "contains(" + to_string(*p.message) + ")";
    case K::LenEq: return "len=" + std::to_string(p.count);
    case K::LenGe: return "len>=" + std::to_string(p.count);
    case K::FirstIs: return "first=" + to_string(*p.message);
    }
    return "?";
}

std::string to_string(Relation r)
{
    switch (r) {
    case Relation::Less: return "<";
    case Relation::LessEq: return "<=";
    case Relation::Equal: return "=";
    case Relation::NotEqual: return "!=";
    case Relation::GreaterEq: return ">=";
    case Relation::Greater: return ">";
    }
    return "?";
}

std::string to_string(const TimeInterval& messages)
{
    std::string out = "[";
    for (std::size_t i = 0; i < messages.size(); ++i)
        out += (i ? " " : "") + to_string(messages[i]);
    return out + "]";
}

SourceSpan ComponentSource::locate(const SpecLocation& where) const
{
    auto pick = [](const std::vector<SourceSpan>& spans, std::size_t i, SourceSpan fallback) {
        return i < spans.size() ? spans[i] : fallback;
    };
    using K = SpecLocation::Kind;
    switch (where.kind) {
    case K::Spec: return name_span;
    case K::Initial: return initial_span;
    case K::Channel: return pick(channel_spans, where.index, name_span);
    case K::Var: return pick(var_spans, where.index, name_span);
    case K::State: return pick(state_spans, where.index, name_span);
    case K::Transition: return pick(transition_spans, where.index, name_span);
    }
    return name_span;
}

Parsed<ComponentSource> parse_component_source(std::string_view text)
{
    Parsed<ComponentSource> result;
    ComponentSource src;
    TSTDSpec& spec = src.spec;
    bool named = false;
    bool have_initial = false;
    Transition* current = nullptr;
    bool orphaned = false;  // clauses following a malformed transition header

    const auto lines = detail::split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        Cursor c(detail::strip_comment(lines[i]), i + 1);
        if (c.at_end())
            continue;
        std::string keyword;
        try {
            const SourceSpan at = c.span();
            keyword = c.expect_identifier("a declaration keyword");
            const bool clause = keyword == "when" || keyword == "emit" || keyword == "set";
            if (clause && orphaned)
                continue;
            if (!clause)
                orphaned = false;
            if (keyword == "component") {
                if (named)
                    throw ParseFailure{at, "duplicate component declaration"};
                src.name_span = c.span();
                spec.name = c.expect_identifier("component name");
                named = true;
                current = nullptr;
            } else if (keyword == "in" || keyword == "out") {
                if (!c.consume_keyword("chan"))
                    c.fail("expected 'chan'");
                const SourceSpan name_at = c.span();
                spec.channels.push_back({c.expect_identifier("channel name"),
                                         keyword == "in" ? Direction::In : Direction::Out});
                src.channel_spans.push_back(name_at);
                current = nullptr;
            } else if (keyword == "var") {
                const SourceSpan name_at = c.span();
                VarDecl v;
                v.name = c.expect_identifier("variable name");
                c.expect("=");
                v.initial = c.expect_integer("initial value");
                spec.vars.push_back(std::move(v));
                src.var_spans.push_back(name_at);
                current = nullptr;
            } else if (keyword == "state") {
                const SourceSpan name_at = c.span();
                std::string name = c.expect_identifier("state name");
                if (c.consume_keyword("initial")) {
                    if (have_initial)
                        throw ParseFailure{name_at, "more than one initial state"};
                    spec.initial = name;
                    src.initial_span = name_at;
                    have_initial = true;
                }
                spec.states.push_back(std::move(name));
                src.state_spans.push_back(name_at);
                current = nullptr;
            } else if (keyword == "trans") {
                Transition t;
                t.source = c.expect_identifier("source state");
                c.expect("->");
                t.target = c.expect_identifier("target state");
                spec.transitions.push_back(std::move(t));
                src.transition_spans.push_back(at);
                current = &spec.transitions.back();
            } else if (keyword == "when" || keyword == "emit" || keyword == "set") {
                if (!current)
                    throw ParseFailure{at, "'" + keyword + "' clause outside a transition"};
                if (keyword == "when") {
                    detail::parse_when_items(c, *current);
                } else if (keyword == "emit") {
                    std::string channel = c.expect_identifier("output channel name");
                    c.expect(":");
                    current->outputs.push_back(detail::parse_emission(c, std::move(channel)));
                } else {
                    current->updates.push_back(detail::parse_update(c));
                }
            } else {
                throw ParseFailure{at, "unknown declaration '" + keyword + "'"};
            }
            c.expect_end();
        } catch (const ParseFailure& f) {
            result.errors.push_back({Diagnostic::Category::Syntax, f.span, f.message});
            if (keyword == "trans") {
                current = nullptr;
                orphaned = true;
            }
        }
    }
    if (!named)
        result.errors.push_back({Diagnostic::Category::Syntax, {1, 1}, "missing 'component NAME' declaration"});
    if (!have_initial && named)
        src.initial_span = src.name_span;
    if (result.errors.empty())
        result.value = std::move(src);
    return result;
}

namespace detail {

Parsed<TSTDSpec> check_references(Parsed<ComponentSource> parsed)
{
    Parsed<TSTDSpec> out;
    out.errors = std::move(parsed.errors);
    if (!parsed.value)
        return out;
    for (const auto& f : validate_spec(parsed.value->spec).findings)
        if (f.severity == Severity::Error)
            out.errors.push_back({Diagnostic::Category::Reference, parsed.value->locate(f.where), f.message});
    if (out.errors.empty())
        out.value = std::move(parsed.value->spec);
    return out;
}

}  // namespace detail

Parsed<TSTDSpec> parse_component(std::string_view text)
{
    return detail::check_references(parse_component_source(text));
}

std::string print_component(const TSTDSpec& spec)
{
    std::ostringstream out;
    out << "component " << spec.name << '\n';
    for (const auto& ch : spec.channels)
        out << (ch.direction == Direction::In ? "in" : "out") << " chan " << ch.name << '\n';
    for (const auto& v : spec.vars)
        out << "var " << v.name << " = " << v.initial << '\n';
    for (const auto& s : spec.states)
        out << "state " << s << (s == spec.initial ? " initial" : "") << '\n';
    for (const auto& t : spec.transitions) {
        out << '\n' << "trans " << t.source << " -> " << t.target << '\n';
        std::string vars;
        for (const auto& g : t.var_guards)
            vars += ", " + g.var + " " + to_string(g.relation) + " " + std::to_string(g.bound);
        for (std::size_t i = 0; i < t.interval_guards.size(); ++i) {
            const auto& g = t.interval_guards[i];
            out << "  when " << g.channel << ": " << to_string(g.pattern) << (i == 0 ? vars : "") << '\n';
        }
        if (t.interval_guards.empty() && !vars.empty())
            out << "  when " << vars.substr(2) << '\n';
        for (const auto& o : t.outputs)
            out << "  emit " << o.channel << ": " << (o.pass_from ? "pass(" + *o.pass_from + ")" : to_string(o.literal))
                << '\n';
        for (const auto& u : t.updates)
            out << "  set " << detail::render_update(u) << '\n';
    }
    return out.str();
}

}  // namespace tstd
