#include <map>
#include <set>

#include "text_cursor.hpp"

namespace tstd {

namespace detail {
Parsed<TSTDSpec> check_references(Parsed<ComponentSource> parsed);
}

using detail::Cursor;
using detail::ParseFailure;

namespace {

struct Cell {
    std::string_view text;
    std::size_t column;  // 1-based
};

std::vector<Cell> split_cells(std::string_view line)
{
    std::vector<Cell> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        const std::size_t end = comma == std::string_view::npos ? line.size() : comma;
        cells.push_back({line.substr(start, end - start), start + 1});
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return cells;
}

enum class Column { Source, Target, When, Guard, Emit, Set };

struct HeaderColumn {
    Column kind;
    std::string channel;  // When, Emit
};

template <class F>
void for_each_item(Cursor& c, F&& parse_one)
{
    if (c.at_end())
        return;
    do {
        parse_one();
    } while (c.consume(";"));
}

}  // namespace

Parsed<ComponentSource> parse_table_source(std::string_view text)
{
    Parsed<ComponentSource> result;
    ComponentSource src;
    TSTDSpec& spec = src.spec;
    bool named = false;
    bool explicit_states = false;
    std::vector<HeaderColumn> header;
    bool have_header = false;
    std::set<std::string> seen_states;

    auto note_state = [&](const std::string& s, SourceSpan at) {
        if (!explicit_states && seen_states.insert(s).second) {
            spec.states.push_back(s);
            src.state_spans.push_back(at);
        }
    };

    const auto lines = detail::split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        const std::string_view line = detail::strip_comment(lines[i]);
        if (detail::trim(line).empty())
            continue;
        try {
            Cursor c(line, line_no);
            if (c.consume("@")) {
                if (have_header)
                    c.fail("preamble line after the header row");
                const SourceSpan at = c.span();
                const std::string key = c.expect_identifier("preamble keyword");
                if (key == "component") {
                    if (named)
                        throw ParseFailure{at, "duplicate @component"};
                    src.name_span = c.span();
                    spec.name = c.expect_identifier("component name");
                    named = true;
                } else if (key == "in" || key == "out") {
                    do {
                        const SourceSpan name_at = c.span();
                        spec.channels.push_back(
                            {c.expect_identifier("channel name"), key == "in" ? Direction::In : Direction::Out});
                        src.channel_spans.push_back(name_at);
                    } while (!c.at_end());
                } else if (key == "var") {
                    const SourceSpan name_at = c.span();
                    VarDecl v;
                    v.name = c.expect_identifier("variable name");
                    c.expect("=");
                    v.initial = c.expect_integer("initial value");
                    spec.vars.push_back(std::move(v));
                    src.var_spans.push_back(name_at);
                } else if (key == "initial") {
                    if (!spec.initial.empty())
                        throw ParseFailure{at, "duplicate @initial"};
                    src.initial_span = c.span();
                    spec.initial = c.expect_identifier("initial state");
                    if (!explicit_states)
                        note_state(spec.initial, src.initial_span);
                } else if (key == "states") {
                    if (explicit_states)
                        throw ParseFailure{at, "duplicate @states"};
                    explicit_states = true;
                    spec.states.clear();
                    src.state_spans.clear();
                    do {
                        src.state_spans.push_back(c.span());
                        spec.states.push_back(c.expect_identifier("state name"));
                    } while (!c.at_end());
                } else {
                    throw ParseFailure{at, "unknown preamble '@" + key + "'"};
                }
                c.expect_end();
                continue;
            }

            const auto cells = split_cells(line);
            if (!have_header) {
                std::set<std::string> names;
                bool has_source = false, has_target = false;
                for (const auto& cell : cells) {
                    Cursor hc(cell.text, line_no, cell.column);
                    const SourceSpan at = hc.span();
                    const std::string name(detail::trim(cell.text));
                    if (!names.insert(name).second)
                        throw ParseFailure{at, "duplicate column '" + name + "'"};
                    const std::string word = hc.expect_identifier("column name");
                    if (word == "source") {
                        header.push_back({Column::Source, {}});
                        has_source = true;
                    } else if (word == "target") {
                        header.push_back({Column::Target, {}});
                        has_target = true;
                    } else if (word == "guard") {
                        header.push_back({Column::Guard, {}});
                    } else if (word == "set") {
                        header.push_back({Column::Set, {}});
                    } else if (word == "when" || word == "emit") {
                        hc.expect(":");
                        const SourceSpan ch_at = hc.span();
                        std::string channel = hc.expect_identifier("channel name");
                        const Direction want = word == "when" ? Direction::In : Direction::Out;
                        bool known = false;
                        for (const auto& decl : spec.channels)
                            known = known || (decl.name == channel && decl.direction == want);
                        if (!known)
                            throw ParseFailure{ch_at, "unknown " + std::string(want == Direction::In ? "input" : "output") +
                                                          " channel '" + channel + "' in header"};
                        header.push_back({word == "when" ? Column::When : Column::Emit, std::move(channel)});
                    } else {
                        throw ParseFailure{at, "unknown column '" + word + "'"};
                    }
                    hc.expect_end();
                }
                if (!has_source || !has_target)
                    throw ParseFailure{{line_no, 1}, "header row needs 'source' and 'target' columns"};
                have_header = true;
                continue;
            }

            if (cells.size() != header.size())
                throw ParseFailure{{line_no, 1}, "row at line " + std::to_string(line_no) + " has " +
                                                     std::to_string(cells.size()) + " cells, header has " +
                                                     std::to_string(header.size())};
            Transition t;
            SourceSpan source_at{line_no, 1}, target_at{line_no, 1};
            for (std::size_t k = 0; k < cells.size(); ++k) {
                Cursor cc(cells[k].text, line_no, cells[k].column);
                const HeaderColumn& col = header[k];
                switch (col.kind) {
                case Column::Source:
                    source_at = cc.span();
                    t.source = cc.expect_identifier("source state");
                    break;
                case Column::Target:
                    target_at = cc.span();
                    t.target = cc.expect_identifier("target state");
                    break;
                case Column::When:
                    if (!cc.at_end())
                        t.interval_guards.push_back({col.channel, detail::parse_pattern(cc)});
                    break;
                case Column::Guard:
                    for_each_item(cc, [&] { t.var_guards.push_back(detail::parse_var_guard(cc)); });
                    break;
                case Column::Emit:
                    if (!cc.at_end())
                        t.outputs.push_back(detail::parse_emission(cc, col.channel));
                    break;
                case Column::Set:
                    for_each_item(cc, [&] { t.updates.push_back(detail::parse_update(cc)); });
                    break;
                }
                cc.expect_end();
            }
            note_state(t.source, source_at);
            note_state(t.target, target_at);
            spec.transitions.push_back(std::move(t));
            src.transition_spans.push_back({line_no, 1});
        } catch (const ParseFailure& f) {
            result.errors.push_back({Diagnostic::Category::Syntax, f.span, f.message});
        }
    }
    if (!named)
        result.errors.push_back({Diagnostic::Category::Syntax, {1, 1}, "missing '@component NAME' line"});
    if (spec.initial.empty())
        src.initial_span = src.name_span;
    if (result.errors.empty())
        result.value = std::move(src);
    return result;
}

Parsed<TSTDSpec> parse_table(std::string_view text)
{
    return detail::check_references(parse_table_source(text));
}

}  // namespace tstd
