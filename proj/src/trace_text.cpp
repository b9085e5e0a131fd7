#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "text_cursor.hpp"

namespace tstd {

using detail::Cursor;
using detail::ParseFailure;

namespace {

bool is_header(std::string_view line)
{
    Cursor c(line, 0);
    return c.consume_keyword("ticks") && c.peek() != ':';
}

}  // namespace

Parsed<Trace> parse_trace(std::string_view text)
{
    Parsed<Trace> result;
    std::vector<std::string> channels;
    bool declared = false;
    std::map<std::string, std::vector<TimeInterval>> cols;
    std::size_t ticks = 0;

    const auto lines = detail::split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        const std::string_view line = detail::strip_comment(lines[i]);
        if (detail::trim(line).empty())
            continue;
        try {
            if (!declared && ticks == 0 && is_header(line)) {
                Cursor c(line, line_no);
                c.consume_keyword("ticks");
                std::set<std::string> unique;
                while (!c.at_end()) {
                    const SourceSpan at = c.span();
                    std::string name = c.expect_identifier("channel name");
                    if (!unique.insert(name).second)
                        throw ParseFailure{at, "duplicate channel '" + name + "'"};
                    channels.push_back(std::move(name));
                }
                declared = true;
                continue;
            }

            const std::size_t tick = ticks;
            if (declared && channels.empty()) {
                Cursor c(line, line_no);
                c.expect("-");
                c.expect_end();
                ++ticks;
                continue;
            }

            std::map<std::string, TimeInterval> row;
            std::size_t start = 0;
            while (true) {
                const std::size_t bar = line.find('|', start);
                const std::size_t end = bar == std::string_view::npos ? line.size() : bar;
                Cursor c(line.substr(start, end - start), line_no, start + 1);
                const SourceSpan at = c.span();
                std::string name = c.expect_identifier("channel name");
                c.expect(":");
                TimeInterval iv;
                if (c.consume("-")) {
                    c.expect_end();
                } else {
                    while (!c.at_end())
                        iv.push_back(detail::parse_message(c));
                }
                if (row.count(name))
                    throw ParseFailure{at, "channel '" + name + "' appears twice at tick " + std::to_string(tick)};
                row.emplace(std::move(name), std::move(iv));
                if (bar == std::string_view::npos)
                    break;
                start = bar + 1;
            }

            if (!declared) {
                for (const auto& entry : row)
                    channels.push_back(entry.first);
                declared = true;
            }
            for (const auto& [name, iv] : row)
                if (std::find(channels.begin(), channels.end(), name) == channels.end())
                    throw ParseFailure{{line_no, 1}, "unknown channel '" + name + "' at tick " + std::to_string(tick)};
            for (const auto& name : channels)
                if (!row.count(name))
                    throw ParseFailure{{line_no, 1}, "tick " + std::to_string(tick) + " is missing channel '" + name + "'"};
            for (auto& [name, iv] : row)
                cols[name].push_back(std::move(iv));
            ++ticks;
        } catch (const ParseFailure& f) {
            result.errors.push_back({Diagnostic::Category::Syntax, f.span, f.message});
        }
    }
    if (!result.errors.empty())
        return result;

    std::map<std::string, StreamPrefix> prefixes;
    for (const auto& name : channels)
        prefixes.emplace(name, StreamPrefix(std::move(cols[name])));
    result.value = prefixes.empty() ? Trace({}, ticks) : Trace(std::move(prefixes));
    return result;
}

std::string print_trace(const Trace& trace)
{
    std::ostringstream out;
    out << "ticks";
    for (const auto& entry : trace.channels())
        out << ' ' << entry.first;
    out << '\n';
    for (std::size_t tick = 0; tick < trace.length(); ++tick) {
        if (trace.channels().empty()) {
            out << "-\n";
            continue;
        }
        bool first = true;
        for (const auto& [name, s] : trace.channels()) {
            out << (first ? "" : " | ") << name << ':';
            first = false;
            if (s[tick].empty())
                out << " -";
            for (const auto& m : s[tick])
                out << ' ' << to_string(m);
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace tstd
