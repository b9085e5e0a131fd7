#include <sstream>

#include "text_cursor.hpp"

namespace tstd {

namespace {

std::string quoted(std::string_view s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + '"';
}

std::string or_dash(std::string s)
{
    return s.empty() ? "-" : s;
}

}  // namespace

std::string export_dot(const TSTDSpec& spec)
{
    std::ostringstream out;
    out << "digraph " << quoted(spec.name) << " {\n";
    out << "  rankdir=LR;\n";
    out << "  node [shape=circle];\n";
    for (const auto& s : spec.states)
        out << "  " << quoted(s) << (s == spec.initial ? " [shape=doublecircle]" : "") << ";\n";
    for (const auto& t : spec.transitions) {
        std::string updates;
        for (const auto& u : t.updates)
            updates += (updates.empty() ? "" : ", ") + detail::render_update(u);
        const std::string label = or_dash(detail::render_guard(t)) + " / " +
                                  or_dash(detail::render_outputs(t, ", ")) + " / " + or_dash(updates);
        out << "  " << quoted(t.source) << " -> " << quoted(t.target) << " [label=" << quoted(label) << "];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace tstd
