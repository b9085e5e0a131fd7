#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "text_cursor.hpp"

namespace tstd {

using detail::Cursor;
using detail::ParseFailure;

ComponentLoader file_loader(std::string base_dir)
{
    return [base = std::filesystem::path(std::move(base_dir))](const std::string& path) -> std::optional<std::string> {
        std::filesystem::path p(path);
        if (p.is_relative())
            p = base / p;
        std::ifstream in(p, std::ios::binary);
        if (!in)
            return std::nullopt;
        std::ostringstream buf;
        buf << in.rdbuf();
        if (in.bad())
            return std::nullopt;
        return buf.str();
    };
}

namespace {

bool ends_with(std::string_view s, std::string_view suffix)
{
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

Endpoint parse_endpoint(Cursor& c)
{
    if (c.consume_keyword("extern"))
        return Endpoint::external(c.expect_identifier("external port name"));
    std::string id = c.expect_identifier("instance id or 'extern'");
    c.expect(".");
    return Endpoint::of(std::move(id), c.expect_identifier("port name"));
}

void add_unique(std::vector<std::string>& names, const std::string& name)
{
    if (std::find(names.begin(), names.end(), name) == names.end())
        names.push_back(name);
}

}  // namespace

Parsed<Network> parse_network(std::string_view text, const ComponentLoader& load)
{
    Parsed<Network> result;
    std::vector<ComponentInstance> instances;
    std::vector<SourceSpan> instance_spans;
    std::vector<Wire> wires;
    std::vector<SourceSpan> wire_spans;
    std::vector<std::string> ext_in, ext_out;

    const auto lines = detail::split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        Cursor c(detail::strip_comment(lines[i]), i + 1);
        if (c.at_end())
            continue;
        try {
            const SourceSpan at = c.span();
            const std::string keyword = c.expect_identifier("'use' or 'wire'");
            if (keyword == "use") {
                std::string id = c.expect_identifier("instance id");
                c.expect("=");
                const SourceSpan kind_at = c.span();
                if (c.consume_keyword("delay")) {
                    const auto d = c.expect_integer("delay in ticks");
                    if (d < 1)
                        throw ParseFailure{kind_at, "delay must be at least 1 tick"};
                    c.expect_end();
                    instances.push_back(ComponentInstance::delay(std::move(id), static_cast<std::size_t>(d)));
                } else if (c.consume_keyword("merge")) {
                    c.expect_end();
                    instances.push_back(ComponentInstance::merge(std::move(id)));
                } else if (c.consume_keyword("file")) {
                    const SourceSpan path_at = c.span();
                    const std::string path(detail::trim(c.rest()));
                    if (path.empty())
                        throw ParseFailure{path_at, "expected a file path"};
                    const auto contents = load(path);
                    if (!contents) {
                        result.errors.push_back({Diagnostic::Category::Io, path_at, "cannot read '" + path + "'"});
                        continue;
                    }
                    auto spec = ends_with(path, ".ttab") ? parse_table(*contents) : parse_component(*contents);
                    if (!spec.value) {
                        for (const auto& e : spec.errors)
                            result.errors.push_back({e.category, path_at, path + ":" + to_string(e)});
                        continue;
                    }
                    instances.push_back(ComponentInstance::spec(std::move(id), std::move(*spec.value)));
                } else {
                    c.fail("expected 'file PATH', 'delay D' or 'merge'");
                }
                instance_spans.push_back(at);
            } else if (keyword == "wire") {
                Wire w;
                w.from = parse_endpoint(c);
                c.expect("->");
                w.to = parse_endpoint(c);
                c.expect_end();
                if (w.from.is_external())
                    add_unique(ext_in, w.from.port);
                if (w.to.is_external())
                    add_unique(ext_out, w.to.port);
                wires.push_back(std::move(w));
                wire_spans.push_back(at);
            } else {
                throw ParseFailure{at, "unknown statement '" + keyword + "'"};
            }
        } catch (const ParseFailure& f) {
            result.errors.push_back({Diagnostic::Category::Syntax, f.span, f.message});
        }
    }
    if (!result.errors.empty())
        return result;

    NetworkBuild built = build_network(std::move(instances), std::move(wires), std::move(ext_in), std::move(ext_out));
    for (const auto& issue : built.issues) {
        SourceSpan span{1, 1};
        if (issue.subject == NetworkIssue::Subject::Wire && issue.index < wire_spans.size())
            span = wire_spans[issue.index];
        else if (issue.subject == NetworkIssue::Subject::Instance && issue.index < instance_spans.size())
            span = instance_spans[issue.index];
        result.errors.push_back({Diagnostic::Category::Reference, span, issue.message});
    }
    if (built.network)
        result.value = std::move(built.network);
    return result;
}

}  // namespace tstd
