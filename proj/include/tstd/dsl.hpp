#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tstd/compose.hpp"
#include "tstd/spec.hpp"
#include "tstd/trace.hpp"

namespace tstd {

struct SourceSpan {
    std::size_t line = 1;    // 1-based
    std::size_t column = 1;  // 1-based, in bytes

    friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

struct Diagnostic {
    enum class Category { Syntax, Reference, Io };

    Category category = Category::Syntax;
    SourceSpan span;
    std::string message;
};

/// `LINE:COL: message`
std::string to_string(const Diagnostic& d);

template <class T>
struct Parsed {
    std::optional<T> value;
    std::vector<Diagnostic> errors;

    bool ok() const noexcept { return value.has_value(); }
};

/// A syntactically valid component with the source position of every declaration, for locating
/// validation findings.
struct ComponentSource {
    TSTDSpec spec;
    SourceSpan name_span;
    SourceSpan initial_span;
    std::vector<SourceSpan> channel_spans;
    std::vector<SourceSpan> var_spans;
    std::vector<SourceSpan> state_spans;
    std::vector<SourceSpan> transition_spans;

    SourceSpan locate(const SpecLocation& where) const;
};

/// Textual style (`*.tstd`): syntax only, no reference checks.
Parsed<ComponentSource> parse_component_source(std::string_view text);

/// Table style (`*.ttab`): syntax only, no reference checks.
Parsed<ComponentSource> parse_table_source(std::string_view text);

/// Syntax plus reference errors (validation errors located at their declarations).
Parsed<TSTDSpec> parse_component(std::string_view text);
Parsed<TSTDSpec> parse_table(std::string_view text);

/// Canonical textual style; parse_component(print_component(s)) == s for every syntactically printable spec.
std::string print_component(const TSTDSpec& spec);

/// Resolves a `use ID = file PATH` path to file contents, or nullopt if it cannot be read.
using ComponentLoader = std::function<std::optional<std::string>(const std::string& path)>;

/// Loads paths relative to `base_dir`.
ComponentLoader file_loader(std::string base_dir);

/// Network wiring (`*.tnet`). Components whose path ends in `.ttab` are read as tables.
Parsed<Network> parse_network(std::string_view text, const ComponentLoader& load);

/// Trace files (`*.trc`).
Parsed<Trace> parse_trace(std::string_view text);
std::string print_trace(const Trace& trace);

/// Graphviz digraph of the diagram style; byte-identical for equal specs.
std::string export_dot(const TSTDSpec& spec);

/// Compact clause renderings shared by the printers.
std::string to_string(const IntervalPattern& p);
std::string to_string(Relation r);
std::string to_string(const TimeInterval& messages);  // `[a b:2]`

}  // namespace tstd
