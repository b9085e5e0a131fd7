#pragma once

// Shared lexing and clause parsing for the line-oriented formats.

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tstd/dsl.hpp"

namespace tstd::detail {

struct ParseFailure {
    SourceSpan span;
    std::string message;
};

/// Lines split on LF; a trailing CR and anything from `#` on are dropped.
std::vector<std::string_view> split_lines(std::string_view text);
std::string_view strip_comment(std::string_view line);
std::string_view trim(std::string_view s);

class Cursor {
public:
    Cursor(std::string_view text, std::size_t line, std::size_t first_column = 1)
        : text_(text), line_(line), first_column_(first_column)
    {
    }

    void skip_ws()
    {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r'))
            ++pos_;
    }
    bool at_end()
    {
        skip_ws();
        return pos_ >= text_.size();
    }
    char peek()
    {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    SourceSpan span() const { return {line_, first_column_ + pos_}; }
    std::string_view rest() const { return text_.substr(pos_); }

    /// Literal punctuation or word, after whitespace.
    bool consume(std::string_view tok);
    /// A whole identifier equal to `kw`.
    bool consume_keyword(std::string_view kw);

    std::optional<std::string> identifier();
    std::optional<std::int64_t> integer();

    [[noreturn]] void fail(std::string message) const { throw ParseFailure{span(), std::move(message)}; }

    std::string expect_identifier(std::string_view what);
    std::int64_t expect_integer(std::string_view what);
    void expect(std::string_view tok);
    void expect_end();

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_;
    std::size_t first_column_;
};

Message parse_message(Cursor& c);
IntervalPattern parse_pattern(Cursor& c);
Relation parse_relation(Cursor& c);
VarGuard parse_var_guard(Cursor& c);
/// `[msg ...]` or `pass(CH)`.
OutputAction parse_emission(Cursor& c, std::string channel);
/// `VAR := INT` or `VAR := VAR + INT` / `VAR - INT`.
VarUpdate parse_update(Cursor& c);
/// `CH: PATTERN` or `VAR REL INT`, comma separated.
void parse_when_items(Cursor& c, Transition& t);

std::string render_guard(const Transition& t);
std::string render_outputs(const Transition& t, std::string_view sep);
std::string render_update(const VarUpdate& u);

}  // namespace tstd::detail
