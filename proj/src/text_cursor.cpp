#include "text_cursor.hpp"

#include <limits>

namespace tstd::detail {

namespace {

bool ident_start(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9') || c == '_'; }

}  // namespace

std::string_view strip_comment(std::string_view line)
{
    if (auto hash = line.find('#'); hash != std::string_view::npos)
        line = line.substr(0, hash);
    return line;
}

std::string_view trim(std::string_view s)
{
    auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
    while (!s.empty() && ws(s.front()))
        s.remove_prefix(1);
    while (!s.empty() && ws(s.back()))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_lines(std::string_view text)
{
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            if (start < text.size())
                lines.push_back(text.substr(start));
            break;
        }
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        lines.push_back(line);
        start = end + 1;
    }
    return lines;
}

bool Cursor::consume(std::string_view tok)
{
    skip_ws();
    if (text_.substr(pos_, tok.size()) != tok)
        return false;
    pos_ += tok.size();
    return true;
}

bool Cursor::consume_keyword(std::string_view kw)
{
    skip_ws();
    if (text_.substr(pos_, kw.size()) != kw)
        return false;
    if (pos_ + kw.size() < text_.size() && ident_char(text_[pos_ + kw.size()]))
        return false;
    pos_ += kw.size();
    return true;
}

std::optional<std::string> Cursor::identifier()
{
    skip_ws();
    if (pos_ >= text_.size() || !ident_start(text_[pos_]))
        return std::nullopt;
    std::size_t end = pos_ + 1;
    while (end < text_.size() && ident_char(text_[end]))
        ++end;
    std::string id(text_.substr(pos_, end - pos_));
    pos_ = end;
    return id;
}

std::optional<std::int64_t> Cursor::integer()
{
    skip_ws();
    std::int64_t value = 0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr == first)
        return std::nullopt;
    if (ptr < last && ident_char(*ptr))
        return std::nullopt;
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
}

std::string Cursor::expect_identifier(std::string_view what)
{
    if (auto id = identifier())
        return *id;
    fail("expected " + std::string(what));
}

std::int64_t Cursor::expect_integer(std::string_view what)
{
    if (auto v = integer())
        return *v;
    fail("expected " + std::string(what) + " (64-bit integer)");
}

void Cursor::expect(std::string_view tok)
{
    if (!consume(tok))
        fail("expected '" + std::string(tok) + "'");
}

void Cursor::expect_end()
{
    if (!at_end())
        fail("unexpected '" + std::string(rest()) + "'");
}

Message parse_message(Cursor& c)
{
    std::string tag = c.expect_identifier("message tag");
    if (c.rest().substr(0, 1) == ":" && c.rest().substr(0, 2) != ":=") {
        c.expect(":");
        return Message(std::move(tag), c.expect_integer("message payload"));
    }
    return Message(std::move(tag));
}

IntervalPattern parse_pattern(Cursor& c)
{
    auto count = [&c]() -> std::size_t {
        const auto k = c.expect_integer("length");
        if (k < 0)
            c.fail("length must be non-negative");
        return static_cast<std::size_t>(k);
    };
    if (c.consume_keyword("any"))
        return IntervalPattern::any();
    if (c.consume_keyword("empty"))
        return IntervalPattern::empty();
    if (c.consume_keyword("nonempty"))
        return IntervalPattern::non_empty();
    if (c.consume_keyword("contains")) {
        c.expect("(");
        Message m = parse_message(c);
        c.expect(")");
        return IntervalPattern::contains(std::move(m));
    }
    if (c.consume_keyword("first")) {
        c.expect("=");
        return IntervalPattern::first_is(parse_message(c));
    }
    if (c.consume_keyword("len")) {
        if (c.consume(">="))
            return IntervalPattern::len_ge(count());
        c.expect("=");
        return IntervalPattern::len_eq(count());
    }
    c.fail("expected a pattern (any, empty, nonempty, contains(m), len=k, len>=k, first=m)");
}

Relation parse_relation(Cursor& c)
{
    if (c.consume("<="))
        return Relation::LessEq;
    if (c.consume(">="))
        return Relation::GreaterEq;
    if (c.consume("!="))
        return Relation::NotEqual;
    if (c.consume("<"))
        return Relation::Less;
    if (c.consume(">"))
        return Relation::Greater;
    if (c.consume("="))
        return Relation::Equal;
    c.fail("expected a relation (<, <=, =, !=, >=, >)");
}

VarGuard parse_var_guard(Cursor& c)
{
    VarGuard g;
    g.var = c.expect_identifier("variable name");
    g.relation = parse_relation(c);
    g.bound = c.expect_integer("bound");
    return g;
}

OutputAction parse_emission(Cursor& c, std::string channel)
{
    if (c.consume_keyword("pass")) {
        c.expect("(");
        std::string source = c.expect_identifier("input channel name");
        c.expect(")");
        return OutputAction::pass(std::move(channel), std::move(source));
    }
    c.expect("[");
    TimeInterval messages;
    while (!c.consume("]")) {
        if (c.at_end())
            c.fail("expected ']'");
        messages.push_back(parse_message(c));
    }
    return OutputAction::emit(std::move(channel), std::move(messages));
}

VarUpdate parse_update(Cursor& c)
{
    VarUpdate u;
    u.var = c.expect_identifier("variable name");
    c.expect(":=");
    const SourceSpan rhs = c.span();
    if (auto other = c.identifier()) {
        if (*other != u.var)
            throw ParseFailure{rhs, "an update may only add to its own variable ('" + u.var + "')"};
        u.kind = VarUpdate::Kind::Add;
        if (c.consume("+")) {
            u.value = c.expect_integer("increment");
        } else if (c.consume("-")) {
            const auto v = c.expect_integer("decrement");
            if (v == std::numeric_limits<std::int64_t>::min())
                c.fail("decrement out of range");
            u.value = -v;
        } else {
            c.fail("expected '+' or '-'");
        }
        return u;
    }
    u.kind = VarUpdate::Kind::Set;
    u.value = c.expect_integer("value");
    return u;
}

void parse_when_items(Cursor& c, Transition& t)
{
    do {
        std::string name = c.expect_identifier("channel or variable name");
        if (c.peek() == ':') {
            c.expect(":");
            t.interval_guards.push_back({std::move(name), parse_pattern(c)});
        } else {
            VarGuard g;
            g.var = std::move(name);
            g.relation = parse_relation(c);
            g.bound = c.expect_integer("bound");
            t.var_guards.push_back(std::move(g));
        }
    } while (c.consume(","));
}

std::string render_guard(const Transition& t)
{
    std::string out;
    auto add = [&out](const std::string& s) { out += (out.empty() ? "" : ", ") + s; };
    for (const auto& g : t.interval_guards)
        add(g.channel + ": " + to_string(g.pattern));
    for (const auto& g : t.var_guards)
        add(g.var + " " + to_string(g.relation) + " " + std::to_string(g.bound));
    return out;
}

std::string render_outputs(const Transition& t, std::string_view sep)
{
    std::string out;
    for (const auto& o : t.outputs) {
        if (!out.empty())
            out += sep;
        out += o.channel + ": " + (o.pass_from ? "pass(" + *o.pass_from + ")" : to_string(o.literal));
    }
    return out;
}

std::string render_update(const VarUpdate& u)
{
    if (u.kind == VarUpdate::Kind::Set)
        return u.var + " := " + std::to_string(u.value);
    return u.var + " := " + u.var + " + " + std::to_string(u.value);
}

}  // namespace tstd::detail
