#pragma once

#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "tstd/dsl.hpp"
#include "tstd/random.hpp"
#include "tstd/stream.hpp"
#include "tstd/trace.hpp"

namespace tstd::test {

/// "a b:3" -> interval of two messages; "" -> empty.
inline TimeInterval iv(std::string_view text)
{
    TimeInterval out;
    std::istringstream in{std::string(text)};
    std::string tok;
    while (in >> tok) {
        const auto colon = tok.find(':');
        if (colon == std::string::npos)
            out.emplace_back(tok);
        else
            out.emplace_back(tok.substr(0, colon), std::stoll(tok.substr(colon + 1)));
    }
    return out;
}

inline StreamPrefix sp(std::initializer_list<std::string_view> ticks)
{
    std::vector<TimeInterval> out;
    for (auto t : ticks)
        out.push_back(iv(t));
    return StreamPrefix(std::move(out));
}

inline Trace trace(std::initializer_list<std::pair<const std::string, StreamPrefix>> channels)
{
    return Trace(std::map<std::string, StreamPrefix>(channels));
}

inline TSTDSpec component(std::string_view text)
{
    auto parsed = parse_component(text);
    if (!parsed.value) {
        std::string msg;
        for (const auto& e : parsed.errors)
            msg += to_string(e) + "\n";
        throw std::runtime_error("test component does not parse:\n" + msg);
    }
    return *parsed.value;
}

inline std::vector<std::string> alphabet(std::size_t n)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(std::string(1, static_cast<char>('a' + i)));
    return out;
}

/// T <= max_ticks, interval length <= max_len, tags from the first `tags` letters.
inline StreamPrefix random_prefix(Rng& rng, std::size_t max_ticks, std::size_t max_len, std::size_t tags)
{
    const auto ticks = static_cast<std::size_t>(rng.uniform(0, max_ticks));
    return random_trace(rng, {"c"}, ticks, max_len, alphabet(tags)).at("c");
}

inline constexpr std::string_view kToggler = R"(component Toggler
in chan i
out chan o
state S0 initial
state S1
trans S0 -> S1
  emit o: [tick]
trans S1 -> S0
)";

inline constexpr std::string_view kPassThrough = R"(component Pass
in chan i
out chan o
state S initial
trans S -> S
  emit o: pass(i)
)";

}  // namespace tstd::test
