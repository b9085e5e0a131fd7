#include "tstd/stream.hpp"

#include <algorithm>
#include <numeric>

namespace tstd {

namespace {

bool is_alpha(char c) noexcept { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
bool is_digit(char c) noexcept { return c >= '0' && c <= '9'; }

void require_granularity(std::size_t n)
{
    if (n == 0)
        throw StreamError(StreamError::Kind::InvalidGranularity, "granularity factor must be at least 1");
}

}  // namespace

bool is_identifier(std::string_view s) noexcept
{
    if (s.empty() || !is_alpha(s.front()))
        return false;
    return std::all_of(s.begin() + 1, s.end(), [](char c) { return is_alpha(c) || is_digit(c) || c == '_'; });
}

Message::Message(std::string tag, std::optional<std::int64_t> payload) : tag_(std::move(tag)), payload_(payload)
{
    if (!is_identifier(tag_))
        throw std::invalid_argument("invalid message tag '" + tag_ + "'");
}

std::string to_string(const Message& m)
{
    if (!m.payload())
        return m.tag();
    return m.tag() + ":" + std::to_string(*m.payload());
}

SplitStrategy parse_split_strategy(std::string_view name)
{
    if (name == "all-first")
        return SplitStrategy::AllFirst;
    if (name == "all-last")
        return SplitStrategy::AllLast;
    if (name == "spread")
        return SplitStrategy::Spread;
    throw std::invalid_argument("unknown split strategy '" + std::string(name) + "'");
}

std::string_view to_string(SplitStrategy s) noexcept
{
    switch (s) {
    case SplitStrategy::AllFirst: return "all-first";
    case SplitStrategy::AllLast: return "all-last";
    case SplitStrategy::Spread: return "spread";
    }
    return "?";
}

StreamPrefix split(const StreamPrefix& s, std::size_t n, SplitStrategy strategy)
{
    require_granularity(n);
    std::vector<TimeInterval> out(s.length() * n);
    for (std::size_t tick = 0; tick < s.length(); ++tick) {
        const TimeInterval& src = s[tick];
        const std::size_t base = tick * n;
        const std::size_t k = src.size();
        switch (strategy) {
        case SplitStrategy::AllFirst:
            out[base] = src;
            break;
        case SplitStrategy::AllLast:
            out[base + n - 1] = src;
            break;
        case SplitStrategy::Spread:
            for (std::size_t j = 0; j < k; ++j)
                out[base + j * n / k].push_back(src[j]);
            break;
        }
    }
    return StreamPrefix(std::move(out));
}

StreamPrefix join(const StreamPrefix& s, std::size_t n)
{
    require_granularity(n);
    if (s.length() % n != 0)
        throw StreamError(StreamError::Kind::NonAlignedPrefix,
                          "prefix of " + std::to_string(s.length()) + " ticks is not a multiple of " +
                              std::to_string(n));
    std::vector<TimeInterval> out(s.length() / n);
    for (std::size_t tick = 0; tick < s.length(); ++tick) {
        const TimeInterval& src = s[tick];
        TimeInterval& dst = out[tick / n];
        dst.insert(dst.end(), src.begin(), src.end());
    }
    return StreamPrefix(std::move(out));
}

StreamPrefix timed_merge(const StreamPrefix& left, const StreamPrefix& right)
{
    if (left.length() != right.length())
        throw StreamError(StreamError::Kind::LengthMismatch,
                          "cannot merge prefixes of " + std::to_string(left.length()) + " and " +
                              std::to_string(right.length()) + " ticks");
    std::vector<TimeInterval> out(left.begin(), left.end());
    for (std::size_t tick = 0; tick < right.length(); ++tick)
        out[tick].insert(out[tick].end(), right[tick].begin(), right[tick].end());
    return StreamPrefix(std::move(out));
}

TimeInterval untimed_abstraction(const StreamPrefix& s)
{
    TimeInterval out;
    out.reserve(message_count(s));
    for (const TimeInterval& iv : s)
        out.insert(out.end(), iv.begin(), iv.end());
    return out;
}

StreamPrefix delay_stream(const StreamPrefix& s, std::size_t d)
{
    std::vector<TimeInterval> out(d);
    out.insert(out.end(), s.begin(), s.end());
    return StreamPrefix(std::move(out));
}

std::size_t message_count(const StreamPrefix& s) noexcept
{
    return std::accumulate(s.begin(), s.end(), std::size_t{0},
                           [](std::size_t acc, const TimeInterval& iv) { return acc + iv.size(); });
}

}  // namespace tstd
