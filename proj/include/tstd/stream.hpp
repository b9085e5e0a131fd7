#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tstd {

/// True iff `s` matches [A-Za-z][A-Za-z0-9_]*.
bool is_identifier(std::string_view s) noexcept;

/// Atomic token flowing on a channel. A missing payload is distinct from payload 0.
class Message {
public:
    explicit Message(std::string tag, std::optional<std::int64_t> payload = std::nullopt);

    const std::string& tag() const noexcept { return tag_; }
    const std::optional<std::int64_t>& payload() const noexcept { return payload_; }

    friend bool operator==(const Message&, const Message&) = default;

private:
    std::string tag_;
    std::optional<std::int64_t> payload_;
};

/// `tag` or `tag:int`.
std::string to_string(const Message& m);

/// The messages observed on one channel during one tick.
using TimeInterval = std::vector<Message>;

/// First T ticks of an infinite timed stream; one interval per tick.
class StreamPrefix {
public:
    StreamPrefix() = default;
    explicit StreamPrefix(std::vector<TimeInterval> intervals) : intervals_(std::move(intervals)) {}

    /// T empty intervals.
    static StreamPrefix silent(std::size_t ticks) { return StreamPrefix(std::vector<TimeInterval>(ticks)); }

    std::size_t length() const noexcept { return intervals_.size(); }
    bool empty() const noexcept { return intervals_.empty(); }
    const TimeInterval& operator[](std::size_t tick) const { return intervals_[tick]; }
    const TimeInterval& at(std::size_t tick) const { return intervals_.at(tick); }
    const std::vector<TimeInterval>& intervals() const noexcept { return intervals_; }

    auto begin() const noexcept { return intervals_.begin(); }
    auto end() const noexcept { return intervals_.end(); }

    friend bool operator==(const StreamPrefix&, const StreamPrefix&) = default;

private:
    std::vector<TimeInterval> intervals_;
};

enum class SplitStrategy { AllFirst, AllLast, Spread };

/// Accepts `all-first`, `all-last`, `spread`; throws std::invalid_argument otherwise.
SplitStrategy parse_split_strategy(std::string_view name);
std::string_view to_string(SplitStrategy s) noexcept;

class StreamError : public std::runtime_error {
public:
    enum class Kind { InvalidGranularity, NonAlignedPrefix, LengthMismatch };

    StreamError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// Refines granularity: every interval becomes n consecutive intervals.
StreamPrefix split(const StreamPrefix& s, std::size_t n, SplitStrategy strategy);

/// Coarsens granularity: every n consecutive intervals are concatenated into one.
/// Throws StreamError on n = 0 or when length(s) is not a multiple of n.
StreamPrefix join(const StreamPrefix& s, std::size_t n);

/// Per tick, messages of `left` followed by messages of `right`.
StreamPrefix timed_merge(const StreamPrefix& left, const StreamPrefix& right);

/// All messages in tick order, tick boundaries dropped.
TimeInterval untimed_abstraction(const StreamPrefix& s);

/// d empty intervals followed by s.
StreamPrefix delay_stream(const StreamPrefix& s, std::size_t d);

std::size_t message_count(const StreamPrefix& s) noexcept;

}  // namespace tstd
