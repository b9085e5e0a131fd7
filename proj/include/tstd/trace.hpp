#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "tstd/stream.hpp"

namespace tstd {

class ChannelMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Equal-length stream prefixes keyed by channel name. Channels iterate in name order.
class Trace {
public:
    Trace() = default;

    /// A trace of `ticks` empty intervals on each channel.
    Trace(const std::set<std::string>& channels, std::size_t ticks);

    /// Throws std::invalid_argument if the prefixes differ in length.
    explicit Trace(std::map<std::string, StreamPrefix> channels);

    std::size_t length() const noexcept { return length_; }
    const std::map<std::string, StreamPrefix>& channels() const noexcept { return channels_; }
    std::set<std::string> channel_names() const;
    bool has(const std::string& channel) const { return channels_.count(channel) != 0; }

    /// Throws ChannelMismatch for an unknown channel.
    const StreamPrefix& at(const std::string& channel) const;

    /// First `ticks` ticks; throws std::out_of_range if the trace is shorter.
    Trace prefix(std::size_t ticks) const;

    friend bool operator==(const Trace&, const Trace&) = default;

private:
    std::map<std::string, StreamPrefix> channels_;
    std::size_t length_ = 0;
};

}  // namespace tstd
