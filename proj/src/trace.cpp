#include "tstd/trace.hpp"

namespace tstd {

Trace::Trace(const std::set<std::string>& channels, std::size_t ticks) : length_(ticks)
{
    for (const auto& name : channels)
        channels_.emplace(name, StreamPrefix::silent(ticks));
}

Trace::Trace(std::map<std::string, StreamPrefix> channels) : channels_(std::move(channels))
{
    if (channels_.empty())
        return;
    length_ = channels_.begin()->second.length();
    for (const auto& [name, s] : channels_)
        if (s.length() != length_)
            throw std::invalid_argument("channel '" + name + "' has " + std::to_string(s.length()) +
                                        " ticks, expected " + std::to_string(length_));
}

std::set<std::string> Trace::channel_names() const
{
    std::set<std::string> names;
    for (const auto& entry : channels_)
        names.insert(entry.first);
    return names;
}

const StreamPrefix& Trace::at(const std::string& channel) const
{
    auto it = channels_.find(channel);
    if (it == channels_.end())
        throw ChannelMismatch("trace has no channel '" + channel + "'");
    return it->second;
}

Trace Trace::prefix(std::size_t ticks) const
{
    if (ticks > length_)
        throw std::out_of_range("trace has only " + std::to_string(length_) + " ticks");
    std::map<std::string, StreamPrefix> out;
    for (const auto& [name, s] : channels_)
        out.emplace(name, StreamPrefix({s.begin(), s.begin() + static_cast<std::ptrdiff_t>(ticks)}));
    Trace t(std::move(out));
    t.length_ = ticks;
    return t;
}

}  // namespace tstd
