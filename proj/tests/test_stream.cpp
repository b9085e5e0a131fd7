#include "doctest.h"
#include "support.hpp"

using namespace tstd;
using namespace tstd::test;

namespace {

// Placement oracle: sub-interval s receives message j iff s*k <= j*n < (s+1)*k (Spread),
// or the fixed end for AllFirst/AllLast. Builds the result target-first.
StreamPrefix split_oracle(const StreamPrefix& s, std::size_t n, SplitStrategy strategy)
{
    std::vector<TimeInterval> out;
    for (const auto& src : s) {
        const std::size_t k = src.size();
        for (std::size_t sub = 0; sub < n; ++sub) {
            TimeInterval part;
            for (std::size_t j = 0; j < k; ++j) {
                bool here = false;
                switch (strategy) {
                case SplitStrategy::AllFirst: here = sub == 0; break;
                case SplitStrategy::AllLast: here = sub == n - 1; break;
                case SplitStrategy::Spread: here = sub * k <= j * n && j * n < (sub + 1) * k; break;
                }
                if (here)
                    part.push_back(src[j]);
            }
            out.push_back(std::move(part));
        }
    }
    return StreamPrefix(std::move(out));
}

constexpr SplitStrategy kStrategies[] = {SplitStrategy::AllFirst, SplitStrategy::AllLast, SplitStrategy::Spread};

}  // namespace

TEST_CASE("message identity and tag grammar")
{
    CHECK(Message("a") == Message("a"));
    CHECK(Message("a") != Message("a", 0));
    CHECK(Message("a", 0) == Message("a", 0));
    CHECK_THROWS_AS(Message(""), std::invalid_argument);
    CHECK_THROWS_AS(Message("1a"), std::invalid_argument);
    CHECK_THROWS_AS(Message("a-b"), std::invalid_argument);
    CHECK(is_identifier("a_1B"));
    CHECK(to_string(Message("x", -4)) == "x:-4");
}

TEST_CASE("split examples")
{
    CHECK(split(sp({"a b", ""}), 2, SplitStrategy::AllFirst) == sp({"a b", "", "", ""}));
    CHECK(split(sp({"a b c"}), 2, SplitStrategy::Spread) == sp({"a b", "c"}));
    CHECK(split(sp({"a b", ""}), 3, SplitStrategy::AllLast) == sp({"", "", "a b", "", "", ""}));
    CHECK(split(sp({""}), 3, SplitStrategy::Spread) == sp({"", "", ""}));
    for (auto st : kStrategies)
        CHECK(split(sp({"a", "", "b c"}), 1, st) == sp({"a", "", "b c"}));

    try {
        split(sp({"a"}), 0, SplitStrategy::Spread);
        FAIL("expected an error");
    } catch (const StreamError& e) {
        CHECK(e.kind() == StreamError::Kind::InvalidGranularity);
    }
}

TEST_CASE("split strategy names")
{
    CHECK(parse_split_strategy("all-first") == SplitStrategy::AllFirst);
    CHECK(parse_split_strategy("all-last") == SplitStrategy::AllLast);
    CHECK(parse_split_strategy("spread") == SplitStrategy::Spread);
    CHECK_THROWS_AS(parse_split_strategy("evenly"), std::invalid_argument);
    for (auto st : kStrategies)
        CHECK(parse_split_strategy(to_string(st)) == st);
}

TEST_CASE("join examples")
{
    CHECK(join(sp({"a", "b", "", "c"}), 2) == sp({"a b", "c"}));
    CHECK(join(sp({"a", "", "b c"}), 1) == sp({"a", "", "b c"}));
    CHECK(join(StreamPrefix{}, 3) == StreamPrefix{});

    auto kind_of = [](auto&& f) {
        try {
            f();
        } catch (const StreamError& e) {
            return e.kind();
        }
        FAIL("expected an error");
        return StreamError::Kind::LengthMismatch;
    };
    CHECK(kind_of([] { join(sp({"a", "b", "c"}), 2); }) == StreamError::Kind::NonAlignedPrefix);
    CHECK(kind_of([] { join(sp({"a"}), 0); }) == StreamError::Kind::InvalidGranularity);
}

TEST_CASE("timed merge examples")
{
    CHECK(timed_merge(sp({"a"}), sp({"b c"})) == sp({"a b c"}));
    CHECK(timed_merge(sp({"", ""}), sp({"x", "y z"})) == sp({"x", "y z"}));
    CHECK(timed_merge(sp({"a", ""}), sp({"", "b"})) == sp({"a", "b"}));
    CHECK_THROWS_AS(timed_merge(sp({"a"}), sp({"a", "b"})), StreamError);
}

TEST_CASE("untimed abstraction, delay and count examples")
{
    CHECK(untimed_abstraction(sp({"a", "", "b c"})) == iv("a b c"));
    CHECK(untimed_abstraction(sp({"", "", ""})).empty());
    CHECK(delay_stream(sp({"a"}), 1) == sp({"", "a"}));
    CHECK(delay_stream(sp({"a", "b"}), 0) == sp({"a", "b"}));
    CHECK(message_count(sp({"a b", ""})) == 2);
    CHECK(message_count(StreamPrefix{}) == 0);
}

TEST_CASE("split matches the placement oracle")
{
    Rng rng(11);
    for (int i = 0; i < 300; ++i) {
        const StreamPrefix s = random_prefix(rng, 12, 6, 4);
        const auto n = static_cast<std::size_t>(rng.uniform(1, 7));
        for (auto st : kStrategies)
            REQUIRE(split(s, n, st) == split_oracle(s, n, st));
    }
}

TEST_CASE("stream algebra laws on random prefixes")
{
    Rng rng(2024);
    for (int i = 0; i < 300; ++i) {
        const StreamPrefix s = random_prefix(rng, 20, 4, 5);
        const auto n = static_cast<std::size_t>(rng.uniform(1, 8));
        const auto d = static_cast<std::size_t>(rng.uniform(0, 5));
        for (auto st : kStrategies) {
            const StreamPrefix refined = split(s, n, st);
            REQUIRE(refined.length() == n * s.length());
            REQUIRE(join(refined, n) == s);
            REQUIRE(message_count(refined) == message_count(s));
            REQUIRE(untimed_abstraction(refined) == untimed_abstraction(s));
        }
        REQUIRE(untimed_abstraction(delay_stream(s, d)) == untimed_abstraction(s));
        REQUIRE(delay_stream(s, d).length() == s.length() + d);

        const StreamPrefix other = random_trace(rng, {"c"}, s.length(), 3, alphabet(3)).at("c");
        const StreamPrefix merged = timed_merge(s, other);
        REQUIRE(message_count(merged) == message_count(s) + message_count(other));
        for (std::size_t t = 0; t < s.length(); ++t) {
            TimeInterval expect = s[t];
            expect.insert(expect.end(), other[t].begin(), other[t].end());
            REQUIRE(merged[t] == expect);
        }
    }
}

TEST_CASE("split after join is not the identity")
{
    const StreamPrefix s = sp({"", "a"});
    CHECK(split(join(s, 2), 2, SplitStrategy::AllFirst) != s);
}
