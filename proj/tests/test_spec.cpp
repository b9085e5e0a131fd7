#include <algorithm>

#include "doctest.h"
#include "support.hpp"
#include "tstd/spec.hpp"

using namespace tstd;
using namespace tstd::test;

namespace {

std::size_t count_containing(const ValidationReport& r, Severity sev, std::string_view needle)
{
    return static_cast<std::size_t>(std::count_if(r.findings.begin(), r.findings.end(), [&](const Finding& f) {
        return f.severity == sev && f.message.find(needle) != std::string::npos;
    }));
}

TSTDSpec base_spec()
{
    TSTDSpec s;
    s.name = "Unit";
    s.channels = {{"i", Direction::In}, {"o", Direction::Out}};
    s.vars = {{"v", 0}};
    s.states = {"S0", "S1"};
    s.initial = "S0";
    return s;
}

Transition move(std::string from, std::string to)
{
    Transition t;
    t.source = std::move(from);
    t.target = std::move(to);
    return t;
}

}  // namespace

TEST_CASE("guard patterns")
{
    CHECK(IntervalPattern::contains(Message("a")).matches(iv("b a")));
    CHECK_FALSE(IntervalPattern::contains(Message("a")).matches(iv("a:1")));
    CHECK(IntervalPattern::empty().matches(iv("")));
    CHECK_FALSE(IntervalPattern::empty().matches(iv("a")));
    CHECK(IntervalPattern::non_empty().matches(iv("a")));
    CHECK(IntervalPattern::len_eq(0).matches(iv("")));
    CHECK(IntervalPattern::len_eq(2).matches(iv("a b")));
    CHECK_FALSE(IntervalPattern::len_eq(2).matches(iv("a b c")));
    CHECK(IntervalPattern::len_ge(2).matches(iv("a b c")));
    CHECK_FALSE(IntervalPattern::len_ge(2).matches(iv("a")));
    CHECK(IntervalPattern::first_is(Message("b", 2)).matches(iv("b:2 a")));
    CHECK_FALSE(IntervalPattern::first_is(Message("b", 2)).matches(iv("a b:2")));
    CHECK_FALSE(IntervalPattern::first_is(Message("b")).matches(iv("")));
}

TEST_CASE("validation errors")
{
    SUBCASE("undeclared target is exactly one error")
    {
        TSTDSpec s = base_spec();
        s.transitions.push_back(move("S0", "S9"));
        s.transitions.push_back(move("S0", "S1"));
        const auto r = validate_spec(s);
        CHECK(r.error_count() == 1);
        CHECK(count_containing(r, Severity::Error, "S9") == 1);
    }
    SUBCASE("single state, no transitions is clean")
    {
        TSTDSpec s = base_spec();
        s.states = {"S0"};
        CHECK(validate_spec(s).error_count() == 0);
        CHECK(validate_spec(s).findings.empty());
    }
    SUBCASE("duplicates, bad references and missing pieces")
    {
        TSTDSpec s = base_spec();
        s.channels.push_back({"i", Direction::Out});
        s.vars.push_back({"o", 1});
        s.states.push_back("S0");
        Transition t = move("S0", "S1");
        t.interval_guards = {{"o", IntervalPattern::any()}, {"zz", IntervalPattern::empty()}};
        t.var_guards = {{"w", Relation::Less, 1}};
        t.outputs = {OutputAction::emit("i", {}), OutputAction::pass("o", "o")};
        t.updates = {{"v", VarUpdate::Kind::Set, 1}, {"v", VarUpdate::Kind::Add, 1}};
        s.transitions.push_back(t);
        const auto r = validate_spec(s);
        CHECK(count_containing(r, Severity::Error, "duplicate channel 'i'") == 1);
        CHECK(count_containing(r, Severity::Error, "clashes with a channel") == 1);
        CHECK(count_containing(r, Severity::Error, "duplicate state 'S0'") == 1);
        CHECK(count_containing(r, Severity::Error, "guard channel 'o'") == 1);
        CHECK(count_containing(r, Severity::Error, "guard channel 'zz'") == 1);
        CHECK(count_containing(r, Severity::Error, "guard variable 'w'") == 1);
        CHECK(count_containing(r, Severity::Error, "pass source 'o'") == 1);
        CHECK(count_containing(r, Severity::Error, "more than one update of variable 'v'") == 1);
    }
    SUBCASE("initial state and output channel are required")
    {
        TSTDSpec s = base_spec();
        s.initial = "Nowhere";
        s.channels = {{"i", Direction::In}};
        const auto r = validate_spec(s);
        CHECK(count_containing(r, Severity::Error, "initial state 'Nowhere'") == 1);
        CHECK(count_containing(r, Severity::Error, "no output channel") == 1);
        s.initial.clear();
        CHECK(count_containing(validate_spec(s), Severity::Error, "no initial state") == 1);
    }
}

TEST_CASE("validation warnings")
{
    SUBCASE("two Any guards on the same channel overlap")
    {
        TSTDSpec s = base_spec();
        Transition a = move("S0", "S1"), b = move("S0", "S0");
        a.interval_guards = {{"i", IntervalPattern::any()}};
        b.interval_guards = {{"i", IntervalPattern::any()}};
        s.transitions = {a, b};
        const auto r = validate_spec(s);
        CHECK(r.error_count() == 0);
        CHECK(count_containing(r, Severity::Warning, "may be enabled together") == 1);
    }
    SUBCASE("different non-Any patterns or contradictory var guards do not overlap")
    {
        TSTDSpec s = base_spec();
        Transition a = move("S0", "S1"), b = move("S0", "S1"), c = move("S0", "S1");
        a.interval_guards = {{"i", IntervalPattern::empty()}};
        b.interval_guards = {{"i", IntervalPattern::non_empty()}};
        c.var_guards = {{"v", Relation::Greater, 3}};
        s.transitions = {a, b};
        CHECK(count_containing(validate_spec(s), Severity::Warning, "enabled together") == 0);

        a.var_guards = {{"v", Relation::LessEq, 3}};
        s.transitions = {a, c};
        CHECK(count_containing(validate_spec(s), Severity::Warning, "enabled together") == 0);

        a.var_guards = {{"v", Relation::LessEq, 4}};
        s.transitions = {a, c};
        CHECK(count_containing(validate_spec(s), Severity::Warning, "enabled together") == 1);

        // v >= 2, v <= 3, v != 2, v != 3 leaves nothing
        a.var_guards = {{"v", Relation::GreaterEq, 2}, {"v", Relation::NotEqual, 2}};
        c.var_guards = {{"v", Relation::LessEq, 3}, {"v", Relation::NotEqual, 3}};
        s.transitions = {a, c};
        CHECK(count_containing(validate_spec(s), Severity::Warning, "enabled together") == 0);
    }
    SUBCASE("unreachable states")
    {
        TSTDSpec s = base_spec();
        s.states.push_back("S2");
        s.transitions = {move("S0", "S1"), move("S2", "S0")};
        const auto r = validate_spec(s);
        CHECK(count_containing(r, Severity::Warning, "'S2' is unreachable") == 1);
        CHECK(count_containing(r, Severity::Warning, "unreachable") == 1);
    }
    SUBCASE("validation is idempotent")
    {
        TSTDSpec s = base_spec();
        s.transitions = {move("S0", "S7"), move("S0", "S0")};
        const auto r1 = validate_spec(s), r2 = validate_spec(s);
        REQUIRE(r1.findings.size() == r2.findings.size());
        for (std::size_t i = 0; i < r1.findings.size(); ++i)
            CHECK(r1.findings[i].message == r2.findings[i].message);
    }
}

TEST_CASE("enabled transitions")
{
    TSTDSpec s = base_spec();
    Transition a = move("S0", "S1");
    a.interval_guards = {{"i", IntervalPattern::len_ge(2)}};
    a.var_guards = {{"v", Relation::Less, 3}};
    Transition b = move("S0", "S0");
    Transition c = move("S1", "S0");
    Transition d = move("S0", "S1");
    d.interval_guards = {{"i", IntervalPattern::contains(Message("a"))}};
    s.transitions = {a, b, c, d};

    CHECK(enabled_transitions(s, "S0", {{"v", 5}}, {{"i", iv("a b c")}}) == std::vector<std::size_t>{1, 3});
    CHECK(enabled_transitions(s, "S0", {{"v", 2}}, {{"i", iv("a b c")}}) == std::vector<std::size_t>{0, 1, 3});
    CHECK(enabled_transitions(s, "S0", {{"v", 2}}, {{"i", iv("b")}}) == std::vector<std::size_t>{1});
    CHECK(enabled_transitions(s, "S1", {{"v", 2}}, {{"i", iv("")}}) == std::vector<std::size_t>{2});
    CHECK_THROWS_AS(enabled_transitions(s, "Nope", {}, {}), std::logic_error);
}

TEST_CASE("enabled transitions is an order-preserving subsequence whose guards hold")
{
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        const TSTDSpec s = random_spec(rng);
        for (int k = 0; k < 10; ++k) {
            const std::string& state = s.states[rng.index(s.states.size())];
            VarEnv env;
            for (const auto& v : s.vars)
                env[v.name] = static_cast<std::int64_t>(rng.uniform(0, 4));
            TickInputs in;
            for (const auto& c : s.inputs())
                in[c] = random_interval(rng, 3, {"a", "b", "c"});
            const auto enabled = enabled_transitions(s, state, env, in);
            REQUIRE(std::is_sorted(enabled.begin(), enabled.end()));
            REQUIRE(std::adjacent_find(enabled.begin(), enabled.end()) == enabled.end());
            for (std::size_t idx = 0; idx < s.transitions.size(); ++idx) {
                const Transition& t = s.transitions[idx];
                bool holds_all = t.source == state;
                for (const auto& g : t.interval_guards)
                    holds_all = holds_all && g.pattern.matches(in.at(g.channel));
                for (const auto& g : t.var_guards)
                    holds_all = holds_all && holds(g.relation, env.at(g.var), g.bound);
                REQUIRE(holds_all == std::binary_search(enabled.begin(), enabled.end(), idx));
            }
        }
    }
}

TEST_CASE("random specs validate cleanly")
{
    Rng rng(99);
    for (int i = 0; i < 200; ++i)
        REQUIRE(validate_spec(random_spec(rng)).error_count() == 0);
}

TEST_CASE("syntactic causality")
{
    SUBCASE("constant empty output is strong")
    {
        TSTDSpec s = base_spec();
        Transition a = move("S0", "S1"), b = move("S1", "S0");
        a.interval_guards = {{"i", IntervalPattern::non_empty()}};
        a.outputs = {OutputAction::emit("o", {})};
        s.transitions = {a, b};
        CHECK(classify_causality_syntactic(s) == CausalityClass::Strong);
    }
    SUBCASE("pass is weak")
    {
        CHECK(classify_causality_syntactic(component(kPassThrough)) == CausalityClass::Weak);
    }
    SUBCASE("different literals from one state are weak")
    {
        TSTDSpec s = base_spec();
        Transition a = move("S0", "S1"), b = move("S0", "S0");
        a.interval_guards = {{"i", IntervalPattern::empty()}};
        a.outputs = {OutputAction::emit("o", iv("x"))};
        b.outputs = {OutputAction::emit("o", iv("y"))};
        s.transitions = {a, b};
        CHECK(classify_causality_syntactic(s) == CausalityClass::Weak);
    }
    SUBCASE("single total transition with a literal is strong")
    {
        const TSTDSpec s = component(kToggler);
        CHECK(classify_causality_syntactic(s) == CausalityClass::Strong);
        CHECK(strong_outputs(s, "S0").at("o") == iv("tick"));
        CHECK(strong_outputs(s, "S1").at("o").empty());
    }
    SUBCASE("guarded transition with a literal is weak")
    {
        TSTDSpec s = base_spec();
        Transition a = move("S0", "S0");
        a.interval_guards = {{"i", IntervalPattern::empty()}};
        a.outputs = {OutputAction::emit("o", iv("x"))};
        s.transitions = {a};
        CHECK(classify_causality_syntactic(s) == CausalityClass::Weak);
        s.transitions[0].interval_guards = {{"i", IntervalPattern::any()}};
        CHECK(classify_causality_syntactic(s) == CausalityClass::Strong);
        s.transitions[0].var_guards = {{"v", Relation::Less, 9}};
        CHECK(classify_causality_syntactic(s) == CausalityClass::Weak);
    }
}
