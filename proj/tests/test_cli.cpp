#include <cmath>
#include <numeric>

#include "doctest.h"
#include "process.hpp"
#include "support.hpp"

using namespace tstd;
using namespace tstd::test;

TEST_CASE("cli validate")
{
    TempDir dir;
    CHECK(run_cli({"validate", data_path("toggler.tstd")}).out == "0 error(s), 0 warning(s)\n");
    CHECK(run_cli({"validate", data_path("pairs/gate.ttab")}).code == 0);

    const auto bad = dir.write("bad.tstd", "component C\nin chan i\nout chan o\nstate S0 initial\ntrans S0 -> S9\n");
    const auto r = run_cli({"validate", bad});
    CHECK(r.code == 1);
    CHECK(r.out.find(bad + ":5:") != std::string::npos);
    CHECK(r.out.find("1 error(s)") != std::string::npos);

    CHECK(run_cli({"validate", dir.path("absent.tstd")}).code == 3);
    CHECK(run_cli({"validate", dir.write("syntax.tstd", "component\n")}).code == 2);
    CHECK(run_cli({"validate"}).code == 2);
    CHECK(run_cli({"validate", data_path("toggler.tstd"), "--format", "table"}).code == 2);
}

TEST_CASE("cli simulate")
{
    TempDir dir;
    const auto in4 = dir.write("in.trc", "ticks i\ni: -\ni: a\ni: -\ni: b c\n");
    auto r = run_cli({"simulate", data_path("toggler.tstd"), in4});
    CHECK(r.code == 0);
    CHECK(r.out == "ticks o\no: tick\no: -\no: tick\no: -\n");

    r = run_cli({"simulate", data_path("passthrough.tstd"), in4});
    CHECK(r.out == "ticks o\no: -\no: a\no: -\no: b c\n");

    const auto out = dir.path("out.trc");
    r = run_cli({"simulate", data_path("passthrough.tstd"), in4, "--out", out});
    CHECK(r.out == "simulated 4 ticks\n");
    CHECK(read_text(out) == "ticks o\no: -\no: a\no: -\no: b c\n");

    CHECK(run_cli({"simulate", data_path("toggler.tstd"), dir.write("empty.trc", "ticks i\n")}).out == "ticks o\n");
    CHECK(run_cli({"simulate", data_path("toggler.tstd"), dir.write("wrong.trc", "ticks q\nq: -\n")}).code == 1);
    CHECK(run_cli({"simulate", data_path("toggler.tstd"), dir.write("broken.trc", "i: x:\n")}).code == 2);
}

TEST_CASE("cli stream")
{
    TempDir dir;
    const auto t = dir.write("t.trc", "ticks c\nc: a b\nc: -\nc: x\n");
    auto r = run_cli({"stream", "split", t, "-n", "2"});
    CHECK(r.code == 0);
    CHECK(r.out == "ticks c\nc: a b\nc: -\nc: -\nc: -\nc: x\nc: -\n");
    r = run_cli({"stream", "split", t, "-n", "2", "--strategy", "spread"});
    CHECK(r.out == "ticks c\nc: a\nc: b\nc: -\nc: -\nc: x\nc: -\n");
    CHECK(run_cli({"stream", "join", t, "-n", "1"}).out == read_text(t));
    CHECK(run_cli({"stream", "join", t, "-n", "2"}).code == 1);
    CHECK(run_cli({"stream", "join", t, "-n", "2", "--pad"}).out == "ticks c\nc: a b\nc: x\n");
    CHECK(run_cli({"stream", "join", t, "-n", "0"}).code == 2);
    CHECK(run_cli({"stream", "abstract", t}).out == "ticks c\nc: a b x\n");
    CHECK(run_cli({"stream", "delay", t, "-d", "2"}).out == "ticks c\nc: -\nc: -\nc: a b\nc: -\nc: x\n");
    const auto u = dir.write("u.trc", "ticks c\nc: y\nc: z\nc: -\n");
    CHECK(run_cli({"stream", "merge", t, u}).out == "ticks c\nc: a b y\nc: z\nc: x\n");
    CHECK(run_cli({"stream", "merge", t, dir.write("v.trc", "ticks d\nd: -\nd: -\nd: -\n")}).code == 1);
}

TEST_CASE("cli check")
{
    TempDir dir;
    auto r = run_cli({"check", "causality", data_path("toggler.tstd"), "--trials", "50", "--horizon", "8"});
    CHECK(r.code == 0);
    CHECK(r.out == "syntactic: strong\nconsistent-with-strong (50 trials, horizon 8, seed 0)\n");

    r = run_cli({"check", "causality", data_path("passthrough.tstd")});
    CHECK(r.code == 1);
    REQUIRE(r.out.rfind("syntactic: weak\nrefuted-strong:", 0) == 0);

    // The printed witness replays: simulate both inputs and compare against the printed outputs.
    auto block = [&](const std::string& head, const std::string& next) {
        const auto b = r.out.find(head + "\n") + head.size() + 1;
        const auto e = next.empty() ? r.out.size() : r.out.find(next + "\n");
        return r.out.substr(b, e - b);
    };
    const auto in_a = dir.write("a.trc", block("# witness input A", "# witness input B"));
    const auto in_b = dir.write("b.trc", block("# witness input B", "# output A"));
    const auto sim_a = run_cli({"simulate", data_path("passthrough.tstd"), in_a});
    const auto sim_b = run_cli({"simulate", data_path("passthrough.tstd"), in_b});
    CHECK(sim_a.out == block("# output A", "# output B"));
    CHECK(sim_b.out == block("# output B", ""));
    CHECK(sim_a.out != sim_b.out);

    CHECK(run_cli({"check", "feedback", data_path("feedback.tnet")}).out == "well-formed\n");
    r = run_cli({"check", "feedback", data_path("feedback_undelayed.tnet")});
    CHECK(r.code == 1);
    CHECK(r.out.rfind("ill-formed: instantaneous cycle", 0) == 0);

    CHECK(run_cli({"check", "untimed-sim", data_path("passthrough.tstd"), data_path("passthrough.tstd")}).code ==
          0);
    CHECK(run_cli({"check", "untimed-sim", data_path("passthrough.tstd"), data_path("toggler.tstd")}).code == 1);
}

TEST_CASE("cli compose")
{
    TempDir dir;
    const auto pass = dir.write("pass.tstd", std::string(kPassThrough));
    const auto in = dir.write("in.trc", "ticks x\nx: a\nx: -\nx: b c\n");

    const auto id = dir.write("id.tnet", "use p = file pass.tstd\nwire extern x -> p.i\nwire p.o -> extern y\n");
    CHECK(run_cli({"compose", id, in}).out == "ticks y\ny: a\ny: -\ny: b c\n");

    const auto delayed = dir.write("d.tnet", "use d = delay 2\nwire extern x -> d.in\nwire d.out -> extern y\n");
    CHECK(run_cli({"compose", delayed, in}).out == "ticks y\ny: -\ny: -\ny: a\n");
    CHECK(run_cli({"compose", delayed, in, "--ticks", "5"}).code == 1);
    CHECK(run_cli({"compose", delayed, in, "--ticks", "2"}).out == "ticks y\ny: -\ny: -\n");

    const auto r = run_cli({"compose", data_path("feedback.tnet"), data_path("feedback_input.trc")});
    CHECK(r.code == 0);
    CHECK(r.out == read_text(data_path("feedback_expected.trc")));
    CHECK(run_cli({"compose", data_path("feedback_undelayed.tnet"), data_path("feedback_input.trc")}).code == 1);
    CHECK(run_cli({"compose", dir.write("missing.tnet", "use p = file nope.tstd\n"), in}).code == 3);
}

TEST_CASE("cli gen-trace")
{
    const auto a = run_cli({"gen-trace", "--channels", "x,y", "--ticks", "20", "--seed", "9"});
    CHECK(a.code == 0);
    CHECK(a.out == run_cli({"gen-trace", "--channels", "x,y", "--ticks", "20", "--seed", "9"}).out);
    CHECK(a.out != run_cli({"gen-trace", "--channels", "x,y", "--ticks", "20", "--seed", "10"}).out);
    CHECK(run_cli({"gen-trace", "--channels", "x", "--ticks", "0"}).out == "ticks x\n");
    CHECK(run_cli({"gen-trace", "--channels", "x,x", "--ticks", "1"}).code == 2);

    const auto big = run_cli({"gen-trace", "--channels", "x", "--ticks", "10000", "--max-len", "4"});
    const auto parsed = parse_trace(big.out);
    REQUIRE(parsed.ok());
    const auto& s = parsed.value->at("x");
    const double mean =
        std::accumulate(s.begin(), s.end(), 0.0, [](double acc, const TimeInterval& i) { return acc + i.size(); }) /
        static_cast<double>(s.length());
    CHECK(std::abs(mean - 2.0) < 0.1);
}

TEST_CASE("cli export-dot")
{
    const auto text = run_cli({"export-dot", data_path("pairs/arbiter.tstd")});
    CHECK(text.code == 0);
    CHECK(text.out.rfind("digraph \"Arbiter\" {\n", 0) == 0);
    CHECK(text.out == run_cli({"export-dot", data_path("pairs/arbiter.ttab")}).out);
}
