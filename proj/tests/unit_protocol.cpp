#include <doctest.h>

#include "frosty/scenario.hpp"
#include "frosty/simnet.hpp"

using namespace frosty;

TEST_CASE("scenario JSON round trip preserves every field") {
    Scenario sc;
    sc.name = "roundtrip";
    sc.params.n = 13;
    sc.params.gamma = 40;
    sc.gst = 77;
    sc.horizon = 123;
    sc.seed = 42;
    sc.byz_kind = "crash";
    sc.byz_ids = {3, 5};
    sc.max_delay_pre_gst = true;
    Scenario back = Scenario::fromJson(sc.toJson());
    CHECK(back.name == sc.name);
    CHECK(back.params.n == 13);
    CHECK(back.params.gamma == 40);
    CHECK(back.gst == 77);
    CHECK(back.horizon == 123);
    CHECK(back.seed == 42);
    CHECK(back.byz_kind == "crash");
    CHECK(back.byz_ids == sc.byz_ids);
    CHECK(back.max_delay_pre_gst);
}

TEST_CASE("fault-free run finalizes and stays consistent") {
    Scenario sc;
    sc.name = "smoke";
    sc.horizon = 400;
    sc.seed = 7;
    RunResult r = runScenario(sc);
    CHECK(r.consistent);
    CHECK(r.violations.empty());
    CHECK(r.min_final_blocks >= 1);
    CHECK(r.max_epoch == 0);  // no reason to leave the sampling epoch
}

TEST_CASE("same seed, same trace") {
    Scenario sc;
    sc.name = "det";
    sc.horizon = 250;
    sc.seed = 99;
    RunResult a = runScenario(sc, true);
    RunResult b = runScenario(sc, true);
    CHECK(!a.trace.empty());
    CHECK(a.trace == b.trace);
    RunResult c = [&] {
        Scenario other = sc;
        other.seed = 100;
        return runScenario(other, true);
    }();
    CHECK(a.trace != c.trace);
}

TEST_CASE("crashed minority does not break safety") {
    Scenario sc;
    sc.name = "crash";
    sc.horizon = 400;
    sc.seed = 3;
    sc.params.f = 4;
    sc.byz_kind = "crash";
    sc.byz_ids = {21, 22, 23, 24};
    RunResult r = runScenario(sc);
    CHECK(r.consistent);
    CHECK(r.violations.empty());
}

TEST_CASE("own broadcast copy arrives next timeslot, others within delta after GST") {
    ProtocolParams p;
    World w(5, p);
    w.metrics.init(p.n, {});
    Net net(p, &w, 0, 123);
    for (int i = 0; i < p.n; ++i) net.addHonest(i, 1000 + i);
    net.run(50);
    // every correct process keeps a round cadence of at most 2*delta + 1
    for (const auto& starts : w.metrics.round_starts) {
        for (size_t i = 1; i < starts.size(); ++i) {
            CHECK(starts[i].t - starts[i - 1].t <= 2 * p.delta + 1);
            CHECK(starts[i].s == starts[i - 1].s + 1);
        }
    }
    CHECK(net.checkConsistency());
}
