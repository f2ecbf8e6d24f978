#include <doctest.h>

#include "rdv/algospec.hpp"
#include "rdv/checker.hpp"
#include "rdv/scheduler.hpp"

using namespace rdv;

namespace {

SchedulerOptions sched(SchedulerKind k, int bound = 16) {
    SchedulerOptions o;
    o.kind = k;
    o.bound = bound;
    return o;
}

Configuration strip_fairness(Configuration c) {
    c.fair = FairRun{};
    return c;
}

}  // namespace

TEST_CASE("ASYNC offers each robot's next event") {
    Configuration c = simple_configuration(Distance::Near, Color::Black, Color::Black);
    c = apply_look(c, RobotId::A, *builtin("Vig2Cols"));
    BlockSet b = enabled_blocks(c, sched(SchedulerKind::Async));
    CHECK(b.size() == 2);
    CHECK(b.contains(EventBlock::run(RobotId::A, Phase::Compute, 1)));
    CHECK(b.contains(EventBlock::run(RobotId::B, Phase::Look, 1)));
}

TEST_CASE("FSYNC offers one round") {
    Configuration c = simple_configuration(Distance::Near, Color::Black, Color::White);
    BlockSet b = enabled_blocks(c, sched(SchedulerKind::Fsync));
    REQUIRE(b.size() == 1);
    CHECK(b[0] == EventBlock::round());
    CHECK(describe_events(b[0]) == "FSYNC_ROUND");
}

TEST_CASE("fairness filter") {
    Configuration c = simple_configuration(Distance::Near, Color::Black, Color::Black);
    c.fair = FairRun{RobotId::A, 40};
    BlockSet b = enabled_blocks(c, sched(SchedulerKind::Async, 40));
    REQUIRE(b.size() == 1);
    CHECK(b[0].robot == RobotId::B);

    c.fair.streak = 39;
    CHECK(enabled_blocks(c, sched(SchedulerKind::Async, 40)).size() == 2);

    FairRun f = next_fair_run({RobotId::A, 39}, EventBlock::run(RobotId::A, Phase::Look, 1), 40);
    CHECK(f == FairRun{RobotId::A, 40});
    f = next_fair_run(f, EventBlock::run(RobotId::A, Phase::Look, 1), 40);
    CHECK(f.streak == 40);
    f = next_fair_run(f, EventBlock::run(RobotId::B, Phase::Look, 1), 40);
    CHECK(f == FairRun{RobotId::B, 1});
    CHECK(next_fair_run(f, EventBlock::round(), 40) == FairRun{});
}

TEST_CASE("ASYNC_LC and ASYNC_MOVE groupings") {
    Configuration c = simple_configuration(Distance::Near, Color::Black, Color::Black);
    BlockSet lc = enabled_blocks(c, sched(SchedulerKind::AsyncLc));
    CHECK(lc.contains(EventBlock::run(RobotId::A, Phase::Look, 2)));
    CHECK(lc.contains(EventBlock::run(RobotId::B, Phase::Look, 2)));
    CHECK(lc.contains(EventBlock::joint_look_compute(false)));

    SchedulerOptions no_joint = sched(SchedulerKind::AsyncLc);
    no_joint.lc_joint = false;
    CHECK(enabled_blocks(c, no_joint).size() == 2);

    SchedulerOptions lcb = sched(SchedulerKind::AsyncLc);
    lcb.lc_includes_begmove = true;
    CHECK(enabled_blocks(c, lcb).contains(EventBlock::run(RobotId::A, Phase::Look, 3)));
    CHECK(enabled_blocks(c, lcb).contains(EventBlock::joint_look_compute(true)));

    c.robots[0].phase = Phase::BegMove;
    c.robots[0].pending_move = Move::Stay;
    BlockSet mv = enabled_blocks(c, sched(SchedulerKind::AsyncMove));
    CHECK(mv.contains(EventBlock::run(RobotId::A, Phase::BegMove, 2)));
    CHECK(mv.contains(EventBlock::run(RobotId::B, Phase::Look, 1)));
    // no joint look while A is busy
    CHECK(enabled_blocks(c, sched(SchedulerKind::AsyncLc)).size() == 2);
}

TEST_CASE("joint look-compute reads both old colors") {
    auto vig2 = *builtin("Vig2Cols");
    Configuration c = simple_configuration(Distance::Near, Color::Black, Color::Black);
    Configuration n = apply_block(c, EventBlock::joint_look_compute(false), vig2, sched(SchedulerKind::AsyncLc));
    // both saw (BLACK, BLACK) and turned WHITE
    CHECK(n.robots[0].color == Color::White);
    CHECK(n.robots[1].color == Color::White);
    CHECK(n.robots[0].phase == Phase::BegMove);
    CHECK(n.fair == FairRun{});
}

TEST_CASE("centralized block runs a whole cycle of one robot") {
    auto vig2 = *builtin("Vig2Cols");
    Configuration c = simple_configuration(Distance::Near, Color::White, Color::Black);
    Configuration n = apply_block(c, EventBlock::run(RobotId::A, Phase::Look, 4), vig2, sched(SchedulerKind::Centralized));
    CHECK(n.distance == Distance::Same);
    CHECK(n.robots[0].phase == Phase::Look);
    CHECK(n.robots[1] == c.robots[1]);
    CHECK(n.fair == FairRun{RobotId::A, 1});
}

TEST_CASE("FSYNC round of ToHalf gathers") {
    auto half = *builtin("ToHalf");
    Configuration c = simple_configuration(Distance::Near, Color::Black, Color::Black);
    Configuration n = apply_block(c, EventBlock::round(), half, sched(SchedulerKind::Fsync));
    CHECK(n == simple_configuration(Distance::Same, Color::Black, Color::Black));
}

TEST_CASE("LOOK during the partner's motion yields MISS") {
    auto half = *builtin("ToHalf");
    Configuration c = simple_configuration(Distance::Near, Color::Black, Color::Black);
    auto opts = sched(SchedulerKind::Async);
    for (Phase p : {Phase::Look, Phase::Compute, Phase::BegMove})
        c = apply_block(c, EventBlock::run(RobotId::A, p, 1), half, opts);
    REQUIRE(c.robots[0].is_moving);
    c = apply_block(c, EventBlock::run(RobotId::B, Phase::Look, 1), half, opts);
    CHECK(c.robots[1].pending_move == Move::Miss);
}

TEST_CASE("block start is checked") {
    auto half = *builtin("ToHalf");
    Configuration c = simple_configuration(Distance::Near, Color::Black, Color::Black);
    CHECK_THROWS_AS(apply_block(c, EventBlock::run(RobotId::A, Phase::Compute, 1), half, sched(SchedulerKind::Async)),
                    ModelInvariantError);
    c.robots[1].phase = Phase::Compute;
    c.robots[1].pending_move = Move::Stay;
    c.robots[1].pending_color = Color::Black;
    CHECK_THROWS_AS(apply_block(c, EventBlock::round(), half, sched(SchedulerKind::Fsync)), ModelInvariantError);
}

TEST_CASE("describe and parse blocks") {
    std::vector<EventBlock> blocks{EventBlock::round(), EventBlock::joint_look_compute(false),
                                   EventBlock::joint_look_compute(true)};
    for (RobotId r : {RobotId::A, RobotId::B})
        for (int p = 0; p < 4; ++p)
            for (std::uint8_t len = 1; len <= 4; ++len) blocks.push_back(EventBlock::run(r, static_cast<Phase>(p), len));
    for (const EventBlock& b : blocks) {
        std::string robot = b.joint() ? "AB" : std::string(to_string(b.robot));
        auto back = parse_block(robot, describe_events(b));
        REQUIRE(back);
        CHECK(*back == b);
    }
    CHECK(describe_events(EventBlock::run(RobotId::A, Phase::BegMove, 2)) == "BEGMOVE,ENDMOVE");
    CHECK_FALSE(parse_block("A", "LOOK,BEGMOVE"));
    CHECK_FALSE(parse_block("A", "FSYNC_ROUND"));
    CHECK_FALSE(parse_block("C", "LOOK"));
}

TEST_CASE("scheduler names") {
    for (SchedulerKind k : kAllSchedulers) CHECK(parse_scheduler(to_string(k)) == k);
    CHECK(parse_scheduler("ASYNC_LC") == SchedulerKind::AsyncLc);
    CHECK(parse_scheduler("Async-Move") == SchedulerKind::AsyncMove);
    CHECK_FALSE(parse_scheduler("round-robin"));
}

TEST_CASE("progress, canonical rounds and decomposition into single events") {
    for (const std::string& name : builtin_names()) {
        AlgorithmSpec spec = *builtin(name);
        for (SchedulerKind k : kAllSchedulers) {
            CAPTURE(name);
            CAPTURE(to_string(k));
            ExploreOptions opts = default_options(spec, k);
            opts.include_same_start = true;
            StateGraph g = build_graph(spec, opts);
            SchedulerOptions async = opts.sched;
            async.kind = SchedulerKind::Async;
            SchedulerOptions ssync = opts.sched;
            ssync.kind = SchedulerKind::Ssync;
            for (std::uint32_t u = 0; u < g.size(); ++u) {
                Configuration c = g.config(u);
                REQUIRE(!g.successors(u).empty());
                REQUIRE(g.successors(u).size() == enabled_blocks(c, opts.sched).size());
                for (const Edge& e : g.successors(u)) {
                    Configuration target = g.config(e.target);
                    // replay the block one event at a time with ASYNC blocks
                    Configuration step = c;
                    auto events = e.block.events();
                    auto actors = e.block.actors();
                    for (std::size_t i = 0; i < events.size(); ++i) {
                        EventBlock single = EventBlock::run(actors[i], events[i], 1);
                        REQUIRE(candidate_blocks(step, async).contains(single));
                        step = apply_block(step, single, spec, async);
                    }
                    REQUIRE(strip_fairness(step) == strip_fairness(target));
                    if (k == SchedulerKind::Fsync || k == SchedulerKind::Centralized) {
                        REQUIRE(candidate_blocks(c, ssync).contains(e.block));
                        REQUIRE(target.robots[0].phase == Phase::Look);
                        REQUIRE(target.robots[1].phase == Phase::Look);
                    }
                }
                if (k == SchedulerKind::Async) {
                    // both interleavings are explored when neither robot is held back
                    if (c.fair.streak < opts.sched.bound) REQUIRE(g.successors(u).size() == 2);
                }
            }
        }
    }
}
