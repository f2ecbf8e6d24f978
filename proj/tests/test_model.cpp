#include <doctest.h>

#include "oracles.hpp"
#include "rdv/algospec.hpp"
#include "rdv/model.hpp"

using namespace rdv;

namespace {

AlgorithmSpec spec(const char* name) { return *builtin(name); }

RobotState robot(Color c, Phase p, Move m, std::optional<Color> pc, bool moving) {
    return RobotState{c, p, m, pc, moving};
}

// All well-formed robot states over the given colors.
std::vector<RobotState> robot_states(int colors) {
    std::vector<RobotState> out;
    for (int ci = 0; ci < colors; ++ci) {
        Color c = kAllColors[ci];
        out.push_back(robot(c, Phase::Look, Move::None, std::nullopt, false));
        for (Move m : {Move::Stay, Move::ToHalf, Move::ToOther, Move::Miss}) {
            for (int pi = 0; pi < colors; ++pi)
                out.push_back(robot(c, Phase::Compute, m, kAllColors[pi], false));
            out.push_back(robot(c, Phase::BegMove, m, std::nullopt, false));
            out.push_back(robot(c, Phase::EndMove, m, std::nullopt, m != Move::Stay));
        }
    }
    return out;
}

}  // namespace

TEST_CASE("observe: gathered needs SAME and a still partner") {
    Configuration c = simple_configuration(Distance::Same, Color::White, Color::White);
    Observation o = observe(c, RobotId::A);
    CHECK(o.gathered);
    CHECK_FALSE(o.other_moving);

    c.robots[1] = robot(Color::White, Phase::EndMove, Move::ToHalf, std::nullopt, true);
    o = observe(c, RobotId::A);
    CHECK_FALSE(o.gathered);
    CHECK(o.other_moving);
}

TEST_CASE("observe: pending colors are invisible") {
    Configuration c = simple_configuration(Distance::Near, Color::Black, Color::White);
    c.robots[1] = robot(Color::White, Phase::Compute, Move::Stay, Color::Red, false);
    CHECK(observe(c, RobotId::A).other_color == Color::White);
}

TEST_CASE("stationarize") {
    CHECK(stationarize(Move::ToOther, true) == Move::Stay);
    CHECK(stationarize(Move::ToHalf, true) == Move::Stay);
    CHECK(stationarize(Move::ToHalf, false) == Move::ToHalf);
    CHECK(stationarize(Move::Stay, true) == Move::Stay);
}

TEST_CASE("apply_look examples") {
    auto vig3 = spec("Vig3Cols");
    Configuration c = simple_configuration(Distance::Near, Color::Black, Color::White);
    Configuration n = apply_look(c, RobotId::A, vig3);
    CHECK(n.robots[0].pending_move == Move::ToOther);
    CHECK(n.robots[0].pending_color == Color::Black);
    CHECK(n.robots[0].phase == Phase::Compute);
    CHECK(n.robots[1] == c.robots[1]);

    // partner moving: the HALF of (BLACK, BLACK) becomes MISS
    c = simple_configuration(Distance::Near, Color::Black, Color::Black);
    c.robots[1] = robot(Color::Black, Phase::EndMove, Move::ToHalf, std::nullopt, true);
    n = apply_look(c, RobotId::A, vig3);
    CHECK(n.robots[0].pending_move == Move::Miss);
    CHECK(n.robots[0].pending_color == Color::White);

    // a STAY is never demoted
    c = simple_configuration(Distance::Near, Color::White, Color::White);
    c.robots[1] = robot(Color::White, Phase::EndMove, Move::ToHalf, std::nullopt, true);
    CHECK(apply_look(c, RobotId::A, vig3).robots[0].pending_move == Move::Stay);

    auto her2 = spec("Her2Cols");
    c = simple_configuration(Distance::Same, Color::White, Color::Black);
    n = apply_look(c, RobotId::A, her2);
    CHECK(n.robots[0].pending_move == Move::Stay);
    CHECK(n.robots[0].pending_color == Color::White);
}

TEST_CASE("apply_compute commits the color and the partner sees it") {
    auto vig3 = spec("Vig3Cols");
    Configuration c = simple_configuration(Distance::Near, Color::White, Color::White);
    c = apply_look(c, RobotId::A, vig3);  // WHITE,WHITE -> RED, STAY
    CHECK(observe(c, RobotId::B).other_color == Color::White);
    c = apply_compute(c, RobotId::A);
    CHECK(c.robots[0].color == Color::Red);
    CHECK_FALSE(c.robots[0].pending_color.has_value());
    CHECK(observe(c, RobotId::B).other_color == Color::Red);

    Configuration same = simple_configuration(Distance::Near, Color::Black, Color::Black);
    same.robots[0] = robot(Color::Black, Phase::Compute, Move::Stay, Color::Black, false);
    CHECK(apply_compute(same, RobotId::A).robots[0].color == Color::Black);
}

TEST_CASE("apply_begmove") {
    Configuration c = simple_configuration(Distance::Near, Color::Black, Color::Black);
    for (auto [m, moving] : {std::pair{Move::Stay, false}, {Move::ToHalf, true}, {Move::Miss, true}}) {
        c.robots[0] = robot(Color::Black, Phase::BegMove, m, std::nullopt, false);
        CHECK(apply_begmove(c, RobotId::A).robots[0].is_moving == moving);
    }
}

TEST_CASE("resolution agrees with the hand-written table") {
    auto cases = oracle::resolution_cases();
    REQUIRE(cases.size() == 50);
    for (const auto& k : cases) {
        CAPTURE(to_string(k.distance));
        CAPTURE(to_string(k.mine));
        CAPTURE(to_string(k.others));
        if (!k.defined) {
            CHECK_THROWS_AS(resolve(k.distance, k.mine, k.others), ModelInvariantError);
            continue;
        }
        Resolution r = resolve(k.distance, k.mine, k.others);
        CHECK(r.distance == k.out_distance);
        CHECK(r.other_pending == k.out_others);
        CHECK(r.row == k.row);
    }
}

TEST_CASE("resolution closure and FAR rejection") {
    for (Distance d : {Distance::Same, Distance::Near})
        for (Move a : kAllMoves)
            for (Move b : kAllMoves) {
                if (a == Move::None) continue;
                Resolution r = resolve(d, a, b);
                CHECK(r.distance != Distance::Far);
                CHECK(r.row >= 1);
                CHECK(r.row <= 9);
            }
    CHECK_THROWS_AS(resolve(Distance::Far, Move::ToHalf, Move::None), ModelInvariantError);
}

TEST_CASE("resolve_move examples") {
    Configuration c = simple_configuration(Distance::Near, Color::Black, Color::Black);
    c.robots[0] = robot(Color::Black, Phase::EndMove, Move::ToOther, std::nullopt, true);
    Configuration n = resolve_move(c, RobotId::A);
    CHECK(n.distance == Distance::Same);
    CHECK(n.robots[0].phase == Phase::Look);
    CHECK_FALSE(n.robots[0].is_moving);
    CHECK(n.robots[0].pending_move == Move::None);

    c.robots[0] = robot(Color::Black, Phase::EndMove, Move::ToHalf, std::nullopt, true);
    c.robots[1] = robot(Color::Black, Phase::BegMove, Move::ToHalf, std::nullopt, false);
    n = resolve_move(c, RobotId::A);
    CHECK(n.distance == Distance::Near);
    CHECK(n.robots[1].pending_move == Move::ToOther);

    c.distance = Distance::Same;
    c.robots[0] = robot(Color::Black, Phase::EndMove, Move::Miss, std::nullopt, true);
    n = resolve_move(c, RobotId::A);
    CHECK(n.distance == Distance::Near);
    CHECK(n.robots[1].pending_move == Move::Miss);

    // STAY at FAR leaves the distance alone
    c.distance = Distance::Far;
    c.robots[0] = robot(Color::Black, Phase::EndMove, Move::Stay, std::nullopt, false);
    CHECK(resolve_move(c, RobotId::A).distance == Distance::Far);
}

TEST_CASE("stopped-short motion at FAR") {
    Configuration c = simple_configuration(Distance::Far, Color::Black, Color::Black);
    c.robots[0] = robot(Color::Black, Phase::EndMove, Move::ToHalf, std::nullopt, true);
    c.robots[1] = robot(Color::Black, Phase::BegMove, Move::ToOther, std::nullopt, false);
    Configuration n = resolve_move_stopped_far(c, RobotId::A);
    CHECK(n.distance == Distance::Far);
    CHECK(n.robots[1].pending_move == Move::Miss);
    CHECK(n.robots[0].phase == Phase::Look);

    c.robots[1] = robot(Color::Black, Phase::BegMove, Move::Stay, std::nullopt, false);
    CHECK(resolve_move_stopped_far(c, RobotId::A).robots[1].pending_move == Move::Stay);
}

TEST_CASE("phase cycle: one step for the actor, nothing for the partner") {
    auto algo = spec("Vig3Cols");
    auto states = robot_states(3);
    int checked = 0;
    for (Distance d : {Distance::Same, Distance::Near})
        for (const RobotState& a : states)
            for (const RobotState& b : states) {
                Configuration c{d, {a, b}, {}};
                if (!well_formed(c)) continue;
                for (RobotId me : {RobotId::A, RobotId::B}) {
                    Configuration n = apply_event(c, me, algo);
                    REQUIRE(n.robot(me).phase == next(c.robot(me).phase));
                    REQUIRE(n.robot(other(me)).phase == c.robot(other(me)).phase);
                    REQUIRE(n.robot(other(me)).color == c.robot(other(me)).color);
                    REQUIRE(n.distance != Distance::Far);
                    REQUIRE(well_formed(n));
                    ++checked;
                }
            }
    CHECK(checked > 1000);
}

TEST_CASE("MISS only from demotion or resolution rows 3, 6, 9") {
    auto algo = spec("Vig3Cols");
    auto states = robot_states(3);
    for (const RobotState& a : states)
        for (const RobotState& b : states) {
            Configuration c{Distance::Near, {a, b}, {}};
            if (!well_formed(c)) continue;
            Configuration n = apply_event(c, RobotId::A, algo);
            for (int i = 0; i < 2; ++i) {
                if (n.robots[i].pending_move != Move::Miss || c.robots[i].pending_move == Move::Miss)
                    continue;
                if (i == 0) {
                    REQUIRE(c.robots[0].phase == Phase::Look);
                    REQUIRE(c.robots[1].is_moving);
                } else {
                    REQUIRE(c.robots[0].phase == Phase::EndMove);
                    int row = resolve(c.distance, c.robots[0].pending_move, c.robots[1].pending_move).row;
                    REQUIRE((row == 3 || row == 6 || row == 9));
                }
            }
        }
}

TEST_CASE("pack and unpack are inverse") {
    auto states = robot_states(5);
    int n = 0;
    for (std::size_t i = 0; i < states.size(); i += 3)
        for (std::size_t j = 0; j < states.size(); j += 5)
            for (Distance d : {Distance::Same, Distance::Near, Distance::Far}) {
                Configuration c{d, {states[i], states[j]}, {RobotId::B, 37}};
                REQUIRE(Configuration::unpack(c.pack()) == c);
                REQUIRE((c.pack_without_fairness() & ~Configuration::kNonFairMask) == 0);
                ++n;
            }
    CHECK(n > 0);
    Configuration c = simple_configuration(Distance::Near, Color::Green, Color::Red);
    CHECK(Configuration::unpack(c.pack()) == c);
}

TEST_CASE("events outside their phase are invariant errors") {
    auto algo = spec("Vig2Cols");
    Configuration c = simple_configuration(Distance::Near, Color::Black, Color::Black);
    CHECK_THROWS_AS(apply_compute(c, RobotId::A), ModelInvariantError);
    CHECK_THROWS_AS(apply_begmove(c, RobotId::A), ModelInvariantError);
    CHECK_THROWS_AS(resolve_move(c, RobotId::A), ModelInvariantError);
    c = apply_look(c, RobotId::A, algo);
    CHECK_THROWS_AS(apply_look(c, RobotId::A, algo), ModelInvariantError);
}
