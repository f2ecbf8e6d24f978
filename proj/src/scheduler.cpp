#include "rdv/scheduler.hpp"

#include <algorithm>
#include <cctype>

namespace rdv {

std::vector<Phase> EventBlock::events() const {
    using enum Phase;
    switch (kind) {
        case BlockKind::Round:
            return {Look, Look, Compute, BegMove, EndMove, Compute, BegMove, EndMove};
        case BlockKind::JointLookCompute:
            if (length == 6) return {Look, Look, Compute, Compute, BegMove, BegMove};
            return {Look, Look, Compute, Compute};
        case BlockKind::Run:
            break;
    }
    std::vector<Phase> out;
    Phase p = first;
    for (int i = 0; i < length; ++i, p = next(p)) out.push_back(p);
    return out;
}

std::vector<RobotId> EventBlock::actors() const {
    using enum RobotId;
    switch (kind) {
        case BlockKind::Round:
            return {A, B, A, A, A, B, B, B};
        case BlockKind::JointLookCompute:
            if (length == 6) return {A, B, A, B, A, B};
            return {A, B, A, B};
        case BlockKind::Run:
            break;
    }
    return std::vector<RobotId>(length, robot);
}

int default_fairness_bound(const AlgorithmSpec& spec) { return 8 * spec.num_colors(); }

bool BlockSet::contains(const EventBlock& b) const {
    return std::find(begin(), end(), b) != end();
}

BlockSet candidate_blocks(const Configuration& config, const SchedulerOptions& opts) {
    BlockSet out;
    auto idle = [&](RobotId r) { return config.robot(r).phase == Phase::Look; };
    auto centralized = [&] {
        for (RobotId r : {RobotId::A, RobotId::B})
            if (idle(r)) out.push(EventBlock::run(r, Phase::Look, 4));
    };
    bool both_idle = idle(RobotId::A) && idle(RobotId::B);
    auto round = [&] {
        if (both_idle) out.push(EventBlock::round());
    };

    switch (opts.kind) {
        case SchedulerKind::Centralized:
            centralized();
            break;
        case SchedulerKind::Fsync:
            round();
            break;
        case SchedulerKind::Ssync:
            centralized();
            round();
            break;
        case SchedulerKind::Async:
        case SchedulerKind::AsyncLc:
        case SchedulerKind::AsyncMove:
            for (RobotId r : {RobotId::A, RobotId::B}) {
                Phase p = config.robot(r).phase;
                std::uint8_t len = 1;
                if (opts.kind == SchedulerKind::AsyncLc && p == Phase::Look)
                    len = opts.lc_includes_begmove ? 3 : 2;
                if (opts.kind == SchedulerKind::AsyncMove && p == Phase::BegMove) len = 2;
                out.push(EventBlock::run(r, p, len));
            }
            if (opts.kind == SchedulerKind::AsyncLc && opts.lc_joint && both_idle)
                out.push(EventBlock::joint_look_compute(opts.lc_includes_begmove));
            break;
    }
    return out;
}

BlockSet enabled_blocks(const Configuration& config, const SchedulerOptions& opts) {
    BlockSet all = candidate_blocks(config, opts);
    if (!config.fair.last_active || config.fair.streak < opts.bound) return all;

    RobotId hog = *config.fair.last_active;
    bool other_can_run = std::any_of(all.begin(), all.end(), [&](const EventBlock& b) {
        return !b.joint() && b.robot == other(hog);
    });
    if (!other_can_run) return all;

    BlockSet out;
    for (const EventBlock& b : all)
        if (b.joint() || b.robot != hog) out.push(b);
    return out;
}

FairRun next_fair_run(const FairRun& fair, const EventBlock& block, int bound) {
    if (block.joint()) return FairRun{};
    if (fair.last_active == block.robot) {
        int streak = std::min<int>(fair.streak + 1, bound);
        return FairRun{block.robot, static_cast<std::uint8_t>(streak)};
    }
    return FairRun{block.robot, 1};
}

namespace {

void check_block_start(const Configuration& config, const EventBlock& block) {
    if (block.joint()) {
        if (config.robots[0].phase != Phase::Look || config.robots[1].phase != Phase::Look)
            throw ModelInvariantError("joint activation requires both robots idle");
    } else if (config.robot(block.robot).phase != block.first) {
        throw ModelInvariantError("block does not start at the robot's next event");
    }
}

}  // namespace

Configuration apply_block(const Configuration& config, const EventBlock& block,
                          const AlgorithmSpec& algo, const SchedulerOptions& opts) {
    check_block_start(config, block);
    Configuration c = config;
    for (RobotId r : block.actors()) c = apply_event(c, r, algo);
    c.fair = next_fair_run(config.fair, block, opts.bound);
    return c;
}

std::vector<NonRigidSuccessor> apply_block_nonrigid(const Configuration& config,
                                                    const EventBlock& block,
                                                    const AlgorithmSpec& algo,
                                                    const SchedulerOptions& opts) {
    check_block_start(config, block);
    std::vector<NonRigidSuccessor> frontier{{config, 0}};
    for (RobotId r : block.actors()) {
        std::vector<NonRigidSuccessor> next_frontier;
        for (const NonRigidSuccessor& s : frontier) {
            const RobotState& me = s.config.robot(r);
            bool far_motion = me.phase == Phase::EndMove && s.config.distance == Distance::Far &&
                              me.pending_move != Move::Stay;
            next_frontier.push_back({apply_event(s.config, r, algo), s.stops});
            if (far_motion)
                next_frontier.push_back({resolve_move_stopped_far(s.config, r), s.stops + 1});
        }
        frontier = std::move(next_frontier);
    }
    FairRun fair = next_fair_run(config.fair, block, opts.bound);
    for (NonRigidSuccessor& s : frontier) s.config.fair = fair;
    return frontier;
}

std::string_view to_string(SchedulerKind k) {
    switch (k) {
        case SchedulerKind::Centralized: return "centralized";
        case SchedulerKind::Fsync: return "fsync";
        case SchedulerKind::Ssync: return "ssync";
        case SchedulerKind::AsyncLc: return "async-lc";
        case SchedulerKind::AsyncMove: return "async-move";
        case SchedulerKind::Async: return "async";
    }
    return "?";
}

std::optional<SchedulerKind> parse_scheduler(std::string_view s) {
    std::string v;
    for (char c : s) {
        if (c == '_' || c == '-') continue;
        v += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    if (v == "centralized" || v == "central") return SchedulerKind::Centralized;
    if (v == "fsync") return SchedulerKind::Fsync;
    if (v == "ssync") return SchedulerKind::Ssync;
    if (v == "asynclc" || v == "lc") return SchedulerKind::AsyncLc;
    if (v == "asyncmove" || v == "move") return SchedulerKind::AsyncMove;
    if (v == "async") return SchedulerKind::Async;
    return std::nullopt;
}

std::string describe_events(const EventBlock& b) {
    if (b.kind == BlockKind::Round) return "FSYNC_ROUND";
    if (b.kind == BlockKind::JointLookCompute) return b.length == 6 ? "SYNC_LCB" : "SYNC_LC";
    std::string out;
    for (Phase p : b.events()) {
        if (!out.empty()) out += ',';
        out += to_string(p);
    }
    return out;
}

std::optional<EventBlock> parse_block(std::string_view robot, std::string_view events) {
    if (events == "FSYNC_ROUND" || events == "SYNC_LC" || events == "SYNC_LCB") {
        if (robot != "AB") return std::nullopt;
        if (events == "FSYNC_ROUND") return EventBlock::round();
        return EventBlock::joint_look_compute(events == "SYNC_LCB");
    }
    RobotId r;
    if (robot == "A") r = RobotId::A;
    else if (robot == "B") r = RobotId::B;
    else return std::nullopt;

    std::vector<Phase> phases;
    std::size_t start = 0;
    while (start <= events.size()) {
        std::size_t comma = events.find(',', start);
        std::string_view part = events.substr(start, comma == std::string_view::npos
                                                         ? std::string_view::npos
                                                         : comma - start);
        auto p = parse_phase(part);
        if (!p) return std::nullopt;
        phases.push_back(*p);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (phases.empty() || phases.size() > 4) return std::nullopt;
    for (std::size_t i = 1; i < phases.size(); ++i)
        if (phases[i] != next(phases[i - 1])) return std::nullopt;
    return EventBlock::run(r, phases.front(), static_cast<std::uint8_t>(phases.size()));
}

}  // namespace rdv
