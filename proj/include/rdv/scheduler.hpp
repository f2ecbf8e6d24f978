#pragma once

// Scheduler models: which atomic event blocks may fire next, and how a block
// is applied to a configuration.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rdv/algospec.hpp"
#include "rdv/model.hpp"

namespace rdv {

// Declaration order is the column order of the verdict table.
enum class SchedulerKind : std::uint8_t { Centralized, Fsync, Ssync, AsyncLc, AsyncMove, Async };
inline constexpr std::array<SchedulerKind, 6> kAllSchedulers{
    SchedulerKind::Centralized, SchedulerKind::Fsync,     SchedulerKind::Ssync,
    SchedulerKind::AsyncLc,     SchedulerKind::AsyncMove, SchedulerKind::Async};

enum class BlockKind : std::uint8_t {
    Run,          // consecutive events of one robot
    Round,        // LOOK(A) LOOK(B) then COMPUTE/BEGMOVE/ENDMOVE of A, then of B
    JointLookCompute,  // LOOK(A) LOOK(B) COMPUTE(A) COMPUTE(B) [BEGMOVE(A) BEGMOVE(B)]
};

/// Events executed without interleaving. Joint blocks activate both robots
/// at the same instant: both snapshots are taken before either light changes.
struct EventBlock {
    BlockKind kind = BlockKind::Run;
    RobotId robot = RobotId::A;  // Run only
    Phase first = Phase::Look;   // Run only
    std::uint8_t length = 1;     // number of events

    static EventBlock round() { return EventBlock{BlockKind::Round, RobotId::A, Phase::Look, 8}; }
    static EventBlock joint_look_compute(bool with_begmove) {
        return EventBlock{BlockKind::JointLookCompute, RobotId::A, Phase::Look,
                          static_cast<std::uint8_t>(with_begmove ? 6 : 4)};
    }
    static EventBlock run(RobotId r, Phase first, std::uint8_t length) {
        return EventBlock{BlockKind::Run, r, first, length};
    }

    bool joint() const { return kind != BlockKind::Run; }
    std::vector<Phase> events() const;
    // Robot executing each event, in order.
    std::vector<RobotId> actors() const;
    friend bool operator==(const EventBlock&, const EventBlock&) = default;
};

struct SchedulerOptions {
    SchedulerKind kind = SchedulerKind::Async;
    int bound = 8;                     // max consecutive blocks of one robot
    bool lc_includes_begmove = false;  // ASYNC_LC groups LOOK+COMPUTE+BEGMOVE
    bool lc_joint = true;              // ASYNC_LC lets both robots look+compute together
};

int default_fairness_bound(const AlgorithmSpec& spec);

/// Small fixed-capacity set; no scheduler enables more than three blocks.
class BlockSet {
  public:
    void push(const EventBlock& b) { items_[size_++] = b; }
    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }
    const EventBlock* begin() const { return items_.data(); }
    const EventBlock* end() const { return items_.data() + size_; }
    const EventBlock& operator[](std::size_t i) const { return items_[i]; }
    bool contains(const EventBlock& b) const;

  private:
    std::array<EventBlock, 3> items_{};
    std::size_t size_ = 0;
};

/// Blocks the adversary may schedule next, after the fairness filter: a robot
/// that already ran `bound` blocks in a row must yield when the other can run.
BlockSet enabled_blocks(const Configuration& config, const SchedulerOptions& opts);

/// Same as enabled_blocks without the fairness filter.
BlockSet candidate_blocks(const Configuration& config, const SchedulerOptions& opts);

/// Applies the block's events in order and updates the fairness bookkeeping.
Configuration apply_block(const Configuration& config, const EventBlock& block,
                          const AlgorithmSpec& algo, const SchedulerOptions& opts);

struct NonRigidSuccessor {
    Configuration config;
    int stops = 0;  // motions started at FAR that were stopped before getting close
};

/// Non-rigid variant: every ENDMOVE of a real motion started at FAR branches
/// into "got close" (rigid resolution, distance leaves FAR) and "stopped
/// short" (distance stays FAR).
std::vector<NonRigidSuccessor> apply_block_nonrigid(const Configuration& config,
                                                    const EventBlock& block,
                                                    const AlgorithmSpec& algo,
                                                    const SchedulerOptions& opts);

FairRun next_fair_run(const FairRun& fair, const EventBlock& block, int bound);

std::string_view to_string(SchedulerKind k);
std::optional<SchedulerKind> parse_scheduler(std::string_view s);
std::string describe_events(const EventBlock& b);  // "LOOK,COMPUTE" / "FSYNC_ROUND" / "SYNC_LC"
std::optional<EventBlock> parse_block(std::string_view robot, std::string_view events);

}  // namespace rdv
