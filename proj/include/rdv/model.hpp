#pragma once

// Two-robot verification model: configurations, observations and the four
// atomic events (LOOK, COMPUTE, BEGMOVE, ENDMOVE) with movement resolution.

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rdv {

enum class Color : std::uint8_t { Black, White, Red, Yellow, Green };
inline constexpr int kMaxColors = 5;
inline constexpr std::array<Color, kMaxColors> kAllColors{
    Color::Black, Color::White, Color::Red, Color::Yellow, Color::Green};

enum class Distance : std::uint8_t { Same, Near, Far };

// None is the "no pending move" value; it never comes out of an algorithm.
enum class Move : std::uint8_t { Stay, ToHalf, ToOther, Miss, None };
inline constexpr std::array<Move, 5> kAllMoves{Move::Stay, Move::ToHalf, Move::ToOther,
                                               Move::Miss, Move::None};

// The NEXT event the robot executes. Look doubles as the idle (WAIT) state.
enum class Phase : std::uint8_t { Look, Compute, BegMove, EndMove };

enum class LightModel : std::uint8_t { Full, External };

enum class RobotId : std::uint8_t { A = 0, B = 1 };

constexpr RobotId other(RobotId r) { return r == RobotId::A ? RobotId::B : RobotId::A; }
constexpr std::size_t index(RobotId r) { return static_cast<std::size_t>(r); }
constexpr Phase next(Phase p) { return static_cast<Phase>((static_cast<int>(p) + 1) % 4); }

/// Thrown when an event is applied outside its precondition. Reaching this
/// from the explorer means a bug in the model, not in the checked algorithm.
class ModelInvariantError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

struct RobotState {
    Color color = Color::Black;
    Phase phase = Phase::Look;
    Move pending_move = Move::None;
    std::optional<Color> pending_color;
    bool is_moving = false;

    friend bool operator==(const RobotState&, const RobotState&) = default;
};

/// Bounded-fairness bookkeeping: who ran the last block and how many blocks
/// in a row it has executed.
struct FairRun {
    std::optional<RobotId> last_active;
    std::uint8_t streak = 0;

    friend bool operator==(const FairRun&, const FairRun&) = default;
};

struct Configuration {
    Distance distance = Distance::Near;
    std::array<RobotState, 2> robots{};
    FairRun fair{};

    RobotState& robot(RobotId r) { return robots[index(r)]; }
    const RobotState& robot(RobotId r) const { return robots[index(r)]; }

    friend bool operator==(const Configuration&, const Configuration&) = default;

    // 36-bit lossless encoding used as the hash key of the state store.
    std::uint64_t pack() const;
    static Configuration unpack(std::uint64_t bits);
    // Same encoding with the fairness bits cleared.
    std::uint64_t pack_without_fairness() const { return pack() & kNonFairMask; }

    static constexpr std::uint64_t kNonFairMask = (std::uint64_t{1} << 26) - 1;

    template <typename H>
    friend H AbslHashValue(H h, const Configuration& c) {
        return H::combine(std::move(h), c.pack());
    }
};

/// A fresh idle configuration: both robots waiting with no pending state.
Configuration simple_configuration(Distance d, Color a, Color b);

struct Observation {
    Color my_color = Color::Black;
    Color other_color = Color::Black;
    bool gathered = false;
    bool other_moving = false;

    friend bool operator==(const Observation&, const Observation&) = default;
};

struct Command {
    Color new_color = Color::Black;
    Move move = Move::Stay;  // Stay, ToHalf or ToOther

    friend bool operator==(const Command&, const Command&) = default;
};

class AlgorithmSpec;

Observation observe(const Configuration& config, RobotId me);

/// A move towards a point the robot already occupies is a Stay.
Move stationarize(Move move, bool gathered);

Configuration apply_look(const Configuration& config, RobotId me, const AlgorithmSpec& algo);
Configuration apply_compute(const Configuration& config, RobotId me);
Configuration apply_begmove(const Configuration& config, RobotId me);

struct Resolution {
    Distance distance;
    Move other_pending;
    int row;  // 1-based row of the resolution table that fired
};

/// Movement-resolution table on (distance, me.pending, other.pending).
/// Rows are tried top to bottom; distance must be Same or Near.
Resolution resolve(Distance distance, Move mine, Move others);

/// ENDMOVE: resolves the pending move and returns the robot to idle.
/// A Far distance is treated as Near (the rigid outcome of a non-rigid move).
Configuration resolve_move(const Configuration& config, RobotId me);

/// Non-rigid variant of ENDMOVE for a robot whose move began at Far: the
/// motion stops short, distance stays Far and the other's target is stale.
Configuration resolve_move_stopped_far(const Configuration& config, RobotId me);

/// Applies one event to robot `me`, dispatching on its current phase.
Configuration apply_event(const Configuration& config, RobotId me, const AlgorithmSpec& algo);

/// Structural invariants linking phase, pending move/color and is_moving.
bool well_formed(const Configuration& config);

std::string_view to_string(Color c);
std::string_view to_string(Distance d);
std::string_view to_string(Move m);
std::string_view to_string(Phase p);
std::string_view to_string(LightModel l);
std::string_view to_string(RobotId r);

std::optional<Color> parse_color(std::string_view s);
std::optional<Distance> parse_distance(std::string_view s);
std::optional<Move> parse_move(std::string_view s);
std::optional<Phase> parse_phase(std::string_view s);

std::ostream& operator<<(std::ostream& os, const RobotState& r);
std::ostream& operator<<(std::ostream& os, const Configuration& c);

}  // namespace rdv
