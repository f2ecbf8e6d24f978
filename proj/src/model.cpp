#include "rdv/model.hpp"

#include "rdv/algospec.hpp"

namespace rdv {

namespace {

constexpr std::uint64_t kNoColor = 7;

std::uint64_t pack_robot(const RobotState& r) {
    std::uint64_t bits = static_cast<std::uint64_t>(r.color);
    bits |= static_cast<std::uint64_t>(r.phase) << 3;
    bits |= static_cast<std::uint64_t>(r.pending_move) << 5;
    bits |= (r.pending_color ? static_cast<std::uint64_t>(*r.pending_color) : kNoColor) << 8;
    bits |= static_cast<std::uint64_t>(r.is_moving) << 11;
    return bits;
}

RobotState unpack_robot(std::uint64_t bits) {
    RobotState r;
    r.color = static_cast<Color>(bits & 7);
    r.phase = static_cast<Phase>((bits >> 3) & 3);
    r.pending_move = static_cast<Move>((bits >> 5) & 7);
    std::uint64_t pc = (bits >> 8) & 7;
    if (pc != kNoColor) r.pending_color = static_cast<Color>(pc);
    r.is_moving = ((bits >> 11) & 1) != 0;
    return r;
}

bool is_motion(Move m) { return m == Move::ToHalf || m == Move::ToOther || m == Move::Miss; }

bool idle_or_stay(Move m) { return m == Move::Stay || m == Move::None; }

void require_phase(const RobotState& r, Phase expected, const char* event) {
    if (r.phase != expected) {
        throw ModelInvariantError(std::string(event) + " applied to a robot whose next event is " +
                                  std::string(to_string(r.phase)));
    }
}

}  // namespace

std::uint64_t Configuration::pack() const {
    std::uint64_t bits = static_cast<std::uint64_t>(distance);
    bits |= pack_robot(robots[0]) << 2;
    bits |= pack_robot(robots[1]) << 14;
    std::uint64_t last = fair.last_active ? 1 + index(*fair.last_active) : 0;
    bits |= last << 26;
    bits |= static_cast<std::uint64_t>(fair.streak) << 28;
    return bits;
}

Configuration Configuration::unpack(std::uint64_t bits) {
    Configuration c;
    c.distance = static_cast<Distance>(bits & 3);
    c.robots[0] = unpack_robot((bits >> 2) & 0xFFF);
    c.robots[1] = unpack_robot((bits >> 14) & 0xFFF);
    std::uint64_t last = (bits >> 26) & 3;
    if (last != 0) c.fair.last_active = static_cast<RobotId>(last - 1);
    c.fair.streak = static_cast<std::uint8_t>((bits >> 28) & 0xFF);
    return c;
}

Configuration simple_configuration(Distance d, Color a, Color b) {
    Configuration c;
    c.distance = d;
    c.robots[0].color = a;
    c.robots[1].color = b;
    return c;
}

Observation observe(const Configuration& config, RobotId me) {
    const RobotState& self = config.robot(me);
    const RobotState& peer = config.robot(other(me));
    Observation obs;
    obs.my_color = self.color;
    obs.other_color = peer.color;
    obs.other_moving = peer.is_moving;
    // A robot in motion has no defined position, so it is never seen as gathered.
    obs.gathered = config.distance == Distance::Same && !peer.is_moving;
    return obs;
}

Move stationarize(Move move, bool gathered) {
    if (gathered && (move == Move::ToHalf || move == Move::ToOther)) return Move::Stay;
    return move;
}

Configuration apply_look(const Configuration& config, RobotId me, const AlgorithmSpec& algo) {
    require_phase(config.robot(me), Phase::Look, "LOOK");
    Observation obs = observe(config, me);
    Command cmd = evaluate(algo, obs);
    Move move = stationarize(cmd.move, obs.gathered);
    if (obs.other_moving && (move == Move::ToHalf || move == Move::ToOther)) move = Move::Miss;

    Configuration out = config;
    RobotState& self = out.robot(me);
    self.pending_move = move;
    self.pending_color = cmd.new_color;
    self.phase = Phase::Compute;
    return out;
}

Configuration apply_compute(const Configuration& config, RobotId me) {
    const RobotState& r = config.robot(me);
    require_phase(r, Phase::Compute, "COMPUTE");
    if (!r.pending_color) throw ModelInvariantError("COMPUTE without a pending color");
    Configuration out = config;
    RobotState& self = out.robot(me);
    self.color = *self.pending_color;
    self.pending_color.reset();
    self.phase = Phase::BegMove;
    return out;
}

Configuration apply_begmove(const Configuration& config, RobotId me) {
    require_phase(config.robot(me), Phase::BegMove, "BEGMOVE");
    Configuration out = config;
    RobotState& self = out.robot(me);
    self.is_moving = self.pending_move != Move::Stay;
    self.phase = Phase::EndMove;
    return out;
}

Resolution resolve(Distance distance, Move mine, Move others) {
    if (distance == Distance::Far) throw ModelInvariantError("rigid resolution at distance FAR");
    switch (mine) {
        case Move::Stay:
            return {distance, others, 1};
        case Move::Miss:
            if (idle_or_stay(others)) return {Distance::Near, others, 2};
            return {Distance::Near, Move::Miss, 3};
        case Move::ToOther:
            if (idle_or_stay(others)) return {Distance::Same, others, 4};
            if (distance == Distance::Same) return {Distance::Same, others, 5};
            return {Distance::Same, Move::Miss, 6};
        case Move::ToHalf:
            if (others == Move::ToHalf) return {distance, Move::ToOther, 7};
            if (idle_or_stay(others)) return {distance, others, 8};
            return {distance, Move::Miss, 9};
        case Move::None:
            break;
    }
    throw ModelInvariantError("ENDMOVE without a pending move");
}

Configuration resolve_move(const Configuration& config, RobotId me) {
    require_phase(config.robot(me), Phase::EndMove, "ENDMOVE");
    Configuration out = config;
    RobotState& self = out.robot(me);
    RobotState& peer = out.robot(other(me));
    Distance from = config.distance == Distance::Far ? Distance::Near : config.distance;
    Resolution r = resolve(from, self.pending_move, peer.pending_move);
    // A robot that stays put leaves even a FAR distance untouched.
    out.distance = r.row == 1 ? config.distance : r.distance;
    peer.pending_move = r.other_pending;
    self.pending_move = Move::None;
    self.is_moving = false;
    self.phase = Phase::Look;
    return out;
}

Configuration resolve_move_stopped_far(const Configuration& config, RobotId me) {
    const RobotState& r = config.robot(me);
    require_phase(r, Phase::EndMove, "ENDMOVE");
    if (config.distance != Distance::Far || !is_motion(r.pending_move)) {
        throw ModelInvariantError("stopped-short resolution requires a motion started at FAR");
    }
    Configuration out = config;
    RobotState& self = out.robot(me);
    RobotState& peer = out.robot(other(me));
    if (!idle_or_stay(peer.pending_move)) peer.pending_move = Move::Miss;
    self.pending_move = Move::None;
    self.is_moving = false;
    self.phase = Phase::Look;
    return out;
}

Configuration apply_event(const Configuration& config, RobotId me, const AlgorithmSpec& algo) {
    switch (config.robot(me).phase) {
        case Phase::Look:
            return apply_look(config, me, algo);
        case Phase::Compute:
            return apply_compute(config, me);
        case Phase::BegMove:
            return apply_begmove(config, me);
        case Phase::EndMove:
            return resolve_move(config, me);
    }
    throw ModelInvariantError("corrupt phase");
}

bool well_formed(const Configuration& config) {
    for (const RobotState& r : config.robots) {
        if ((r.pending_move == Move::None) != (r.phase == Phase::Look)) return false;
        if (r.pending_color.has_value() != (r.phase == Phase::Compute)) return false;
        bool should_move = r.phase == Phase::EndMove && !idle_or_stay(r.pending_move);
        if (r.is_moving != should_move) return false;
    }
    return true;
}

std::string_view to_string(Color c) {
    switch (c) {
        case Color::Black: return "BLACK";
        case Color::White: return "WHITE";
        case Color::Red: return "RED";
        case Color::Yellow: return "YELLOW";
        case Color::Green: return "GREEN";
    }
    return "?";
}

std::string_view to_string(Distance d) {
    switch (d) {
        case Distance::Same: return "SAME";
        case Distance::Near: return "NEAR";
        case Distance::Far: return "FAR";
    }
    return "?";
}

std::string_view to_string(Move m) {
    switch (m) {
        case Move::Stay: return "STAY";
        case Move::ToHalf: return "HALF";
        case Move::ToOther: return "OTHER";
        case Move::Miss: return "MISS";
        case Move::None: return "NONE";
    }
    return "?";
}

std::string_view to_string(Phase p) {
    switch (p) {
        case Phase::Look: return "LOOK";
        case Phase::Compute: return "COMPUTE";
        case Phase::BegMove: return "BEGMOVE";
        case Phase::EndMove: return "ENDMOVE";
    }
    return "?";
}

std::string_view to_string(LightModel l) { return l == LightModel::Full ? "full" : "external"; }

std::string_view to_string(RobotId r) { return r == RobotId::A ? "A" : "B"; }

std::optional<Color> parse_color(std::string_view s) {
    for (Color c : kAllColors)
        if (s == to_string(c)) return c;
    return std::nullopt;
}

std::optional<Distance> parse_distance(std::string_view s) {
    for (Distance d : {Distance::Same, Distance::Near, Distance::Far})
        if (s == to_string(d)) return d;
    return std::nullopt;
}

std::optional<Move> parse_move(std::string_view s) {
    for (Move m : kAllMoves)
        if (s == to_string(m)) return m;
    if (s == "TO_HALF") return Move::ToHalf;
    if (s == "TO_OTHER") return Move::ToOther;
    return std::nullopt;
}

std::optional<Phase> parse_phase(std::string_view s) {
    for (Phase p : {Phase::Look, Phase::Compute, Phase::BegMove, Phase::EndMove})
        if (s == to_string(p)) return p;
    return std::nullopt;
}

std::ostream& operator<<(std::ostream& os, const RobotState& r) {
    return os << '(' << to_string(r.color) << ',' << to_string(r.phase) << ','
              << to_string(r.pending_move) << ','
              << (r.pending_color ? to_string(*r.pending_color) : std::string_view("NONE")) << ','
              << (r.is_moving ? 1 : 0) << ')';
}

std::ostream& operator<<(std::ostream& os, const Configuration& c) {
    os << "dist=" << to_string(c.distance) << " A=" << c.robots[0] << " B=" << c.robots[1]
       << " fair=(";
    if (c.fair.last_active)
        os << to_string(*c.fair.last_active);
    else
        os << '-';
    return os << ',' << static_cast<int>(c.fair.streak) << ')';
}

}  // namespace rdv
