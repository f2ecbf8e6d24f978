#include "rdv/trace.hpp"

#include <charconv>
#include <sstream>
#include <vector>

namespace rdv {

using nlohmann::json;

TraceHeader make_header(const AlgorithmSpec& spec, const ExploreOptions& opts) {
    TraceHeader h;
    h.algorithm = spec.name;
    h.init = init_label(spec);
    h.lights = std::string(to_string(spec.light_model));
    h.scheduler = opts.sched.kind;
    h.bound = opts.sched.bound;
    h.lc_includes_begmove = opts.sched.lc_includes_begmove;
    h.nonrigid = opts.nonrigid;
    h.counter_bound = opts.counter_bound;
    return h;
}

std::string format_configuration(const Configuration& c) {
    std::ostringstream os;
    os << c;
    return os.str();
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) return out;
        start = pos + 1;
    }
}

template <typename T>
std::optional<T> parse_number(std::string_view s) {
    T v{};
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
    return v;
}

// "(BLACK,LOOK,NONE,NONE,0)"
std::optional<RobotState> parse_robot(std::string_view s) {
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') return std::nullopt;
    auto f = split(s.substr(1, s.size() - 2), ',');
    if (f.size() != 5) return std::nullopt;
    RobotState r;
    auto color = parse_color(f[0]);
    auto phase = parse_phase(f[1]);
    auto move = parse_move(f[2]);
    if (!color || !phase || !move) return std::nullopt;
    r.color = *color;
    r.phase = *phase;
    r.pending_move = *move;
    if (f[3] != "NONE") {
        r.pending_color = parse_color(f[3]);
        if (!r.pending_color) return std::nullopt;
    }
    if (f[4] != "0" && f[4] != "1") return std::nullopt;
    r.is_moving = f[4] == "1";
    return r;
}

std::optional<FairRun> parse_fair(std::string_view s) {
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') return std::nullopt;
    auto f = split(s.substr(1, s.size() - 2), ',');
    if (f.size() != 2) return std::nullopt;
    FairRun fair;
    if (f[0] == "A") fair.last_active = RobotId::A;
    else if (f[0] == "B") fair.last_active = RobotId::B;
    else if (f[0] != "-") return std::nullopt;
    auto streak = parse_number<unsigned>(f[1]);
    if (!streak || *streak > 255) return std::nullopt;
    fair.streak = static_cast<std::uint8_t>(*streak);
    return fair;
}

// Whitespace separated key=value tokens.
std::vector<std::pair<std::string_view, std::string_view>> key_values(std::string_view s) {
    std::vector<std::pair<std::string_view, std::string_view>> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && s[i] == ' ') ++i;
        if (i >= s.size()) break;
        std::size_t end = s.find(' ', i);
        if (end == std::string_view::npos) end = s.size();
        std::string_view tok = s.substr(i, end - i);
        std::size_t eq = tok.find('=');
        if (eq == std::string_view::npos)
            out.emplace_back(tok, std::string_view{});
        else
            out.emplace_back(tok.substr(0, eq), tok.substr(eq + 1));
        i = end;
    }
    return out;
}

std::string robot_label(const EventBlock& b) {
    return b.joint() ? "AB" : std::string(to_string(b.robot));
}

std::string format_step(std::size_t number, const Step& s) {
    std::ostringstream os;
    os << "STEP " << number << " robot=" << robot_label(s.block)
       << " events=" << describe_events(s.block) << " -> " << s.config;
    if (s.stops) os << " stops=" << s.stops;
    return os.str();
}

void parse_header(std::string_view line, TraceHeader& h, std::size_t lineno) {
    for (auto [k, v] : key_values(line)) {
        if (k == "algorithm") {
            h.algorithm = std::string(v);
        } else if (k == "init") {
            h.init = std::string(v);
        } else if (k == "lights") {
            h.lights = std::string(v);
        } else if (k == "scheduler") {
            auto s = parse_scheduler(v);
            if (!s) throw TraceFormatError(lineno, "unknown scheduler " + std::string(v));
            h.scheduler = *s;
        } else if (k == "bound") {
            auto b = parse_number<int>(v);
            if (!b) throw TraceFormatError(lineno, "bad bound");
            h.bound = *b;
        } else if (k == "mode") {
            if (v != "rigid" && v != "nonrigid") throw TraceFormatError(lineno, "bad mode");
            h.nonrigid = v == "nonrigid";
        } else if (k == "counter-bound") {
            auto b = parse_number<std::uint64_t>(v);
            if (!b) throw TraceFormatError(lineno, "bad counter bound");
            h.counter_bound = *b;
        } else if (k == "lc-begmove") {
            h.lc_includes_begmove = v == "1";
        }
    }
}

}  // namespace

std::optional<Configuration> parse_configuration(std::string_view text) {
    Configuration c;
    bool seen[4] = {false, false, false, false};
    for (auto [k, v] : key_values(trim(text))) {
        if (k == "dist") {
            auto d = parse_distance(v);
            if (!d) return std::nullopt;
            c.distance = *d;
            seen[0] = true;
        } else if (k == "A" || k == "B") {
            auto r = parse_robot(v);
            if (!r) return std::nullopt;
            c.robots[k == "A" ? 0 : 1] = *r;
            seen[k == "A" ? 1 : 2] = true;
        } else if (k == "fair") {
            auto f = parse_fair(v);
            if (!f) return std::nullopt;
            c.fair = *f;
            seen[3] = true;
        } else {
            return std::nullopt;
        }
    }
    if (!(seen[0] && seen[1] && seen[2] && seen[3])) return std::nullopt;
    return c;
}

std::string write_trace_text(const TraceFile& t) {
    const TraceHeader& h = t.header;
    std::ostringstream os;
    os << "# algorithm=" << h.algorithm;
    if (!h.init.empty()) os << " init=" << h.init;
    if (!h.lights.empty()) os << " lights=" << h.lights;
    os << " scheduler=" << to_string(h.scheduler)
       << " bound=" << h.bound << " mode=" << (h.nonrigid ? "nonrigid" : "rigid")
       << " lc-begmove=" << (h.lc_includes_begmove ? 1 : 0);
    if (h.counter_bound) os << " counter-bound=" << *h.counter_bound;
    os << "\nINIT " << t.lasso.initial << '\n';
    std::size_t n = 1;
    for (const Step& s : t.lasso.prefix) os << format_step(n++, s) << '\n';
    os << "CYCLE-START\n";
    for (const Step& s : t.lasso.cycle) os << format_step(n++, s) << '\n';
    return os.str();
}

namespace {

TraceFile parse_trace_text(std::string_view text) {
    TraceFile t;
    bool have_init = false;
    bool in_cycle = false;
    std::size_t expected = 1;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = trim(text.substr(pos, nl == std::string_view::npos ? nl : nl - pos));
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++lineno;
        if (line.empty()) continue;
        if (line.front() == '#') {
            parse_header(line.substr(1), t.header, lineno);
            continue;
        }
        if (line.starts_with("INIT ")) {
            auto c = parse_configuration(line.substr(5));
            if (!c) throw TraceFormatError(lineno, "malformed configuration");
            t.lasso.initial = *c;
            have_init = true;
            continue;
        }
        if (line == "CYCLE-START") {
            if (in_cycle) throw TraceFormatError(lineno, "duplicate CYCLE-START");
            in_cycle = true;
            continue;
        }
        if (!line.starts_with("STEP ")) throw TraceFormatError(lineno, "unrecognized line");
        if (!have_init) throw TraceFormatError(lineno, "STEP before INIT");

        std::size_t arrow = line.find(" -> ");
        if (arrow == std::string_view::npos) throw TraceFormatError(lineno, "missing '->'");
        auto lhs = key_values(line.substr(5, arrow - 5));
        if (lhs.size() != 3 || !lhs[0].second.empty() || lhs[1].first != "robot" ||
            lhs[2].first != "events")
            throw TraceFormatError(lineno, "expected STEP <i> robot=<r> events=<e>");
        auto number = parse_number<std::size_t>(lhs[0].first);
        if (!number || *number != expected)
            throw TraceFormatError(lineno, "expected step number " + std::to_string(expected));
        ++expected;
        auto block = parse_block(lhs[1].second, lhs[2].second);
        if (!block) throw TraceFormatError(lineno, "malformed event block");

        Step step;
        step.block = *block;
        std::string_view rhs = line.substr(arrow + 4);
        std::size_t st = rhs.find(" stops=");
        if (st != std::string_view::npos) {
            auto stops = parse_number<int>(rhs.substr(st + 7));
            if (!stops || *stops < 0) throw TraceFormatError(lineno, "bad stops");
            step.stops = *stops;
            rhs = rhs.substr(0, st);
        }
        auto c = parse_configuration(rhs);
        if (!c) throw TraceFormatError(lineno, "malformed configuration");
        step.config = *c;
        (in_cycle ? t.lasso.cycle : t.lasso.prefix).push_back(step);
    }
    if (!have_init) throw TraceFormatError(lineno, "missing INIT line");
    if (!in_cycle) throw TraceFormatError(lineno, "missing CYCLE-START");
    return t;
}

json robot_json(const RobotState& r) {
    return {{"color", to_string(r.color)},
            {"phase", to_string(r.phase)},
            {"pending_move", to_string(r.pending_move)},
            {"pending_color", r.pending_color ? json(to_string(*r.pending_color)) : json(nullptr)},
            {"moving", r.is_moving}};
}

json config_json(const Configuration& c) {
    return {{"distance", to_string(c.distance)},
            {"A", robot_json(c.robots[0])},
            {"B", robot_json(c.robots[1])},
            {"fair",
             {{"last_active",
               c.fair.last_active ? json(to_string(*c.fair.last_active)) : json(nullptr)},
              {"streak", c.fair.streak}}}};
}

json step_json(const Step& s) {
    return {{"robot", robot_label(s.block)},
            {"events", describe_events(s.block)},
            {"stops", s.stops},
            {"config", config_json(s.config)}};
}

template <typename T, typename F>
T require(std::optional<T> v, F&& what) {
    if (!v) throw TraceFormatError(0, what());
    return *v;
}

RobotState robot_from_json(const json& j) {
    RobotState r;
    auto str = [&](const char* key) { return j.at(key).get<std::string>(); };
    r.color = require(parse_color(str("color")), [] { return std::string("bad color"); });
    r.phase = require(parse_phase(str("phase")), [] { return std::string("bad phase"); });
    r.pending_move =
        require(parse_move(str("pending_move")), [] { return std::string("bad pending move"); });
    if (!j.at("pending_color").is_null())
        r.pending_color = require(parse_color(str("pending_color")),
                                  [] { return std::string("bad pending color"); });
    r.is_moving = j.at("moving").get<bool>();
    return r;
}

Configuration config_from_json(const json& j) {
    Configuration c;
    c.distance = require(parse_distance(j.at("distance").get<std::string>()),
                         [] { return std::string("bad distance"); });
    c.robots[0] = robot_from_json(j.at("A"));
    c.robots[1] = robot_from_json(j.at("B"));
    const json& f = j.at("fair");
    if (!f.at("last_active").is_null()) {
        auto who = f.at("last_active").get<std::string>();
        if (who != "A" && who != "B") throw TraceFormatError(0, "bad last_active");
        c.fair.last_active = who == "A" ? RobotId::A : RobotId::B;
    }
    int streak = f.at("streak").get<int>();
    if (streak < 0 || streak > 255) throw TraceFormatError(0, "bad streak");
    c.fair.streak = static_cast<std::uint8_t>(streak);
    return c;
}

Step step_from_json(const json& j) {
    Step s;
    s.block = require(parse_block(j.at("robot").get<std::string>(), j.at("events").get<std::string>()),
                      [] { return std::string("malformed event block"); });
    s.stops = j.value("stops", 0);
    s.config = config_from_json(j.at("config"));
    return s;
}

}  // namespace

json trace_to_json(const TraceFile& t) {
    const TraceHeader& h = t.header;
    json j;
    j["schema"] = "rdvcheck-trace";
    j["version"] = kTraceSchemaVersion;
    j["algorithm"] = h.algorithm;
    j["init"] = h.init;
    j["lights"] = h.lights;
    j["scheduler"] = to_string(h.scheduler);
    j["bound"] = h.bound;
    j["lc_includes_begmove"] = h.lc_includes_begmove;
    j["mode"] = h.nonrigid ? "nonrigid" : "rigid";
    j["counter_bound"] = h.counter_bound ? json(*h.counter_bound) : json(nullptr);
    j["initial"] = config_json(t.lasso.initial);
    j["prefix"] = json::array();
    for (const Step& s : t.lasso.prefix) j["prefix"].push_back(step_json(s));
    j["cycle"] = json::array();
    for (const Step& s : t.lasso.cycle) j["cycle"].push_back(step_json(s));
    return j;
}

TraceFile trace_from_json(const json& j) {
    try {
        if (j.at("schema") != "rdvcheck-trace") throw TraceFormatError(0, "not an rdvcheck trace");
        if (j.at("version") != kTraceSchemaVersion)
            throw TraceFormatError(0, "unsupported trace version");
        TraceFile t;
        t.header.algorithm = j.at("algorithm").get<std::string>();
        t.header.init = j.value("init", std::string());
        t.header.lights = j.value("lights", std::string());
        t.header.scheduler = require(parse_scheduler(j.at("scheduler").get<std::string>()),
                                     [] { return std::string("unknown scheduler"); });
        t.header.bound = j.at("bound").get<int>();
        t.header.lc_includes_begmove = j.value("lc_includes_begmove", false);
        t.header.nonrigid = j.value("mode", std::string("rigid")) == "nonrigid";
        if (j.contains("counter_bound") && !j["counter_bound"].is_null())
            t.header.counter_bound = j["counter_bound"].get<std::uint64_t>();
        t.lasso.initial = config_from_json(j.at("initial"));
        for (const json& s : j.at("prefix")) t.lasso.prefix.push_back(step_from_json(s));
        for (const json& s : j.at("cycle")) t.lasso.cycle.push_back(step_from_json(s));
        return t;
    } catch (const json::exception& e) {
        throw TraceFormatError(0, e.what());
    }
}

TraceFile parse_trace(std::string_view text) {
    std::string_view body = trim(text);
    while (!body.empty() && body.front() == '\n') body = trim(body.substr(1));
    if (!body.empty() && body.front() == '{') {
        json j = json::parse(text, nullptr, false);
        if (j.is_discarded()) throw TraceFormatError(0, "invalid JSON");
        return trace_from_json(j);
    }
    return parse_trace_text(text);
}

}  // namespace rdv
