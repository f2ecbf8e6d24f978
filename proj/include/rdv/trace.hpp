#pragma once

// Counter-example files. Two encodings of the same content:
//
//   text (one step per line)
//     # algorithm=Vig2Cols init=all lights=full scheduler=async bound=16 mode=rigid lc-begmove=0
//     INIT dist=NEAR A=(BLACK,LOOK,NONE,NONE,0) B=(...) fair=(-,0)
//     STEP 1 robot=A events=LOOK -> dist=NEAR A=(...) B=(...) fair=(A,1)
//     CYCLE-START
//     STEP 2 robot=B events=LOOK,COMPUTE -> ... stops=1
//
//   json, schema "rdvcheck-trace" version 1 (see README).
//
// The cycle begins right after CYCLE-START and returns to the configuration
// reached just before it (or to INIT when the prefix is empty).

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "rdv/checker.hpp"

namespace rdv {

inline constexpr int kTraceSchemaVersion = 1;

struct TraceHeader {
    std::string algorithm;
    std::string init;    // init_label of the checked spec, empty if unknown
    std::string lights;  // "full" / "external", empty if unknown
    SchedulerKind scheduler = SchedulerKind::Async;
    int bound = 0;
    bool lc_includes_begmove = false;
    bool nonrigid = false;
    std::optional<std::uint64_t> counter_bound;
};

struct TraceFile {
    TraceHeader header;
    LassoTrace lasso;
};

class TraceFormatError : public std::runtime_error {
  public:
    TraceFormatError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

TraceHeader make_header(const AlgorithmSpec& spec, const ExploreOptions& opts);

std::string format_configuration(const Configuration& c);
std::optional<Configuration> parse_configuration(std::string_view text);

std::string write_trace_text(const TraceFile& t);
nlohmann::json trace_to_json(const TraceFile& t);

/// Accepts either encoding; JSON is recognized by a leading '{'.
TraceFile parse_trace(std::string_view text);
TraceFile trace_from_json(const nlohmann::json& j);

}  // namespace rdv
