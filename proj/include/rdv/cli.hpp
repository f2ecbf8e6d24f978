#pragma once

// rdvcheck command line: check, table, icc, validate, replay, show.

#include <array>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "rdv/scheduler.hpp"

namespace rdv {

enum ExitCode : int {
    kExitPass = 0,      // PASS, clean, replay certified, golden match
    kExitFail = 1,      // FAIL, violated, replay rejected, golden mismatch
    kExitUsage = 2,     // bad flags, unknown algorithm, unreadable or malformed input
    kExitLimit = 3,     // state or time budget exhausted
    kExitInternal = 4,  // model invariant broken or uncertified counter-example
};

inline constexpr int kReportSchemaVersion = 1;

/// Expected verdict matrix, one row per built-in in catalogue order; true is
/// PASS. Columns follow kAllSchedulers.
struct GoldenRow {
    std::string_view algorithm;
    std::array<bool, 6> pass;
};
const std::vector<GoldenRow>& golden_table();
std::optional<std::array<bool, 6>> golden_row(std::string_view algorithm);

/// Runs one command line (without the program name). Everything the command
/// prints goes to `out` and `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rdv
