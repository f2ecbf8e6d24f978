#pragma once

// Guarded-rule algorithm descriptions, their text format, validation,
// the identical-color-condition check and the built-in algorithm catalogue.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rdv/model.hpp"

namespace rdv {

enum class InitRegime : std::uint8_t { AllPairs, IdenticalPairs, Fixed };
enum class Rigidity : std::uint8_t { SelfStabilizing, QuasiSelfStabilizing, NonSelfStabilizing };

// nullopt is the `*` wildcard.
struct Guard {
    std::optional<Color> me_color;
    std::optional<Color> other_color;
    bool gathered_only = false;

    bool matches(const Observation& obs, LightModel lights) const;
    friend bool operator==(const Guard&, const Guard&) = default;
};

// nullopt new_color keeps the current color (`-` / `skip`).
struct Action {
    std::optional<Color> new_color;
    Move move = Move::Stay;

    friend bool operator==(const Action&, const Action&) = default;
};

struct Rule {
    Guard guard;
    Action action;
    int line = 0;  // source line, 0 for programmatic rules; ignored by ==

    friend bool operator==(const Rule& a, const Rule& b) {
        return a.guard == b.guard && a.action == b.action;
    }
};

struct Diagnostic {
    enum class Severity { Error, Warning };
    Severity severity = Severity::Error;
    int line = 0;
    int column = 0;
    std::string message;

    bool is_error() const { return severity == Severity::Error; }
};

std::string format(const Diagnostic& d);

class AlgorithmSpec {
  public:
    std::string name;
    std::vector<Color> colors{Color::Black};
    LightModel light_model = LightModel::Full;
    InitRegime init_regime = InitRegime::AllPairs;
    Color fixed_color = Color::Black;  // only meaningful for InitRegime::Fixed
    Rigidity rigidity = Rigidity::SelfStabilizing;
    std::vector<Rule> rules;

    int num_colors() const { return static_cast<int>(colors.size()); }
    bool uses_color(Color c) const;

    friend bool operator==(const AlgorithmSpec&, const AlgorithmSpec&) = default;
};

/// Thrown by evaluate() when no rule matches. Validated specs never throw it.
class NoMatchingRule : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// First matching rule wins; a kept color resolves to obs.my_color.
Command evaluate(const AlgorithmSpec& spec, const Observation& obs);

/// Index of the first rule matching obs, or nullopt.
std::optional<std::size_t> matching_rule(const AlgorithmSpec& spec, const Observation& obs);

/// Every observation a robot running `spec` can make (colors x colors x
/// {not gathered, gathered, other moving}). gathered and other_moving are
/// exclusive, so there are three situations per color pair.
std::vector<Observation> all_observations(const AlgorithmSpec& spec);

struct ParseResult {
    std::optional<AlgorithmSpec> spec;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return spec.has_value(); }
};

/// Parses the line-oriented algorithm format:
///
///     # comment
///     algorithm Vig2Cols
///     colors BLACK WHITE
///     lights full            # full | external
///     init all               # all | identical | fixed <COLOR>
///     rigidity ss            # ss | qss | nss
///     rule (BLACK, BLACK) -> WHITE, STAY
///     rule (BLACK, WHITE) -> skip
///     rule gathered -> skip
///     rule (WHITE, *) -> -, OTHER
///
/// Errors leave `spec` empty; warnings (duplicate or unreachable rules) do not.
ParseResult parse_algorithm(std::string_view text);

/// Canonical text form; parse_algorithm(render(s)) yields s again.
std::string render(const AlgorithmSpec& spec);

/// Semantic checks: color prefix, N <= 5, move set, external-light wildcard
/// discipline and guard exhaustiveness. Empty result means valid.
std::vector<Diagnostic> validate_spec(const AlgorithmSpec& spec);

struct IccViolation {
    Color me_color;
    Color other_color;
    bool gathered;
    Color new_color;
};

struct IccReport {
    bool satisfied = true;
    std::vector<IccViolation> witnesses;
};

/// Identical color condition: a robot may pick a color other than its own
/// only when it sees the other robot with the same color.
IccReport check_icc(const AlgorithmSpec& spec);

/// Built-in catalogue (names are case-insensitive).
std::optional<AlgorithmSpec> builtin(std::string_view name);
const std::vector<std::string>& builtin_names();

/// Loads a built-in by name or parses a file by path. Throws std::runtime_error
/// with the formatted diagnostics on failure.
AlgorithmSpec load_algorithm(const std::string& name_or_path);

std::string_view to_string(InitRegime r);
std::string_view to_string(Rigidity r);

/// "all", "identical" or "fixed:COLOR".
std::string init_label(const AlgorithmSpec& spec);
struct InitChoice {
    InitRegime regime;
    Color fixed_color = Color::Black;
};
std::optional<InitChoice> parse_init(std::string_view s);
std::optional<LightModel> parse_lights(std::string_view s);

}  // namespace rdv
