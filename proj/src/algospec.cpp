#include "rdv/algospec.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

namespace rdv {

bool Guard::matches(const Observation& obs, LightModel lights) const {
    if (gathered_only && !obs.gathered) return false;
    if (me_color) {
        // Under external lights a robot cannot see its own light.
        if (lights == LightModel::External || *me_color != obs.my_color) return false;
    }
    return !other_color || *other_color == obs.other_color;
}

std::string format(const Diagnostic& d) {
    std::ostringstream os;
    os << d.line << ':' << d.column << ": " << (d.is_error() ? "error" : "warning") << ": "
       << d.message;
    return os.str();
}

bool AlgorithmSpec::uses_color(Color c) const {
    return std::find(colors.begin(), colors.end(), c) != colors.end();
}

std::optional<std::size_t> matching_rule(const AlgorithmSpec& spec, const Observation& obs) {
    for (std::size_t i = 0; i < spec.rules.size(); ++i)
        if (spec.rules[i].guard.matches(obs, spec.light_model)) return i;
    return std::nullopt;
}

Command evaluate(const AlgorithmSpec& spec, const Observation& obs) {
    auto idx = matching_rule(spec, obs);
    if (!idx) {
        throw NoMatchingRule("algorithm " + spec.name + " has no rule for (" +
                             std::string(to_string(obs.my_color)) + ", " +
                             std::string(to_string(obs.other_color)) + ")");
    }
    const Action& a = spec.rules[*idx].action;
    return Command{a.new_color.value_or(obs.my_color), a.move};
}

std::vector<Observation> all_observations(const AlgorithmSpec& spec) {
    std::vector<Observation> out;
    for (Color me : spec.colors) {
        for (Color peer : spec.colors) {
            out.push_back({me, peer, false, false});
            out.push_back({me, peer, true, false});
            out.push_back({me, peer, false, true});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

struct Token {
    enum class Kind { Word, LParen, RParen, Comma, Star, Dash, Arrow, End };
    Kind kind = Kind::End;
    std::string text;
    int column = 0;
};

std::string upper(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

std::string lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

class LineParser {
  public:
    LineParser(std::string_view line, int line_no, std::vector<Diagnostic>& diags)
        : line_no_(line_no), diags_(diags) {
        lex(line);
    }

    bool ok() const { return ok_; }
    const Token& peek() const { return tokens_[pos_]; }
    Token take() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
    bool at_end() const { return peek().kind == Token::Kind::End; }

    bool expect(Token::Kind kind, const char* what) {
        if (peek().kind != kind) {
            error(peek().column, std::string("expected ") + what);
            return false;
        }
        take();
        return true;
    }

    void error(int column, std::string msg) {
        ok_ = false;
        diags_.push_back({Diagnostic::Severity::Error, line_no_, column, std::move(msg)});
    }

    void warning(int column, std::string msg) {
        diags_.push_back({Diagnostic::Severity::Warning, line_no_, column, std::move(msg)});
    }

    int line() const { return line_no_; }

  private:
    void lex(std::string_view line) {
        std::size_t i = 0;
        while (i < line.size()) {
            char c = line[i];
            int col = static_cast<int>(i) + 1;
            if (c == '#') break;
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++i;
                continue;
            }
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t j = i;
                while (j < line.size() &&
                       (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_' ||
                        line[j] == '.'))
                    ++j;
                tokens_.push_back({Token::Kind::Word, std::string(line.substr(i, j - i)), col});
                i = j;
                continue;
            }
            if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
                tokens_.push_back({Token::Kind::Arrow, "->", col});
                i += 2;
                continue;
            }
            Token::Kind kind;
            switch (c) {
                case '(': kind = Token::Kind::LParen; break;
                case ')': kind = Token::Kind::RParen; break;
                case ',': kind = Token::Kind::Comma; break;
                case '*': kind = Token::Kind::Star; break;
                case '-': kind = Token::Kind::Dash; break;
                default:
                    error(col, std::string("unexpected character '") + c + "'");
                    ++i;
                    continue;
            }
            tokens_.push_back({kind, std::string(1, c), col});
            ++i;
        }
        tokens_.push_back({Token::Kind::End, "", static_cast<int>(line.size()) + 1});
    }

    int line_no_;
    std::vector<Diagnostic>& diags_;
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    bool ok_ = true;
};

struct ColorUse {
    Color color;
    int line;
    int column;
};

std::optional<Color> parse_color_token(LineParser& p, const Token& t,
                                       std::vector<ColorUse>& uses) {
    auto c = parse_color(upper(t.text));
    if (!c) {
        p.error(t.column, "unknown color '" + t.text + "'");
        return std::nullopt;
    }
    uses.push_back({*c, p.line(), t.column});
    return c;
}

// `*` or a color name.
bool parse_color_slot(LineParser& p, std::optional<Color>& out, std::vector<ColorUse>& uses) {
    Token t = p.take();
    if (t.kind == Token::Kind::Star) {
        out.reset();
        return true;
    }
    if (t.kind != Token::Kind::Word) {
        p.error(t.column, "expected a color or '*'");
        return false;
    }
    out = parse_color_token(p, t, uses);
    return out.has_value();
}

std::optional<Rule> parse_rule(LineParser& p, std::vector<ColorUse>& uses) {
    Rule rule;
    rule.line = p.line();
    bool tuple = true;
    if (p.peek().kind == Token::Kind::Word && lower(p.peek().text) == "gathered") {
        p.take();
        rule.guard.gathered_only = true;
        tuple = p.peek().kind == Token::Kind::LParen;
    }
    if (tuple) {
        if (!p.expect(Token::Kind::LParen, "'(' or 'gathered'")) return std::nullopt;
        if (!parse_color_slot(p, rule.guard.me_color, uses)) return std::nullopt;
        if (!p.expect(Token::Kind::Comma, "','")) return std::nullopt;
        if (!parse_color_slot(p, rule.guard.other_color, uses)) return std::nullopt;
        if (!p.expect(Token::Kind::RParen, "')'")) return std::nullopt;
    }
    if (!p.expect(Token::Kind::Arrow, "'->'")) return std::nullopt;

    Token t = p.take();
    if (t.kind == Token::Kind::Word && lower(t.text) == "skip") {
        rule.action = Action{std::nullopt, Move::Stay};
    } else {
        if (t.kind == Token::Kind::Dash) {
            rule.action.new_color.reset();
        } else if (t.kind == Token::Kind::Word) {
            rule.action.new_color = parse_color_token(p, t, uses);
            if (!rule.action.new_color) return std::nullopt;
        } else {
            p.error(t.column, "expected a color, '-' or 'skip'");
            return std::nullopt;
        }
        if (!p.expect(Token::Kind::Comma, "','")) return std::nullopt;
        Token m = p.take();
        auto move = m.kind == Token::Kind::Word ? parse_move(upper(m.text)) : std::nullopt;
        if (!move) {
            p.error(m.column, "expected a move (STAY, HALF or OTHER)");
            return std::nullopt;
        }
        if (*move == Move::Miss || *move == Move::None) {
            p.error(m.column, "move " + std::string(to_string(*move)) +
                                  " cannot be produced by an algorithm");
            return std::nullopt;
        }
        rule.action.move = *move;
    }
    if (!p.at_end()) {
        p.error(p.peek().column, "unexpected '" + p.peek().text + "' after rule");
        return std::nullopt;
    }
    return rule;
}

bool is_catch_all(const Guard& g) { return !g.gathered_only && !g.me_color && !g.other_color; }

std::string guard_text(const Guard& g) {
    std::string tuple = std::string("(") +
                        std::string(g.me_color ? to_string(*g.me_color) : "*") + ", " +
                        std::string(g.other_color ? to_string(*g.other_color) : "*") + ")";
    if (!g.gathered_only) return tuple;
    if (!g.me_color && !g.other_color) return "gathered";
    return "gathered " + tuple;
}

}  // namespace

ParseResult parse_algorithm(std::string_view text) {
    ParseResult result;
    auto& diags = result.diagnostics;
    AlgorithmSpec spec;
    std::vector<ColorUse> uses;
    std::map<std::string, int> seen_headers;
    bool have_colors = false;
    bool have_name = false;
    std::optional<int> catch_all_line;

    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        LineParser p(raw, line_no, diags);
        if (p.at_end()) continue;
        Token head = p.take();
        if (head.kind != Token::Kind::Word) {
            p.error(head.column, "expected a directive");
            continue;
        }
        std::string key = lower(head.text);
        if (key != "rule") {
            if (seen_headers.count(key)) {
                p.error(head.column, "duplicate '" + key + "' line (first on line " +
                                         std::to_string(seen_headers[key]) + ")");
                continue;
            }
            seen_headers[key] = line_no;
        }

        if (key == "algorithm") {
            Token name = p.take();
            if (name.kind != Token::Kind::Word) {
                p.error(name.column, "expected an algorithm name");
                continue;
            }
            spec.name = name.text;
            have_name = true;
        } else if (key == "colors") {
            spec.colors.clear();
            while (!p.at_end()) {
                Token t = p.take();
                if (t.kind != Token::Kind::Word) {
                    p.error(t.column, "expected a color name");
                    break;
                }
                auto c = parse_color(upper(t.text));
                if (!c) {
                    p.error(t.column, "unknown color '" + t.text + "'");
                    continue;
                }
                if (spec.uses_color(*c)) {
                    p.error(t.column, "color " + std::string(to_string(*c)) + " listed twice");
                    continue;
                }
                spec.colors.push_back(*c);
            }
            if (spec.colors.empty()) p.error(head.column, "empty color list");
            have_colors = true;
        } else if (key == "lights") {
            Token t = p.take();
            std::string v = lower(t.text);
            if (v == "full") spec.light_model = LightModel::Full;
            else if (v == "external") spec.light_model = LightModel::External;
            else p.error(t.column, "expected 'full' or 'external'");
        } else if (key == "init") {
            Token t = p.take();
            std::string v = lower(t.text);
            if (v == "all") {
                spec.init_regime = InitRegime::AllPairs;
            } else if (v == "identical") {
                spec.init_regime = InitRegime::IdenticalPairs;
            } else if (v == "fixed") {
                Token c = p.take();
                if (c.kind != Token::Kind::Word) {
                    p.error(c.column, "expected a color after 'fixed'");
                } else if (auto color = parse_color_token(p, c, uses)) {
                    spec.init_regime = InitRegime::Fixed;
                    spec.fixed_color = *color;
                }
            } else {
                p.error(t.column, "expected 'all', 'identical' or 'fixed <COLOR>'");
            }
        } else if (key == "rigidity") {
            Token t = p.take();
            std::string v = lower(t.text);
            if (v == "ss") spec.rigidity = Rigidity::SelfStabilizing;
            else if (v == "qss") spec.rigidity = Rigidity::QuasiSelfStabilizing;
            else if (v == "nss") spec.rigidity = Rigidity::NonSelfStabilizing;
            else p.error(t.column, "expected 'ss', 'qss' or 'nss'");
        } else if (key == "rule") {
            auto rule = parse_rule(p, uses);
            if (!rule) continue;
            for (const Rule& earlier : spec.rules) {
                if (earlier.guard == rule->guard) {
                    p.warning(1, "duplicate guard " + guard_text(rule->guard) +
                                     " (first on line " + std::to_string(earlier.line) +
                                     "); this rule never fires");
                    break;
                }
            }
            if (catch_all_line) {
                p.warning(1, "rule after the catch-all on line " +
                                 std::to_string(*catch_all_line) + " is unreachable");
            }
            if (is_catch_all(rule->guard) && !catch_all_line) catch_all_line = line_no;
            spec.rules.push_back(*rule);
        } else {
            p.error(head.column, "unknown directive '" + head.text + "'");
            continue;
        }
        if (key != "rule" && key != "colors" && !p.at_end())
            p.error(p.peek().column, "unexpected '" + p.peek().text + "'");
    }

    if (!have_name) diags.push_back({Diagnostic::Severity::Error, 1, 1, "missing 'algorithm' line"});
    if (!have_colors) diags.push_back({Diagnostic::Severity::Error, 1, 1, "missing 'colors' line"});
    if (have_colors) {
        for (const ColorUse& u : uses) {
            if (!spec.uses_color(u.color)) {
                diags.push_back({Diagnostic::Severity::Error, u.line, u.column,
                                 "undeclared color " + std::string(to_string(u.color))});
            }
        }
    }
    if (spec.rules.empty()) diags.push_back({Diagnostic::Severity::Error, 1, 1, "no rules"});

    std::stable_sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
        return std::tie(a.line, a.column) < std::tie(b.line, b.column);
    });
    bool failed = std::any_of(diags.begin(), diags.end(),
                              [](const Diagnostic& d) { return d.is_error(); });
    if (!failed) result.spec = std::move(spec);
    return result;
}

std::string render(const AlgorithmSpec& spec) {
    std::ostringstream os;
    os << "algorithm " << spec.name << '\n';
    os << "colors";
    for (Color c : spec.colors) os << ' ' << to_string(c);
    os << '\n';
    os << "lights " << to_string(spec.light_model) << '\n';
    os << "init " << to_string(spec.init_regime);
    if (spec.init_regime == InitRegime::Fixed) os << ' ' << to_string(spec.fixed_color);
    os << '\n';
    os << "rigidity " << to_string(spec.rigidity) << '\n';
    for (const Rule& r : spec.rules) {
        os << "rule " << guard_text(r.guard) << " -> ";
        if (!r.action.new_color && r.action.move == Move::Stay) {
            os << "skip";
        } else {
            os << (r.action.new_color ? to_string(*r.action.new_color) : "-") << ", "
               << to_string(r.action.move);
        }
        os << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Validation and ICC

std::vector<Diagnostic> validate_spec(const AlgorithmSpec& spec) {
    std::vector<Diagnostic> diags;
    auto error = [&](int line, std::string msg) {
        diags.push_back({Diagnostic::Severity::Error, line, 0, std::move(msg)});
    };

    int n = spec.num_colors();
    if (n < 1 || n > kMaxColors) {
        error(0, "an algorithm uses between 1 and 5 colors, not " + std::to_string(n));
    }
    for (int i = 0; i < n && i < kMaxColors; ++i) {
        if (spec.colors[i] != kAllColors[i]) {
            std::string expected;
            for (int j = 0; j < n && j < kMaxColors; ++j)
                expected += std::string(j ? " " : "") + std::string(to_string(kAllColors[j]));
            error(0, "colors must be the first " + std::to_string(n) + " of the fixed order (" +
                         expected + ")");
            break;
        }
    }
    if (spec.init_regime == InitRegime::Fixed && !spec.uses_color(spec.fixed_color)) {
        error(0, "initial color " + std::string(to_string(spec.fixed_color)) + " is not declared");
    }

    for (const Rule& r : spec.rules) {
        std::string where = "rule " + guard_text(r.guard);
        if (r.action.move != Move::Stay && r.action.move != Move::ToHalf &&
            r.action.move != Move::ToOther) {
            error(r.line, where + ": move " + std::string(to_string(r.action.move)) +
                              " is not one of STAY, HALF, OTHER");
        }
        for (auto c : {r.guard.me_color, r.guard.other_color, r.action.new_color}) {
            if (c && !spec.uses_color(*c))
                error(r.line, where + ": undeclared color " + std::string(to_string(*c)));
        }
        if (spec.light_model == LightModel::External && r.guard.me_color) {
            error(r.line, where + ": external-light guards must use '*' for the robot's own color");
        }
    }

    for (Color me : spec.colors) {
        for (Color peer : spec.colors) {
            for (bool gathered : {false, true}) {
                Observation obs{me, peer, gathered, false};
                if (!matching_rule(spec, obs)) {
                    error(0, "no rule matches (" + std::string(to_string(me)) + ", " +
                                 std::string(to_string(peer)) + ")" +
                                 (gathered ? " when gathered" : " when not gathered"));
                }
            }
        }
    }
    return diags;
}

IccReport check_icc(const AlgorithmSpec& spec) {
    IccReport report;
    for (const Observation& obs : all_observations(spec)) {
        Command cmd = evaluate(spec, obs);
        if (cmd.new_color == obs.my_color || obs.my_color == obs.other_color) continue;
        IccViolation v{obs.my_color, obs.other_color, obs.gathered, cmd.new_color};
        bool dup = std::any_of(report.witnesses.begin(), report.witnesses.end(), [&](const auto& w) {
            return w.me_color == v.me_color && w.other_color == v.other_color &&
                   w.gathered == v.gathered;
        });
        if (!dup) report.witnesses.push_back(v);
    }
    report.satisfied = report.witnesses.empty();
    return report;
}

// ---------------------------------------------------------------------------
// Built-ins

namespace {

struct BuiltinText {
    const char* name;
    const char* text;
};

constexpr BuiltinText kBuiltins[] = {
    {"NoMove", R"(algorithm NoMove
colors BLACK
lights full
init all
rigidity ss
rule (*, *) -> -, STAY
)"},
    {"ToHalf", R"(algorithm ToHalf
colors BLACK
lights full
init all
rigidity ss
rule (*, *) -> -, HALF
)"},
    {"ToOther", R"(algorithm ToOther
colors BLACK
lights full
init all
rigidity ss
rule (*, *) -> -, OTHER
)"},
    {"Vig2Cols", R"(algorithm Vig2Cols
colors BLACK WHITE
lights full
init all
rigidity ss
rule (BLACK, BLACK) -> WHITE, STAY
rule (BLACK, WHITE) -> skip
rule (WHITE, BLACK) -> -, OTHER
rule (WHITE, WHITE) -> BLACK, HALF
)"},
    {"Vig3Cols", R"(algorithm Vig3Cols
colors BLACK WHITE RED
lights full
init all
rigidity ss
rule (BLACK, BLACK) -> WHITE, HALF
rule (BLACK, WHITE) -> -, OTHER
rule (BLACK, RED) -> skip
rule (WHITE, BLACK) -> skip
rule (WHITE, WHITE) -> RED, STAY
rule (WHITE, RED) -> -, OTHER
rule (RED, BLACK) -> -, OTHER
rule (RED, WHITE) -> skip
rule (RED, RED) -> BLACK, STAY
)"},
    {"Her2Cols", R"(algorithm Her2Cols
colors BLACK WHITE
lights full
init all
rigidity ss
rule (BLACK, BLACK) -> WHITE, STAY
rule (BLACK, WHITE) -> skip
rule gathered -> skip
rule (WHITE, BLACK) -> -, OTHER
rule (WHITE, WHITE) -> BLACK, HALF
)"},
    {"Flo3ColsX", R"(algorithm Flo3ColsX
colors BLACK WHITE RED
lights external
init all
rigidity ss
rule (*, BLACK) -> WHITE, HALF
rule (*, WHITE) -> RED, STAY
rule (*, RED) -> BLACK, OTHER
)"},
    {"Oku5ColsX", R"(algorithm Oku5ColsX
colors BLACK WHITE RED YELLOW GREEN
lights external
init all
rigidity ss
rule (*, BLACK) -> WHITE, HALF
rule (*, WHITE) -> RED, STAY
rule (*, RED) -> YELLOW, OTHER
rule (*, YELLOW) -> GREEN, STAY
rule (*, GREEN) -> BLACK, STAY
)"},
    {"Oku4ColsX", R"(algorithm Oku4ColsX
colors BLACK WHITE RED YELLOW
lights external
init all
rigidity ss
rule (*, BLACK) -> WHITE, HALF
rule (*, WHITE) -> RED, STAY
rule (*, RED) -> YELLOW, OTHER
rule (*, YELLOW) -> BLACK, STAY
)"},
    {"Oku3ColsX", R"(algorithm Oku3ColsX
colors BLACK WHITE RED
lights external
init all
rigidity ss
rule (*, BLACK) -> WHITE, HALF
rule (*, WHITE) -> RED, STAY
rule (*, RED) -> WHITE, OTHER
)"},
    {"Oku4ColsQSS", R"(algorithm Oku4ColsQSS
colors BLACK WHITE RED YELLOW
lights external
init identical
rigidity qss
rule (*, BLACK) -> WHITE, HALF
rule (*, WHITE) -> RED, STAY
rule (*, RED) -> YELLOW, OTHER
rule (*, YELLOW) -> BLACK, STAY
)"},
    {"Oku3ColsNSS", R"(algorithm Oku3ColsNSS
colors BLACK WHITE RED
lights external
init fixed BLACK
rigidity nss
rule (*, BLACK) -> WHITE, HALF
rule (*, WHITE) -> RED, STAY
rule (*, RED) -> WHITE, OTHER
)"},
};

}  // namespace

const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& b : kBuiltins) out.emplace_back(b.name);
        return out;
    }();
    return names;
}

std::optional<AlgorithmSpec> builtin(std::string_view name) {
    for (const auto& b : kBuiltins) {
        if (lower(b.name) != lower(name)) continue;
        ParseResult r = parse_algorithm(b.text);
        if (!r.ok()) throw std::logic_error(std::string("built-in ") + b.name + " does not parse");
        return *r.spec;
    }
    return std::nullopt;
}

AlgorithmSpec load_algorithm(const std::string& name_or_path) {
    if (auto b = builtin(name_or_path)) return *b;
    std::ifstream in(name_or_path);
    if (!in) throw std::runtime_error("unknown algorithm or unreadable file: " + name_or_path);
    std::stringstream buf;
    buf << in.rdbuf();
    ParseResult r = parse_algorithm(buf.str());
    std::string msg;
    for (const Diagnostic& d : r.diagnostics)
        if (d.is_error()) msg += name_or_path + ":" + format(d) + "\n";
    if (!r.ok()) throw std::runtime_error(msg);
    for (const Diagnostic& d : validate_spec(*r.spec)) msg += name_or_path + ":" + format(d) + "\n";
    if (!msg.empty()) throw std::runtime_error(msg);
    return *r.spec;
}

std::string_view to_string(InitRegime r) {
    switch (r) {
        case InitRegime::AllPairs: return "all";
        case InitRegime::IdenticalPairs: return "identical";
        case InitRegime::Fixed: return "fixed";
    }
    return "?";
}

std::string init_label(const AlgorithmSpec& spec) {
    std::string out(to_string(spec.init_regime));
    if (spec.init_regime == InitRegime::Fixed) out += ":" + std::string(to_string(spec.fixed_color));
    return out;
}

std::optional<InitChoice> parse_init(std::string_view s) {
    if (s == "all") return InitChoice{InitRegime::AllPairs};
    if (s == "identical") return InitChoice{InitRegime::IdenticalPairs};
    if (!s.starts_with("fixed:")) return std::nullopt;
    std::string color;
    for (char c : s.substr(6)) color += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    auto fixed = parse_color(color);
    if (!fixed) return std::nullopt;
    return InitChoice{InitRegime::Fixed, *fixed};
}

std::optional<LightModel> parse_lights(std::string_view s) {
    if (s == "full") return LightModel::Full;
    if (s == "external") return LightModel::External;
    return std::nullopt;
}

std::string_view to_string(Rigidity r) {
    switch (r) {
        case Rigidity::SelfStabilizing: return "ss";
        case Rigidity::QuasiSelfStabilizing: return "qss";
        case Rigidity::NonSelfStabilizing: return "nss";
    }
    return "?";
}

}  // namespace rdv
