#include "rdv/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "rdv/algospec.hpp"
#include "rdv/checker.hpp"
#include "rdv/trace.hpp"

namespace rdv {

using ojson = nlohmann::ordered_json;

const std::vector<GoldenRow>& golden_table() {
    // centralized fsync ssync async-lc async-move async
    static const std::vector<GoldenRow> rows{
        {"NoMove", {false, false, false, false, false, false}},
        {"ToHalf", {false, true, false, false, false, false}},
        {"ToOther", {true, false, false, false, false, false}},
        {"Vig2Cols", {true, true, true, true, false, false}},
        {"Vig3Cols", {true, true, true, true, true, true}},
        {"Her2Cols", {true, true, true, true, true, true}},
        {"Flo3ColsX", {true, true, true, false, false, false}},
        {"Oku5ColsX", {true, true, true, true, false, false}},
        {"Oku4ColsX", {true, false, false, false, false, false}},
        {"Oku3ColsX", {true, false, false, false, false, false}},
        {"Oku4ColsQSS", {true, true, true, true, false, false}},
        {"Oku3ColsNSS", {true, true, true, true, false, false}},
    };
    return rows;
}

std::optional<std::array<bool, 6>> golden_row(std::string_view algorithm) {
    auto spec = builtin(algorithm);
    if (!spec) return std::nullopt;
    for (const GoldenRow& r : golden_table())
        if (r.algorithm == spec->name) return r.pass;
    return std::nullopt;
}

namespace {

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string algorithm;
    std::string scheduler = "async";
    int fairness = 0;  // 0: 8 x N
    std::string lights;
    std::string init;
    bool same_start = false;
    bool nonrigid = false;
    bool lc_includes_begmove = false;
    std::uint64_t counter_bound = 0;
    CLI::Option* counter_bound_opt = nullptr;
    std::string trace_path;
    std::string report_path;
    bool json = false;
    std::size_t max_states = 0;
    double max_seconds = 0;
    CLI::Option* max_states_opt = nullptr;
    CLI::Option* max_seconds_opt = nullptr;
};

void add_model_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--lights", cfg.lights, "Override the light model: full | external");
    cmd->add_option("--init", cfg.init, "Override initial colors: all | identical | fixed:COLOR");
}

void add_run_options(CLI::App* cmd, RunConfig& cfg) {
    add_model_options(cmd, cfg);
    cmd->add_option("--fairness", cfg.fairness, "Max consecutive blocks of one robot (default 8N)")
        ->check(CLI::Range(1, 255));
    cmd->add_flag("--same-start", cfg.same_start, "Also start from gathered configurations");
    cmd->add_flag("--lc-includes-begmove", cfg.lc_includes_begmove,
                  "ASYNC_LC groups LOOK, COMPUTE and BEGMOVE");
    cfg.max_states_opt = cmd->add_option("--max-states", cfg.max_states,
                                         "Stored configuration budget (env RDV_MAX_STATES)");
    cfg.max_seconds_opt = cmd->add_option("--max-seconds", cfg.max_seconds,
                                          "Time budget per run (env RDV_MAX_SECONDS)");
}

template <typename T>
T env_number(const char* name, T fallback) {
    const char* v = std::getenv(name);
    if (!v || !*v) return fallback;
    std::istringstream in(v);
    T out{};
    if (!(in >> out) || !in.eof() || out <= 0) throw UsageError(std::string("bad value for ") + name);
    return out;
}

AlgorithmSpec resolve_spec(const std::string& name, const RunConfig& cfg) {
    if (name.empty()) throw UsageError("--algo is required");
    AlgorithmSpec spec;
    try {
        spec = load_algorithm(name);
    } catch (const std::runtime_error& e) {
        throw UsageError(e.what());
    }
    bool changed = false;
    if (!cfg.lights.empty()) {
        auto l = parse_lights(cfg.lights);
        if (!l) throw UsageError("unknown light model " + cfg.lights);
        changed |= spec.light_model != *l;
        spec.light_model = *l;
    }
    if (!cfg.init.empty()) {
        auto i = parse_init(cfg.init);
        if (!i) throw UsageError("unknown initial regime " + cfg.init);
        spec.init_regime = i->regime;
        spec.fixed_color = i->fixed_color;
        changed = true;
    }
    if (changed) {
        std::string msg;
        for (const Diagnostic& d : validate_spec(spec))
            if (d.is_error()) msg += "\n  " + format(d);
        if (!msg.empty()) throw UsageError("override incompatible with " + spec.name + ":" + msg);
    }
    return spec;
}

SchedulerKind resolve_scheduler(const std::string& s) {
    auto k = parse_scheduler(s);
    if (!k) throw UsageError("unknown scheduler " + s);
    return *k;
}

ExploreOptions resolve_options(const AlgorithmSpec& spec, SchedulerKind kind, const RunConfig& cfg) {
    ExploreOptions opts = default_options(spec, kind);
    if (cfg.fairness != 0) {
        if (cfg.fairness < 1 || cfg.fairness > 255)
            throw UsageError("--fairness must be between 1 and 255");
        opts.sched.bound = cfg.fairness;
    }
    opts.sched.lc_includes_begmove = cfg.lc_includes_begmove;
    opts.include_same_start = cfg.same_start;
    opts.nonrigid = cfg.nonrigid;
    if (cfg.counter_bound_opt && cfg.counter_bound_opt->count()) opts.counter_bound = cfg.counter_bound;
    opts.max_states = env_number<std::size_t>("RDV_MAX_STATES", opts.max_states);
    opts.max_seconds = env_number<double>("RDV_MAX_SECONDS", opts.max_seconds);
    if (cfg.max_states_opt && cfg.max_states_opt->count()) {
        if (cfg.max_states == 0) throw UsageError("--max-states must be positive");
        opts.max_states = cfg.max_states;
    }
    if (cfg.max_seconds_opt && cfg.max_seconds_opt->count()) {
        if (cfg.max_seconds <= 0) throw UsageError("--max-seconds must be positive");
        opts.max_seconds = cfg.max_seconds;
    }
    return opts;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    if (!f) throw UsageError("cannot write " + path);
    f << content;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot read " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

bool wants_json(const std::string& path) { return path.ends_with(".json"); }

std::string trace_text(const TraceFile& t, const std::string& path) {
    return wants_json(path) ? trace_to_json(t).dump(2) + "\n" : write_trace_text(t);
}

// Human form of a report: one "key: value" line per scalar, nested objects
// flattened with dots, so it carries exactly the fields of the JSON form.
void print_human(std::ostream& out, const ojson& j, const std::string& prefix = "") {
    for (auto it = j.begin(); it != j.end(); ++it) {
        std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
        if (it->is_object()) {
            print_human(out, *it, key);
        } else if (it->is_array()) {
            for (std::size_t i = 0; i < it->size(); ++i) {
                const ojson& item = (*it)[i];
                if (item.is_object())
                    print_human(out, item, key + "[" + std::to_string(i) + "]");
                else
                    out << key << "[" << i << "]: " << (item.is_string() ? item.get<std::string>() : item.dump()) << '\n';
            }
        } else {
            out << key << ": " << (it->is_string() ? it->get<std::string>() : it->dump()) << '\n';
        }
    }
}

void emit(const ojson& report, const RunConfig& cfg, std::ostream& out) {
    if (!cfg.report_path.empty()) write_file(cfg.report_path, report.dump(2) + "\n");
    if (cfg.json)
        out << report.dump(2) << '\n';
    else
        print_human(out, report);
}

ojson stats_json(const ExploreStats& s) {
    return {{"stored_states", s.stored_states},
            {"transitions", s.transitions},
            {"peak_frontier", s.peak_frontier},
            {"distinct_without_fairness", s.distinct_without_fairness},
            {"fairness_violations", s.fairness_violations},
            {"wall_seconds", s.wall_seconds}};
}

ojson run_header(const AlgorithmSpec& spec, const ExploreOptions& opts) {
    ojson j;
    j["schema"] = "rdvcheck-report";
    j["version"] = kReportSchemaVersion;
    j["algorithm"] = spec.name;
    j["init"] = init_label(spec);
    j["lights"] = to_string(spec.light_model);
    j["scheduler"] = to_string(opts.sched.kind);
    j["bound"] = opts.sched.bound;
    j["mode"] = opts.nonrigid ? "nonrigid" : "rigid";
    if (opts.nonrigid) j["counter_bound"] = opts.counter_bound.value_or(nconf_bound(spec) - 1);
    j["same_start"] = opts.include_same_start;
    j["lc_includes_begmove"] = opts.sched.lc_includes_begmove;
    return j;
}

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    AlgorithmSpec spec = resolve_spec(cfg.algorithm, cfg);
    ExploreOptions opts = resolve_options(spec, resolve_scheduler(cfg.scheduler), cfg);
    ojson report = run_header(spec, opts);

    ExploreResult result;
    try {
        result = explore(spec, opts);
    } catch (const ResourceLimitExceeded& e) {
        report["outcome"] = "LIMIT";
        report["error"] = e.what();
        emit(report, cfg, out);
        err << "resource limit: " << e.what() << '\n';
        return kExitLimit;
    }
    const Verdict& v = result.verdict;
    report["outcome"] = to_string(v.outcome);
    report["stats"] = stats_json(v.stats);
    if (v.trace) {
        ReplayResult cert = replay(*v.trace, spec, opts);
        report["lasso"] = {{"prefix_steps", v.trace->prefix.size()},
                           {"cycle_steps", v.trace->cycle.size()},
                           {"loop_start", format_configuration(v.trace->loop_start())},
                           {"certified", cert.ok}};
        if (!cfg.trace_path.empty()) {
            write_file(cfg.trace_path, trace_text({make_header(spec, opts), *v.trace}, cfg.trace_path));
            report["trace_file"] = cfg.trace_path;
        }
        if (!cert.ok) {
            emit(report, cfg, out);
            err << "internal error: counter-example rejected at step " << cert.step << ": "
                << cert.reason << '\n';
            return kExitInternal;
        }
    }
    emit(report, cfg, out);
    return v.outcome == Outcome::Pass ? kExitPass : kExitFail;
}

struct TableConfig {
    RunConfig run;
    std::vector<std::string> rows;
    std::vector<std::string> schedulers;
    bool golden = false;
    std::string trace_dir;
};

std::string pad(std::string s, std::size_t width) {
    // Column widths count code points; the check mark and dash are 3 bytes.
    std::size_t visible = 0;
    for (unsigned char c : s) visible += (c & 0xC0) != 0x80;
    if (visible < width) s.append(width - visible, ' ');
    return s;
}

int cmd_table(const TableConfig& tc, std::ostream& out, std::ostream& err) {
    std::vector<std::string> rows = tc.rows;
    if (rows.empty())
        for (const GoldenRow& g : golden_table()) rows.emplace_back(g.algorithm);
    std::vector<SchedulerKind> cols;
    if (tc.schedulers.empty())
        cols.assign(kAllSchedulers.begin(), kAllSchedulers.end());
    else
        for (const std::string& s : tc.schedulers) cols.push_back(resolve_scheduler(s));
    if (!tc.trace_dir.empty()) std::filesystem::create_directories(tc.trace_dir);

    std::vector<AlgorithmSpec> specs;
    for (const std::string& r : rows) specs.push_back(resolve_spec(r, tc.run));

    ojson report;
    report["schema"] = "rdvcheck-table";
    report["version"] = kReportSchemaVersion;
    report["columns"] = ojson::array();
    for (SchedulerKind k : cols) report["columns"].push_back(to_string(k));
    report["rows"] = ojson::array();

    bool limit = false;
    bool uncertified = false;
    std::vector<std::string> mismatches;
    std::vector<std::string> no_golden;
    std::ostringstream text;
    text << pad("algorithm", 14);
    for (SchedulerKind k : cols) text << pad(std::string(to_string(k)), 12);
    text << '\n';

    for (const AlgorithmSpec& spec : specs) {
        auto expected = golden_row(spec.name);
        if (tc.golden && !expected) no_golden.push_back(spec.name);
        ojson row;
        row["algorithm"] = spec.name;
        row["cells"] = ojson::array();
        text << pad(spec.name, 14);
        for (SchedulerKind k : cols) {
            ExploreOptions opts = resolve_options(spec, k, tc.run);
            ojson cell;
            cell["scheduler"] = to_string(k);
            std::string mark;
            try {
                ExploreResult r = explore(spec, opts);
                const Verdict& v = r.verdict;
                cell["outcome"] = to_string(v.outcome);
                cell["stored_states"] = v.stats.stored_states;
                cell["transitions"] = v.stats.transitions;
                cell["wall_seconds"] = v.stats.wall_seconds;
                mark = v.outcome == Outcome::Pass ? "✓" : "–";
                if (v.trace) {
                    ReplayResult cert = replay(*v.trace, spec, opts);
                    cell["certified"] = cert.ok;
                    if (!cert.ok) {
                        uncertified = true;
                        err << spec.name << "/" << to_string(k) << ": counter-example rejected at step "
                            << cert.step << ": " << cert.reason << '\n';
                    }
                    if (!tc.trace_dir.empty()) {
                        std::string path = (std::filesystem::path(tc.trace_dir) /
                                            (spec.name + "_" + std::string(to_string(k)) + ".trace"))
                                               .string();
                        write_file(path, write_trace_text({make_header(spec, opts), *v.trace}));
                        cell["trace_file"] = path;
                    }
                }
                if (expected) {
                    bool want = (*expected)[static_cast<std::size_t>(k)];
                    cell["expected"] = want ? "PASS" : "FAIL";
                    if (want != (v.outcome == Outcome::Pass))
                        mismatches.push_back(spec.name + "/" + std::string(to_string(k)));
                }
            } catch (const ResourceLimitExceeded& e) {
                limit = true;
                cell["outcome"] = "LIMIT";
                cell["error"] = e.what();
                mark = "LIMIT";
            }
            text << pad(mark, 12);
            row["cells"].push_back(cell);
        }
        text << '\n';
        report["rows"].push_back(row);
    }

    if (tc.golden) {
        report["golden"] = {{"match", mismatches.empty() && no_golden.empty() && !limit},
                            {"mismatches", mismatches},
                            {"missing_rows", no_golden}};
        text << "golden: " << (report["golden"]["match"].get<bool>() ? "match" : "MISMATCH");
        for (const std::string& m : mismatches) text << ' ' << m;
        for (const std::string& m : no_golden) text << ' ' << m << "(no golden row)";
        text << '\n';
    }
    if (!tc.run.report_path.empty()) write_file(tc.run.report_path, report.dump(2) + "\n");
    out << (tc.run.json ? report.dump(2) + "\n" : text.str());

    if (uncertified) return kExitInternal;
    if (limit) return kExitLimit;
    if (tc.golden && !report["golden"]["match"].get<bool>()) return kExitFail;
    return kExitPass;
}

int cmd_icc(const RunConfig& cfg, std::ostream& out) {
    AlgorithmSpec spec = resolve_spec(cfg.algorithm, cfg);
    IccReport icc = check_icc(spec);
    ojson report;
    report["schema"] = "rdvcheck-report";
    report["version"] = kReportSchemaVersion;
    report["algorithm"] = spec.name;
    report["icc"] = icc.satisfied ? "satisfied" : "violated";
    report["witnesses"] = ojson::array();
    for (const IccViolation& w : icc.witnesses) {
        report["witnesses"].push_back({{"me", to_string(w.me_color)},
                                       {"other", to_string(w.other_color)},
                                       {"gathered", w.gathered},
                                       {"new_color", to_string(w.new_color)}});
    }
    emit(report, cfg, out);
    return icc.satisfied ? kExitPass : kExitFail;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
    if (cfg.algorithm.empty()) throw UsageError("--algo is required");
    std::vector<Diagnostic> diags;
    std::optional<AlgorithmSpec> spec = builtin(cfg.algorithm);
    if (!spec) {
        ParseResult parsed = parse_algorithm(read_file(cfg.algorithm));
        diags = parsed.diagnostics;
        spec = parsed.spec;
    }
    if (spec) {
        if (!cfg.lights.empty()) {
            auto l = parse_lights(cfg.lights);
            if (!l) throw UsageError("unknown light model " + cfg.lights);
            spec->light_model = *l;
        }
        if (!cfg.init.empty()) {
            auto i = parse_init(cfg.init);
            if (!i) throw UsageError("unknown initial regime " + cfg.init);
            spec->init_regime = i->regime;
            spec->fixed_color = i->fixed_color;
        }
        for (Diagnostic& d : validate_spec(*spec)) diags.push_back(std::move(d));
    }
    bool clean = std::none_of(diags.begin(), diags.end(), [](const Diagnostic& d) { return d.is_error(); });
    ojson report;
    report["schema"] = "rdvcheck-report";
    report["version"] = kReportSchemaVersion;
    report["algorithm"] = spec ? spec->name : cfg.algorithm;
    report["valid"] = clean;
    report["diagnostics"] = ojson::array();
    for (const Diagnostic& d : diags) {
        report["diagnostics"].push_back({{"severity", d.is_error() ? "error" : "warning"},
                                         {"line", d.line},
                                         {"column", d.column},
                                         {"message", d.message}});
    }
    emit(report, cfg, out);
    return clean ? kExitPass : kExitFail;
}

int cmd_replay(RunConfig cfg, const std::string& trace_path, CLI::App* cmd, std::ostream& out,
               std::ostream& err) {
    TraceFile t;
    try {
        t = parse_trace(read_file(trace_path));
    } catch (const TraceFormatError& e) {
        throw UsageError(trace_path + ": " + e.what());
    }
    // The trace header supplies every setting the command line leaves out.
    if (cfg.algorithm.empty()) cfg.algorithm = t.header.algorithm;
    if (!cmd->get_option("--sched")->count()) cfg.scheduler = std::string(to_string(t.header.scheduler));
    if (cfg.init.empty()) cfg.init = t.header.init;
    if (cfg.lights.empty()) cfg.lights = t.header.lights;
    if (!cmd->get_option("--fairness")->count()) cfg.fairness = t.header.bound;
    if (!cmd->get_option("--lc-includes-begmove")->count())
        cfg.lc_includes_begmove = t.header.lc_includes_begmove;
    if (!cmd->get_option("--nonrigid")->count()) cfg.nonrigid = t.header.nonrigid;
    AlgorithmSpec spec = resolve_spec(cfg.algorithm, cfg);
    ExploreOptions opts = resolve_options(spec, resolve_scheduler(cfg.scheduler), cfg);
    if (!cfg.counter_bound_opt->count() && t.header.counter_bound)
        opts.counter_bound = t.header.counter_bound;

    ReplayResult r = replay(t.lasso, spec, opts);
    ojson report = run_header(spec, opts);
    report["trace_file"] = trace_path;
    report["steps"] = t.lasso.prefix.size() + t.lasso.cycle.size();
    report["replay"] = r.ok ? "certified" : "rejected";
    if (!r.ok) {
        report["step"] = r.step;
        report["reason"] = r.reason;
        err << "replay rejected at step " << r.step << ": " << r.reason << '\n';
    }
    emit(report, cfg, out);
    return r.ok ? kExitPass : kExitFail;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Explicit-state checker for two-robot luminous rendezvous algorithms", "rdvcheck"};
    app.require_subcommand(1);

    RunConfig check_cfg;
    CLI::App* check = app.add_subcommand("check", "Verify <>[] gathered for one algorithm and scheduler");
    check->add_option("--algo", check_cfg.algorithm, "Built-in name or algorithm file")->required();
    check->add_option("--sched", check_cfg.scheduler,
                      "centralized | fsync | ssync | async-lc | async-move | async");
    add_run_options(check, check_cfg);
    check->add_flag("--nonrigid", check_cfg.nonrigid, "Start FAR and let motions stop short");
    check_cfg.counter_bound_opt = check->add_option("--counter-bound", check_cfg.counter_bound,
                                                    "Stopped-motion budget (default Nconf - 1)");
    check->add_option("--trace", check_cfg.trace_path, "Write the counter-example (.json for JSON)");
    check->add_option("--report", check_cfg.report_path, "Write the JSON report");
    check->add_flag("--json", check_cfg.json, "Print the JSON report");

    TableConfig table_cfg;
    CLI::App* table = app.add_subcommand("table", "Verdict matrix over algorithms and schedulers");
    table->add_option("--rows", table_cfg.rows, "Algorithms (default: all built-ins)")->delimiter(',');
    table->add_option("--sched", table_cfg.schedulers, "Schedulers (default: all six)")->delimiter(',');
    table->add_flag("--golden", table_cfg.golden, "Compare with the expected matrix");
    table->add_option("--trace-dir", table_cfg.trace_dir, "Write one trace file per FAIL cell");
    add_run_options(table, table_cfg.run);
    table->add_option("--report", table_cfg.run.report_path, "Write the JSON report");
    table->add_flag("--json", table_cfg.run.json, "Print the JSON report");

    RunConfig icc_cfg;
    CLI::App* icc = app.add_subcommand("icc", "Check the identical color condition");
    icc->add_option("--algo", icc_cfg.algorithm, "Built-in name or algorithm file")->required();
    add_model_options(icc, icc_cfg);
    icc->add_option("--report", icc_cfg.report_path, "Write the JSON report");
    icc->add_flag("--json", icc_cfg.json, "Print the JSON report");

    RunConfig validate_cfg;
    CLI::App* validate = app.add_subcommand("validate", "Parse and validate an algorithm");
    validate->add_option("--algo", validate_cfg.algorithm, "Built-in name or algorithm file")->required();
    add_model_options(validate, validate_cfg);
    validate->add_option("--report", validate_cfg.report_path, "Write the JSON report");
    validate->add_flag("--json", validate_cfg.json, "Print the JSON report");

    RunConfig replay_cfg;
    std::string replay_path;
    CLI::App* replay_cmd = app.add_subcommand("replay", "Certify a counter-example file");
    replay_cmd->add_option("--trace", replay_path, "Trace file (text or JSON)")->required();
    replay_cmd->add_option("--algo", replay_cfg.algorithm, "Algorithm (default: from the trace)");
    replay_cmd->add_option("--sched", replay_cfg.scheduler, "Scheduler (default: from the trace)");
    add_run_options(replay_cmd, replay_cfg);
    replay_cmd->add_flag("--nonrigid", replay_cfg.nonrigid, "Non-rigid semantics");
    replay_cfg.counter_bound_opt = replay_cmd->add_option("--counter-bound", replay_cfg.counter_bound,
                                                          "Stopped-motion budget");
    replay_cmd->add_option("--report", replay_cfg.report_path, "Write the JSON report");
    replay_cmd->add_flag("--json", replay_cfg.json, "Print the JSON report");

    std::string show_algo;
    CLI::App* show = app.add_subcommand("show", "Print an algorithm in canonical form");
    show->add_option("--algo", show_algo, "Built-in name or algorithm file")->required();

    std::vector<std::string> argv_store{"rdvcheck"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const std::string& a : argv_store) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (*check) return cmd_check(check_cfg, out, err);
        if (*table) return cmd_table(table_cfg, out, err);
        if (*icc) return cmd_icc(icc_cfg, out);
        if (*validate) return cmd_validate(validate_cfg, out);
        if (*replay_cmd) return cmd_replay(replay_cfg, replay_path, replay_cmd, out, err);
        if (*show) {
            out << render(resolve_spec(show_algo, RunConfig{}));
            return kExitPass;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ModelInvariantError& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    } catch (const NoMatchingRule& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitUsage;
}

}  // namespace rdv
