#include "rdv/checker.hpp"

#include <absl/container/flat_hash_map.h>
#include <absl/container/flat_hash_set.h>

#include <algorithm>
#include <chrono>
#include <deque>
#include <queue>

namespace rdv {

ExploreOptions default_options(const AlgorithmSpec& spec, SchedulerKind kind) {
    ExploreOptions opts;
    opts.sched.kind = kind;
    opts.sched.bound = default_fairness_bound(spec);
    return opts;
}

std::uint64_t nconf_bound(const AlgorithmSpec& spec) {
    std::uint64_t n = static_cast<std::uint64_t>(spec.num_colors());
    std::uint64_t per_robot = n * (n + 1) * 4 * 5;
    return per_robot * per_robot;
}

std::vector<Configuration> initial_configurations(const AlgorithmSpec& spec,
                                                  bool include_same_start, bool nonrigid) {
    std::vector<std::pair<Color, Color>> pairs;
    switch (spec.init_regime) {
        case InitRegime::AllPairs:
            for (Color a : spec.colors)
                for (Color b : spec.colors) pairs.emplace_back(a, b);
            break;
        case InitRegime::IdenticalPairs:
            for (Color c : spec.colors) pairs.emplace_back(c, c);
            break;
        case InitRegime::Fixed:
            pairs.emplace_back(spec.fixed_color, spec.fixed_color);
            break;
    }
    std::vector<Distance> distances{nonrigid ? Distance::Far : Distance::Near};
    if (include_same_start) distances.push_back(Distance::Same);

    std::vector<Configuration> out;
    for (Distance d : distances)
        for (auto [a, b] : pairs) out.push_back(simple_configuration(d, a, b));
    return out;
}

std::optional<std::uint32_t> StateGraph::find(const Configuration& c) const {
    auto key = c.pack();
    auto it = std::find(nodes.begin(), nodes.end(), key);
    if (it == nodes.end()) return std::nullopt;
    return static_cast<std::uint32_t>(it - nodes.begin());
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Runtime check of the bounded-fairness contract, independent of the filter
// inside enabled_blocks: a robot that has run `bound` blocks in a row may not
// run again while the other robot has something to do.
bool breaks_fairness(const Configuration& from, const EventBlock& block, const Configuration& to,
                     const SchedulerOptions& sched) {
    if (to.fair.streak > sched.bound) return true;
    if (block.joint() || from.fair.last_active != block.robot) return false;
    if (from.fair.streak < sched.bound) return false;
    BlockSet all = candidate_blocks(from, sched);
    return std::any_of(all.begin(), all.end(), [&](const EventBlock& b) {
        return !b.joint() && b.robot == other(block.robot);
    });
}

class GraphBuilder {
  public:
    GraphBuilder(const AlgorithmSpec& spec, const ExploreOptions& opts)
        : spec_(spec), opts_(opts), t0_(Clock::now()) {
        budget_ = opts.counter_bound.value_or(nconf_bound(spec) - 1);
        graph_.nonrigid = opts.nonrigid;
    }

    StateGraph build(ExploreStats* stats) {
        for (const Configuration& c : initial_configurations(spec_, opts_.include_same_start,
                                                             opts_.nonrigid)) {
            auto [id, fresh] = intern(c);
            if (!fresh) continue;
            graph_.initials.push_back(id);
            graph_.parent[id] = id;
        }
        if (opts_.nonrigid)
            run_nonrigid();
        else
            run_rigid();
        finish_csr();

        stats_.stored_states = graph_.nodes.size();
        stats_.transitions = graph_.edges.size();
        stats_.distinct_without_fairness = projected_.size();
        stats_.wall_seconds = seconds_since(t0_);
        if (!opts_.nonrigid) {
            std::uint64_t fair_values = 2 * static_cast<std::uint64_t>(opts_.sched.bound) + 1;
            if (projected_.size() > kRigidStateBound ||
                graph_.nodes.size() > kRigidStateBound * fair_values) {
                throw ModelInvariantError("reachable configurations exceed the rigid state bound");
            }
        }
        if (stats) *stats = stats_;
        return std::move(graph_);
    }

  private:
    std::pair<std::uint32_t, bool> intern(const Configuration& c) {
        std::uint64_t key = c.pack();
        auto [it, fresh] = index_.try_emplace(key, static_cast<std::uint32_t>(graph_.nodes.size()));
        if (!fresh) return {it->second, false};
        if (!well_formed(c)) throw ModelInvariantError("ill-formed configuration reached");
        if (graph_.nodes.size() >= opts_.max_states) {
            throw ResourceLimitExceeded("state limit of " + std::to_string(opts_.max_states) +
                                        " configurations exceeded");
        }
        graph_.nodes.push_back(key);
        graph_.parent.push_back(0);
        graph_.parent_edge.push_back(kNoEdge);
        graph_.counter.push_back(0);
        projected_.insert(c.pack_without_fairness());
        return {it->second, true};
    }

    void tick() {
        if ((++expansions_ & 0x3FF) == 0 && seconds_since(t0_) > opts_.max_seconds) {
            throw ResourceLimitExceeded("time limit of " + std::to_string(opts_.max_seconds) +
                                        " s exceeded");
        }
    }

    std::uint32_t add_edge(std::uint32_t src, std::uint32_t dst, const EventBlock& b, int stops) {
        raw_.push_back({src, Edge{dst, b, static_cast<std::uint8_t>(stops)}});
        return static_cast<std::uint32_t>(raw_.size() - 1);
    }

    void run_rigid() {
        for (std::uint32_t u = 0; u < graph_.nodes.size(); ++u) {
            tick();
            stats_.peak_frontier = std::max<std::size_t>(stats_.peak_frontier,
                                                         graph_.nodes.size() - u);
            Configuration c = graph_.config(u);
            for (const EventBlock& b : enabled_blocks(c, opts_.sched)) {
                Configuration next = apply_block(c, b, spec_, opts_.sched);
                if (breaks_fairness(c, b, next, opts_.sched)) ++stats_.fairness_violations;
                auto [v, fresh] = intern(next);
                std::uint32_t e = add_edge(u, v, b, 0);
                if (fresh) {
                    graph_.parent[v] = u;
                    graph_.parent_edge[v] = e;
                }
            }
        }
    }

    // Dijkstra on the number of stopped-short motions; a node is expanded
    // once, with its minimal count, and only successors within budget are kept.
    void run_nonrigid() {
        using Item = std::pair<std::uint64_t, std::uint32_t>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
        std::vector<bool> settled;
        for (std::uint32_t id : graph_.initials) queue.push({0, id});
        while (!queue.empty()) {
            auto [cost, u] = queue.top();
            queue.pop();
            if (u < settled.size() && settled[u]) continue;
            if (cost != graph_.counter[u]) continue;
            if (settled.size() < graph_.nodes.size()) settled.resize(graph_.nodes.size(), false);
            settled[u] = true;
            tick();
            stats_.peak_frontier = std::max(stats_.peak_frontier, queue.size() + 1);

            Configuration c = graph_.config(u);
            for (const EventBlock& b : enabled_blocks(c, opts_.sched)) {
                for (const NonRigidSuccessor& s : apply_block_nonrigid(c, b, spec_, opts_.sched)) {
                    std::uint64_t next_cost = cost + static_cast<std::uint64_t>(s.stops);
                    if (next_cost > budget_) continue;
                    if (breaks_fairness(c, b, s.config, opts_.sched)) ++stats_.fairness_violations;
                    auto [v, fresh] = intern(s.config);
                    std::uint32_t e = add_edge(u, v, b, s.stops);
                    bool done = v < settled.size() && settled[v];
                    if (fresh || (!done && next_cost < graph_.counter[v])) {
                        graph_.counter[v] = static_cast<std::uint32_t>(next_cost);
                        graph_.parent[v] = u;
                        graph_.parent_edge[v] = e;
                        queue.push({next_cost, v});
                    }
                }
            }
        }
    }

    // Counting sort of the raw edges by source into CSR form.
    void finish_csr() {
        std::size_t n = graph_.nodes.size();
        graph_.offsets.assign(n + 1, 0);
        for (const auto& r : raw_) ++graph_.offsets[r.src + 1];
        for (std::size_t i = 0; i < n; ++i) graph_.offsets[i + 1] += graph_.offsets[i];
        std::vector<std::uint32_t> fill(graph_.offsets.begin(), graph_.offsets.end() - 1);
        std::vector<std::uint32_t> where(raw_.size());
        graph_.edges.resize(raw_.size());
        for (std::size_t i = 0; i < raw_.size(); ++i) {
            std::uint32_t slot = fill[raw_[i].src]++;
            graph_.edges[slot] = raw_[i].edge;
            where[i] = slot;
        }
        for (auto& pe : graph_.parent_edge)
            if (pe != kNoEdge) pe = where[pe];
        raw_.clear();
        raw_.shrink_to_fit();
    }

    struct RawEdge {
        std::uint32_t src;
        Edge edge;
    };
    static constexpr std::uint32_t kNoEdge = 0xFFFFFFFFu;

    const AlgorithmSpec& spec_;
    const ExploreOptions& opts_;
    Clock::time_point t0_;
    std::uint64_t budget_ = 0;
    StateGraph graph_;
    absl::flat_hash_map<std::uint64_t, std::uint32_t> index_;
    absl::flat_hash_set<std::uint64_t> projected_;
    std::vector<RawEdge> raw_;
    ExploreStats stats_;
    std::uint64_t expansions_ = 0;
};

bool cycle_edge(const Edge& e) { return e.stops == 0; }

std::optional<std::uint32_t> nested_dfs(const StateGraph& g) {
    std::size_t n = g.size();
    std::vector<bool> blue(n, false);
    std::vector<bool> red(n, false);

    // Inner search: is `seed` reachable from itself? Red marks persist across
    // seeds, which keeps the whole search linear.
    auto inner = [&](std::uint32_t seed) {
        std::vector<std::uint32_t> stack{seed};
        while (!stack.empty()) {
            std::uint32_t u = stack.back();
            stack.pop_back();
            for (const Edge& e : g.successors(u)) {
                if (!cycle_edge(e)) continue;
                if (e.target == seed) return true;
                if (!red[e.target]) {
                    red[e.target] = true;
                    stack.push_back(e.target);
                }
            }
        }
        return false;
    };

    std::vector<std::uint32_t> roots = g.initials;
    if (g.nonrigid) {
        roots.resize(n);
        for (std::uint32_t i = 0; i < n; ++i) roots[i] = i;
    }

    struct Frame {
        std::uint32_t node;
        std::uint32_t next;
    };
    std::vector<Frame> stack;
    for (std::uint32_t root : roots) {
        if (blue[root]) continue;
        blue[root] = true;
        stack.push_back({root, g.offsets[root]});
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.next < g.offsets[f.node + 1]) {
                const Edge& e = g.edges[f.next++];
                if (cycle_edge(e) && !blue[e.target]) {
                    blue[e.target] = true;
                    stack.push_back({e.target, g.offsets[e.target]});
                }
                continue;
            }
            std::uint32_t u = f.node;
            stack.pop_back();
            // Post-order: launch the inner search from accepting states.
            if (!g.gathered(u) && inner(u)) return u;
        }
    }
    return std::nullopt;
}

// Shortest cycle through `seed` using cycle edges, as edge indices.
std::vector<std::uint32_t> shortest_cycle(const StateGraph& g, std::uint32_t seed) {
    constexpr std::uint32_t kUnseen = 0xFFFFFFFFu;
    std::vector<std::uint32_t> via(g.size(), kUnseen);  // edge index used to reach a node
    std::deque<std::uint32_t> queue{seed};
    std::uint32_t closing = kUnseen;
    while (!queue.empty() && closing == kUnseen) {
        std::uint32_t u = queue.front();
        queue.pop_front();
        for (std::uint32_t ei = g.offsets[u]; ei < g.offsets[u + 1]; ++ei) {
            const Edge& e = g.edges[ei];
            if (!cycle_edge(e)) continue;
            if (e.target == seed) {
                closing = ei;
                via[seed] = ei;
                break;
            }
            if (via[e.target] == kUnseen) {
                via[e.target] = ei;
                queue.push_back(e.target);
            }
        }
    }
    if (closing == kUnseen) throw std::logic_error("seed is not on a cycle");

    // Walk back from the closing edge; the source of an edge is found through
    // the CSR offsets.
    auto source_of = [&](std::uint32_t ei) {
        auto it = std::upper_bound(g.offsets.begin(), g.offsets.end(), ei);
        return static_cast<std::uint32_t>(it - g.offsets.begin() - 1);
    };
    std::vector<std::uint32_t> path{closing};
    std::uint32_t u = source_of(closing);
    while (u != seed) {
        path.push_back(via[u]);
        u = source_of(via[u]);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace

StateGraph build_graph(const AlgorithmSpec& spec, const ExploreOptions& opts,
                       ExploreStats* stats) {
    return GraphBuilder(spec, opts).build(stats);
}

std::optional<LassoTrace> find_lasso(const StateGraph& graph) {
    auto seed = nested_dfs(graph);
    if (!seed) return std::nullopt;

    std::vector<std::uint32_t> chain;
    for (std::uint32_t u = *seed; graph.parent[u] != u; u = graph.parent[u]) chain.push_back(u);
    std::reverse(chain.begin(), chain.end());
    std::uint32_t root = chain.empty() ? *seed : graph.parent[chain.front()];

    LassoTrace trace;
    trace.initial = graph.config(root);
    for (std::uint32_t v : chain) {
        const Edge& e = graph.edges[graph.parent_edge[v]];
        trace.prefix.push_back({e.block, graph.config(v), e.stops});
    }
    for (std::uint32_t ei : shortest_cycle(graph, *seed)) {
        const Edge& e = graph.edges[ei];
        trace.cycle.push_back({e.block, graph.config(e.target), e.stops});
    }
    return trace;
}

ExploreResult explore(const AlgorithmSpec& spec, const ExploreOptions& opts) {
    auto t0 = Clock::now();
    ExploreResult result;
    result.graph = build_graph(spec, opts, &result.verdict.stats);
    result.verdict.trace = find_lasso(result.graph);
    result.verdict.outcome = result.verdict.trace ? Outcome::Fail : Outcome::Pass;
    result.verdict.stats.wall_seconds = seconds_since(t0);
    return result;
}

Verdict nonrigid_explore(const AlgorithmSpec& spec, const ExploreOptions& opts) {
    ExploreOptions nr = opts;
    nr.nonrigid = true;
    return explore(spec, nr).verdict;
}

ReplayResult replay(const LassoTrace& trace, const AlgorithmSpec& spec,
                    const ExploreOptions& opts) {
    auto fail = [](std::size_t step, std::string reason) {
        return ReplayResult{false, step, std::move(reason)};
    };
    auto initials = initial_configurations(spec, true, opts.nonrigid);
    if (std::find(initials.begin(), initials.end(), trace.initial) == initials.end())
        return fail(0, "initial configuration is not a simple initial configuration of " + spec.name);
    if (trace.cycle.empty()) return fail(0, "empty cycle");

    std::uint64_t budget = opts.counter_bound.value_or(nconf_bound(spec) - 1);
    std::uint64_t used = 0;
    Configuration cur = trace.initial;
    std::size_t total = trace.prefix.size() + trace.cycle.size();
    bool ungathered_in_cycle = trace.loop_start().distance != Distance::Same;
    for (std::size_t i = 0; i < total; ++i) {
        bool in_cycle = i >= trace.prefix.size();
        const Step& step = in_cycle ? trace.cycle[i - trace.prefix.size()] : trace.prefix[i];
        std::size_t number = i + 1;
        if (!enabled_blocks(cur, opts.sched).contains(step.block))
            return fail(number, "block not enabled: " + describe_events(step.block));

        bool reproduced = false;
        if (opts.nonrigid) {
            for (const auto& s : apply_block_nonrigid(cur, step.block, spec, opts.sched))
                reproduced |= s.config == step.config && s.stops == step.stops;
        } else {
            reproduced = step.stops == 0 && apply_block(cur, step.block, spec, opts.sched) == step.config;
        }
        if (!reproduced) return fail(number, "configuration does not follow from the block");
        if (in_cycle && step.stops != 0) return fail(number, "stopped motion inside the cycle");
        used += static_cast<std::uint64_t>(step.stops);
        if (used > budget) return fail(number, "stop budget exceeded");
        if (in_cycle && step.config.distance != Distance::Same) ungathered_in_cycle = true;
        cur = step.config;
    }
    if (!(cur == trace.loop_start())) return fail(total, "cycle not closed");
    if (!ungathered_in_cycle) return fail(total, "cycle never leaves SAME");
    return ReplayResult{true, 0, "ok"};
}

std::string_view to_string(Outcome o) { return o == Outcome::Pass ? "PASS" : "FAIL"; }

}  // namespace rdv
