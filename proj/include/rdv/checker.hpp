#pragma once

// Exhaustive exploration of the configuration graph and verification of the
// liveness property "eventually always gathered" (<>[] distance == SAME).

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rdv/algospec.hpp"
#include "rdv/model.hpp"
#include "rdv/scheduler.hpp"

namespace rdv {

/// Upper bound on distinct configurations, fairness bookkeeping excluded:
/// 2 distances x (5 colors x 4 phases x 5 pending moves x 6 pending colors)^2.
inline constexpr std::uint64_t kRigidStateBound = 2ull * (5 * 4 * 5 * 6) * (5 * 4 * 5 * 6);

/// The explorer stopped on a state or time budget; neither PASS nor FAIL.
class ResourceLimitExceeded : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct ExploreOptions {
    SchedulerOptions sched;
    bool include_same_start = false;
    bool nonrigid = false;
    // Non-rigid only: how many times a motion started at FAR may be stopped
    // short. Defaults to nconf_bound(spec) - 1.
    std::optional<std::uint64_t> counter_bound;
    std::size_t max_states = 10'000'000;
    double max_seconds = 300.0;
};

/// Options with the scheduler kind set and the fairness bound defaulted to 8N.
ExploreOptions default_options(const AlgorithmSpec& spec, SchedulerKind kind);

/// Number of non-distance configurations, (N x (N+1) x 4 x 5)^2: color,
/// pending color (or none), phase and pending move of both robots.
std::uint64_t nconf_bound(const AlgorithmSpec& spec);

std::vector<Configuration> initial_configurations(const AlgorithmSpec& spec,
                                                  bool include_same_start, bool nonrigid);

struct Edge {
    std::uint32_t target = 0;
    EventBlock block;
    std::uint8_t stops = 0;  // non-rigid motions stopped short on this edge
};

class StateGraph {
  public:
    std::vector<std::uint64_t> nodes;     // packed configurations, discovery order
    std::vector<std::uint32_t> offsets;   // CSR row starts, nodes.size() + 1 entries
    std::vector<Edge> edges;
    std::vector<std::uint32_t> initials;
    // Shortest-path tree from the initials (parent of an initial is itself).
    std::vector<std::uint32_t> parent;
    std::vector<std::uint32_t> parent_edge;
    // Non-rigid only: fewest stopped-short motions needed to reach each node.
    std::vector<std::uint32_t> counter;
    bool nonrigid = false;

    std::size_t size() const { return nodes.size(); }
    Configuration config(std::uint32_t id) const { return Configuration::unpack(nodes[id]); }
    std::span<const Edge> successors(std::uint32_t id) const {
        return {edges.data() + offsets[id], edges.data() + offsets[id + 1]};
    }
    bool gathered(std::uint32_t id) const {
        return static_cast<Distance>(nodes[id] & 3) == Distance::Same;
    }
    std::optional<std::uint32_t> find(const Configuration& c) const;
};

struct Step {
    EventBlock block;
    Configuration config;  // configuration reached by the block
    int stops = 0;

    friend bool operator==(const Step&, const Step&) = default;
};

/// A finite prefix followed by a cycle. The cycle starts and ends at
/// loop_start(): the last configuration of the prefix (or the initial one).
struct LassoTrace {
    Configuration initial;
    std::vector<Step> prefix;
    std::vector<Step> cycle;

    const Configuration& loop_start() const {
        return prefix.empty() ? initial : prefix.back().config;
    }
    friend bool operator==(const LassoTrace&, const LassoTrace&) = default;
};

struct ExploreStats {
    std::size_t stored_states = 0;
    std::size_t transitions = 0;
    std::size_t peak_frontier = 0;
    std::size_t distinct_without_fairness = 0;
    std::size_t fairness_violations = 0;
    double wall_seconds = 0.0;
};

enum class Outcome { Pass, Fail };

struct Verdict {
    Outcome outcome = Outcome::Pass;
    std::optional<LassoTrace> trace;
    ExploreStats stats;
};

struct ExploreResult {
    StateGraph graph;
    Verdict verdict;
};

/// Builds the reachable configuration graph. In non-rigid mode the graph
/// holds every configuration reachable within the stop budget, each with its
/// minimal stop count.
StateGraph build_graph(const AlgorithmSpec& spec, const ExploreOptions& opts,
                       ExploreStats* stats = nullptr);

/// Nested depth-first search for a reachable cycle through a non-gathered
/// configuration, using only edges without stopped motions. The witness is
/// rebuilt from the shortest-path tree and a breadth-first cycle search.
std::optional<LassoTrace> find_lasso(const StateGraph& graph);

/// Rigid or non-rigid exploration depending on opts.nonrigid.
ExploreResult explore(const AlgorithmSpec& spec, const ExploreOptions& opts);

/// Far-start exploration with a bounded number of stopped-short motions.
Verdict nonrigid_explore(const AlgorithmSpec& spec, const ExploreOptions& opts);

struct ReplayResult {
    bool ok = false;
    std::size_t step = 0;  // 1-based STEP number of the first illegal step, 0 for the initial
    std::string reason;
};

/// Re-executes a lasso with the model and scheduler rules and certifies that
/// every step is enabled, reproduces the recorded configuration, and that the
/// cycle closes through a non-gathered configuration.
ReplayResult replay(const LassoTrace& trace, const AlgorithmSpec& spec, const ExploreOptions& opts);

std::string_view to_string(Outcome o);

}  // namespace rdv
