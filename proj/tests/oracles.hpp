#pragma once

// Reference implementations used to cross-check the library. They share the
// data types but none of the decision logic.

#include <algorithm>
#include <array>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "rdv/algospec.hpp"
#include "rdv/checker.hpp"
#include "rdv/model.hpp"

namespace oracle {

using namespace rdv;

// Movement resolution written out case by case, one line per input tuple:
// distance, my pending move, other's pending move -> distance, other's pending
// move, row. "x" marks a tuple with no row (ENDMOVE without a pending move).
inline constexpr const char* kResolutionTable = R"(
SAME STAY STAY -> SAME STAY 1
SAME STAY HALF -> SAME HALF 1
SAME STAY OTHER -> SAME OTHER 1
SAME STAY MISS -> SAME MISS 1
SAME STAY NONE -> SAME NONE 1
NEAR STAY STAY -> NEAR STAY 1
NEAR STAY HALF -> NEAR HALF 1
NEAR STAY OTHER -> NEAR OTHER 1
NEAR STAY MISS -> NEAR MISS 1
NEAR STAY NONE -> NEAR NONE 1
SAME MISS STAY -> NEAR STAY 2
SAME MISS NONE -> NEAR NONE 2
SAME MISS HALF -> NEAR MISS 3
SAME MISS OTHER -> NEAR MISS 3
SAME MISS MISS -> NEAR MISS 3
NEAR MISS STAY -> NEAR STAY 2
NEAR MISS NONE -> NEAR NONE 2
NEAR MISS HALF -> NEAR MISS 3
NEAR MISS OTHER -> NEAR MISS 3
NEAR MISS MISS -> NEAR MISS 3
SAME OTHER STAY -> SAME STAY 4
SAME OTHER NONE -> SAME NONE 4
SAME OTHER HALF -> SAME HALF 5
SAME OTHER OTHER -> SAME OTHER 5
SAME OTHER MISS -> SAME MISS 5
NEAR OTHER STAY -> SAME STAY 4
NEAR OTHER NONE -> SAME NONE 4
NEAR OTHER HALF -> SAME MISS 6
NEAR OTHER OTHER -> SAME MISS 6
NEAR OTHER MISS -> SAME MISS 6
SAME HALF HALF -> SAME OTHER 7
SAME HALF STAY -> SAME STAY 8
SAME HALF NONE -> SAME NONE 8
SAME HALF OTHER -> SAME MISS 9
SAME HALF MISS -> SAME MISS 9
NEAR HALF HALF -> NEAR OTHER 7
NEAR HALF STAY -> NEAR STAY 8
NEAR HALF NONE -> NEAR NONE 8
NEAR HALF OTHER -> NEAR MISS 9
NEAR HALF MISS -> NEAR MISS 9
SAME NONE STAY -> x
SAME NONE HALF -> x
SAME NONE OTHER -> x
SAME NONE MISS -> x
SAME NONE NONE -> x
NEAR NONE STAY -> x
NEAR NONE HALF -> x
NEAR NONE OTHER -> x
NEAR NONE MISS -> x
NEAR NONE NONE -> x
)";

struct ResolutionCase {
    Distance distance;
    Move mine;
    Move others;
    bool defined;
    Distance out_distance;
    Move out_others;
    int row;
};

inline std::vector<ResolutionCase> resolution_cases() {
    std::vector<ResolutionCase> out;
    std::istringstream in(kResolutionTable);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string d, m, o, arrow, od, oo;
        int row = 0;
        ls >> d >> m >> o >> arrow >> od;
        ResolutionCase c{*parse_distance(d), *parse_move(m), *parse_move(o), od != "x",
                         Distance::Near, Move::None, 0};
        if (c.defined) {
            ls >> oo >> row;
            c.out_distance = *parse_distance(od);
            c.out_others = *parse_move(oo);
            c.row = row;
        }
        out.push_back(c);
    }
    return out;
}

// Tarjan's algorithm over the edges without stopped motions. The property
// fails iff a strongly connected component with at least one internal edge
// holds a configuration that is not gathered.
inline bool scc_has_bad_cycle(const StateGraph& g) {
    const std::uint32_t n = static_cast<std::uint32_t>(g.size());
    constexpr std::uint32_t kUnset = 0xFFFFFFFFu;
    std::vector<std::uint32_t> order(n, kUnset), low(n, 0), comp(n, kUnset);
    std::vector<bool> on_stack(n, false);
    std::vector<std::uint32_t> stack;
    std::uint32_t counter = 0, ncomp = 0;

    struct Frame {
        std::uint32_t v;
        std::size_t i;
    };
    for (std::uint32_t s = 0; s < n; ++s) {
        if (order[s] != kUnset) continue;
        std::vector<Frame> call{{s, 0}};
        order[s] = low[s] = counter++;
        stack.push_back(s);
        on_stack[s] = true;
        while (!call.empty()) {
            Frame& f = call.back();
            auto succ = g.successors(f.v);
            if (f.i < succ.size()) {
                const Edge& e = succ[f.i++];
                if (e.stops != 0) continue;
                std::uint32_t w = e.target;
                if (order[w] == kUnset) {
                    order[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], order[w]);
                }
                continue;
            }
            std::uint32_t v = f.v;
            call.pop_back();
            if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            if (low[v] == order[v]) {
                std::uint32_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = ncomp;
                } while (w != v);
                ++ncomp;
            }
        }
    }

    std::vector<bool> cyclic(ncomp, false), bad(ncomp, false);
    for (std::uint32_t v = 0; v < n; ++v) {
        for (const Edge& e : g.successors(v))
            if (e.stops == 0 && comp[e.target] == comp[v]) cyclic[comp[v]] = true;
        if (!g.gathered(v)) bad[comp[v]] = true;
    }
    for (std::uint32_t c = 0; c < ncomp; ++c)
        if (cyclic[c] && bad[c]) return true;
    return false;
}

// Longest run of consecutive single-robot blocks by one robot along any path
// from the initial configurations, capped at cap. Joint blocks break runs.
// Whenever one robot can run, so can the other under every scheduler with
// single-robot blocks, so this is the quantity the fairness bound limits.
inline int longest_solo_run(const StateGraph& g, int cap) {
    const std::size_t n = g.size();
    std::vector<std::array<int, 2>> run(n, {-1, -1});
    std::vector<std::uint32_t> work;
    for (std::uint32_t i : g.initials) {
        run[i] = {0, 0};
        work.push_back(i);
    }
    int best = 0;
    while (!work.empty()) {
        std::uint32_t u = work.back();
        work.pop_back();
        for (const Edge& e : g.successors(u)) {
            std::array<int, 2> next{0, 0};
            if (!e.block.joint()) {
                std::size_t r = index(e.block.robot);
                next[r] = std::min(cap, std::max(run[u][r], 0) + 1);
            }
            auto& cur = run[e.target];
            bool grew = false;
            for (int r = 0; r < 2; ++r) {
                if (next[r] > cur[r]) {
                    cur[r] = next[r];
                    grew = true;
                }
            }
            if (grew) work.push_back(e.target);
            best = std::max({best, next[0], next[1]});
        }
    }
    return best;
}

// Every (me, other, gathered) where a robot changes its color while seeing a
// different one, found by evaluating all consistent observations.
inline std::set<std::tuple<Color, Color, bool>> icc_witnesses(const AlgorithmSpec& spec) {
    std::set<std::tuple<Color, Color, bool>> out;
    for (Color me : spec.colors)
        for (Color other : spec.colors)
            for (bool gathered : {false, true})
                for (bool moving : {false, true}) {
                    if (gathered && moving) continue;
                    Command c = evaluate(spec, Observation{me, other, gathered, moving});
                    if (c.new_color != me && me != other) out.insert({me, other, gathered});
                }
    return out;
}

}  // namespace oracle
