#ifndef FASE_ANALYSIS_HPP
#define FASE_ANALYSIS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fase/graph.hpp"

namespace fase {

struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d);

    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const;

    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

struct WitnessStep {
    TermPtr from = nullptr;  // null for synthetic graphs
    EdgeLabel label;
    TermPtr to = nullptr;
};

struct CycleWitness {
    enum class Class { Catastrophic, Bad, Unbalanced };

    std::vector<int> nodes;  // nodes[i] --edges[i]--> nodes[(i+1)%size]
    std::vector<int> edges;  // edge indices into the analyzed graph
    int time_steps = 0;
    int ins = 0;
    int outs = 0;
    Class cls = Class::Catastrophic;
    std::vector<WitnessStep> steps;

    bool empty() const { return edges.empty(); }
};

struct PerfResult {
    bool finite = true;
    long long value = 0;
    std::optional<CycleWitness> witness;  // set when infinite
};

struct RatioResult {
    Rational factor;
    CycleWitness witness;
    bool reachable_region = true;  // witness lies in the reachable full-step region
};

struct CriticalPathReport {
    int n = 0;
    long long duration = 0;
    std::vector<int> nodes;  // graph node per visited state
    std::vector<int> edges;
    std::vector<std::pair<int, int>> counters;  // (#in, #out) after each step
    std::vector<WitnessStep> steps;
};

struct RpResult {
    PerfResult perf;
    std::optional<CriticalPathReport> path;  // set when finite
};

// Strongly connected components (iterative Tarjan). Returns component id per
// node; an edge between distinct components goes from a higher id to a lower
// one, so decreasing id order is a topological order of the condensation.
std::vector<int> strongly_connected_components(int n,
                                               const std::vector<std::vector<int>>& adj);

// Catastrophic cycle: a tau/time cycle with >= 1 time step whose time steps
// stay admissible for some user demand. With balance b shared by the cycle's
// nodes that means: b == 0 and every time step refuses in, or b > 0 and every
// time step refuses out. Linear in N + E via two SCC passes.
std::optional<CycleWitness> detect_catastrophic(const StateGraph& g,
                                                const BalanceMap& balance);
std::optional<CycleWitness> detect_catastrophic(const Rrts& r);

// Edge of the weighted cycle-ratio problem.
struct WeightedEdge {
    int src = 0;
    int dst = 0;
    int time_w = 0;
    int in_w = 0;
    int orig = -1;  // caller's edge index, reported back in witnesses
};

// Maximum over all cycles of (sum time_w)/(sum in_w) with sum in_w >= 1, as
// an exact rational with a witness cycle attaining it. nullopt if no cycle
// has in_w >= 1. Throws FaseError("unbalanced-cycle") on a cycle with
// time_w >= 1 and in_w == 0. Exact-rational parametric search.
std::optional<RatioResult> max_ratio_cycle(int node_count,
                                           const std::vector<WeightedEdge>& edges);

// Bad-cycle search over the full-step subgraph reachable from the initial
// node. Throws FaseError("catastrophic-present") if the precondition fails.
// Factor 0 with an empty witness when the subgraph is acyclic.
RatioResult asymptotic_factor(const Rrts& r);

// Exact response performance rp(n) by exhaustive search over the
// counter-augmented RRTS.
RpResult response_performance(const Rrts& r, int n, int cap = kDefaultStateCap);

// Worst-case time P needs to satisfy the test O: supremum of full-time-step
// counts over omega-free paths of RTS(P |[*-omega]| O).
PerfResult performance(TermPtr p, TermPtr o, int cap = kDefaultStateCap);

// p(P,O) finite and <= d
bool satisfies(TermPtr p, TermPtr o, long long d, int cap = kDefaultStateCap);

}  // namespace fase

#endif
