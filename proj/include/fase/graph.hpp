#ifndef FASE_GRAPH_HPP
#define FASE_GRAPH_HPP

#include <string>
#include <vector>

#include "fase/action.hpp"
#include "fase/semantics.hpp"
#include "fase/term.hpp"

namespace fase {

struct EdgeLabel {
    enum class Kind { Action, Time } kind;
    ActionLabel action;  // Kind::Action
    ActionSet refusal;   // Kind::Time; in an RRTS this is max_refusal /\ {in,out}
    bool full = false;   // the underlying maximal set was the whole sort

    bool is_time() const { return kind == Kind::Time; }
    bool is_tau() const { return kind == Kind::Action && action.is_tau(); }
    bool is(const std::string& name) const {
        return kind == Kind::Action && action.name == name;
    }
};

struct Edge {
    int src;
    int dst;
    EdgeLabel label;
};

inline constexpr int kDefaultStateCap = 200000;

struct StateGraph {
    enum class Kind { RTS, RRTS, Composed };

    Kind kind = Kind::RTS;
    Alphabet alphabet;
    std::vector<TermPtr> nodes;
    int initial = 0;
    std::vector<Edge> edges;
    std::vector<std::vector<int>> out_edges;  // node -> edge indices

    int node_count() const { return static_cast<int>(nodes.size()); }
    int edge_count() const { return static_cast<int>(edges.size()); }

    void add_edge(Edge e);
};

// per-node #in - #out along any path from the initial node
using BalanceMap = std::vector<int>;

// Breadth-first closure of action and time steps from P.
StateGraph build_rts(TermPtr p, int cap = kDefaultStateCap);

// Checks the graph belongs to a response process (only in/out visible,
// never more out's than in's, path-independent balance) and returns the
// balance map. Throws FaseError("not-response-process") otherwise.
BalanceMap validate_response(const StateGraph& g);

struct Rrts {
    StateGraph graph;  // kind RRTS; time labels reduced to {in,out} + full flag
    BalanceMap balance;
};

Rrts build_rrts(TermPtr p, int cap = kDefaultStateCap);

// U_1 = _in._out._omega.nil; U_n = U_{n-1} |[omega]| U_1.
TermPtr make_user(int n);

// P |[*-omega]| O
TermPtr compose(TermPtr p, TermPtr o);

std::string to_dot(const StateGraph& g, bool verbose_nodes = false);
std::string to_json(const StateGraph& g);

}  // namespace fase

#endif
