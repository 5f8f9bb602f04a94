#include "fase/graph.hpp"

#include <deque>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "fase/error.hpp"

namespace fase {

void StateGraph::add_edge(Edge e) {
    out_edges[e.src].push_back(static_cast<int>(edges.size()));
    edges.push_back(std::move(e));
}

StateGraph build_rts(TermPtr p, int cap) {
    StateGraph g;
    g.kind = StateGraph::Kind::RTS;
    g.alphabet = sort_alphabet(p);
    SemanticsContext ctx(g.alphabet);

    std::unordered_map<TermPtr, int> index;
    auto node_of = [&](TermPtr t) {
        auto it = index.find(t);
        if (it != index.end()) return it->second;
        if (static_cast<int>(g.nodes.size()) >= cap)
            throw FaseError("state-cap",
                            "state space exceeds cap of " + std::to_string(cap) + " nodes");
        int id = static_cast<int>(g.nodes.size());
        index.emplace(t, id);
        g.nodes.push_back(t);
        g.out_edges.emplace_back();
        return id;
    };

    std::deque<int> queue;
    queue.push_back(node_of(p));
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        TermPtr t = g.nodes[v];
        for (const auto& s : ctx.action_successors(t)) {
            bool fresh = index.find(s.target) == index.end();
            int w = node_of(s.target);
            if (fresh) queue.push_back(w);
            g.add_edge({v, w, {EdgeLabel::Kind::Action, s.label, {}, false}});
        }
        if (const auto& ts = ctx.time_step(t)) {
            bool fresh = index.find(ts->target) == index.end();
            int w = node_of(ts->target);
            if (fresh) queue.push_back(w);
            g.add_edge({v, w,
                        {EdgeLabel::Kind::Time, {}, ts->max_refusal, ctx.is_full(*ts)}});
        }
    }
    return g;
}

BalanceMap validate_response(const StateGraph& g) {
    BalanceMap balance(g.node_count(), -1);
    balance[g.initial] = 0;
    std::deque<int> queue{g.initial};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int ei : g.out_edges[v]) {
            const Edge& e = g.edges[ei];
            int delta = 0;
            if (e.label.kind == EdgeLabel::Kind::Action && e.label.action.is_visible()) {
                if (e.label.action.name == kIn)
                    delta = 1;
                else if (e.label.action.name == kOut)
                    delta = -1;
                else
                    throw FaseError("not-response-process",
                                    "visible action '" + e.label.action.name +
                                        "' is neither in nor out");
            }
            int b = balance[v] + delta;
            if (b < 0)
                throw FaseError("not-response-process",
                                "more responses than requests (negative balance at node " +
                                    std::to_string(e.dst) + ")");
            if (balance[e.dst] == -1) {
                balance[e.dst] = b;
                queue.push_back(e.dst);
            } else if (balance[e.dst] != b) {
                throw FaseError("not-response-process",
                                "inconsistent request/response balance at node " +
                                    std::to_string(e.dst));
            }
        }
    }
    return balance;
}

Rrts build_rrts(TermPtr p, int cap) {
    StateGraph rts = build_rts(p, cap);
    BalanceMap balance = validate_response(rts);

    StateGraph g;
    g.kind = StateGraph::Kind::RRTS;
    g.alphabet = rts.alphabet;
    g.nodes = rts.nodes;
    g.initial = rts.initial;
    g.out_edges.assign(g.nodes.size(), {});
    int in_idx = g.alphabet.index_of(kIn);
    int out_idx = g.alphabet.index_of(kOut);
    for (const Edge& e : rts.edges) {
        if (e.label.kind == EdgeLabel::Kind::Action) {
            g.add_edge(e);
        } else {
            ActionSet reduced(g.alphabet.size());
            if (in_idx >= 0 && e.label.refusal.contains(in_idx)) reduced.add(in_idx);
            if (out_idx >= 0 && e.label.refusal.contains(out_idx)) reduced.add(out_idx);
            g.add_edge({e.src, e.dst,
                        {EdgeLabel::Kind::Time, {}, std::move(reduced), e.label.full}});
        }
    }
    return Rrts{std::move(g), std::move(balance)};
}

TermPtr make_user(int n) {
    if (n < 1) throw FaseError("validation", "users are defined for n >= 1");
    TermPtr u1 = mk_prefix(ActionLabel::visible(kIn), true,
                           mk_prefix(ActionLabel::visible(kOut), true,
                                     mk_prefix(ActionLabel::visible(kOmega), true, mk_nil())));
    TermPtr u = u1;
    for (int i = 2; i <= n; ++i) u = mk_par(u, SyncSet::finite({kOmega}), u1);
    return u;
}

TermPtr compose(TermPtr p, TermPtr o) {
    return mk_par(p, SyncSet::all_except({kOmega}), o);
}

namespace {

std::string time_label_str(const EdgeLabel& l, const Alphabet& a) {
    return l.full ? std::string("t:FULL") : "t:" + l.refusal.str(a);
}

}  // namespace

std::string to_dot(const StateGraph& g, bool verbose_nodes) {
    std::ostringstream os;
    os << "digraph g {\n";
    os << "  node [shape=circle];\n";
    for (int v = 0; v < g.node_count(); ++v) {
        os << "  n" << v << " [label=\"" << v;
        if (verbose_nodes) os << ": " << print_term(g.nodes[v]);
        os << "\"";
        if (v == g.initial) os << ", style=bold";
        os << "];\n";
    }
    for (const Edge& e : g.edges) {
        os << "  n" << e.src << " -> n" << e.dst;
        if (e.label.kind == EdgeLabel::Kind::Action)
            os << " [label=\"" << e.label.action.str() << "\"]";
        else
            os << " [label=\"" << time_label_str(e.label, g.alphabet)
               << "\", style=dashed]";
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

std::string to_json(const StateGraph& g) {
    nlohmann::json j;
    j["nodes"] = nlohmann::json::array();
    for (int v = 0; v < g.node_count(); ++v) j["nodes"].push_back(print_term(g.nodes[v]));
    j["initial"] = g.initial;
    j["edges"] = nlohmann::json::array();
    for (const Edge& e : g.edges) {
        nlohmann::json label;
        if (e.label.kind == EdgeLabel::Kind::Action) {
            label["kind"] = "action";
            label["action"] = e.label.action.str();
        } else {
            label["kind"] = "time";
            label["refusal"] = e.label.refusal.names(g.alphabet);
            label["full"] = e.label.full;
        }
        j["edges"].push_back({{"src", e.src}, {"label", label}, {"dst", e.dst}});
    }
    switch (g.kind) {
    case StateGraph::Kind::RTS: j["kind"] = "rts"; break;
    case StateGraph::Kind::RRTS: j["kind"] = "rrts"; break;
    case StateGraph::Kind::Composed: j["kind"] = "composed"; break;
    }
    j["stats"] = {{"n", g.node_count()}, {"e", g.edge_count()}};
    return j.dump(2);
}

}  // namespace fase
