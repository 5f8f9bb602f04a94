#include "fase/analysis.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <numeric>

#include "fase/error.hpp"

namespace fase {

Rational::Rational(long long n, long long d) : num(n), den(d) {
    assert(den != 0);
    if (den < 0) {
        num = -num;
        den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

bool Rational::operator<(const Rational& o) const {
    return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
}

// ---------------------------------------------------------------- SCC

std::vector<int> strongly_connected_components(int n,
                                               const std::vector<std::vector<int>>& adj) {
    std::vector<int> comp(n, -1), low(n), num(n, -1), stack;
    std::vector<std::pair<int, size_t>> call;  // (node, next child index)
    std::vector<bool> on_stack(n, false);
    int counter = 0, comps = 0;

    for (int root = 0; root < n; ++root) {
        if (num[root] != -1) continue;
        call.emplace_back(root, 0);
        while (!call.empty()) {
            auto& [v, child] = call.back();
            if (child == 0) {
                num[v] = low[v] = counter++;
                stack.push_back(v);
                on_stack[v] = true;
            }
            if (child < adj[v].size()) {
                int w = adj[v][child++];
                if (num[w] == -1) {
                    call.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], num[w]);
                }
            } else {
                if (low[v] == num[v]) {
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp[w] = comps;
                        if (w == v) break;
                    }
                    ++comps;
                }
                int done = v;
                call.pop_back();
                if (!call.empty())
                    low[call.back().first] = std::min(low[call.back().first], low[done]);
            }
        }
    }
    return comp;
}

// ------------------------------------------------- catastrophic cycles

namespace {

// Shortest path src -> dst over the given edge subset, restricted to one
// component. Returns edge indices, or nullopt.
std::optional<std::vector<int>> bfs_path(int n, const std::vector<Edge>& edges,
                                         const std::vector<int>& kept, int src, int dst,
                                         const std::vector<int>& comp) {
    std::vector<std::vector<int>> out(n);
    for (int ei : kept) {
        const Edge& e = edges[ei];
        if (comp[e.src] == comp[src] && comp[e.dst] == comp[src])
            out[e.src].push_back(ei);
    }
    std::vector<int> via(n, -1);
    std::vector<bool> seen(n, false);
    std::deque<int> q{src};
    seen[src] = true;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        if (v == dst) break;
        for (int ei : out[v]) {
            int w = edges[ei].dst;
            if (!seen[w]) {
                seen[w] = true;
                via[w] = ei;
                q.push_back(w);
            }
        }
    }
    if (!seen[dst]) return std::nullopt;
    std::vector<int> path;
    for (int v = dst; v != src || path.empty();) {
        if (v == src) break;
        int ei = via[v];
        path.push_back(ei);
        v = edges[ei].src;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

void fill_counts(CycleWitness& w, const StateGraph& g) {
    for (int ei : w.edges) {
        const EdgeLabel& l = g.edges[ei].label;
        if (l.is_time())
            ++w.time_steps;
        else if (l.is(kIn))
            ++w.ins;
        else if (l.is(kOut))
            ++w.outs;
    }
    for (int ei : w.edges) {
        const Edge& e = g.edges[ei];
        w.nodes.push_back(e.src);
        w.steps.push_back({g.nodes.empty() ? nullptr : g.nodes[e.src], e.label,
                           g.nodes.empty() ? nullptr : g.nodes[e.dst]});
    }
}

// One detection pass: tau edges plus time edges refusing `needed`
// (in for balance-0 cycles, out for positive-balance cycles).
std::optional<CycleWitness> catastrophic_pass(const StateGraph& g,
                                              const BalanceMap& balance,
                                              const std::string& needed,
                                              bool positive_balance) {
    int idx = g.alphabet.index_of(needed);
    std::vector<int> kept;
    for (int ei = 0; ei < g.edge_count(); ++ei) {
        const EdgeLabel& l = g.edges[ei].label;
        if (l.is_tau())
            kept.push_back(ei);
        else if (l.is_time() && (idx < 0 || l.refusal.contains(idx)))
            kept.push_back(ei);
    }
    std::vector<std::vector<int>> adj(g.node_count());
    for (int ei : kept) adj[g.edges[ei].src].push_back(g.edges[ei].dst);
    auto comp = strongly_connected_components(g.node_count(), adj);

    std::optional<CycleWitness> best;
    for (int ei : kept) {
        const Edge& e = g.edges[ei];
        if (!e.label.is_time()) continue;
        if (comp[e.src] != comp[e.dst]) continue;
        bool bal_ok = positive_balance ? balance[e.src] > 0 : balance[e.src] == 0;
        if (!bal_ok) continue;
        auto back = bfs_path(g.node_count(), g.edges, kept, e.dst, e.src, comp);
        if (!back) continue;  // self-loop handled: empty path
        CycleWitness w;
        w.edges.push_back(ei);
        w.edges.insert(w.edges.end(), back->begin(), back->end());
        w.cls = CycleWitness::Class::Catastrophic;
        fill_counts(w, g);
        if (!best || w.edges.size() < best->edges.size()) best = std::move(w);
    }
    return best;
}

}  // namespace

std::optional<CycleWitness> detect_catastrophic(const StateGraph& g,
                                                const BalanceMap& balance) {
    auto a = catastrophic_pass(g, balance, kIn, false);
    auto b = catastrophic_pass(g, balance, kOut, true);
    if (a && b) return a->edges.size() <= b->edges.size() ? a : b;
    return a ? a : b;
}

std::optional<CycleWitness> detect_catastrophic(const Rrts& r) {
    return detect_catastrophic(r.graph, r.balance);
}

// --------------------------------------------------- max ratio cycle

namespace {

// Bellman-Ford positive-cycle test for weights q*time - p*in. Without a
// positive cycle the longest-walk values converge within n-1 passes, so an
// update in a later pass proves one exists.
bool has_positive_cycle(int n, const std::vector<WeightedEdge>& edges, long long p,
                        long long q) {
    std::vector<long long> dist(n, 0);
    for (int pass = 0; pass < n + 1; ++pass) {
        bool updated = false;
        for (const auto& e : edges) {
            long long w = q * e.time_w - p * e.in_w;
            if (dist[e.src] + w > dist[e.dst]) {
                dist[e.dst] = dist[e.src] + w;
                updated = true;
            }
        }
        if (!updated) return false;
    }
    return true;
}

// A cycle with time steps but no in actions lives entirely in the subgraph
// of in-free edges.
std::optional<std::vector<int>> in_free_time_cycle(int n,
                                                   const std::vector<WeightedEdge>& edges) {
    std::vector<std::vector<int>> adj(n);
    for (const auto& e : edges)
        if (e.in_w == 0) adj[e.src].push_back(e.dst);
    auto comp = strongly_connected_components(n, adj);

    std::optional<std::vector<int>> best;
    for (int ei = 0; ei < static_cast<int>(edges.size()); ++ei) {
        const auto& e = edges[ei];
        if (e.in_w != 0 || e.time_w == 0 || comp[e.src] != comp[e.dst]) continue;
        std::vector<std::vector<int>> out(n);
        for (int j = 0; j < static_cast<int>(edges.size()); ++j) {
            const auto& o = edges[j];
            if (o.in_w == 0 && comp[o.src] == comp[e.src] && comp[o.dst] == comp[e.src])
                out[o.src].push_back(j);
        }
        std::vector<int> via(n, -1);
        std::vector<bool> seen(n, false);
        std::deque<int> qd{e.dst};
        seen[e.dst] = true;
        while (!qd.empty()) {
            int v = qd.front();
            qd.pop_front();
            for (int oj : out[v]) {
                if (seen[edges[oj].dst]) continue;
                seen[edges[oj].dst] = true;
                via[edges[oj].dst] = oj;
                qd.push_back(edges[oj].dst);
            }
        }
        if (!seen[e.src]) continue;
        std::vector<int> cycle{ei}, back;
        for (int v = e.src; v != e.dst;) {
            int vj = via[v];
            if (vj == -1) break;
            back.push_back(vj);
            v = edges[vj].src;
        }
        std::reverse(back.begin(), back.end());
        cycle.insert(cycle.end(), back.begin(), back.end());
        if (!best || cycle.size() < best->size()) best = std::move(cycle);
    }
    return best;
}

// Longest-path potentials at a lambda with no positive cycle; pi[u]+w <= pi[v]
// for every edge after convergence.
std::vector<long long> potentials(int n, const std::vector<WeightedEdge>& edges,
                                  long long p, long long q) {
    std::vector<long long> pi(n, 0);
    for (int pass = 0; pass <= n; ++pass) {
        bool updated = false;
        for (const auto& e : edges) {
            long long w = q * e.time_w - p * e.in_w;
            if (pi[e.src] + w > pi[e.dst]) {
                pi[e.dst] = pi[e.src] + w;
                updated = true;
            }
        }
        if (!updated) return pi;
    }
    throw FaseError("internal-inconsistency", "potential computation did not converge");
}

// Shortest zero-weight cycle through an in-edge at the exact ratio p/q.
// Tight edges (pi[u]+w == pi[v]) carry exactly the zero-weight cycles.
std::optional<std::vector<int>> tight_cycle(int n, const std::vector<WeightedEdge>& edges,
                                            long long p, long long q) {
    auto pi = potentials(n, edges, p, q);
    std::vector<int> tight;
    for (int ei = 0; ei < static_cast<int>(edges.size()); ++ei) {
        const auto& e = edges[ei];
        long long w = q * e.time_w - p * e.in_w;
        if (pi[e.src] + w == pi[e.dst]) tight.push_back(ei);
    }
    std::vector<std::vector<int>> adj(n);
    for (int ei : tight) adj[edges[ei].src].push_back(edges[ei].dst);
    auto comp = strongly_connected_components(n, adj);

    std::optional<std::vector<int>> best;
    for (int ei : tight) {
        const auto& e = edges[ei];
        if (e.in_w == 0 || comp[e.src] != comp[e.dst]) continue;
        // BFS back along tight edges within the component
        std::vector<std::vector<int>> out(n);
        for (int tj : tight) {
            const auto& t = edges[tj];
            if (comp[t.src] == comp[e.src] && comp[t.dst] == comp[e.src])
                out[t.src].push_back(tj);
        }
        std::vector<int> via(n, -1);
        std::vector<bool> seen(n, false);
        std::deque<int> qd{e.dst};
        seen[e.dst] = true;
        while (!qd.empty()) {
            int v = qd.front();
            qd.pop_front();
            for (int oj : out[v]) {
                int w2 = edges[oj].dst;
                if (!seen[w2]) {
                    seen[w2] = true;
                    via[w2] = oj;
                    qd.push_back(w2);
                }
            }
        }
        if (!seen[e.src]) continue;
        std::vector<int> cycle{ei};
        std::vector<int> back;
        for (int v = e.src; v != e.dst;) {
            int vj = via[v];
            if (vj == -1) break;  // e.src == e.dst self-loop
            back.push_back(vj);
            v = edges[vj].src;
        }
        std::reverse(back.begin(), back.end());
        cycle.insert(cycle.end(), back.begin(), back.end());
        if (!best || cycle.size() < best->size()) best = std::move(cycle);
    }
    return best;
}

CycleWitness witness_from(const std::vector<int>& cycle,
                          const std::vector<WeightedEdge>& edges,
                          CycleWitness::Class cls) {
    CycleWitness w;
    w.cls = cls;
    for (int ei : cycle) {
        w.edges.push_back(edges[ei].orig);
        w.nodes.push_back(edges[ei].src);
        w.time_steps += edges[ei].time_w;
        w.ins += edges[ei].in_w;
    }
    return w;
}

}  // namespace

std::optional<RatioResult> max_ratio_cycle(int node_count,
                                           const std::vector<WeightedEdge>& edges) {
    long long total_time = 0;
    for (const auto& e : edges) total_time += e.time_w;

    // cycles with time but no in would make the ratio unbounded
    if (auto cyc = in_free_time_cycle(node_count, edges)) {
        CycleWitness w = witness_from(*cyc, edges, CycleWitness::Class::Unbalanced);
        std::string nodes;
        for (int v : w.nodes) nodes += " " + std::to_string(v);
        throw FaseError("unbalanced-cycle",
                        "cycle with " + std::to_string(w.time_steps) +
                            " time steps and no in actions (nodes" + nodes + ")");
    }

    // Stern-Brocot parametric search: a positive cycle at lambda exists iff
    // lambda < lambda*; a tight cycle through an in-edge exists iff
    // lambda == lambda*.
    if (!has_positive_cycle(node_count, edges, 0, 1)) {
        auto cyc = tight_cycle(node_count, edges, 0, 1);
        if (!cyc) return std::nullopt;
        return RatioResult{Rational(0, 1),
                           witness_from(*cyc, edges, CycleWitness::Class::Bad), true};
    }
    long long lo_n = 0, lo_d = 1;               // lambda* > lo
    long long hi_n = total_time + 1, hi_d = 1;  // lambda* < hi
    for (int iter = 0; iter < 1000000; ++iter) {
        long long mid_n = lo_n + hi_n, mid_d = lo_d + hi_d;
        if (has_positive_cycle(node_count, edges, mid_n, mid_d)) {
            lo_n = mid_n;
            lo_d = mid_d;
        } else if (auto cyc = tight_cycle(node_count, edges, mid_n, mid_d)) {
            RatioResult r{Rational(mid_n, mid_d),
                          witness_from(*cyc, edges, CycleWitness::Class::Bad), true};
            if (Rational(r.witness.time_steps, r.witness.ins) != r.factor)
                throw FaseError("internal-inconsistency",
                                "ratio witness does not attain the computed factor");
            return r;
        } else {
            hi_n = mid_n;
            hi_d = mid_d;
        }
    }
    throw FaseError("internal-inconsistency", "parametric ratio search did not converge");
}

// ------------------------------------------ supremum of time-path length

namespace {

struct PathEdge {
    int src;
    int dst;
    int w;     // 1 for counted time steps
    int orig;  // caller's edge id
};

struct SupPath {
    bool finite = true;
    long long value = 0;
    std::vector<int> path;   // edge ids (into the PathEdge list) when finite
    std::vector<int> cycle;  // edge ids of a reachable positive cycle otherwise
};

SupPath sup_time_path(int n, int start, const std::vector<PathEdge>& edges) {
    std::vector<std::vector<int>> out(n);
    for (int ei = 0; ei < static_cast<int>(edges.size()); ++ei)
        out[edges[ei].src].push_back(ei);

    std::vector<bool> reach(n, false);
    std::deque<int> q{start};
    reach[start] = true;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int ei : out[v])
            if (!reach[edges[ei].dst]) {
                reach[edges[ei].dst] = true;
                q.push_back(edges[ei].dst);
            }
    }

    std::vector<std::vector<int>> adj(n);
    for (const auto& e : edges)
        if (reach[e.src]) adj[e.src].push_back(e.dst);
    auto comp = strongly_connected_components(n, adj);

    // a reachable weighted edge inside one component makes the supremum infinite
    for (int ei = 0; ei < static_cast<int>(edges.size()); ++ei) {
        const auto& e = edges[ei];
        if (e.w > 0 && reach[e.src] && comp[e.src] == comp[e.dst]) {
            SupPath r;
            r.finite = false;
            std::vector<int> kept;
            for (int j = 0; j < static_cast<int>(edges.size()); ++j)
                if (reach[edges[j].src]) kept.push_back(j);
            // reuse Edge-based BFS shape: inline shortest path dst -> src
            std::vector<std::vector<int>> couts(n);
            for (int j : kept)
                if (comp[edges[j].src] == comp[e.src] && comp[edges[j].dst] == comp[e.src])
                    couts[edges[j].src].push_back(j);
            std::vector<int> via(n, -1);
            std::vector<bool> seen(n, false);
            std::deque<int> qd{e.dst};
            seen[e.dst] = true;
            while (!qd.empty()) {
                int v = qd.front();
                qd.pop_front();
                for (int oj : couts[v]) {
                    int w2 = edges[oj].dst;
                    if (!seen[w2]) {
                        seen[w2] = true;
                        via[w2] = oj;
                        qd.push_back(w2);
                    }
                }
            }
            r.cycle.push_back(ei);
            std::vector<int> back;
            for (int v = e.src; v != e.dst;) {
                int vj = via[v];
                if (vj == -1) break;
                back.push_back(vj);
                v = edges[vj].src;
            }
            std::reverse(back.begin(), back.end());
            r.cycle.insert(r.cycle.end(), back.begin(), back.end());
            return r;
        }
    }

    // longest path over the condensation; all intra-component edges weigh 0
    int ncomp = 0;
    for (int v = 0; v < n; ++v)
        if (reach[v]) ncomp = std::max(ncomp, comp[v] + 1);
    std::vector<long long> val(ncomp, 0);
    std::vector<int> choice(ncomp, -1);
    // component ids increase towards sources, so increasing order is
    // successors-first
    for (int c = 0; c < ncomp; ++c) {
        for (int ei = 0; ei < static_cast<int>(edges.size()); ++ei) {
            const auto& e = edges[ei];
            if (!reach[e.src] || comp[e.src] != c || comp[e.dst] == c) continue;
            long long cand = e.w + val[comp[e.dst]];
            if (cand > val[c]) {
                val[c] = cand;
                choice[c] = ei;
            }
        }
    }

    SupPath r;
    r.value = val[comp[start]];
    // reconstruct: walk within the component to the chosen exit edge, repeat
    int cur = start;
    while (choice[comp[cur]] != -1) {
        int ei = choice[comp[cur]];
        const auto& e = edges[ei];
        // BFS cur -> e.src within the component
        std::vector<int> via(n, -1);
        std::vector<bool> seen(n, false);
        std::deque<int> qd{cur};
        seen[cur] = true;
        while (!qd.empty()) {
            int v = qd.front();
            qd.pop_front();
            for (int oj : out[v]) {
                const auto& o = edges[oj];
                if (comp[o.dst] != comp[cur] || seen[o.dst]) continue;
                seen[o.dst] = true;
                via[o.dst] = oj;
                qd.push_back(o.dst);
            }
        }
        std::vector<int> walk;
        for (int v = e.src; v != cur;) {
            int vj = via[v];
            if (vj == -1) break;
            walk.push_back(vj);
            v = edges[vj].src;
        }
        std::reverse(walk.begin(), walk.end());
        r.path.insert(r.path.end(), walk.begin(), walk.end());
        r.path.push_back(ei);
        cur = e.dst;
    }
    return r;
}

}  // namespace

// ------------------------------------------------- asymptotic factor

RatioResult asymptotic_factor(const Rrts& r) {
    if (auto cat = detect_catastrophic(r))
        throw FaseError("catastrophic-present",
                        "process has a catastrophic cycle; asymptotic factor undefined");
    const StateGraph& g = r.graph;

    // full-step subgraph, restricted to the region reachable inside it
    std::vector<std::vector<int>> out(g.node_count());
    std::vector<int> sub_edges;
    for (int ei = 0; ei < g.edge_count(); ++ei) {
        const EdgeLabel& l = g.edges[ei].label;
        if (l.is_time() && !l.full) continue;
        sub_edges.push_back(ei);
        out[g.edges[ei].src].push_back(ei);
    }
    std::vector<bool> reach(g.node_count(), false);
    std::deque<int> q{g.initial};
    reach[g.initial] = true;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int ei : out[v])
            if (!reach[g.edges[ei].dst]) {
                reach[g.edges[ei].dst] = true;
                q.push_back(g.edges[ei].dst);
            }
    }

    std::vector<WeightedEdge> wedges;
    for (int ei : sub_edges) {
        const Edge& e = g.edges[ei];
        if (!reach[e.src]) continue;
        WeightedEdge we;
        we.src = e.src;
        we.dst = e.dst;
        we.time_w = e.label.is_time() ? 1 : 0;
        we.in_w = e.label.is(kIn) ? 1 : 0;
        we.orig = ei;
        wedges.push_back(we);
    }
    auto res = max_ratio_cycle(g.node_count(), wedges);
    if (!res) return RatioResult{Rational(0, 1), CycleWitness{}, true};
    // attach terms and out-counts to the witness
    CycleWitness& w = res->witness;
    w.outs = 0;
    w.steps.clear();
    std::vector<int> nodes;
    for (int ei : w.edges) {
        const Edge& e = g.edges[ei];
        nodes.push_back(e.src);
        if (e.label.is(kOut)) ++w.outs;
        w.steps.push_back({g.nodes[e.src], e.label, g.nodes[e.dst]});
    }
    w.nodes = std::move(nodes);
    return *res;
}

// --------------------------------------------- response performance

RpResult response_performance(const Rrts& r, int n, int cap) {
    if (n < 1) throw FaseError("validation", "response performance is defined for n >= 1");
    const StateGraph& g = r.graph;
    int in_idx = g.alphabet.index_of(kIn);
    int out_idx = g.alphabet.index_of(kOut);
    auto refuses_in = [&](const EdgeLabel& l) {
        return in_idx < 0 || l.refusal.contains(in_idx);
    };
    auto refuses_out = [&](const EdgeLabel& l) {
        return out_idx < 0 || l.refusal.contains(out_idx);
    };

    long long aug_cap = static_cast<long long>(cap) * (n + 1) * (n + 2) / 2;

    struct AugState {
        int node;
        int i;
        int o;
    };
    std::vector<AugState> states;
    std::vector<long long> index(static_cast<size_t>(g.node_count()) * (n + 1) * (n + 1),
                                 -1);
    auto code = [&](int v, int i, int o) {
        return (static_cast<long long>(v) * (n + 1) + i) * (n + 1) + o;
    };
    auto state_of = [&](int v, int i, int o) {
        long long c = code(v, i, o);
        if (index[c] != -1) return static_cast<int>(index[c]);
        if (static_cast<long long>(states.size()) >= aug_cap)
            throw FaseError("state-cap", "augmented search exceeds cap");
        index[c] = static_cast<long long>(states.size());
        states.push_back({v, i, o});
        return static_cast<int>(index[c]);
    };

    std::vector<PathEdge> aedges;
    std::deque<int> q{state_of(g.initial, 0, 0)};
    std::vector<bool> expanded;
    while (!q.empty()) {
        int s = q.front();
        q.pop_front();
        if (static_cast<int>(expanded.size()) < s + 1) expanded.resize(s + 1, false);
        if (expanded[s]) continue;
        expanded[s] = true;
        AugState st = states[s];
        for (int ei : g.out_edges[st.node]) {
            const Edge& e = g.edges[ei];
            const EdgeLabel& l = e.label;
            int ni = st.i, no = st.o, w = 0;
            if (l.is_time()) {
                if (st.i < n && !refuses_in(l)) continue;
                if (st.o < st.i && !refuses_out(l)) continue;
                if (st.i == n && st.o == n) continue;
                w = 1;
            } else if (l.is(kIn)) {
                if (st.i >= n) continue;
                ni = st.i + 1;
            } else if (l.is(kOut)) {
                if (st.o >= st.i) continue;
                no = st.o + 1;
            }  // tau: free
            bool fresh = index[code(e.dst, ni, no)] == -1;
            int t = state_of(e.dst, ni, no);
            if (fresh) q.push_back(t);
            aedges.push_back({s, t, w, ei});
        }
    }

    SupPath sp = sup_time_path(static_cast<int>(states.size()),
                               state_of(g.initial, 0, 0), aedges);

    RpResult out;
    if (!sp.finite) {
        out.perf.finite = false;
        CycleWitness w;
        w.cls = CycleWitness::Class::Catastrophic;
        for (int ai : sp.cycle) {
            int ei = aedges[ai].orig;
            const Edge& e = g.edges[ei];
            w.edges.push_back(ei);
            w.nodes.push_back(e.src);
            if (e.label.is_time()) ++w.time_steps;
            w.steps.push_back({g.nodes[e.src], e.label, g.nodes[e.dst]});
        }
        out.perf.witness = std::move(w);
        return out;
    }
    out.perf.finite = true;
    out.perf.value = sp.value;
    CriticalPathReport rep;
    rep.n = n;
    rep.duration = sp.value;
    int s = state_of(g.initial, 0, 0);
    rep.nodes.push_back(states[s].node);
    for (int ai : sp.path) {
        const auto& ae = aedges[ai];
        const Edge& e = g.edges[ae.orig];
        rep.edges.push_back(ae.orig);
        rep.nodes.push_back(states[ae.dst].node);
        rep.counters.emplace_back(states[ae.dst].i, states[ae.dst].o);
        rep.steps.push_back({g.nodes[e.src], e.label, g.nodes[e.dst]});
    }
    out.path = std::move(rep);
    return out;
}

// --------------------------------------------------- test performance

PerfResult performance(TermPtr p, TermPtr o, int cap) {
    TermPtr system = compose(p, o);
    StateGraph g = build_rts(system, cap);

    std::vector<PathEdge> edges;
    for (int ei = 0; ei < g.edge_count(); ++ei) {
        const Edge& e = g.edges[ei];
        if (e.label.is(kOmega)) continue;           // only omega-free behaviour counts
        if (e.label.is_time() && !e.label.full) continue;  // discrete traces: full steps
        edges.push_back({e.src, e.dst, e.label.is_time() ? 1 : 0, ei});
    }
    SupPath sp = sup_time_path(g.node_count(), g.initial, edges);

    PerfResult out;
    if (!sp.finite) {
        out.finite = false;
        CycleWitness w;
        for (int ai : sp.cycle) {
            int ei = edges[ai].orig;
            const Edge& e = g.edges[ei];
            w.edges.push_back(ei);
            w.nodes.push_back(e.src);
            if (e.label.is_time()) ++w.time_steps;
            if (e.label.is(kIn)) ++w.ins;
            if (e.label.is(kOut)) ++w.outs;
            w.steps.push_back({g.nodes[e.src], e.label, g.nodes[e.dst]});
        }
        w.cls = (w.ins == 0 && w.outs == 0) ? CycleWitness::Class::Catastrophic
                                            : CycleWitness::Class::Bad;
        out.witness = std::move(w);
        return out;
    }
    out.value = sp.value;
    return out;
}

bool satisfies(TermPtr p, TermPtr o, long long d, int cap) {
    PerfResult r = performance(p, o, cap);
    return r.finite && r.value <= d;
}

}  // namespace fase
