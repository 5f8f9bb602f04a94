#include "doctest.h"

#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "fase/corpus.hpp"
#include "fase/graph.hpp"
#include "fase/parser.hpp"

#include "support/random_terms.hpp"

using namespace fase;

namespace {

int count_time_edges(const StateGraph& g) {
    int c = 0;
    for (const Edge& e : g.edges)
        if (e.label.is_time()) ++c;
    return c;
}

void check_invariants(const StateGraph& g) {
    // at most one time edge per node; out_edges consistent with edges
    for (int v = 0; v < g.node_count(); ++v) {
        int time_edges = 0;
        for (int ei : g.out_edges[v]) {
            CHECK(g.edges[ei].src == v);
            if (g.edges[ei].label.is_time()) ++time_edges;
        }
        CHECK(time_edges <= 1);
    }
    // all nodes reachable (BFS construction guarantees it)
    std::set<int> reached{g.initial};
    bool grew = true;
    while (grew) {
        grew = false;
        for (const Edge& e : g.edges)
            if (reached.count(e.src) && !reached.count(e.dst)) {
                reached.insert(e.dst);
                grew = true;
            }
    }
    CHECK(static_cast<int>(reached.size()) == g.node_count());
}

}  // namespace

TEST_CASE("build_rts: nil is one node with a full time self-loop") {
    StateGraph g = build_rts(mk_nil());
    CHECK(g.node_count() == 1);
    REQUIRE(g.edge_count() == 1);
    CHECK(g.edges[0].label.is_time());
    CHECK(g.edges[0].label.full);
    CHECK(g.edges[0].dst == g.initial);
}

TEST_CASE("build_rts: rec x. a.x has the lazy and the aged state") {
    StateGraph g = build_rts(parse("rec x. a.x"));
    CHECK(g.node_count() == 2);
    int actions = 0;
    for (const Edge& e : g.edges)
        if (!e.label.is_time()) {
            CHECK(e.label.action == ActionLabel::visible("a"));
            ++actions;
        }
    CHECK(actions == 2);  // a from both states, back to the lazy root
    CHECK(count_time_edges(g) == 2);  // lazy -> aged, aged self-loop
    check_invariants(g);
}

TEST_CASE("build_rts: _tau.nil has no time edge at the root") {
    StateGraph g = build_rts(parse("_tau.nil"));
    CHECK(g.node_count() == 2);
    bool root_time = false;
    for (int ei : g.out_edges[g.initial])
        if (g.edges[ei].label.is_time()) root_time = true;
    CHECK_FALSE(root_time);
    REQUIRE(g.out_edges[g.initial].size() == 1);
    CHECK(g.edges[g.out_edges[g.initial][0]].label.is_tau());
}

TEST_CASE("build_rts: state cap") {
    try {
        static_cast<void>(build_rts(gen_fifo(3), 3));
        FAIL("expected state-cap");
    } catch (const FaseError& e) {
        CHECK(e.code() == "state-cap");
    }
}

TEST_CASE("validate_response") {
    StateGraph g = build_rts(parse("rec x. in.out.x"));
    BalanceMap b = validate_response(g);
    CHECK(b[g.initial] == 0);
    std::set<int> seen(b.begin(), b.end());
    CHECK(seen == std::set<int>{0, 1});

    try {
        validate_response(build_rts(parse("out.nil")));
        FAIL("expected not-response-process");
    } catch (const FaseError& e) {
        CHECK(e.code() == "not-response-process");
    }
    try {
        validate_response(build_rts(parse("in.a.nil")));
        FAIL("expected not-response-process");
    } catch (const FaseError& e) {
        CHECK(e.code() == "not-response-process");
    }
}

TEST_CASE("validate_response on fifo(1)") {
    StateGraph g = build_rts(gen_fifo(1));
    BalanceMap b = validate_response(g);
    std::set<int> seen(b.begin(), b.end());
    CHECK(seen == std::set<int>{0, 1, 2, 3});
}

TEST_CASE("build_rrts: rec x. in.out.x") {
    Rrts r = build_rrts(parse("rec x. in.out.x"));
    CHECK(r.graph.node_count() == 4);
    CHECK(r.graph.kind == StateGraph::Kind::RRTS);
    int in_idx = r.graph.alphabet.index_of(kIn);
    int out_idx = r.graph.alphabet.index_of(kOut);
    for (const Edge& e : r.graph.edges) {
        if (!e.label.is_time()) continue;
        // reduced labels: full at lazy states, missing the urgent action at aged ones
        if (!e.label.full)
            CHECK(e.label.refusal.count() == 1);
        else
            CHECK((e.label.refusal.contains(in_idx) && e.label.refusal.contains(out_idx)));
    }
    check_invariants(r.graph);
}

TEST_CASE("build_rrts rejects non-response processes") {
    try {
        static_cast<void>(build_rrts(parse("a.nil")));
        FAIL("expected not-response-process");
    } catch (const FaseError& e) {
        CHECK(e.code() == "not-response-process");
    }
}

TEST_CASE("rrts agrees with rts on nodes and fullness") {
    for (TermPtr p : {gen_fifo(1), gen_pipe(1), gen_buff(1)}) {
        StateGraph rts = build_rts(p);
        Rrts r = build_rrts(p);
        REQUIRE(rts.node_count() == r.graph.node_count());
        REQUIRE(rts.edge_count() == r.graph.edge_count());
        for (int ei = 0; ei < rts.edge_count(); ++ei) {
            const EdgeLabel& a = rts.edges[ei].label;
            const EdgeLabel& b = r.graph.edges[ei].label;
            CHECK(a.is_time() == b.is_time());
            if (a.is_time()) {
                CHECK(a.full == b.full);
                CHECK(b.refusal.count() <= 2);
            }
        }
    }
}

TEST_CASE("make_user") {
    CHECK(make_user(1) == parse("_in._out._omega.nil"));
    CHECK(make_user(2) == mk_par(make_user(1), SyncSet::finite({kOmega}), make_user(1)));
    CHECK_THROWS_AS(static_cast<void>(make_user(0)), FaseError);

    SemanticsContext ctx(sort_alphabet(make_user(1)));
    auto ss = ctx.action_successors(make_user(1));
    REQUIRE(ss.size() == 1);
    CHECK(ss[0].label == ActionLabel::visible(kIn));
    CHECK(ss[0].target == parse("_out._omega.nil"));
}

TEST_CASE("compose and full steps against U_1") {
    TermPtr p = parse("rec x. in.out.x");
    TermPtr c = compose(p, make_user(1));
    REQUIRE(c->kind == TermKind::Par);
    CHECK(c->sync == SyncSet::all_except({kOmega}));

    SemanticsContext ctx(sort_alphabet(c));
    // initially the process side is lazy, so the composition can idle fully
    auto ts = ctx.time_step(c);
    REQUIRE(ts.has_value());
    CHECK(ctx.is_full(*ts));

    // after in,out only urgent omega remains; no full step
    TermPtr cur = c;
    for (const std::string& want : {kIn, kOut}) {
        bool found = false;
        for (const auto& s : ctx.action_successors(cur))
            if (s.label == ActionLabel::visible(want)) {
                cur = s.target;
                found = true;
                break;
            }
        REQUIRE(found);
    }
    auto ts2 = ctx.time_step(cur);
    CHECK((!ts2.has_value() || !ctx.is_full(*ts2)));
}

TEST_CASE("graph invariants on random response processes") {
    fase::testing::TermGen gen(555);
    for (int i = 0; i < 25; ++i) {
        TermPtr p = gen.next_response();
        Rrts r = build_rrts(p, 30);
        check_invariants(r.graph);
        CHECK(r.balance[r.graph.initial] == 0);
        for (int b : r.balance) CHECK(b >= 0);
    }
}

TEST_CASE("dot export") {
    std::string dot = to_dot(build_rts(mk_nil()));
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("t:FULL") != std::string::npos);
    std::string verbose = to_dot(build_rts(parse("a.nil")), true);
    CHECK(verbose.find("a.nil") != std::string::npos);
}

TEST_CASE("json export schema") {
    Rrts r = build_rrts(gen_fifo(1));
    auto j = nlohmann::json::parse(to_json(r.graph));
    CHECK(j["kind"] == "rrts");
    CHECK(j["stats"]["n"].get<int>() >= 4);
    CHECK(j["stats"]["n"].get<int>() == static_cast<int>(j["nodes"].size()));
    CHECK(j["stats"]["e"].get<int>() == static_cast<int>(j["edges"].size()));
    CHECK(j["initial"] == 0);
    for (const auto& e : j["edges"]) {
        CHECK(e.contains("src"));
        CHECK(e.contains("dst"));
        std::string kind = e["label"]["kind"];
        CHECK((kind == "action" || kind == "time"));
        if (kind == "time") CHECK(e["label"].contains("full"));
    }
}
