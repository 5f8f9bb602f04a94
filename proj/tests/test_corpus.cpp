#include "doctest.h"

#include <algorithm>
#include <set>
#include <string>

#include "fase/analysis.hpp"
#include "fase/corpus.hpp"
#include "fase/parser.hpp"

using namespace fase;

namespace {

bool has_tau_edge(const StateGraph& g) {
    for (const Edge& e : g.edges)
        if (e.label.is_tau()) return true;
    return false;
}

std::set<std::string> visible_labels(const StateGraph& g) {
    std::set<std::string> out;
    for (const Edge& e : g.edges)
        if (e.label.kind == EdgeLabel::Kind::Action && e.label.action.is_visible())
            out.insert(e.label.action.name);
    return out;
}

}  // namespace

TEST_CASE("generators validate and are response processes") {
    for (int n = 1; n <= 3; ++n) {
        for (TermPtr p : {gen_fifo(n), gen_pipe(n), gen_buff(n)}) {
            ValidationReport rep = validate(p);
            CHECK(rep.closed);
            CHECK(rep.guarded);
            CHECK(rep.finite_control);
            StateGraph g = build_rts(p);
            CHECK(g.node_count() < 50000);
            CHECK_NOTHROW(static_cast<void>(validate_response(g)));
            CHECK(visible_labels(g) == std::set<std::string>{kIn, kOut});
        }
    }
}

TEST_CASE("fifo is sequential and tau-free") {
    for (int n = 1; n <= 3; ++n) {
        StateGraph g = build_rts(gen_fifo(n));
        CHECK_FALSE(has_tau_edge(g));
    }
    CHECK(term_sort(gen_fifo(1)) == std::set<std::string>{kIn, kOut});
}

TEST_CASE("pipe and buff have internal overhead") {
    CHECK(has_tau_edge(build_rts(gen_pipe(1))));
    CHECK(has_tau_edge(build_rts(gen_buff(1))));
}

TEST_CASE("fifo capacity is N+2") {
    for (int n = 1; n <= 3; ++n) {
        // longest in-run from the initial state is exactly N+2
        StateGraph g = build_rts(gen_fifo(n));
        int runs = 0, node = g.initial;
        while (true) {
            int next = -1;
            for (int ei : g.out_edges[node])
                if (g.edges[ei].label.is(kIn)) next = g.edges[ei].dst;
            if (next == -1) break;
            ++runs;
            node = next;
        }
        CHECK(runs == n + 2);
    }
}

TEST_CASE("pipe transfers a token end to end") {
    // one in must eventually enable exactly one out; capacity is N+2
    TermPtr p = gen_pipe(1);
    Rrts r = build_rrts(p);
    // balance never exceeds capacity
    int max_balance = 0;
    for (int b : r.balance) max_balance = std::max(max_balance, b);
    CHECK(max_balance == 3);
}

TEST_CASE("buff capacity is N+2") {
    for (int n = 1; n <= 2; ++n) {
        Rrts r = build_rrts(gen_buff(n));
        int max_balance = 0;
        for (int b : r.balance) max_balance = std::max(max_balance, b);
        CHECK(max_balance == n + 2);
    }
}

TEST_CASE("generator surface syntax round-trips") {
    for (TermPtr p : {gen_fifo(1), gen_pipe(1), gen_buff(1),
                      gen_pathological("tau_divergent"),
                      gen_pathological("urgent_deadlock"),
                      gen_pathological("unbalanced")}) {
        std::string printed = print_term(p);
        CHECK(print_term(parse(printed)) == printed);
    }
    // fifo has no binder collisions, so the reparse is structurally identical
    CHECK(parse(print_term(gen_fifo(1))) == gen_fifo(1));
}

TEST_CASE("pathological terms") {
    CHECK(gen_pathological("tau_divergent") ==
          parse("in.out.((rec X. a.X)[a->tau])"));
    try {
        static_cast<void>(validate_response(build_rts(gen_pathological("unbalanced"))));
        FAIL("expected not-response-process");
    } catch (const FaseError& e) {
        CHECK(e.code() == "not-response-process");
    }
    CHECK_THROWS_AS(static_cast<void>(gen_pathological("nope")), FaseError);
    CHECK_THROWS_AS(static_cast<void>(gen_fifo(0)), FaseError);
    CHECK_THROWS_AS(static_cast<void>(gen_buff(0)), FaseError);
}
