#include "fase/corpus.hpp"

#include <functional>
#include <map>
#include <vector>

#include "fase/error.hpp"

namespace fase {

namespace {

TermPtr pre(const std::string& a, TermPtr cont, bool urgent = false) {
    return mk_prefix(ActionLabel::visible(a), urgent, cont);
}

// Nested-rec construction of an explicit state machine: each state becomes a
// rec binder on first visit; back references become variables.
class StateMachineBuilder {
public:
    using Branches = std::vector<std::pair<std::string, int>>;  // (action, next state)

    explicit StateMachineBuilder(std::function<Branches(int)> branches,
                                 std::string var_prefix = "Q")
        : branches_(std::move(branches)), var_prefix_(std::move(var_prefix)) {}

    TermPtr build(int start) { return term_for(start); }

private:
    TermPtr term_for(int state) {
        auto bound = env_.find(state);
        if (bound != env_.end()) return mk_var(bound->second);
        std::string var = var_prefix_ + std::to_string(state);
        env_.emplace(state, var);
        TermPtr body = nullptr;
        std::map<int, TermPtr> targets;  // expand each successor state once
        for (const auto& [action, next] : branches_(state)) {
            auto t = targets.find(next);
            if (t == targets.end()) t = targets.emplace(next, term_for(next)).first;
            TermPtr branch = pre(action, t->second);
            body = body ? mk_sum(body, branch) : branch;
        }
        env_.erase(state);
        if (!body) body = mk_nil();
        return mk_rec(var, body);
    }

    std::function<Branches(int)> branches_;
    std::string var_prefix_;
    std::map<int, std::string> env_;
};

}  // namespace

TermPtr gen_fifo(int n) {
    if (n < 1) throw FaseError("validation", "buffer family needs N >= 1");
    int cap = n + 2;  // states 0..cap count the stored items
    StateMachineBuilder b([cap](int j) {
        StateMachineBuilder::Branches out;
        if (j < cap) out.emplace_back(kIn, j + 1);
        if (j > 0) out.emplace_back(kOut, j - 1);
        return out;
    });
    return b.build(0);
}

TermPtr gen_pipe(int n) {
    if (n < 1) throw FaseError("validation", "buffer family needs N >= 1");
    int cells = n + 2;
    auto link = [](int i) { return "l" + std::to_string(i); };

    std::vector<std::pair<std::string, ActionLabel>> hide;

    TermPtr chain = nullptr;
    for (int i = 0; i < cells; ++i) {
        std::string x = "X" + std::to_string(i);
        TermPtr cell_tpl = mk_rec(x, pre(kIn, pre(kOut, mk_var(x))));
        std::vector<std::pair<std::string, ActionLabel>> ren;
        if (i > 0) ren.emplace_back(kIn, ActionLabel::visible(link(i)));
        if (i < cells - 1) ren.emplace_back(kOut, ActionLabel::visible(link(i + 1)));
        TermPtr cell = ren.empty() ? cell_tpl : mk_relabel(cell_tpl, Relabeling::make(ren));
        chain = chain ? mk_par(chain, SyncSet::finite({link(i)}), cell) : cell;
    }
    for (int i = 1; i < cells; ++i) hide.emplace_back(link(i), ActionLabel::tau());
    return mk_relabel(chain, Relabeling::make(hide));
}

TermPtr gen_buff(int n) {
    if (n < 1) throw FaseError("validation", "buffer family needs N >= 1");
    auto w = [](int i) { return "w" + std::to_string(i); };
    auto r = [](int i) { return "r" + std::to_string(i); };

    // MEM: n interleaved one-slot cells
    TermPtr mem = nullptr;
    for (int i = 0; i < n; ++i) {
        TermPtr slot = mk_rec("M" + std::to_string(i), pre(w(i), pre(r(i), mk_var("M" + std::to_string(i)))));
        mem = mem ? mk_par(mem, SyncSet::finite({}), slot) : slot;
    }

    // BC tracks (hand, write/read pointers, stored count, latch, total held).
    // A single explicit product machine would blow up when written as nested
    // recs (back references can only reach DFS ancestors, everything else is
    // re-expanded), so BC is the synchronized product of chain/ring machines,
    // each of which nests linearly:
    //   hand   -- one accepted value not yet written to MEM
    //   wp/rp  -- circular write/read pointers selecting the MEM slot
    //   stored -- number of values currently in MEM
    //   latch  -- the oldest undelivered value, output whenever possible
    //   held   -- hand + stored + latch, bounding acceptance by capacity N+2
    std::vector<std::string> ws, rs;
    for (int i = 0; i < n; ++i) {
        ws.push_back(w(i));
        rs.push_back(r(i));
    }

    TermPtr hand_writes = nullptr;
    for (int i = 0; i < n; ++i) {
        TermPtr branch = pre(w(i), mk_var("H"));
        hand_writes = hand_writes ? mk_sum(hand_writes, branch) : branch;
    }
    TermPtr hand = mk_rec("H", pre(kIn, hand_writes));

    TermPtr wp = StateMachineBuilder([&, n](int i) {
                     return StateMachineBuilder::Branches{{w(i), (i + 1) % n}};
                 }, "W").build(0);
    TermPtr rp = StateMachineBuilder([&, n](int i) {
                     return StateMachineBuilder::Branches{{r(i), (i + 1) % n}};
                 }, "R").build(0);

    StateMachineBuilder stored_b([&, n](int j) {
        StateMachineBuilder::Branches out;
        for (int i = 0; i < n; ++i) {
            if (j < n) out.emplace_back(w(i), j + 1);
            if (j > 0) out.emplace_back(r(i), j - 1);
        }
        return out;
    }, "S");
    TermPtr stored = stored_b.build(0);

    StateMachineBuilder latch_b([&, n](int j) {
        StateMachineBuilder::Branches out;
        if (j == 0)
            for (int i = 0; i < n; ++i) out.emplace_back(r(i), 1);
        else
            out.emplace_back(kOut, 0);
        return out;
    }, "L");
    TermPtr latch = latch_b.build(0);

    int cap = n + 2;
    StateMachineBuilder held_b([cap](int j) {
        StateMachineBuilder::Branches out;
        if (j < cap) out.emplace_back(kIn, j + 1);
        if (j > 0) out.emplace_back(kOut, j - 1);
        return out;
    }, "C");
    TermPtr held = held_b.build(0);

    // Serializer: BC is centralised, so it engages in one action at a time
    // and every action leaves it fresh again. The token below takes part in
    // every controller action; firing any action resets it, which restores
    // the one-fresh-delay-per-action timing of a single sequential machine.
    std::vector<std::string> all_actions{kIn, kOut};
    all_actions.insert(all_actions.end(), ws.begin(), ws.end());
    all_actions.insert(all_actions.end(), rs.begin(), rs.end());
    TermPtr token_body = nullptr;
    for (const auto& a : all_actions) {
        TermPtr branch = pre(a, mk_var("T"));
        token_body = token_body ? mk_sum(token_body, branch) : branch;
    }
    TermPtr token = mk_rec("T", token_body);

    TermPtr controller = hand;
    controller = mk_par(controller, SyncSet::finite(ws), wp);
    controller = mk_par(controller, SyncSet::finite(ws), stored);
    controller = mk_par(controller, SyncSet::finite(rs), rp);
    controller = mk_par(controller, SyncSet::finite(rs), latch);
    controller = mk_par(controller, SyncSet::finite({kIn, kOut}), held);
    controller = mk_par(controller, SyncSet::finite(all_actions), token);

    std::vector<std::string> sync;
    std::vector<std::pair<std::string, ActionLabel>> hide;
    for (int i = 0; i < n; ++i) {
        sync.push_back(w(i));
        sync.push_back(r(i));
        hide.emplace_back(w(i), ActionLabel::tau());
        hide.emplace_back(r(i), ActionLabel::tau());
    }
    return mk_relabel(mk_par(controller, SyncSet::finite(sync), mem),
                      Relabeling::make(hide));
}

TermPtr gen_pathological(const std::string& name) {
    if (name == "tau_divergent") {
        TermPtr loop = mk_relabel(mk_rec("X", pre("a", mk_var("X"))),
                                  Relabeling::make({{"a", ActionLabel::tau()}}));
        return pre(kIn, pre(kOut, loop));
    }
    if (name == "urgent_deadlock") {
        // after in, the urgent out gives a non-full time self-loop
        return pre(kIn, pre(kOut, mk_nil(), true));
    }
    if (name == "unbalanced") {
        return pre(kOut, pre(kIn, mk_nil()));
    }
    throw FaseError("validation", "unknown pathological term '" + name + "'");
}

}  // namespace fase
