#include "fase/semantics.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace fase {

namespace {
constexpr int kMaxUnfoldDepth = 10000;
}

TermPtr SemanticsContext::unfold(TermPtr rec) {
    auto it = unfold_memo_.find(rec);
    if (it != unfold_memo_.end()) return it->second;
    TermPtr u = substitute(rec->left, rec->var, rec);
    unfold_memo_.emplace(rec, u);
    return u;
}

const std::vector<ActionStep>& SemanticsContext::action_successors(TermPtr t) {
    auto it = action_memo_.find(t);
    if (it != action_memo_.end()) return it->second;
    auto steps = compute_actions(t, 0);
    return action_memo_.emplace(t, std::move(steps)).first->second;
}

std::vector<ActionStep> SemanticsContext::compute_actions(TermPtr t, int depth) {
    if (depth > kMaxUnfoldDepth)
        throw FaseError("internal-inconsistency", "recursion unfolding depth exceeded");
    std::vector<ActionStep> out;
    switch (t->kind) {
    case TermKind::Nil:
    case TermKind::Var:
        break;
    case TermKind::Prefix:
        out.push_back({t->label, t->left});
        break;
    case TermKind::Sum:
        for (const auto& s : action_successors(t->left)) out.push_back(s);
        for (const auto& s : action_successors(t->right)) out.push_back(s);
        break;
    case TermKind::Par: {
        const auto& ls = action_successors(t->left);
        const auto& rs = action_successors(t->right);
        for (const auto& s : ls)
            if (s.label.is_tau() || !t->sync.contains(s.label.name))
                out.push_back({s.label, mk_par(s.target, t->sync, t->right)});
        for (const auto& s : rs)
            if (s.label.is_tau() || !t->sync.contains(s.label.name))
                out.push_back({s.label, mk_par(t->left, t->sync, s.target)});
        for (const auto& l : ls) {
            if (l.label.is_tau() || !t->sync.contains(l.label.name)) continue;
            for (const auto& r : rs)
                if (r.label == l.label)
                    out.push_back({l.label, mk_par(l.target, t->sync, r.target)});
        }
        break;
    }
    case TermKind::Relabel:
        for (const auto& s : action_successors(t->left))
            out.push_back({t->relab.apply(s.label), mk_relabel(s.target, t->relab)});
        break;
    case TermKind::Rec:
        return compute_actions(unfold(t), depth + 1);
    }
    // drop exact duplicates, keeping first-occurrence order
    std::set<std::pair<std::string, TermPtr>> seen;
    std::vector<ActionStep> dedup;
    for (auto& s : out)
        if (seen.emplace(s.label.name, s.target).second) dedup.push_back(std::move(s));
    return dedup;
}

const std::optional<TimeStep>& SemanticsContext::time_step(TermPtr t) {
    auto it = time_memo_.find(t);
    if (it != time_memo_.end()) return it->second;
    auto ts = compute_time(t, 0);
    return time_memo_.emplace(t, std::move(ts)).first->second;
}

std::optional<TimeStep> SemanticsContext::compute_time(TermPtr t, int depth) {
    if (depth > kMaxUnfoldDepth)
        throw FaseError("internal-inconsistency", "recursion unfolding depth exceeded");
    const int n = alphabet_.size();
    switch (t->kind) {
    case TermKind::Nil:
    case TermKind::Var:
        return TimeStep{ActionSet::full(n), t};
    case TermKind::Prefix: {
        if (!t->urgent)
            return TimeStep{ActionSet::full(n), mk_prefix(t->label, true, t->left)};
        if (t->label.is_tau()) return std::nullopt;  // urgent internal action blocks time
        ActionSet m = ActionSet::full(n);
        int i = alphabet_.index_of(t->label.name);
        if (i >= 0) m.remove(i);
        return TimeStep{std::move(m), t};
    }
    case TermKind::Sum: {
        const auto& l = time_step(t->left);
        if (!l) return std::nullopt;
        const auto& r = time_step(t->right);
        if (!r) return std::nullopt;
        return TimeStep{l->max_refusal & r->max_refusal, mk_sum(l->target, r->target)};
    }
    case TermKind::Par: {
        const auto& l = time_step(t->left);
        if (!l) return std::nullopt;
        const auto& r = time_step(t->right);
        if (!r) return std::nullopt;
        ActionSet m(n);
        for (int i = 0; i < n; ++i) {
            bool in_l = l->max_refusal.contains(i);
            bool in_r = r->max_refusal.contains(i);
            bool refusable = t->sync.contains(alphabet_.name(i)) ? (in_l || in_r)
                                                                 : (in_l && in_r);
            if (refusable) m.add(i);
        }
        return TimeStep{std::move(m), mk_par(l->target, t->sync, r->target)};
    }
    case TermKind::Relabel: {
        const auto& inner = time_step(t->left);
        if (!inner) return std::nullopt;
        // any action hidden to tau must be refusable underneath
        for (int i = 0; i < n; ++i)
            if (t->relab.apply(ActionLabel::visible(alphabet_.name(i))).is_tau() &&
                !inner->max_refusal.contains(i))
                return std::nullopt;
        ActionSet m(n);
        for (int i = 0; i < n; ++i) {
            bool ok = true;
            for (int j = 0; j < n; ++j) {
                if (t->relab.apply(ActionLabel::visible(alphabet_.name(j))).name ==
                        alphabet_.name(i) &&
                    !inner->max_refusal.contains(j)) {
                    ok = false;
                    break;
                }
            }
            if (ok) m.add(i);
        }
        return TimeStep{std::move(m), mk_relabel(inner->target, t->relab)};
    }
    case TermKind::Rec:
        return compute_time(unfold(t), depth + 1);
    }
    return std::nullopt;
}

bool SemanticsContext::refuses(TermPtr t, const ActionSet& x) {
    const auto& ts = time_step(t);
    return ts && x.subset_of(ts->max_refusal);
}

namespace {

std::string item_key(const TraceItem& it, const Alphabet& a) {
    switch (it.kind) {
    case TraceItem::Kind::Action: return "a:" + it.action.str();
    case TraceItem::Kind::Refusal: return "r:" + it.refusal.str(a);
    case TraceItem::Kind::FullStep: return "1";
    }
    return "";
}

std::string trace_key(const Trace& tr, const Alphabet& a) {
    std::string k;
    for (const auto& it : tr) k += item_key(it, a) + ";";
    return k;
}

void enumerate(SemanticsContext& ctx, TermPtr t, int depth, bool full_only, Trace& prefix,
               std::set<std::string>& seen, std::vector<Trace>& out, int cap) {
    std::string key = trace_key(prefix, ctx.alphabet());
    if (seen.insert(key).second) {
        out.push_back(prefix);
        if (static_cast<int>(out.size()) > cap)
            throw FaseError("trace-cap", "trace enumeration exceeded cap of " +
                                             std::to_string(cap));
    }
    if (depth == 0) return;
    for (const auto& s : ctx.action_successors(t)) {
        prefix.push_back({TraceItem::Kind::Action, s.label, {}});
        enumerate(ctx, s.target, depth - 1, full_only, prefix, seen, out, cap);
        prefix.pop_back();
    }
    const auto& ts = ctx.time_step(t);
    if (ts && (!full_only || ctx.is_full(*ts))) {
        if (full_only)
            prefix.push_back({TraceItem::Kind::FullStep, {}, {}});
        else
            prefix.push_back({TraceItem::Kind::Refusal, {}, ts->max_refusal});
        enumerate(ctx, ts->target, depth - 1, full_only, prefix, seen, out, cap);
        prefix.pop_back();
    }
}

std::vector<Trace> traces(TermPtr t, int depth, bool full_only, int cap) {
    SemanticsContext ctx(sort_alphabet(t));
    std::vector<Trace> out;
    std::set<std::string> seen;
    Trace prefix;
    enumerate(ctx, t, depth, full_only, prefix, seen, out, cap);
    auto& a = ctx.alphabet();
    std::sort(out.begin(), out.end(), [&a](const Trace& x, const Trace& y) {
        if (x.size() != y.size()) return x.size() < y.size();
        return trace_key(x, a) < trace_key(y, a);
    });
    return out;
}

}  // namespace

std::vector<Trace> refusal_traces(TermPtr t, int depth, int cap) {
    return traces(t, depth, false, cap);
}

std::vector<Trace> discrete_traces(TermPtr t, int depth, int cap) {
    return traces(t, depth, true, cap);
}

std::string trace_str(const Trace& tr, const Alphabet& a) {
    std::ostringstream os;
    bool first = true;
    for (const auto& it : tr) {
        if (!first) os << ',';
        switch (it.kind) {
        case TraceItem::Kind::Action: os << it.action.str(); break;
        case TraceItem::Kind::Refusal: os << it.refusal.str(a); break;
        case TraceItem::Kind::FullStep: os << '1'; break;
        }
        first = false;
    }
    return os.str();
}

}  // namespace fase
