#include "fase/term.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace fase {

SyncSet SyncSet::finite(std::vector<std::string> ns) {
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    return SyncSet{Kind::Finite, std::move(ns)};
}

SyncSet SyncSet::all_except(std::vector<std::string> ns) {
    SyncSet s = finite(std::move(ns));
    s.kind = Kind::AllExcept;
    return s;
}

bool SyncSet::contains(const std::string& name) const {
    bool listed = std::binary_search(names.begin(), names.end(), name);
    switch (kind) {
    case Kind::Finite: return listed;
    case Kind::All: return true;
    case Kind::AllExcept: return !listed;
    }
    return false;
}

std::string SyncSet::str() const {
    std::ostringstream os;
    os << "|[";
    if (kind == Kind::All) {
        os << "*";
    } else {
        if (kind == Kind::AllExcept) os << "*-";
        bool first = true;
        for (const auto& n : names) {
            if (!first) os << ',';
            os << n;
            first = false;
        }
    }
    os << "]|";
    return os.str();
}

Relabeling Relabeling::make(std::vector<std::pair<std::string, ActionLabel>> es) {
    // drop identity entries, sort, reject duplicates upstream (parser checks)
    std::vector<std::pair<std::string, ActionLabel>> kept;
    for (auto& e : es)
        if (e.second.is_tau() || e.second.name != e.first) kept.push_back(std::move(e));
    std::sort(kept.begin(), kept.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return Relabeling{std::move(kept)};
}

ActionLabel Relabeling::apply(const ActionLabel& a) const {
    if (a.is_tau()) return a;
    auto it = std::lower_bound(entries.begin(), entries.end(), a.name,
                               [](const auto& e, const std::string& n) { return e.first < n; });
    if (it != entries.end() && it->first == a.name) return it->second;
    return a;
}

std::string Relabeling::str() const {
    std::ostringstream os;
    os << '[';
    bool first = true;
    for (const auto& e : entries) {
        if (!first) os << ", ";
        os << e.first << "->" << e.second.str();
        first = false;
    }
    os << ']';
    return os.str();
}

namespace {

struct TermHash {
    size_t operator()(const Term* t) const {
        size_t h = std::hash<int>()(static_cast<int>(t->kind));
        auto mix = [&h](size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
        mix(std::hash<std::string>()(t->label.name));
        mix(t->urgent ? 2 : 1);
        mix(std::hash<std::string>()(t->var));
        mix(static_cast<size_t>(t->sync.kind));
        for (const auto& n : t->sync.names) mix(std::hash<std::string>()(n));
        for (const auto& e : t->relab.entries) {
            mix(std::hash<std::string>()(e.first));
            mix(std::hash<std::string>()(e.second.name));
        }
        mix(t->left ? t->left->id : 0);
        mix(t->right ? t->right->id : 0);
        return h;
    }
};

struct TermEq {
    bool operator()(const Term* a, const Term* b) const {
        return a->kind == b->kind && a->label == b->label && a->urgent == b->urgent &&
               a->var == b->var && a->sync == b->sync && a->relab == b->relab &&
               a->left == b->left && a->right == b->right;
    }
};

class TermPool {
public:
    static TermPool& instance() {
        static TermPool pool;
        return pool;
    }

    TermPtr intern(Term&& t) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = set_.find(&t);
        if (it != set_.end()) return *it;
        auto owned = std::make_unique<Term>(std::move(t));
        owned->id = next_id_++;
        TermPtr p = owned.get();
        arena_.push_back(std::move(owned));
        set_.insert(p);
        return p;
    }

private:
    std::mutex mutex_;
    std::vector<std::unique_ptr<Term>> arena_;
    std::unordered_set<const Term*, TermHash, TermEq> set_;
    std::uint64_t next_id_ = 1;
};

TermPtr intern(Term&& t) { return TermPool::instance().intern(std::move(t)); }

}  // namespace

TermPtr mk_nil() {
    Term t;
    t.kind = TermKind::Nil;
    return intern(std::move(t));
}

TermPtr mk_prefix(ActionLabel label, bool urgent, TermPtr cont) {
    Term t;
    t.kind = TermKind::Prefix;
    t.label = std::move(label);
    t.urgent = urgent;
    t.left = cont;
    return intern(std::move(t));
}

TermPtr mk_sum(TermPtr l, TermPtr r) {
    Term t;
    t.kind = TermKind::Sum;
    t.left = l;
    t.right = r;
    return intern(std::move(t));
}

TermPtr mk_par(TermPtr l, SyncSet sync, TermPtr r) {
    Term t;
    t.kind = TermKind::Par;
    t.sync = std::move(sync);
    t.left = l;
    t.right = r;
    return intern(std::move(t));
}

TermPtr mk_relabel(TermPtr p, Relabeling relab) {
    if (relab.entries.empty()) return p;  // identity
    Term t;
    t.kind = TermKind::Relabel;
    t.relab = std::move(relab);
    t.left = p;
    return intern(std::move(t));
}

TermPtr mk_var(std::string name) {
    Term t;
    t.kind = TermKind::Var;
    t.var = std::move(name);
    return intern(std::move(t));
}

TermPtr mk_rec(std::string name, TermPtr body) {
    Term t;
    t.kind = TermKind::Rec;
    t.var = std::move(name);
    t.left = body;
    return intern(std::move(t));
}

std::uint64_t canonical_key(TermPtr t) { return t->id; }

namespace {

// Printing levels mirror the grammar: process > sum > prefix > atom.
enum Level { LvlProcess, LvlSum, LvlPrefix, LvlAtom };

void print_rec(TermPtr t, Level lvl, std::ostream& os) {
    auto parens = [&](Level need) { return lvl > need; };
    switch (t->kind) {
    case TermKind::Nil:
        os << "nil";
        return;
    case TermKind::Var:
        os << t->var;
        return;
    case TermKind::Prefix: {
        bool p = parens(LvlPrefix);
        if (p) os << '(';
        if (t->urgent) os << '_';
        os << t->label.str() << '.';
        print_rec(t->left, LvlPrefix, os);
        if (p) os << ')';
        return;
    }
    case TermKind::Sum: {
        bool p = parens(LvlSum);
        if (p) os << '(';
        print_rec(t->left, LvlSum, os);
        os << " + ";
        print_rec(t->right, LvlPrefix, os);
        if (p) os << ')';
        return;
    }
    case TermKind::Par: {
        bool p = parens(LvlProcess);
        if (p) os << '(';
        print_rec(t->left, LvlProcess, os);
        os << ' ' << t->sync.str() << ' ';
        print_rec(t->right, LvlSum, os);
        if (p) os << ')';
        return;
    }
    case TermKind::Relabel: {
        // relabelling attaches to an atom
        TermPtr inner = t->left;
        bool inner_atomic = inner->kind == TermKind::Nil || inner->kind == TermKind::Var ||
                            inner->kind == TermKind::Relabel;
        if (!inner_atomic) os << '(';
        print_rec(inner, inner_atomic ? LvlAtom : LvlProcess, os);
        if (!inner_atomic) os << ')';
        os << t->relab.str();
        return;
    }
    case TermKind::Rec: {
        bool p = parens(LvlPrefix);
        if (p) os << '(';
        os << "rec " << t->var << ". ";
        print_rec(t->left, LvlPrefix, os);
        if (p) os << ')';
        return;
    }
    }
}

}  // namespace

std::string print_term(TermPtr t) {
    std::ostringstream os;
    print_rec(t, LvlProcess, os);
    return os.str();
}

namespace {

// Memoized over shared subterms: interned terms form a DAG and a plain tree
// walk is exponential on the nested-rec corpus terms.
TermPtr subst_rec(TermPtr t, const std::string& name, TermPtr replacement,
                  std::unordered_map<TermPtr, TermPtr>& memo) {
    auto it = memo.find(t);
    if (it != memo.end()) return it->second;
    TermPtr out = t;
    switch (t->kind) {
    case TermKind::Nil:
        break;
    case TermKind::Var:
        if (t->var == name) out = replacement;
        break;
    case TermKind::Prefix: {
        TermPtr c = subst_rec(t->left, name, replacement, memo);
        if (c != t->left) out = mk_prefix(t->label, t->urgent, c);
        break;
    }
    case TermKind::Sum: {
        TermPtr l = subst_rec(t->left, name, replacement, memo);
        TermPtr r = subst_rec(t->right, name, replacement, memo);
        if (l != t->left || r != t->right) out = mk_sum(l, r);
        break;
    }
    case TermKind::Par: {
        TermPtr l = subst_rec(t->left, name, replacement, memo);
        TermPtr r = subst_rec(t->right, name, replacement, memo);
        if (l != t->left || r != t->right) out = mk_par(l, t->sync, r);
        break;
    }
    case TermKind::Relabel: {
        TermPtr c = subst_rec(t->left, name, replacement, memo);
        if (c != t->left) out = mk_relabel(c, t->relab);
        break;
    }
    case TermKind::Rec:
        if (t->var != name) {  // otherwise shadowed: unchanged
            TermPtr c = subst_rec(t->left, name, replacement, memo);
            if (c != t->left) out = mk_rec(t->var, c);
        }
        break;
    }
    memo.emplace(t, out);
    return out;
}

}  // namespace

TermPtr substitute(TermPtr t, const std::string& name, TermPtr replacement) {
    std::unordered_map<TermPtr, TermPtr> memo;
    return subst_rec(t, name, replacement, memo);
}

namespace {

// Memoized over shared subterms (see subst_rec).
const std::set<std::string>& collect_sort(
    TermPtr t, std::unordered_map<TermPtr, std::set<std::string>>& memo) {
    auto it = memo.find(t);
    if (it != memo.end()) return it->second;
    std::set<std::string> out;
    switch (t->kind) {
    case TermKind::Nil:
    case TermKind::Var:
        break;
    case TermKind::Prefix:
        out = collect_sort(t->left, memo);
        if (t->label.is_visible()) out.insert(t->label.name);
        break;
    case TermKind::Sum:
    case TermKind::Par: {
        out = collect_sort(t->left, memo);
        const auto& r = collect_sort(t->right, memo);
        out.insert(r.begin(), r.end());
        break;
    }
    case TermKind::Relabel: {
        const auto& inner = collect_sort(t->left, memo);
        for (const auto& n : inner) {
            out.insert(n);
            ActionLabel img = t->relab.apply(ActionLabel::visible(n));
            if (img.is_visible()) out.insert(img.name);
        }
        break;
    }
    case TermKind::Rec:
        out = collect_sort(t->left, memo);
        break;
    }
    return memo.emplace(t, std::move(out)).first->second;
}

}  // namespace

std::set<std::string> term_sort(TermPtr t) {
    std::unordered_map<TermPtr, std::set<std::string>> memo;
    return collect_sort(t, memo);
}

Alphabet sort_alphabet(TermPtr t) {
    auto s = term_sort(t);
    return Alphabet(std::vector<std::string>(s.begin(), s.end()));
}

namespace {

struct ValidateCtx {
    ValidationReport report;

    // Per free variable of a subterm: does some occurrence have no prefix
    // above it within the subterm, and does some occurrence sit under a
    // parallel composition or relabelling within the subterm?
    struct FvFlags {
        bool unguarded = false;
        bool under_static = false;
    };
    using FvMap = std::map<std::string, FvFlags>;
    std::unordered_map<TermPtr, FvMap> memo;  // bottom-up; shared subterms once

    const FvMap& walk(TermPtr t) {
        auto it = memo.find(t);
        if (it != memo.end()) return it->second;
        FvMap out;
        switch (t->kind) {
        case TermKind::Nil:
            break;
        case TermKind::Var:
            out[t->var] = {true, false};
            break;
        case TermKind::Prefix:
            out = walk(t->left);
            for (auto& [name, flags] : out) flags.unguarded = false;
            break;
        case TermKind::Sum: {
            out = walk(t->left);
            for (const auto& [name, flags] : walk(t->right)) {
                FvFlags& f = out[name];
                f.unguarded |= flags.unguarded;
                f.under_static |= flags.under_static;
            }
            break;
        }
        case TermKind::Par:
        case TermKind::Relabel: {
            out = walk(t->left);
            if (t->kind == TermKind::Par)
                for (const auto& [name, flags] : walk(t->right)) {
                    FvFlags& f = out[name];
                    f.unguarded |= flags.unguarded;
                }
            for (auto& [name, flags] : out) flags.under_static = true;
            break;
        }
        case TermKind::Rec: {
            out = walk(t->left);
            auto bound = out.find(t->var);
            if (bound != out.end()) {
                if (bound->second.unguarded) {
                    report.guarded = false;
                    report.messages.push_back("variable " + t->var +
                                              " is not guarded by a prefix");
                }
                if (bound->second.under_static) {
                    report.finite_control = false;
                    report.messages.push_back("variable " + t->var +
                                              " occurs under parallel composition or "
                                              "relabelling inside its binder");
                }
                out.erase(bound);
            }
            break;
        }
        }
        return memo.emplace(t, std::move(out)).first->second;
    }
};

}  // namespace

ValidationReport validate(TermPtr t) {
    ValidateCtx ctx;
    for (const auto& [name, flags] : ctx.walk(t)) {
        ctx.report.closed = false;
        ctx.report.messages.push_back("free variable " + name);
    }
    return ctx.report;
}

}  // namespace fase
