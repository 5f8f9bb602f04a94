#ifndef FASE_TERM_HPP
#define FASE_TERM_HPP

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fase/action.hpp"

namespace fase {

struct Term;
// Terms are interned in a global pool; pointer equality is structural equality.
using TermPtr = const Term*;

// Synchronization set of a parallel composition. All/AllExcept make the
// co-infinite set A\{omega} used by test composition representable.
struct SyncSet {
    enum class Kind { Finite, All, AllExcept };
    Kind kind = Kind::Finite;
    std::vector<std::string> names;  // duplicate-free, sorted

    static SyncSet finite(std::vector<std::string> ns);
    static SyncSet all() { return SyncSet{Kind::All, {}}; }
    static SyncSet all_except(std::vector<std::string> ns);

    // tau is never a member (only visible names are queried).
    bool contains(const std::string& name) const;
    bool operator==(const SyncSet& o) const { return kind == o.kind && names == o.names; }
    std::string str() const;
};

// General relabelling function: finite list of (from -> to) pairs, identity
// elsewhere, tau fixed. Mapping to tau is hiding.
struct Relabeling {
    std::vector<std::pair<std::string, ActionLabel>> entries;  // sorted by `from`

    static Relabeling make(std::vector<std::pair<std::string, ActionLabel>> es);

    ActionLabel apply(const ActionLabel& a) const;
    bool operator==(const Relabeling& o) const { return entries == o.entries; }
    std::string str() const;
};

enum class TermKind { Nil, Prefix, Sum, Par, Relabel, Var, Rec };

struct Term {
    TermKind kind;
    // Prefix
    ActionLabel label;
    bool urgent = false;
    // Var / Rec binder
    std::string var;
    // Par
    SyncSet sync;
    // Relabel
    Relabeling relab;
    // children: Prefix/Relabel/Rec use left only
    TermPtr left = nullptr;
    TermPtr right = nullptr;
    // interning id, assigned in order of first construction; stable in a run
    std::uint64_t id = 0;
};

// Interning constructors.
TermPtr mk_nil();
TermPtr mk_prefix(ActionLabel label, bool urgent, TermPtr cont);
TermPtr mk_sum(TermPtr l, TermPtr r);
TermPtr mk_par(TermPtr l, SyncSet sync, TermPtr r);
TermPtr mk_relabel(TermPtr p, Relabeling relab);
TermPtr mk_var(std::string name);
TermPtr mk_rec(std::string name, TermPtr body);

// Concrete syntax (round-trips through parse()).
std::string print_term(TermPtr t);

// Structural fingerprint; equal exactly for structurally identical terms.
std::uint64_t canonical_key(TermPtr t);

// Capture-free substitution of Var(name) by `replacement` (must be closed).
TermPtr substitute(TermPtr t, const std::string& name, TermPtr replacement);

// Visible names occurring in prefixes, closed under the relabellings in t.
std::set<std::string> term_sort(TermPtr t);
Alphabet sort_alphabet(TermPtr t);

struct ValidationReport {
    bool closed = true;
    bool guarded = true;
    bool finite_control = true;  // warning-only when false
    std::vector<std::string> messages;

    bool ok() const { return closed && guarded; }
};

ValidationReport validate(TermPtr t);

}  // namespace fase

#endif
