#ifndef FASE_SEMANTICS_HPP
#define FASE_SEMANTICS_HPP

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fase/action.hpp"
#include "fase/error.hpp"
#include "fase/term.hpp"

namespace fase {

struct ActionStep {
    ActionLabel label;
    TermPtr target;
};

// The unique aged successor of a term with its maximal refusal set.
// Every X subseteq max_refusal is a valid conditional time step to `target`.
struct TimeStep {
    ActionSet max_refusal;
    TermPtr target;
};

// Per-analysis memo tables; refusal sets are relative to `alphabet`
// (the sort of the root process; everything outside it is refusable).
class SemanticsContext {
public:
    explicit SemanticsContext(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

    const Alphabet& alphabet() const { return alphabet_; }

    const std::vector<ActionStep>& action_successors(TermPtr t);
    const std::optional<TimeStep>& time_step(TermPtr t);

    bool refuses(TermPtr t, const ActionSet& x);
    bool is_full(const TimeStep& ts) const { return ts.max_refusal.is_full(); }

    TermPtr unfold(TermPtr rec);

private:
    std::vector<ActionStep> compute_actions(TermPtr t, int depth);
    std::optional<TimeStep> compute_time(TermPtr t, int depth);

    Alphabet alphabet_;
    std::unordered_map<TermPtr, std::vector<ActionStep>> action_memo_;
    std::unordered_map<TermPtr, std::optional<TimeStep>> time_memo_;
    std::unordered_map<TermPtr, TermPtr> unfold_memo_;
};

// One item of a refusal trace: an action or a (maximal) refusal set.
struct TraceItem {
    enum class Kind { Action, Refusal, FullStep } kind;
    ActionLabel action;   // Kind::Action
    ActionSet refusal;    // Kind::Refusal
};

using Trace = std::vector<TraceItem>;

inline constexpr int kDefaultTraceCap = 100000;

// All alternating action/time sequences of length <= depth; time items carry
// the maximal refusal set of the step taken.
std::vector<Trace> refusal_traces(TermPtr t, int depth, int cap = kDefaultTraceCap);
// As refusal_traces but only full time steps, emitted as the symbol 1.
std::vector<Trace> discrete_traces(TermPtr t, int depth, int cap = kDefaultTraceCap);

std::string trace_str(const Trace& tr, const Alphabet& a);

}  // namespace fase

#endif
