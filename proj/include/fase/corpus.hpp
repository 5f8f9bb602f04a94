#ifndef FASE_CORPUS_HPP
#define FASE_CORPUS_HPP

#include <string>

#include "fase/term.hpp"

namespace fase {

// The three bounded-buffer implementations of capacity N+2 (N >= 1).

// Purely sequential first-in-first-out queue, no internal actions.
TermPtr gen_fifo(int n);

// N+2 one-place cells connected end-to-end; internal links hidden.
TermPtr gen_pipe(int n);

// N storage cells managed circularly by a controller that retains the
// oldest undelivered value; memory accesses hidden.
TermPtr gen_buff(int n);

// Small fixed regression terms: tau_divergent, urgent_deadlock, unbalanced.
TermPtr gen_pathological(const std::string& name);

}  // namespace fase

#endif
