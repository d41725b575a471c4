#pragma once

#include <optional>

#include "e2p/term.hpp"

namespace e2p {

// One reduction at the principal position, or nothing when the term is
// canonical, stuck, or blocked on a principal variable. Deterministic.
std::optional<Term> step(const Term& t);

enum class HeadKind : uint8_t { Canonical, PrincipalVariable, Stuck, FuelExhausted };

struct EvalOutcome {
  HeadKind kind;
  Term term;        // the computed term (partial on FuelExhausted)
  long steps_used = 0;
  // PrincipalVariable only: decomposition of `term` around the blocking variable
  std::optional<PrincipalPath> principal;
};

// Iterates `step` at most `fuel` times and classifies the result.
EvalOutcome compute_to_head(Term t, long fuel);

// Same, drawing from and decrementing a shared budget.
EvalOutcome compute_to_head_budget(Term t, long& budget);

struct NormalizeResult {
  bool complete = false;
  Term term;
  long steps_used = 0;
};

// Leftmost-outermost full normalization, including under binders.
NormalizeResult normalize(Term t, long fuel);
NormalizeResult normalize_budget(Term t, long& budget);

}  // namespace e2p
