#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "regal/grammar.hpp"
#include "regal/term.hpp"

namespace regal {

// Independent ground truth for the analysis: a depth-bounded LD-resolution
// interpreter (leftmost selection) that records every selected call and every
// proven success. It never consults grammar semantics except to resolve
// constraint predicates against the initial grammar's Su.

using Subst = std::map<std::string, Term>;

Term apply_subst(const Subst& s, const Term& t);
std::optional<Subst> unify(const Term& a, const Term& b, Subst s);

struct DerivationObservation {
  std::set<Term> calls;     // atom terms
  std::set<Term> successes; // atom terms
  bool truncated = false;   // some branch hit the depth bound
  // Some selected or proven atom was not ground and was skipped. Recording
  // only ground atoms under-observes, which weakens but never invalidates
  // the soundness check.
  bool skipped_nonground = false;
};

// Runs goal to completion or to the depth bound, counting one step per
// clause application or constraint resolution along a derivation branch.
// A constraint atom q(t) succeeds iff its atom term is in
// sem[builtin_success](Su).
DerivationObservation run_bounded(const Program& program, const Atom& goal,
                                  uint32_t depth,
                                  const TermGrammar& builtin_success);

struct SoundnessReport {
  bool pass = true;
  std::optional<Term> counterexample; // first observed atom outside the type
  bool counterexample_is_call = false;
  uint32_t goals = 0;
  uint32_t calls_checked = 0;
  uint32_t successes_checked = 0;
  bool any_truncated = false;
};

// For every ground goal in enumerate(g0.Ca, goal_depth): run the interpreter
// and require every observed call in sem(final.Ca) and every observed
// success in sem(final.Su).
SoundnessReport soundness_suite(const Program& program, const TermGrammar& g0,
                                const TermGrammar& final_grammar,
                                uint32_t goal_depth, uint32_t deriv_depth);

} // namespace regal
