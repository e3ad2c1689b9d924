#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "regal/grammar.hpp"
#include "regal/restriction.hpp"
#include "regal/solver.hpp"
#include "regal/term.hpp"

namespace regal {

struct Warning {
  enum class Kind { constraint_call_violation, iteration_cap_reached };
  Kind kind;
  std::string description;
  std::optional<Term> witness; // an offending call atom, when extractable

  std::string str() const;
  bool operator==(const Warning& other) const;
};

struct TraceStep {
  uint32_t step = 0;
  uint32_t contributions = 0;
  uint32_t vars = 0;
  uint32_t rules = 0;
  uint32_t warnings = 0;
  std::string str() const;
};

struct AnalysisResult {
  TermGrammar grammar; // the fixpoint H_i
  uint32_t iterations = 0;
  std::vector<Warning> warnings;
  std::vector<TraceStep> trace;
  bool hit_cap = false;
};

struct CheckResult {
  bool correct = false;
  std::vector<std::string> reasons; // failing inclusions / call violations
  std::optional<Term> call_witness; // call atom outside Spec's Ca
  std::optional<Term> success_witness; // success atom outside Spec's Su
  std::vector<Warning> warnings;
};

// G_{i+1}: all per-clause contributions merged into g_i, Ca and Su rules
// re-unified by discriminative_approx, result normalized. Monotone on the
// Ca/Su interface.
TermGrammar iteration_step(const TermGrammar& g_i, const Program& program);

// Checks that g's constraint-predicate calls stay within g0's: with F = g
// restricted to Ca rules for constraint (or undefined) predicates, sem[F](Ca)
// must be included in sem[g0](Ca). On failure the warning carries a concrete
// offending call, taken from the inclusion counterexample.
std::optional<Warning> constraint_call_check(const TermGrammar& g,
                                             const TermGrammar& g0,
                                             const Program& program);

// Iterates H_{i+1} = R(iteration_step(H_i)) from H_0 = R(G_0) until the
// Ca/Su interface stops growing, running the constraint-call check after
// each step. Warnings accumulate (deduplicated) and do not stop the run.
AnalysisResult analyze(const Program& program, const TermGrammar& g0,
                       const WideningConfig& cfg = {},
                       std::optional<uint32_t> iteration_cap = 10000);

// Single-step sufficient condition: spec is verified iff one unwidened
// iteration step stays inside it and respects the constraint calls. One
// sided: not-verified does not imply the program is incorrect.
CheckResult check_specification(const Program& program, const TermGrammar& spec,
                                const WideningConfig& cfg = {});

} // namespace regal
