#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "regal/grammar.hpp"
#include "regal/term.hpp"

namespace regal {

// Per-clause constraint construction: given the current Ca/Su grammar, one
// clause and one implication index j, produce the grammar fragment holding
// the new call rule (for body atom j) or success rule (for the head).

// Clause variable name -> grammar variable in the working grammar. A bound
// variable is always nonempty; binding an empty one fails the whole match.
using Binding = std::map<std::string, VarId>;

struct Contribution {
  TermGrammar grammar; // the new Ca or Su rule plus fresh support variables
  uint32_t clause_index = 0;
  uint32_t implication = 0; // 1..n_C for calls, n_C+1 for the head success
  bool success_rule = false;
};

// Matches t against sem(x), narrowing env. Variables are bound to x or to
// the intersection with their previous binding; an application follows the
// unique rule for its constructor. Returns nullopt on failure; env is never
// partially updated.
std::optional<Binding> match_term(const Term& t, VarId x, const Binding& env,
                                  TermGrammar& work);

// Grammar variable denoting the instances of t under env. Unbound clause
// variables map to the universal variable; repeated variables share one
// grammar variable.
VarId build_term(const Term& t, const Binding& env, TermGrammar& work,
                 const std::vector<FunctionSymbol>& sig);

// One implication of one clause against g_i. Matches the head against Ca's
// rule and the body atoms before j against Su's rules, then emits the call
// rule for atom j (or the success rule for the head when j == n_C + 1).
// The result shares only Ca/Su with anything else. nullopt encodes a
// vacuously true implication.
std::optional<Contribution> solve_clause(const Clause& clause, uint32_t j,
                                         const TermGrammar& g_i,
                                         const std::vector<FunctionSymbol>& sig,
                                         uint32_t clause_index = 0);

// All implications of one clause in ascending j, equal to collecting the
// non-empty solve_clause results. Shares one working grammar across the
// implications, since the binding for j extends the binding for j-1.
std::vector<Contribution> solve_clause_all(
    const Clause& clause, const TermGrammar& g_i,
    const std::vector<FunctionSymbol>& sig, uint32_t clause_index = 0);

} // namespace regal
