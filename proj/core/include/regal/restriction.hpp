#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "regal/grammar.hpp"

namespace regal {

// The widening. restrict_grammar maps grammars into a finite co-domain while
// over-approximating Ca and Su, by bounding how often a principal label may
// repeat along a spanning-tree branch.

using PrincipalLabel = std::set<FunctionSymbol>;

// The constructors occurring in the right-hand sides of x's rules.
PrincipalLabel principal_label(const TermGrammar& g, VarId x);

struct GrammarGraph {
  std::set<VarId> vertices;
  std::set<std::pair<VarId, VarId>> edges; // (x, y) iff some rule x > f(..y..)
};

GrammarGraph grammar_graph(const TermGrammar& g);

enum class WideningVariant {
  principal_label,  // <= k branch variables with equal principal label
  occurrence_count, // <= k branch variables whose label contains a given symbol
  depth_bound,      // spanning tree depth <= k
};

struct WideningConfig {
  WideningVariant variant = WideningVariant::principal_label;
  uint32_t k = 1;
};

std::string variant_name(WideningVariant v);

// R(G): discriminative, normalized, unreachable variables dropped, and the
// deterministic spanning forest (DFS from Ca then Su, rules in sorted order)
// satisfies the branch bound of cfg. sem(Ca) and sem(Su) only grow.
//
// A violating variable is fused with its nearest qualifying ancestor (the
// tree parent for depth_bound): the pair is identified, and same-symbol rules
// of a fused class are merged by identifying their children position-wise.
// Every fuse coarsens a partition of the variables, so the walk restarts at
// most |vars| times.
TermGrammar restrict_grammar(const TermGrammar& g, const WideningConfig& cfg);

// Membership test for R's co-domain: true iff g's spanning forest satisfies
// the branch bound.
bool codomain_certificate(const TermGrammar& g, const WideningConfig& cfg);

} // namespace regal
