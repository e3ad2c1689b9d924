#pragma once

#include <map>
#include <set>
#include <utility>

#include "regal/grammar.hpp"

// In-place variants of the grammar algebra. The public operations copy the
// input grammar; the solver and the approximation loop work on one grammar
// and need the product/merge variables added to it directly.

namespace regal::detail {

using IntersectMemo = std::map<std::pair<VarId, VarId>, VarId>;

// Product variable for sem(x) ∩ sem(y), added to g. Memoized on unordered
// pairs; x == y returns x. Exact on discriminative grammars.
VarId intersect_into(TermGrammar& g, VarId x, VarId y, IntersectMemo& memo);

using MergeMemo = std::map<std::set<VarId>, VarId>;

// Generalized set union: a variable whose sem covers every member of vars.
// Rules are read from source (a snapshot of g before any replacement);
// singleton sets return their element, which is what copies solo rules
// verbatim. New variables are added to g.
VarId merge_into(TermGrammar& g, const TermGrammar& source,
                 const std::set<VarId>& vars, MergeMemo& memo);

} // namespace regal::detail
