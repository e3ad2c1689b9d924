#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "regal/symbols.hpp"
#include "regal/term.hpp"

namespace regal {

// Term grammars with the two distinguished interface variables Ca (calls)
// and Su (successes). A grammar is discriminative when every variable has at
// most one rule per constructor; all analysis grammars are kept in that form,
// with discriminative_approx restoring it after merges.
//
// sem(X) is the least assignment closed under: X > f(X1..Xn) and
// ti in sem(Xi) for all i implies f(t1..tn) in sem(X).

using VarId = uint32_t;

struct GrammarRule {
  FunctionSymbol symbol;
  std::vector<VarId> children; // size == symbol.arity

  auto operator<=>(const GrammarRule&) const = default;
};

class GrammarError : public std::runtime_error {
public:
  explicit GrammarError(const std::string& msg) : std::runtime_error(msg) {}
};

class EnumerationOverflow : public std::runtime_error {
public:
  explicit EnumerationOverflow(const std::string& msg)
      : std::runtime_error(msg) {}
};

class TermGrammar {
public:
  static constexpr VarId kCa = 0;
  static constexpr VarId kSu = 1;

  TermGrammar();

  VarId ca() const { return kCa; }
  VarId su() const { return kSu; }
  std::optional<VarId> any_var() const { return any_; }

  VarId fresh(std::string name);
  bool has_var(VarId v) const { return vars_.count(v) != 0; }
  const std::string& name(VarId v) const { return entry(v).name; }
  void set_name(VarId v, std::string name);

  // Adds a rule; exact duplicates are dropped. The grammar may transiently
  // hold several rules for one (var, symbol) pair; discriminative_approx
  // restores the invariant.
  void add_rule(VarId lhs, FunctionSymbol sym, std::vector<VarId> children);

  const std::vector<GrammarRule>& rules(VarId v) const { return entry(v).rules; }
  // The unique rule for (v, sym) in a discriminative grammar.
  const GrammarRule* rule_for(VarId v, const FunctionSymbol& sym) const;
  bool is_discriminative() const;

  std::vector<VarId> var_ids() const;
  size_t var_count() const { return vars_.size(); }
  size_t rule_count() const;

  // Case-insensitive for the reserved names ca/su/any, exact otherwise.
  std::optional<VarId> find_by_name(const std::string& name) const;

  // Imports every variable of src under fresh ids. With identify_roots, src's
  // Ca/Su map onto this grammar's Ca/Su; otherwise they get fresh ids too.
  // Returns the id translation.
  std::map<VarId, VarId> import(const TermGrammar& src, bool identify_roots);

  // The universal variable: one rule per constructor in sig, all children
  // pointing back at itself. Created on first use; reused afterwards.
  VarId ensure_any(const std::vector<FunctionSymbol>& sig);
  void mark_any(VarId v) { any_ = v; }

  // In-place filter; drops rules for which pred returns false.
  template <typename Pred>
  void filter_rules(VarId v, Pred&& keep) {
    auto& rs = vars_.at(v).rules;
    std::erase_if(rs, [&](const GrammarRule& r) { return !keep(r); });
  }

  void replace_rules(VarId v, std::vector<GrammarRule> rules);
  void drop_var(VarId v);

private:
  struct VarEntry {
    std::string name;
    std::vector<GrammarRule> rules; // sorted
  };
  const VarEntry& entry(VarId v) const;
  std::map<VarId, VarEntry> vars_;
  std::optional<VarId> any_;
  VarId next_ = 2;
};

// --- semantics and algebra -------------------------------------------------

// True iff t (ground) is in sem(x). A single deterministic top-down walk on
// discriminative grammars.
bool member(const TermGrammar& g, VarId x, const Term& t);

// Exactly the variables with empty sem (complement of the productive set).
std::set<VarId> empties(const TermGrammar& g);

// Drops every rule that mentions an empty variable. sem is unchanged; empty
// variables keep their (now ruleless) entries.
TermGrammar normalize(const TermGrammar& g);

// True iff sem(sub) is a subset of sem(sup). Decided by searching the product
// graph for a pair (u, v) where u has a rule v cannot match; sound and
// complete on normalized discriminative grammars (normalization is applied
// internally).
bool includes(const TermGrammar& g, VarId sup, VarId sub);

// As includes, but on failure returns a term in sem(sub) \ sem(sup).
std::optional<Term> includes_witness(const TermGrammar& g, VarId sup, VarId sub);

// Inclusion across two grammars, comparing supVar in supG against subVar in
// subG.
bool includes_across(const TermGrammar& sup_g, VarId sup_var,
                     const TermGrammar& sub_g, VarId sub_var);
std::optional<Term> includes_across_witness(const TermGrammar& sup_g,
                                            VarId sup_var,
                                            const TermGrammar& sub_g,
                                            VarId sub_var);

// Discriminative union: returns u with sem(u) a superset of
// sem(x) union sem(y), built co-recursively and memoized on variable pairs.
std::pair<VarId, TermGrammar> union_vars(const TermGrammar& g, VarId x, VarId y);

// Product construction; exact: sem(result) == sem(x) intersect sem(y).
std::pair<VarId, TermGrammar> intersect_vars(const TermGrammar& g, VarId x,
                                             VarId y);

// Fresh ids for every variable except Ca/Su; sem unchanged up to renaming.
TermGrammar rename_apart(const TermGrammar& g);

// Restores discriminativity: wherever a variable has several rules for one
// constructor, they are replaced by a single rule whose children are merged
// set-wise. sem of every input variable can only grow.
TermGrammar discriminative_approx(const TermGrammar& g);

// Exactly the ground terms of sem(x) with height <= depth. Throws
// EnumerationOverflow if more than cap terms would be produced.
std::set<Term> enumerate(const TermGrammar& g, VarId x, uint32_t depth,
                         size_t cap = 200000);

// Some minimal-height term of sem(x), if any.
std::optional<Term> shortest_term(const TermGrammar& g, VarId x);

// Variables reachable from the roots (and any other seeds given).
std::set<VarId> reachable(const TermGrammar& g, const std::vector<VarId>& seeds);

// Drops variables unreachable from Ca/Su. The any-marker is cleared if the
// universal variable goes away.
TermGrammar drop_unreachable(const TermGrammar& g);

// --- serialization ----------------------------------------------------------

// Canonical text: deterministic variable naming (ca, su, any, V1, V2, ...)
// and sorted rules; parse_grammar reads it back to a structurally identical
// grammar.
std::string to_text(const TermGrammar& g);

struct RuleRecord {
  std::string lhs;
  std::string symbol;
  uint32_t arity;
  std::vector<std::string> children;
};

// Structured export in canonical order, one record per rule.
std::vector<RuleRecord> to_records(const TermGrammar& g);

} // namespace regal
