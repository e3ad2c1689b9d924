#include "regal/solver.hpp"

#include <deque>
#include <stdexcept>

#include "grammar_internal.hpp"

namespace regal {

namespace {

// Emptiness of a freshly intersected variable. Variables carried over from
// g_i keep whatever emptiness they had there; only product variables created
// by intersect_into need the fixpoint, and they can only reference each other
// or g_i variables.
bool var_empty(const TermGrammar& work, VarId v) {
  return empties(work).count(v) != 0;
}

std::optional<Binding> match_rec(const Term& t, VarId x, Binding env,
                                 TermGrammar& work,
                                 detail::IntersectMemo& memo) {
  if (t.is_var()) {
    auto it = env.find(t.var_name());
    if (it == env.end()) {
      env.emplace(t.var_name(), x);
      return env;
    }
    VarId met = detail::intersect_into(work, it->second, x, memo);
    if (var_empty(work, met)) return std::nullopt;
    it->second = met;
    return env;
  }
  const GrammarRule* rule = work.rule_for(x, t.symbol());
  if (rule == nullptr) return std::nullopt;
  // rule stays valid: the recursion only adds rules to fresh product vars.
  for (size_t i = 0; i < t.args().size(); ++i) {
    auto next = match_rec(t.args()[i], rule->children[i], std::move(env),
                          work, memo);
    if (!next) return std::nullopt;
    env = std::move(*next);
  }
  return env;
}

// Matches every argument of atom against the children of root's rule for the
// atom's predicate. No rule means the atom cannot be called/cannot succeed.
std::optional<Binding> match_atom(const Atom& atom, VarId root, Binding env,
                                  TermGrammar& work,
                                  detail::IntersectMemo& memo) {
  const GrammarRule* rule = work.rule_for(root, atom.pred);
  if (rule == nullptr) return std::nullopt;
  for (size_t i = 0; i < atom.args.size(); ++i) {
    auto next =
        match_rec(atom.args[i], rule->children[i], std::move(env), work, memo);
    if (!next) return std::nullopt;
    env = std::move(*next);
  }
  return env;
}

// Copies the subgrammar of `work` reachable from `children` into a fresh
// grammar and installs `root > pred(children')` there.
Contribution extract(const TermGrammar& work, const FunctionSymbol& pred,
                     const std::vector<VarId>& children, VarId root,
                     uint32_t clause_index, uint32_t implication) {
  Contribution c;
  c.clause_index = clause_index;
  c.implication = implication;
  c.success_rule = (root == TermGrammar::kSu);

  std::map<VarId, VarId> to_new;
  std::deque<VarId> queue;
  auto visit = [&](VarId v) -> VarId {
    auto it = to_new.find(v);
    if (it != to_new.end()) return it->second;
    VarId nv = c.grammar.fresh(work.name(v));
    to_new.emplace(v, nv);
    queue.push_back(v);
    return nv;
  };

  std::vector<VarId> new_children;
  new_children.reserve(children.size());
  for (VarId ch : children) new_children.push_back(visit(ch));

  while (!queue.empty()) {
    VarId v = queue.front();
    queue.pop_front();
    VarId nv = to_new.at(v);
    for (const GrammarRule& r : work.rules(v)) {
      std::vector<VarId> kids;
      kids.reserve(r.children.size());
      for (VarId ch : r.children) kids.push_back(visit(ch));
      c.grammar.add_rule(nv, r.symbol, std::move(kids));
    }
  }

  if (auto any = work.any_var()) {
    auto it = to_new.find(*any);
    if (it != to_new.end()) c.grammar.mark_any(it->second);
  }

  c.grammar.add_rule(root, pred, std::move(new_children));
  return c;
}

Contribution emit(const Atom& atom, const Binding& env, TermGrammar& work,
                  const std::vector<FunctionSymbol>& sig, VarId root,
                  uint32_t clause_index, uint32_t implication) {
  std::vector<VarId> children;
  children.reserve(atom.args.size());
  for (const Term& arg : atom.args)
    children.push_back(build_term(arg, env, work, sig));
  return extract(work, atom.pred, children, root, clause_index, implication);
}

} // namespace

std::optional<Binding> match_term(const Term& t, VarId x, const Binding& env,
                                  TermGrammar& work) {
  detail::IntersectMemo memo;
  return match_rec(t, x, env, work, memo);
}

VarId build_term(const Term& t, const Binding& env, TermGrammar& work,
                 const std::vector<FunctionSymbol>& sig) {
  if (t.is_var()) {
    auto it = env.find(t.var_name());
    if (it != env.end()) return it->second;
    return work.ensure_any(sig);
  }
  std::vector<VarId> children;
  children.reserve(t.args().size());
  for (const Term& arg : t.args())
    children.push_back(build_term(arg, env, work, sig));
  VarId v = work.fresh("");
  work.add_rule(v, t.symbol(), std::move(children));
  return v;
}

std::optional<Contribution> solve_clause(const Clause& clause, uint32_t j,
                                         const TermGrammar& g_i,
                                         const std::vector<FunctionSymbol>& sig,
                                         uint32_t clause_index) {
  const uint32_t n = static_cast<uint32_t>(clause.body.size());
  if (j < 1 || j > n + 1)
    throw std::invalid_argument("solve_clause: implication index out of range");

  TermGrammar work = g_i;
  detail::IntersectMemo memo;
  auto env = match_atom(clause.head, TermGrammar::kCa, Binding{}, work, memo);
  if (!env) return std::nullopt;
  const uint32_t prefix = (j <= n) ? j - 1 : n;
  for (uint32_t l = 0; l < prefix; ++l) {
    env = match_atom(clause.body[l], TermGrammar::kSu, std::move(*env), work,
                     memo);
    if (!env) return std::nullopt;
  }
  const Atom& target = (j <= n) ? clause.body[j - 1] : clause.head;
  const VarId root = (j <= n) ? TermGrammar::kCa : TermGrammar::kSu;
  return emit(target, *env, work, sig, root, clause_index, j);
}

std::vector<Contribution> solve_clause_all(
    const Clause& clause, const TermGrammar& g_i,
    const std::vector<FunctionSymbol>& sig, uint32_t clause_index) {
  std::vector<Contribution> out;
  TermGrammar work = g_i;
  detail::IntersectMemo memo;
  auto env = match_atom(clause.head, TermGrammar::kCa, Binding{}, work, memo);
  if (!env) return out;
  const uint32_t n = static_cast<uint32_t>(clause.body.size());
  for (uint32_t j = 1; j <= n; ++j) {
    out.push_back(emit(clause.body[j - 1], *env, work, sig, TermGrammar::kCa,
                       clause_index, j));
    env = match_atom(clause.body[j - 1], TermGrammar::kSu, std::move(*env),
                     work, memo);
    if (!env) return out;
  }
  out.push_back(emit(clause.head, *env, work, sig, TermGrammar::kSu,
                     clause_index, n + 1));
  return out;
}

} // namespace regal
