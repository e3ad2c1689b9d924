#include "regal/interp.hpp"

#include <vector>

namespace regal {

namespace {

Term walk(const Subst& s, Term t) {
  while (t.is_var()) {
    auto it = s.find(t.var_name());
    if (it == s.end()) break;
    t = it->second;
  }
  return t;
}

bool occurs(const Subst& s, const std::string& name, const Term& t0) {
  Term t = walk(s, t0);
  if (t.is_var()) return t.var_name() == name;
  for (const Term& a : t.args())
    if (occurs(s, name, a)) return true;
  return false;
}

Term rename_term(const Term& t, const std::string& suffix) {
  if (t.is_var()) return Term::var(t.var_name() + suffix);
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(rename_term(a, suffix));
  return Term::app(t.symbol(), std::move(args));
}

Atom rename_atom(const Atom& a, const std::string& suffix) {
  std::vector<Term> args;
  args.reserve(a.args.size());
  for (const Term& t : a.args) args.push_back(rename_term(t, suffix));
  return Atom{a.pred, std::move(args)};
}

struct Entry {
  bool marker; // true: the atom's proof completes here, record its success
  Atom atom;
};

struct Runner {
  const Program& program;
  const TermGrammar& builtins;
  DerivationObservation obs;
  uint32_t rename_counter = 0;

  Atom subst_atom(const Subst& s, const Atom& a) {
    std::vector<Term> args;
    args.reserve(a.args.size());
    for (const Term& t : a.args) args.push_back(apply_subst(s, t));
    return Atom{a.pred, std::move(args)};
  }

  static bool atom_ground(const Atom& a) {
    for (const Term& t : a.args)
      if (!t.ground()) return false;
    return true;
  }

  Clause rename(const Clause& c) {
    // '#' cannot occur in parsed variable names, so renamed variables are
    // fresh with respect to the whole program and all earlier renamings.
    const std::string suffix = "#" + std::to_string(++rename_counter);
    Clause out;
    out.head = rename_atom(c.head, suffix);
    out.body.reserve(c.body.size());
    for (const Atom& a : c.body) out.body.push_back(rename_atom(a, suffix));
    return out;
  }

  void derive(std::vector<Entry> stack, Subst s, uint32_t steps_left) {
    for (;;) {
      if (stack.empty()) return;
      Entry e = std::move(stack.back());
      stack.pop_back();
      Atom inst = subst_atom(s, e.atom);
      const bool ground = atom_ground(inst);

      if (e.marker) {
        if (ground)
          obs.successes.insert(atom_term(inst));
        else
          obs.skipped_nonground = true;
        continue;
      }

      if (ground)
        obs.calls.insert(atom_term(inst));
      else
        obs.skipped_nonground = true;

      // Undefined predicates resolve like constraints: against builtins' Su.
      if (program.is_constraint(inst.pred) || !program.is_defined(inst.pred)) {
        if (steps_left == 0) {
          obs.truncated = true;
          return;
        }
        if (!ground) {
          obs.skipped_nonground = true;
          return;
        }
        if (!member(builtins, TermGrammar::kSu, atom_term(inst))) return;
        obs.successes.insert(atom_term(inst));
        --steps_left;
        continue;
      }

      std::vector<const Clause*> candidates;
      for (const Clause& c : program.clauses())
        if (c.head.pred == inst.pred) candidates.push_back(&c);
      if (candidates.empty()) return;
      if (steps_left == 0) {
        obs.truncated = true;
        return;
      }
      for (const Clause* c : candidates) {
        Clause rc = rename(*c);
        auto s2 = unify(atom_term(e.atom), atom_term(rc.head), s);
        if (!s2) continue;
        std::vector<Entry> next = stack;
        next.push_back(Entry{true, e.atom});
        for (auto it = rc.body.rbegin(); it != rc.body.rend(); ++it)
          next.push_back(Entry{false, *it});
        derive(std::move(next), std::move(*s2), steps_left - 1);
      }
      return;
    }
  }
};

} // namespace

Term apply_subst(const Subst& s, const Term& t) {
  Term w = walk(s, t);
  if (w.is_var() || w.args().empty()) return w;
  std::vector<Term> args;
  args.reserve(w.args().size());
  for (const Term& a : w.args()) args.push_back(apply_subst(s, a));
  return Term::app(w.symbol(), std::move(args));
}

std::optional<Subst> unify(const Term& a0, const Term& b0, Subst s) {
  Term a = walk(s, a0);
  Term b = walk(s, b0);
  if (a.is_var() && b.is_var() && a.var_name() == b.var_name()) return s;
  if (a.is_var()) {
    if (occurs(s, a.var_name(), b)) return std::nullopt;
    s.insert_or_assign(a.var_name(), b);
    return s;
  }
  if (b.is_var()) {
    if (occurs(s, b.var_name(), a)) return std::nullopt;
    s.insert_or_assign(b.var_name(), a);
    return s;
  }
  if (!(a.symbol() == b.symbol())) return std::nullopt;
  std::optional<Subst> cur = std::move(s);
  for (size_t i = 0; i < a.args().size(); ++i) {
    cur = unify(a.args()[i], b.args()[i], std::move(*cur));
    if (!cur) return std::nullopt;
  }
  return cur;
}

DerivationObservation run_bounded(const Program& program, const Atom& goal,
                                  uint32_t depth,
                                  const TermGrammar& builtin_success) {
  Runner runner{program, builtin_success, DerivationObservation{}};
  std::vector<Entry> stack;
  stack.push_back(Entry{true, goal});
  stack.push_back(Entry{false, goal});
  runner.derive(std::move(stack), Subst{}, depth);
  return std::move(runner.obs);
}

SoundnessReport soundness_suite(const Program& program, const TermGrammar& g0,
                                const TermGrammar& final_grammar,
                                uint32_t goal_depth, uint32_t deriv_depth) {
  SoundnessReport report;
  TermGrammar g0n = normalize(g0);
  const std::set<Term> goals = enumerate(g0n, TermGrammar::kCa, goal_depth);
  for (const Term& gt : goals) {
    Atom goal{gt.symbol(), gt.args()};
    DerivationObservation obs =
        run_bounded(program, goal, deriv_depth, g0);
    ++report.goals;
    report.any_truncated = report.any_truncated || obs.truncated;
    for (const Term& c : obs.calls) {
      ++report.calls_checked;
      if (!member(final_grammar, TermGrammar::kCa, c)) {
        report.pass = false;
        report.counterexample = c;
        report.counterexample_is_call = true;
        return report;
      }
    }
    for (const Term& t : obs.successes) {
      ++report.successes_checked;
      if (!member(final_grammar, TermGrammar::kSu, t)) {
        report.pass = false;
        report.counterexample = t;
        report.counterexample_is_call = false;
        return report;
      }
    }
  }
  return report;
}

} // namespace regal
