#include "regal/engine.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace regal {

namespace {

std::string fmt_pred(const FunctionSymbol& pred) {
  return pred.name + "/" + std::to_string(pred.arity);
}

uint32_t rule_count(const TermGrammar& g) {
  uint32_t n = 0;
  for (VarId v : g.var_ids()) n += static_cast<uint32_t>(g.rules(v).size());
  return n;
}

void add_warning(std::vector<Warning>& out, Warning w) {
  if (std::find(out.begin(), out.end(), w) == out.end())
    out.push_back(std::move(w));
}

// A predicate without clauses is a constraint predicate, declared or not.
bool constraint_like(const Program& program, const FunctionSymbol& pred) {
  return program.is_constraint(pred) || !program.is_defined(pred);
}

// Constraint predicates that some clause body calls although g0 gives them
// no call rule at all. Reported once per predicate.
std::vector<Warning> missing_call_rules(const Program& program,
                                        const TermGrammar& g0) {
  std::vector<Warning> out;
  std::set<std::string> seen;
  for (const Clause& clause : program.clauses()) {
    for (const Atom& atom : clause.body) {
      if (!constraint_like(program, atom.pred)) continue;
      if (g0.rule_for(TermGrammar::kCa, atom.pred) != nullptr) continue;
      if (!seen.insert(fmt_pred(atom.pred)).second) continue;
      Warning w;
      w.kind = Warning::Kind::constraint_call_violation;
      w.description = "constraint predicate " + fmt_pred(atom.pred) +
                      " is called but has no call rule in the initial grammar";
      w.witness = atom_term(atom);
      out.push_back(std::move(w));
    }
  }
  return out;
}

TermGrammar step_with_stats(const TermGrammar& g_i, const Program& program,
                            uint32_t* contributions) {
  TermGrammar next = g_i;
  const std::vector<FunctionSymbol> sig = program.signature();
  uint32_t count = 0;
  for (size_t idx = 0; idx < program.clauses().size(); ++idx) {
    auto contribs = solve_clause_all(program.clauses()[idx], g_i, sig,
                                     static_cast<uint32_t>(idx));
    for (const Contribution& c : contribs) {
      next.import(c.grammar, true);
      ++count;
    }
  }
  next = discriminative_approx(normalize(next));
  next = drop_unreachable(normalize(next));
  if (contributions) *contributions = count;
  return next;
}

bool interface_included(const TermGrammar& sup, const TermGrammar& sub) {
  return includes_across(sup, TermGrammar::kCa, sub, TermGrammar::kCa) &&
         includes_across(sup, TermGrammar::kSu, sub, TermGrammar::kSu);
}

} // namespace

std::string Warning::str() const {
  switch (kind) {
    case Kind::constraint_call_violation:
      return "warning [constraint-call] " + description;
    case Kind::iteration_cap_reached:
      return "warning [iteration-cap] " + description;
  }
  return "warning " + description;
}

bool Warning::operator==(const Warning& other) const {
  if (kind != other.kind || description != other.description) return false;
  if (witness.has_value() != other.witness.has_value()) return false;
  return !witness || *witness == *other.witness;
}

std::string TraceStep::str() const {
  std::ostringstream os;
  os << "step " << step << ": contributions=" << contributions
     << " vars=" << vars << " rules=" << rules << " warnings=" << warnings;
  return os.str();
}

TermGrammar iteration_step(const TermGrammar& g_i, const Program& program) {
  return step_with_stats(g_i, program, nullptr);
}

std::optional<Warning> constraint_call_check(const TermGrammar& g,
                                             const TermGrammar& g0,
                                             const Program& program) {
  TermGrammar filtered = g;
  filtered.filter_rules(TermGrammar::kCa, [&](const GrammarRule& r) {
    return constraint_like(program, r.symbol);
  });
  filtered = drop_unreachable(filtered);
  if (filtered.rules(TermGrammar::kCa).empty()) return std::nullopt;

  const TermGrammar& bound = g0;
  if (includes_across(bound, TermGrammar::kCa, filtered, TermGrammar::kCa))
    return std::nullopt;

  Warning w;
  w.kind = Warning::Kind::constraint_call_violation;
  w.witness = includes_across_witness(bound, TermGrammar::kCa, filtered,
                                      TermGrammar::kCa);
  w.description = "constraint call " +
                  (w.witness ? w.witness->str() : std::string("(unknown)")) +
                  " is outside the allowed call set";
  return w;
}

AnalysisResult analyze(const Program& program, const TermGrammar& g0,
                       const WideningConfig& cfg,
                       std::optional<uint32_t> iteration_cap) {
  AnalysisResult res;
  for (Warning& w : missing_call_rules(program, g0))
    add_warning(res.warnings, std::move(w));

  TermGrammar h = restrict_grammar(normalize(g0), cfg);
  if (auto w = constraint_call_check(h, g0, program))
    add_warning(res.warnings, std::move(*w));

  TraceStep t0;
  t0.step = 0;
  t0.vars = static_cast<uint32_t>(h.var_ids().size());
  t0.rules = rule_count(h);
  t0.warnings = static_cast<uint32_t>(res.warnings.size());
  res.trace.push_back(t0);

  uint32_t i = 0;
  while (true) {
    if (iteration_cap && i >= *iteration_cap) {
      res.hit_cap = true;
      Warning w;
      w.kind = Warning::Kind::iteration_cap_reached;
      w.description = "no fixpoint after " + std::to_string(*iteration_cap) +
                      " iterations; the result may be incomplete";
      add_warning(res.warnings, std::move(w));
      break;
    }
    uint32_t contributions = 0;
    TermGrammar stepped = step_with_stats(h, program, &contributions);
    TermGrammar widened = restrict_grammar(stepped, cfg);
    ++i;
    if (auto w = constraint_call_check(widened, g0, program))
      add_warning(res.warnings, std::move(*w));

    TraceStep t;
    t.step = i;
    t.contributions = contributions;
    t.vars = static_cast<uint32_t>(widened.var_ids().size());
    t.rules = rule_count(widened);
    t.warnings = static_cast<uint32_t>(res.warnings.size());
    res.trace.push_back(t);

    const bool fixpoint = interface_included(h, widened);
    h = std::move(widened);
    if (fixpoint) break;
  }

  res.grammar = std::move(h);
  res.iterations = i;
  return res;
}

CheckResult check_specification(const Program& program,
                                const TermGrammar& spec,
                                const WideningConfig&) {
  CheckResult res;
  TermGrammar bound = normalize(spec);

  for (Warning& w : missing_call_rules(program, bound)) {
    res.reasons.push_back(w.description);
    add_warning(res.warnings, std::move(w));
  }

  TermGrammar stepped = iteration_step(bound, program);

  if (!includes_across(bound, TermGrammar::kCa, stepped, TermGrammar::kCa)) {
    res.call_witness = includes_across_witness(bound, TermGrammar::kCa,
                                               stepped, TermGrammar::kCa);
    res.reasons.push_back(
        "derived call " +
        (res.call_witness ? res.call_witness->str() : std::string("(unknown)")) +
        " is not covered by the specified call set");
  }
  if (!includes_across(bound, TermGrammar::kSu, stepped, TermGrammar::kSu)) {
    res.success_witness = includes_across_witness(bound, TermGrammar::kSu,
                                                  stepped, TermGrammar::kSu);
    res.reasons.push_back(
        "derived success " +
        (res.success_witness ? res.success_witness->str()
                             : std::string("(unknown)")) +
        " is not covered by the specified success set");
  }
  if (auto w = constraint_call_check(stepped, bound, program)) {
    res.reasons.push_back(w->description);
    add_warning(res.warnings, std::move(*w));
  }

  res.correct = res.reasons.empty();
  return res;
}

} // namespace regal
