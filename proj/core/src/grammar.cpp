#include "regal/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <sstream>

#include "grammar_internal.hpp"

namespace regal {

TermGrammar::TermGrammar() {
  vars_[kCa] = VarEntry{"ca", {}};
  vars_[kSu] = VarEntry{"su", {}};
}

const TermGrammar::VarEntry& TermGrammar::entry(VarId v) const {
  auto it = vars_.find(v);
  if (it == vars_.end()) {
    throw GrammarError("unknown grammar variable id " + std::to_string(v));
  }
  return it->second;
}

VarId TermGrammar::fresh(std::string name) {
  VarId id = next_++;
  if (name.empty()) name = "V" + std::to_string(id);
  vars_[id] = VarEntry{std::move(name), {}};
  return id;
}

void TermGrammar::set_name(VarId v, std::string name) {
  entry(v);
  vars_[v].name = std::move(name);
}

void TermGrammar::add_rule(VarId lhs, FunctionSymbol sym,
                           std::vector<VarId> children) {
  if (children.size() != sym.arity) {
    throw GrammarError("rule arity mismatch for " + sym.str());
  }
  entry(lhs);
  for (VarId c : children) entry(c);
  GrammarRule rule{std::move(sym), std::move(children)};
  auto& rs = vars_[lhs].rules;
  auto it = std::lower_bound(rs.begin(), rs.end(), rule);
  if (it != rs.end() && *it == rule) return;
  rs.insert(it, std::move(rule));
}

const GrammarRule* TermGrammar::rule_for(VarId v,
                                         const FunctionSymbol& sym) const {
  for (const auto& r : entry(v).rules) {
    if (r.symbol == sym) return &r;
    if (sym < r.symbol) break;
  }
  return nullptr;
}

bool TermGrammar::is_discriminative() const {
  for (const auto& [v, e] : vars_) {
    for (size_t i = 1; i < e.rules.size(); ++i) {
      if (e.rules[i - 1].symbol == e.rules[i].symbol) return false;
    }
  }
  return true;
}

std::vector<VarId> TermGrammar::var_ids() const {
  std::vector<VarId> out;
  out.reserve(vars_.size());
  for (const auto& [v, e] : vars_) out.push_back(v);
  return out;
}

size_t TermGrammar::rule_count() const {
  size_t n = 0;
  for (const auto& [v, e] : vars_) n += e.rules.size();
  return n;
}

namespace {

std::string lowercase(const std::string& s) {
  std::string out = s;
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

} // namespace

std::optional<VarId> TermGrammar::find_by_name(const std::string& name) const {
  std::string low = lowercase(name);
  if (low == "ca") return kCa;
  if (low == "su") return kSu;
  if (low == "any") return any_;
  for (const auto& [v, e] : vars_) {
    if (e.name == name) return v;
  }
  return std::nullopt;
}

std::map<VarId, VarId> TermGrammar::import(const TermGrammar& src,
                                           bool identify_roots) {
  std::map<VarId, VarId> m;
  for (const auto& [v, e] : src.vars_) {
    if (identify_roots && (v == kCa || v == kSu)) {
      m[v] = v;
    } else {
      m[v] = fresh(e.name);
    }
  }
  for (const auto& [v, e] : src.vars_) {
    for (const auto& r : e.rules) {
      std::vector<VarId> children;
      children.reserve(r.children.size());
      for (VarId c : r.children) children.push_back(m.at(c));
      add_rule(m.at(v), r.symbol, std::move(children));
    }
  }
  if (!any_ && src.any_) {
    auto it = m.find(*src.any_);
    if (it != m.end()) any_ = it->second;
  }
  return m;
}

VarId TermGrammar::ensure_any(const std::vector<FunctionSymbol>& sig) {
  if (any_ && vars_.count(*any_)) return *any_;
  VarId v = fresh("any");
  any_ = v;
  for (const auto& sym : sig) {
    add_rule(v, sym, std::vector<VarId>(sym.arity, v));
  }
  return v;
}

void TermGrammar::replace_rules(VarId v, std::vector<GrammarRule> rules) {
  entry(v);
  for (const auto& r : rules) {
    if (r.children.size() != r.symbol.arity) {
      throw GrammarError("rule arity mismatch for " + r.symbol.str());
    }
    for (VarId c : r.children) entry(c);
  }
  std::sort(rules.begin(), rules.end());
  rules.erase(std::unique(rules.begin(), rules.end()), rules.end());
  vars_[v].rules = std::move(rules);
}

void TermGrammar::drop_var(VarId v) {
  if (v == kCa || v == kSu) {
    throw GrammarError("cannot drop a root variable");
  }
  if (any_ && *any_ == v) any_.reset();
  vars_.erase(v);
}

// --- semantics and algebra -------------------------------------------------

bool member(const TermGrammar& g, VarId x, const Term& t) {
  if (!t.ground()) throw GrammarError("member: term is not ground");
  for (const auto& r : g.rules(x)) {
    if (r.symbol != t.symbol()) continue;
    bool ok = true;
    for (size_t i = 0; i < r.children.size() && ok; ++i) {
      ok = member(g, r.children[i], t.args()[i]);
    }
    if (ok) return true;
  }
  return false;
}

std::set<VarId> empties(const TermGrammar& g) {
  std::set<VarId> productive;
  bool changed = true;
  while (changed) {
    changed = false;
    for (VarId v : g.var_ids()) {
      if (productive.count(v)) continue;
      for (const auto& r : g.rules(v)) {
        bool ok = true;
        for (VarId c : r.children) {
          if (!productive.count(c)) {
            ok = false;
            break;
          }
        }
        if (ok) {
          productive.insert(v);
          changed = true;
          break;
        }
      }
    }
  }
  std::set<VarId> out;
  for (VarId v : g.var_ids()) {
    if (!productive.count(v)) out.insert(v);
  }
  return out;
}

TermGrammar normalize(const TermGrammar& g) {
  std::set<VarId> empty = empties(g);
  if (empty.empty()) return g;
  TermGrammar out = g;
  for (VarId v : out.var_ids()) {
    out.filter_rules(v, [&](const GrammarRule& r) {
      for (VarId c : r.children) {
        if (empty.count(c)) return false;
      }
      return true;
    });
  }
  return out;
}

namespace {

std::map<VarId, uint32_t> min_heights(const TermGrammar& g) {
  constexpr uint32_t inf = UINT32_MAX;
  std::map<VarId, uint32_t> h;
  for (VarId v : g.var_ids()) h[v] = inf;
  bool changed = true;
  while (changed) {
    changed = false;
    for (VarId v : g.var_ids()) {
      for (const auto& r : g.rules(v)) {
        uint32_t worst = 0;
        bool ok = true;
        for (VarId c : r.children) {
          if (h[c] == inf) {
            ok = false;
            break;
          }
          worst = std::max(worst, h[c]);
        }
        if (!ok) continue;
        uint32_t cost = worst + 1;
        if (cost < h[v]) {
          h[v] = cost;
          changed = true;
        }
      }
    }
  }
  return h;
}

// A minimal-height term of sem(v), following the first rule (in sorted
// order) that attains the minimum at every level.
Term min_term_at(const TermGrammar& g, const std::map<VarId, uint32_t>& h,
                 VarId v) {
  uint32_t target = h.at(v);
  if (target == UINT32_MAX) {
    throw GrammarError("no term exists for an empty variable");
  }
  for (const auto& r : g.rules(v)) {
    uint32_t worst = 0;
    bool ok = true;
    for (VarId c : r.children) {
      if (h.at(c) == UINT32_MAX) {
        ok = false;
        break;
      }
      worst = std::max(worst, h.at(c));
    }
    if (!ok || worst + 1 != target) continue;
    std::vector<Term> args;
    args.reserve(r.children.size());
    for (VarId c : r.children) args.push_back(min_term_at(g, h, c));
    return Term::app(r.symbol, std::move(args));
  }
  throw GrammarError("inconsistent height table");
}

// Searches the product graph of (sub-side, sup-side) variable pairs for a
// pair where the sub side has a rule the sup side cannot match. On normalized
// discriminative grammars such a pair exists iff inclusion fails, and the
// search path yields a witness term.
struct PairEntry {
  VarId u; // sub side
  VarId v; // sup side
  size_t parent;
  GrammarRule via; // parent's sub-side rule that led here
  size_t pos;      // child position within via
};

std::optional<Term> inclusion_counterexample(const TermGrammar& g, VarId sup,
                                             VarId sub) {
  if (sup == sub) return std::nullopt;
  constexpr size_t npos = static_cast<size_t>(-1);
  std::vector<PairEntry> entries;
  std::map<std::pair<VarId, VarId>, size_t> seen;
  std::deque<size_t> queue;
  entries.push_back({sub, sup, npos, {}, 0});
  seen[{sub, sup}] = 0;
  queue.push_back(0);
  std::optional<std::map<VarId, uint32_t>> heights;
  auto fill = [&](VarId c) {
    if (!heights) heights = min_heights(g);
    return min_term_at(g, *heights, c);
  };
  while (!queue.empty()) {
    size_t idx = queue.front();
    queue.pop_front();
    VarId u = entries[idx].u;
    VarId v = entries[idx].v;
    for (const auto& ru : g.rules(u)) {
      const GrammarRule* rv = g.rule_for(v, ru.symbol);
      if (!rv) {
        // Bad pair: assemble the witness bottom-up along the search path.
        std::vector<Term> args;
        args.reserve(ru.children.size());
        for (VarId c : ru.children) args.push_back(fill(c));
        Term wit = Term::app(ru.symbol, std::move(args));
        size_t at = idx;
        while (entries[at].parent != npos) {
          const PairEntry& e = entries[at];
          std::vector<Term> up;
          up.reserve(e.via.children.size());
          for (size_t i = 0; i < e.via.children.size(); ++i) {
            up.push_back(i == e.pos ? wit : fill(e.via.children[i]));
          }
          wit = Term::app(e.via.symbol, std::move(up));
          at = e.parent;
        }
        return wit;
      }
      for (size_t i = 0; i < ru.children.size(); ++i) {
        std::pair<VarId, VarId> key{ru.children[i], rv->children[i]};
        if (seen.count(key)) continue;
        seen[key] = entries.size();
        entries.push_back({key.first, key.second, idx, ru, i});
        queue.push_back(entries.size() - 1);
      }
    }
  }
  return std::nullopt;
}

} // namespace

bool includes(const TermGrammar& g, VarId sup, VarId sub) {
  TermGrammar n = normalize(g);
  return !inclusion_counterexample(n, sup, sub).has_value();
}

std::optional<Term> includes_witness(const TermGrammar& g, VarId sup,
                                     VarId sub) {
  TermGrammar n = normalize(g);
  return inclusion_counterexample(n, sup, sub);
}

bool includes_across(const TermGrammar& sup_g, VarId sup_var,
                     const TermGrammar& sub_g, VarId sub_var) {
  return !includes_across_witness(sup_g, sup_var, sub_g, sub_var).has_value();
}

std::optional<Term> includes_across_witness(const TermGrammar& sup_g,
                                            VarId sup_var,
                                            const TermGrammar& sub_g,
                                            VarId sub_var) {
  TermGrammar combined;
  auto m_sup = combined.import(sup_g, false);
  auto m_sub = combined.import(sub_g, false);
  return includes_witness(combined, m_sup.at(sup_var), m_sub.at(sub_var));
}

namespace detail {

VarId intersect_into(TermGrammar& g, VarId x, VarId y, IntersectMemo& memo) {
  if (x == y) return x;
  std::pair<VarId, VarId> key{std::min(x, y), std::max(x, y)};
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  VarId p = g.fresh("I" + std::to_string(key.first) + "_" +
                    std::to_string(key.second));
  memo[key] = p;
  // Copy the rule list: recursion adds variables to g.
  std::vector<GrammarRule> xrules = g.rules(x);
  for (const auto& rx : xrules) {
    const GrammarRule* ry = g.rule_for(y, rx.symbol);
    if (!ry) continue;
    GrammarRule ryc = *ry;
    std::vector<VarId> children;
    children.reserve(rx.children.size());
    for (size_t i = 0; i < rx.children.size(); ++i) {
      children.push_back(intersect_into(g, rx.children[i], ryc.children[i], memo));
    }
    g.add_rule(p, rx.symbol, std::move(children));
  }
  return p;
}

VarId merge_into(TermGrammar& g, const TermGrammar& source,
                 const std::set<VarId>& vars, MergeMemo& memo) {
  if (vars.empty()) throw GrammarError("merge of an empty variable set");
  if (vars.size() == 1) return *vars.begin();
  auto it = memo.find(vars);
  if (it != memo.end()) return it->second;
  VarId m = g.fresh("");
  memo[vars] = m;
  std::map<FunctionSymbol, std::vector<std::set<VarId>>> by_symbol;
  for (VarId v : vars) {
    for (const auto& r : source.rules(v)) {
      auto& sets = by_symbol[r.symbol];
      sets.resize(r.symbol.arity);
      for (size_t i = 0; i < r.children.size(); ++i) {
        sets[i].insert(r.children[i]);
      }
    }
  }
  for (const auto& [sym, sets] : by_symbol) {
    std::vector<VarId> children;
    children.reserve(sets.size());
    for (const auto& s : sets) {
      children.push_back(merge_into(g, source, s, memo));
    }
    g.add_rule(m, sym, std::move(children));
  }
  return m;
}

} // namespace detail

std::pair<VarId, TermGrammar> union_vars(const TermGrammar& g, VarId x,
                                         VarId y) {
  TermGrammar out = g;
  if (x == y) return {x, out};
  detail::MergeMemo memo;
  VarId u = detail::merge_into(out, g, {x, y}, memo);
  return {u, out};
}

std::pair<VarId, TermGrammar> intersect_vars(const TermGrammar& g, VarId x,
                                             VarId y) {
  TermGrammar out = g;
  detail::IntersectMemo memo;
  VarId p = detail::intersect_into(out, x, y, memo);
  return {p, out};
}

TermGrammar rename_apart(const TermGrammar& g) {
  TermGrammar out;
  out.import(g, true);
  return out;
}

TermGrammar discriminative_approx(const TermGrammar& g) {
  TermGrammar out = g;
  detail::MergeMemo memo;
  for (VarId v : g.var_ids()) {
    const auto& rules = g.rules(v);
    bool dup = false;
    for (size_t i = 1; i < rules.size(); ++i) {
      if (rules[i - 1].symbol == rules[i].symbol) {
        dup = true;
        break;
      }
    }
    if (!dup) continue;
    std::map<FunctionSymbol, std::vector<std::set<VarId>>> by_symbol;
    for (const auto& r : rules) {
      auto& sets = by_symbol[r.symbol];
      sets.resize(r.symbol.arity);
      for (size_t i = 0; i < r.children.size(); ++i) {
        sets[i].insert(r.children[i]);
      }
    }
    std::vector<GrammarRule> merged;
    for (const auto& [sym, sets] : by_symbol) {
      std::vector<VarId> children;
      children.reserve(sets.size());
      for (const auto& s : sets) {
        children.push_back(detail::merge_into(out, g, s, memo));
      }
      merged.push_back(GrammarRule{sym, std::move(children)});
    }
    out.replace_rules(v, std::move(merged));
  }
  return out;
}

std::set<Term> enumerate(const TermGrammar& g, VarId x, uint32_t depth,
                         size_t cap) {
  std::map<std::pair<VarId, uint32_t>, std::set<Term>> memo;
  size_t produced = 0;
  // rec(v, d) = { t in sem(v) | height(t) <= d }, with height(constant) = 1.
  auto rec = [&](auto&& self, VarId v, uint32_t d) -> const std::set<Term>& {
    auto key = std::make_pair(v, d);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::set<Term> out;
    if (d > 0) {
      for (const auto& r : g.rules(v)) {
        if (r.children.empty()) {
          if (out.insert(Term::app(r.symbol)).second &&
              ++produced > cap) {
            throw EnumerationOverflow("enumeration exceeds cap of " +
                                      std::to_string(cap) + " terms");
          }
          continue;
        }
        std::vector<const std::set<Term>*> child_sets;
        child_sets.reserve(r.children.size());
        bool any_empty = false;
        for (VarId c : r.children) {
          const auto& s = self(self, c, d - 1);
          if (s.empty()) {
            any_empty = true;
            break;
          }
          child_sets.push_back(&s);
        }
        if (any_empty) continue;
        std::vector<std::set<Term>::const_iterator> idx;
        for (const auto* s : child_sets) idx.push_back(s->begin());
        while (true) {
          std::vector<Term> args;
          args.reserve(idx.size());
          for (const auto& i : idx) args.push_back(*i);
          if (out.insert(Term::app(r.symbol, std::move(args))).second &&
              ++produced > cap) {
            throw EnumerationOverflow("enumeration exceeds cap of " +
                                      std::to_string(cap) + " terms");
          }
          size_t k = idx.size();
          while (k > 0) {
            --k;
            ++idx[k];
            if (idx[k] != child_sets[k]->end()) break;
            idx[k] = child_sets[k]->begin();
            if (k == 0) goto done_rule;
          }
        }
      done_rule:;
      }
    }
    auto [pos, inserted] = memo.emplace(key, std::move(out));
    (void)inserted;
    return pos->second;
  };
  return rec(rec, x, depth);
}

std::optional<Term> shortest_term(const TermGrammar& g, VarId x) {
  auto h = min_heights(g);
  if (h.at(x) == UINT32_MAX) return std::nullopt;
  return min_term_at(g, h, x);
}

std::set<VarId> reachable(const TermGrammar& g,
                          const std::vector<VarId>& seeds) {
  std::set<VarId> seen;
  std::deque<VarId> queue;
  for (VarId s : seeds) {
    if (g.has_var(s) && seen.insert(s).second) queue.push_back(s);
  }
  while (!queue.empty()) {
    VarId v = queue.front();
    queue.pop_front();
    for (const auto& r : g.rules(v)) {
      for (VarId c : r.children) {
        if (seen.insert(c).second) queue.push_back(c);
      }
    }
  }
  return seen;
}

TermGrammar drop_unreachable(const TermGrammar& g) {
  std::set<VarId> keep = reachable(g, {TermGrammar::kCa, TermGrammar::kSu});
  TermGrammar out = g;
  for (VarId v : out.var_ids()) {
    if (v == TermGrammar::kCa || v == TermGrammar::kSu) continue;
    if (!keep.count(v)) out.drop_var(v);
  }
  return out;
}

// --- serialization ----------------------------------------------------------

namespace {

// Deterministic presentation order: breadth-first from Ca, then Su, then any
// remaining variables by ascending id. On discriminative grammars this order
// is invariant under id permutation, which makes the text canonical.
void canonical_layout(const TermGrammar& g, std::vector<VarId>& order,
                      std::map<VarId, std::string>& names) {
  std::set<VarId> seen;
  auto bfs = [&](VarId root) {
    if (!g.has_var(root) || seen.count(root)) return;
    std::deque<VarId> queue{root};
    seen.insert(root);
    while (!queue.empty()) {
      VarId v = queue.front();
      queue.pop_front();
      order.push_back(v);
      for (const auto& r : g.rules(v)) {
        for (VarId c : r.children) {
          if (seen.insert(c).second) queue.push_back(c);
        }
      }
    }
  };
  bfs(TermGrammar::kCa);
  bfs(TermGrammar::kSu);
  for (VarId v : g.var_ids()) bfs(v);
  uint32_t counter = 0;
  for (VarId v : order) {
    if (v == TermGrammar::kCa) {
      names[v] = "ca";
    } else if (v == TermGrammar::kSu) {
      names[v] = "su";
    } else if (g.any_var() && *g.any_var() == v) {
      names[v] = "any";
    } else {
      names[v] = "V" + std::to_string(++counter);
    }
  }
}

} // namespace

std::string to_text(const TermGrammar& g) {
  std::vector<VarId> order;
  std::map<VarId, std::string> names;
  canonical_layout(g, order, names);
  std::ostringstream os;
  for (VarId v : order) {
    for (const auto& r : g.rules(v)) {
      os << names[v] << " > " << r.symbol.name;
      if (!r.children.empty()) {
        os << '(';
        for (size_t i = 0; i < r.children.size(); ++i) {
          if (i) os << ", ";
          os << names[r.children[i]];
        }
        os << ')';
      }
      os << ".\n";
    }
  }
  return os.str();
}

std::vector<RuleRecord> to_records(const TermGrammar& g) {
  std::vector<VarId> order;
  std::map<VarId, std::string> names;
  canonical_layout(g, order, names);
  std::vector<RuleRecord> out;
  for (VarId v : order) {
    for (const auto& r : g.rules(v)) {
      RuleRecord rec;
      rec.lhs = names[v];
      rec.symbol = r.symbol.name;
      rec.arity = r.symbol.arity;
      for (VarId c : r.children) rec.children.push_back(names[c]);
      out.push_back(std::move(rec));
    }
  }
  return out;
}

} // namespace regal
