#include "regal/restriction.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace regal {

PrincipalLabel principal_label(const TermGrammar& g, VarId x) {
  PrincipalLabel out;
  for (const auto& r : g.rules(x)) out.insert(r.symbol);
  return out;
}

GrammarGraph grammar_graph(const TermGrammar& g) {
  GrammarGraph out;
  for (VarId v : g.var_ids()) {
    out.vertices.insert(v);
    for (const auto& r : g.rules(v)) {
      for (VarId c : r.children) out.edges.insert({v, c});
    }
  }
  return out;
}

std::string variant_name(WideningVariant v) {
  switch (v) {
    case WideningVariant::principal_label: return "principal-label";
    case WideningVariant::occurrence_count: return "occurrence-count";
    case WideningVariant::depth_bound: return "depth-bound";
  }
  return "?";
}

namespace {

struct UnionFind {
  std::map<VarId, VarId> parent;

  VarId find(VarId v) {
    auto it = parent.find(v);
    if (it == parent.end() || it->second == v) return v;
    VarId root = find(it->second);
    it->second = root;
    return root;
  }

  // The smaller id becomes the representative, so the roots Ca/Su keep
  // their identities.
  bool join(VarId a, VarId b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

// Rebuilds g modulo the partition, then joins the children of same-symbol
// duplicate rules until every class is discriminative again. Ca and Su always
// keep their entries; if one of them is a non-representative member, it
// carries a copy of its class's rules.
TermGrammar quotient(const TermGrammar& g, UnionFind& uf) {
  while (true) {
    std::map<VarId, std::vector<GrammarRule>> class_rules;
    for (VarId v : g.var_ids()) {
      VarId rep = uf.find(v);
      auto& rs = class_rules[rep];
      for (const auto& r : g.rules(v)) {
        GrammarRule mapped{r.symbol, {}};
        mapped.children.reserve(r.children.size());
        for (VarId c : r.children) mapped.children.push_back(uf.find(c));
        rs.push_back(std::move(mapped));
      }
    }
    bool rejoined = false;
    for (auto& [rep, rs] : class_rules) {
      std::sort(rs.begin(), rs.end());
      rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
      for (size_t i = 0; i + 1 < rs.size() && !rejoined; ++i) {
        if (rs[i].symbol != rs[i + 1].symbol) continue;
        for (size_t p = 0; p < rs[i].children.size(); ++p) {
          uf.join(rs[i].children[p], rs[i + 1].children[p]);
        }
        rejoined = true;
      }
      if (rejoined) break;
    }
    if (rejoined) continue;
    TermGrammar out = g;
    for (VarId v : out.var_ids()) {
      VarId rep = uf.find(v);
      if (rep != v && v != TermGrammar::kCa && v != TermGrammar::kSu) {
        out.drop_var(v);
      }
    }
    for (VarId v : out.var_ids()) {
      VarId rep = uf.find(v);
      out.replace_rules(v, class_rules[rep]);
    }
    return out;
  }
}

struct Violation {
  VarId var;
  VarId target;
};

// First violation of the branch bound in the deterministic spanning forest:
// DFS from Ca then Su, children in sorted rule order, preorder. Returns the
// violating variable and the ancestor to fuse it with.
std::optional<Violation> first_violation(const TermGrammar& g,
                                         const WideningConfig& cfg) {
  std::map<VarId, PrincipalLabel> labels;
  for (VarId v : g.var_ids()) labels[v] = principal_label(g, v);
  std::set<VarId> visited;
  std::vector<VarId> path;
  std::optional<Violation> found;

  auto violates = [&](VarId v) -> std::optional<VarId> {
    switch (cfg.variant) {
      case WideningVariant::principal_label: {
        const PrincipalLabel& label = labels[v];
        uint32_t count = 0;
        for (VarId a : path) {
          if (labels[a] == label) ++count;
        }
        if (count < cfg.k) return std::nullopt;
        for (auto it = path.rbegin(); it != path.rend(); ++it) {
          if (labels[*it] == label) return *it;
        }
        return std::nullopt;
      }
      case WideningVariant::occurrence_count: {
        for (const auto& sym : labels[v]) {
          uint32_t count = 0;
          for (VarId a : path) {
            if (labels[a].count(sym)) ++count;
          }
          if (count < cfg.k) continue;
          for (auto it = path.rbegin(); it != path.rend(); ++it) {
            if (labels[*it].count(sym)) return *it;
          }
        }
        return std::nullopt;
      }
      case WideningVariant::depth_bound: {
        if (path.size() + 1 > cfg.k && !path.empty()) return path.back();
        return std::nullopt;
      }
    }
    return std::nullopt;
  };

  auto dfs = [&](auto&& self, VarId v) -> void {
    if (found) return;
    if (auto target = violates(v)) {
      found = Violation{v, *target};
      return;
    }
    path.push_back(v);
    for (const auto& r : g.rules(v)) {
      for (VarId c : r.children) {
        if (found) break;
        if (visited.insert(c).second) self(self, c);
      }
    }
    path.pop_back();
  };

  for (VarId root : {TermGrammar::kCa, TermGrammar::kSu}) {
    if (!g.has_var(root)) continue;
    if (visited.insert(root).second) dfs(dfs, root);
    if (found) break;
  }
  return found;
}

} // namespace

TermGrammar restrict_grammar(const TermGrammar& g, const WideningConfig& cfg) {
  TermGrammar work = drop_unreachable(normalize(g));
  UnionFind uf;
  while (true) {
    auto v = first_violation(work, cfg);
    if (!v) return work;
    uf.join(v->var, v->target);
    work = quotient(work, uf);
    work = drop_unreachable(work);
    uf.parent.clear();
  }
}

bool codomain_certificate(const TermGrammar& g, const WideningConfig& cfg) {
  return !first_violation(g, cfg).has_value();
}

} // namespace regal
