#include "regal/symbols.hpp"

namespace regal {

FunctionSymbol SymbolTable::intern(const std::string& name, uint32_t arity,
                                   bool as_predicate) {
  auto it = entries_.find(name);
  if (it == entries_.end()) {
    entries_.emplace(name, Entry{arity, as_predicate});
    return {name, arity};
  }
  if (it->second.arity != arity) {
    throw SymbolError("arity clash: " + name + " used as /" +
                      std::to_string(it->second.arity) + " and /" +
                      std::to_string(arity));
  }
  if (it->second.is_pred != as_predicate) {
    throw SymbolError("symbol " + name + "/" + std::to_string(arity) +
                      " used both as predicate and as term constructor");
  }
  return {name, arity};
}

std::optional<FunctionSymbol> SymbolTable::lookup(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) return std::nullopt;
  return FunctionSymbol{name, it->second.arity};
}

bool SymbolTable::is_predicate(const std::string& name) const {
  auto it = entries_.find(name);
  return it != entries_.end() && it->second.is_pred;
}

bool SymbolTable::is_predicate(const FunctionSymbol& sym) const {
  return is_predicate(sym.name);
}

std::vector<FunctionSymbol> SymbolTable::signature() const {
  std::vector<FunctionSymbol> out;
  for (const auto& [name, entry] : entries_) {
    if (!entry.is_pred) out.push_back({name, entry.arity});
  }
  return out;
}

std::vector<FunctionSymbol> SymbolTable::predicates() const {
  std::vector<FunctionSymbol> out;
  for (const auto& [name, entry] : entries_) {
    if (entry.is_pred) out.push_back({name, entry.arity});
  }
  return out;
}

} // namespace regal
