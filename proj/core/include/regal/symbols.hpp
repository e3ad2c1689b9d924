#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace regal {

// Name/arity pair. Predicates and term constructors live in one namespace;
// a name is bound to exactly one arity and one role.
struct FunctionSymbol {
  std::string name;
  uint32_t arity = 0;

  auto operator<=>(const FunctionSymbol&) const = default;

  std::string str() const { return name + "/" + std::to_string(arity); }
};

// The reserved constant every numeric literal is abstracted to.
inline const FunctionSymbol& num_symbol() {
  static const FunctionSymbol sym{"$num", 0};
  return sym;
}

class SymbolError : public std::runtime_error {
public:
  explicit SymbolError(const std::string& msg) : std::runtime_error(msg) {}
};

// Interning table shared by a program and the grammars analyzed with it.
// Enforces one arity per name and keeps predicates apart from term
// constructors, so the term signature stays finite and unambiguous.
class SymbolTable {
public:
  // Returns the symbol, inserting it if unknown. Throws SymbolError on an
  // arity clash or when a name is used both as predicate and constructor.
  FunctionSymbol intern(const std::string& name, uint32_t arity,
                        bool as_predicate);

  std::optional<FunctionSymbol> lookup(const std::string& name) const;
  bool is_predicate(const std::string& name) const;
  bool is_predicate(const FunctionSymbol& sym) const;

  // Term constructors only, sorted by (name, arity).
  std::vector<FunctionSymbol> signature() const;
  std::vector<FunctionSymbol> predicates() const;

private:
  struct Entry {
    uint32_t arity;
    bool is_pred;
  };
  std::map<std::string, Entry> entries_;
};

} // namespace regal
