#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "regal/symbols.hpp"

namespace regal {

// First-order term: a variable or a constructor application. Immutable and
// cheaply copyable; structural comparison.
class Term {
public:
  static Term var(std::string name);
  static Term app(FunctionSymbol sym, std::vector<Term> args = {});

  bool is_var() const { return node_->is_var; }
  const std::string& var_name() const { return node_->name; }
  const FunctionSymbol& symbol() const { return node_->sym; }
  const std::vector<Term>& args() const { return node_->args; }

  bool ground() const { return node_->ground; }
  // Height of a constant is 1.
  uint32_t height() const { return node_->height; }

  bool operator==(const Term& other) const;
  bool operator<(const Term& other) const; // total order, for ordered sets

  std::string str() const;

private:
  struct Node {
    bool is_var;
    std::string name; // variable name when is_var
    FunctionSymbol sym;
    std::vector<Term> args;
    bool ground;
    uint32_t height;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Atom {
  FunctionSymbol pred;
  std::vector<Term> args;

  bool operator==(const Atom& other) const;
  bool operator<(const Atom& other) const;
  std::string str() const;
};

// An atom viewed as a term with the predicate in constructor position, the
// form in which call/success sets are stored in grammars.
Term atom_term(const Atom& atom);

struct Clause {
  Atom head;
  std::vector<Atom> body;
  std::string str() const;
};

// A parsed program: clauses plus the predicate partition. Predicates without
// defining clauses are constraint predicates; their behavior comes from the
// initial grammar.
class Program {
public:
  Program(std::shared_ptr<SymbolTable> symbols, std::vector<Clause> clauses,
          std::vector<FunctionSymbol> defined,
          std::vector<FunctionSymbol> constraints,
          std::vector<std::string> notes);

  const SymbolTable& symbols() const { return *symbols_; }
  const std::shared_ptr<SymbolTable>& symbols_ptr() const { return symbols_; }
  const std::vector<Clause>& clauses() const { return clauses_; }
  const std::vector<FunctionSymbol>& defined_preds() const { return defined_; }
  const std::vector<FunctionSymbol>& constraint_preds() const {
    return constraints_;
  }
  // Parser diagnostics that are not errors (e.g. clauses superseded by a
  // constraint directive).
  const std::vector<std::string>& notes() const { return notes_; }

  bool is_constraint(const FunctionSymbol& pred) const;
  bool is_defined(const FunctionSymbol& pred) const;
  // Term constructors of the program and of every grammar parsed against the
  // same symbol table.
  std::vector<FunctionSymbol> signature() const { return symbols_->signature(); }

  std::string str() const;

private:
  std::shared_ptr<SymbolTable> symbols_;
  std::vector<Clause> clauses_;
  std::vector<FunctionSymbol> defined_;
  std::vector<FunctionSymbol> constraints_;
  std::vector<std::string> notes_;
};

} // namespace regal
