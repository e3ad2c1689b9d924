#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include "regal/grammar.hpp"
#include "regal/term.hpp"

namespace regal {

class ParseError : public std::runtime_error {
public:
  ParseError(std::string msg, uint32_t line, uint32_t column);
  uint32_t line() const { return line_; }
  uint32_t column() const { return column_; }

private:
  uint32_t line_;
  uint32_t column_;
};

// Edinburgh-style subset: `head.` and `head :- b1, ..., bn.` clauses,
// `% ...` line comments, `:- constraint name/arity.` directives. Integer
// literals are abstracted to $num. Predicates that occur in bodies but have
// no clauses are classified as constraint predicates.
Program parse_program(const std::string& text,
                      std::shared_ptr<SymbolTable> symbols = nullptr);

// Grammar files: period-terminated rules `Lhs > f(V1, ..., Vn).` with
// grammar variables capitalized; `ca`, `su`, `any` are reserved
// (case-insensitive). `any` without explicit rules expands to one rule per
// constructor in the signature. New constructors extend the symbol table;
// symbols heading a ca/su rule are predicates.
TermGrammar parse_grammar(const std::string& text, SymbolTable& symbols);

} // namespace regal
