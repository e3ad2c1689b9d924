#include "regal/term.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace regal {

namespace {

void write_term(std::ostream& os, const Term& t) {
  if (t.is_var()) {
    os << t.var_name();
    return;
  }
  os << t.symbol().name;
  if (!t.args().empty()) {
    os << '(';
    bool first = true;
    for (const auto& a : t.args()) {
      if (!first) os << ',';
      first = false;
      write_term(os, a);
    }
    os << ')';
  }
}

} // namespace

Term Term::var(std::string name) {
  auto node = std::make_shared<Node>();
  node->is_var = true;
  node->name = std::move(name);
  node->ground = false;
  node->height = 1;
  return Term(std::move(node));
}

Term Term::app(FunctionSymbol sym, std::vector<Term> args) {
  if (args.size() != sym.arity) {
    throw std::invalid_argument("arity mismatch constructing " + sym.str());
  }
  auto node = std::make_shared<Node>();
  node->is_var = false;
  node->sym = std::move(sym);
  node->ground = true;
  uint32_t h = 0;
  for (const auto& a : args) {
    node->ground = node->ground && a.ground();
    h = std::max(h, a.height());
  }
  node->height = h + 1;
  node->args = std::move(args);
  return Term(std::move(node));
}

bool Term::operator==(const Term& other) const {
  if (node_ == other.node_) return true;
  if (node_->is_var != other.node_->is_var) return false;
  if (node_->is_var) return node_->name == other.node_->name;
  if (node_->sym != other.node_->sym) return false;
  for (size_t i = 0; i < node_->args.size(); ++i) {
    if (!(node_->args[i] == other.node_->args[i])) return false;
  }
  return true;
}

bool Term::operator<(const Term& other) const {
  // Variables sort before applications; applications by symbol, then args.
  if (node_ == other.node_) return false;
  if (node_->is_var != other.node_->is_var) return node_->is_var;
  if (node_->is_var) return node_->name < other.node_->name;
  if (node_->sym != other.node_->sym) return node_->sym < other.node_->sym;
  for (size_t i = 0; i < node_->args.size(); ++i) {
    if (node_->args[i] < other.node_->args[i]) return true;
    if (other.node_->args[i] < node_->args[i]) return false;
  }
  return false;
}

std::string Term::str() const {
  std::ostringstream os;
  write_term(os, *this);
  return os.str();
}

bool Atom::operator==(const Atom& other) const {
  return pred == other.pred && args == other.args;
}

bool Atom::operator<(const Atom& other) const {
  if (pred != other.pred) return pred < other.pred;
  return args < other.args;
}

std::string Atom::str() const { return atom_term(*this).str(); }

Term atom_term(const Atom& atom) { return Term::app(atom.pred, atom.args); }

std::string Clause::str() const {
  std::ostringstream os;
  os << head.str();
  if (!body.empty()) {
    os << " :- ";
    bool first = true;
    for (const auto& a : body) {
      if (!first) os << ", ";
      first = false;
      os << a.str();
    }
  }
  os << '.';
  return os.str();
}

Program::Program(std::shared_ptr<SymbolTable> symbols,
                 std::vector<Clause> clauses,
                 std::vector<FunctionSymbol> defined,
                 std::vector<FunctionSymbol> constraints,
                 std::vector<std::string> notes)
    : symbols_(std::move(symbols)),
      clauses_(std::move(clauses)),
      defined_(std::move(defined)),
      constraints_(std::move(constraints)),
      notes_(std::move(notes)) {
  if (!symbols_) throw std::invalid_argument("Program: null symbol table");
}

bool Program::is_constraint(const FunctionSymbol& pred) const {
  return std::find(constraints_.begin(), constraints_.end(), pred) !=
         constraints_.end();
}

bool Program::is_defined(const FunctionSymbol& pred) const {
  return std::find(defined_.begin(), defined_.end(), pred) != defined_.end();
}

std::string Program::str() const {
  std::ostringstream os;
  for (const auto& p : constraints_) {
    os << ":- constraint " << p.name << "/" << p.arity << ".\n";
  }
  for (const auto& c : clauses_) os << c.str() << '\n';
  return os.str();
}

} // namespace regal
