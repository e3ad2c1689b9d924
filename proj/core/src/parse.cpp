#include "regal/parse.hpp"

#include <cctype>
#include <map>
#include <set>
#include <vector>

namespace regal {

ParseError::ParseError(std::string msg, uint32_t line, uint32_t column)
    : std::runtime_error(msg + " at line " + std::to_string(line) +
                         ", column " + std::to_string(column)),
      line_(line),
      column_(column) {}

namespace {

enum class Tok {
  ident,   // lower-case or '$'-prefixed: symbols, keywords
  variable, // upper-case or '_'-prefixed
  integer,
  neck,    // :-
  comma,
  lparen,
  rparen,
  period,
  greater, // >
  slash,
  end,
};

struct Token {
  Tok kind;
  std::string text;
  uint32_t line;
  uint32_t column;
};

class Lexer {
public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip_space();
    uint32_t line = line_, col = col_;
    if (pos_ >= text_.size()) return {Tok::end, "", line, col};
    char c = text_[pos_];
    if (std::islower(static_cast<unsigned char>(c)) || c == '$') {
      return {Tok::ident, read_word(), line, col};
    }
    if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
      return {Tok::variable, read_word(), line, col};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        num += text_[pos_];
        advance();
      }
      return {Tok::integer, num, line, col};
    }
    if (c == ':' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
      advance();
      advance();
      return {Tok::neck, ":-", line, col};
    }
    advance();
    switch (c) {
      case ',': return {Tok::comma, ",", line, col};
      case '(': return {Tok::lparen, "(", line, col};
      case ')': return {Tok::rparen, ")", line, col};
      case '.': return {Tok::period, ".", line, col};
      case '>': return {Tok::greater, ">", line, col};
      case '/': return {Tok::slash, "/", line, col};
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line,
                         col);
    }
  }

private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string read_word() {
    std::string word;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$') {
        word += c;
        advance();
      } else {
        break;
      }
    }
    return word;
  }

  const std::string& text_;
  size_t pos_ = 0;
  uint32_t line_ = 1;
  uint32_t col_ = 1;
};

class TokenStream {
public:
  explicit TokenStream(const std::string& text) : lexer_(text) {
    cur_ = lexer_.next();
  }

  const Token& peek() const { return cur_; }

  Token take() {
    Token t = cur_;
    cur_ = lexer_.next();
    return t;
  }

  Token expect(Tok kind, const std::string& what) {
    if (cur_.kind != kind) {
      throw ParseError("expected " + what + ", found '" + describe(cur_) + "'",
                       cur_.line, cur_.column);
    }
    return take();
  }

  static std::string describe(const Token& t) {
    return t.kind == Tok::end ? "end of input" : t.text;
  }

private:
  Lexer lexer_;
  Token cur_;
};

std::string lowercase(const std::string& s) {
  std::string out = s;
  for (auto& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

FunctionSymbol intern_at(SymbolTable& symbols, const std::string& name,
                         uint32_t arity, bool as_predicate, const Token& at) {
  try {
    return symbols.intern(name, arity, as_predicate);
  } catch (const SymbolError& e) {
    throw ParseError(e.what(), at.line, at.column);
  }
}

// --- program ----------------------------------------------------------------

class ProgramParser {
public:
  ProgramParser(const std::string& text, std::shared_ptr<SymbolTable> symbols)
      : ts_(text), symbols_(std::move(symbols)) {
    if (!symbols_) symbols_ = std::make_shared<SymbolTable>();
  }

  Program run() {
    while (ts_.peek().kind != Tok::end) {
      if (ts_.peek().kind == Tok::neck) {
        parse_directive();
      } else {
        parse_clause();
      }
    }
    classify();
    return Program(symbols_, std::move(clauses_), std::move(defined_),
                   std::move(constraints_), std::move(notes_));
  }

private:
  void parse_directive() {
    ts_.take();
    Token kw = ts_.expect(Tok::ident, "directive name");
    if (kw.text != "constraint") {
      throw ParseError("unknown directive '" + kw.text + "'", kw.line,
                       kw.column);
    }
    Token name = ts_.expect(Tok::ident, "predicate name");
    ts_.expect(Tok::slash, "'/'");
    Token ar = ts_.expect(Tok::integer, "arity");
    ts_.expect(Tok::period, "'.'");
    uint32_t arity = static_cast<uint32_t>(std::stoul(ar.text));
    FunctionSymbol pred = intern_at(*symbols_, name.text, arity, true, name);
    declared_constraints_.insert(pred);
  }

  void parse_clause() {
    Atom head = parse_atom();
    std::vector<Atom> body;
    if (ts_.peek().kind == Tok::neck) {
      ts_.take();
      body.push_back(parse_atom());
      while (ts_.peek().kind == Tok::comma) {
        ts_.take();
        body.push_back(parse_atom());
      }
    }
    ts_.expect(Tok::period, "'.'");
    clauses_.push_back(Clause{std::move(head), std::move(body)});
  }

  Atom parse_atom() {
    Token name = ts_.expect(Tok::ident, "predicate name");
    std::vector<Term> args;
    if (ts_.peek().kind == Tok::lparen) {
      ts_.take();
      args.push_back(parse_term());
      while (ts_.peek().kind == Tok::comma) {
        ts_.take();
        args.push_back(parse_term());
      }
      ts_.expect(Tok::rparen, "')'");
    }
    FunctionSymbol pred = intern_at(*symbols_, name.text,
                                    static_cast<uint32_t>(args.size()), true,
                                    name);
    return Atom{pred, std::move(args)};
  }

  Term parse_term() {
    const Token& t = ts_.peek();
    switch (t.kind) {
      case Tok::variable: {
        Token v = ts_.take();
        if (v.text == "_") {
          return Term::var("_A" + std::to_string(++anon_counter_));
        }
        return Term::var(v.text);
      }
      case Tok::integer: {
        Token n = ts_.take();
        FunctionSymbol num =
            intern_at(*symbols_, num_symbol().name, 0, false, n);
        return Term::app(num);
      }
      case Tok::ident: {
        Token name = ts_.take();
        std::vector<Term> args;
        if (ts_.peek().kind == Tok::lparen) {
          ts_.take();
          args.push_back(parse_term());
          while (ts_.peek().kind == Tok::comma) {
            ts_.take();
            args.push_back(parse_term());
          }
          ts_.expect(Tok::rparen, "')'");
        }
        FunctionSymbol sym = intern_at(*symbols_, name.text,
                                       static_cast<uint32_t>(args.size()),
                                       false, name);
        return Term::app(sym, std::move(args));
      }
      default:
        throw ParseError("expected a term, found '" + TokenStream::describe(t) +
                         "'", t.line, t.column);
    }
  }

  void classify() {
    std::set<FunctionSymbol> heads;
    for (const auto& c : clauses_) heads.insert(c.head.pred);
    // Clauses of predicates declared as constraints are not part of the
    // analyzed program; their semantics come from the initial grammar.
    std::vector<Clause> kept;
    std::map<FunctionSymbol, size_t> dropped;
    for (auto& c : clauses_) {
      if (declared_constraints_.count(c.head.pred)) {
        ++dropped[c.head.pred];
      } else {
        kept.push_back(std::move(c));
      }
    }
    clauses_ = std::move(kept);
    for (const auto& [pred, n] : dropped) {
      notes_.push_back("dropped " + std::to_string(n) + " clause(s) of " +
                       pred.str() + ": declared a constraint predicate");
    }
    std::set<FunctionSymbol> defined;
    for (const auto& c : clauses_) defined.insert(c.head.pred);
    std::set<FunctionSymbol> constraints = declared_constraints_;
    for (const auto& c : clauses_) {
      for (const auto& a : c.body) {
        if (!defined.count(a.pred)) constraints.insert(a.pred);
      }
    }
    defined_.assign(defined.begin(), defined.end());
    constraints_.assign(constraints.begin(), constraints.end());
  }

  TokenStream ts_;
  std::shared_ptr<SymbolTable> symbols_;
  std::vector<Clause> clauses_;
  std::set<FunctionSymbol> declared_constraints_;
  std::vector<FunctionSymbol> defined_;
  std::vector<FunctionSymbol> constraints_;
  std::vector<std::string> notes_;
  uint32_t anon_counter_ = 0;
};

// --- grammar ----------------------------------------------------------------

class GrammarParser {
public:
  GrammarParser(const std::string& text, SymbolTable& symbols)
      : ts_(text), symbols_(symbols) {}

  TermGrammar run() {
    while (ts_.peek().kind != Tok::end) {
      parse_rule();
    }
    expand_any();
    return std::move(grammar_);
  }

private:
  VarId parse_var(bool lhs) {
    const Token& t = ts_.peek();
    if (t.kind == Tok::variable) {
      Token v = ts_.take();
      std::string low = lowercase(v.text);
      if (low == "ca" || low == "su" || low == "any") return reserved(low);
      auto it = vars_.find(v.text);
      if (it != vars_.end()) return it->second;
      VarId id = grammar_.fresh(v.text);
      vars_[v.text] = id;
      return id;
    }
    if (t.kind == Tok::ident) {
      std::string low = lowercase(t.text);
      if (low == "ca" || low == "su" || low == "any") {
        ts_.take();
        return reserved(low);
      }
    }
    throw ParseError(std::string("expected a grammar variable") +
                     (lhs ? " on the left of '>'" : ""),
                     t.line, t.column);
  }

  VarId reserved(const std::string& low) {
    if (low == "ca") return TermGrammar::kCa;
    if (low == "su") return TermGrammar::kSu;
    if (!grammar_.any_var()) {
      VarId id = grammar_.fresh("any");
      grammar_.mark_any(id);
    }
    return *grammar_.any_var();
  }

  void parse_rule() {
    Token at = ts_.peek();
    VarId lhs = parse_var(true);
    ts_.expect(Tok::greater, "'>'");
    Token sym = ts_.expect(Tok::ident, "a function symbol");
    std::vector<VarId> children;
    if (ts_.peek().kind == Tok::lparen) {
      ts_.take();
      children.push_back(parse_var(false));
      while (ts_.peek().kind == Tok::comma) {
        ts_.take();
        children.push_back(parse_var(false));
      }
      ts_.expect(Tok::rparen, "')'");
    }
    ts_.expect(Tok::period, "'.'");
    bool is_root = lhs == TermGrammar::kCa || lhs == TermGrammar::kSu;
    FunctionSymbol fs =
        intern_at(symbols_, sym.text, static_cast<uint32_t>(children.size()),
                  is_root, sym);
    if (grammar_.rule_for(lhs, fs)) {
      throw ParseError("grammar is not discriminative: second rule for (" +
                       var_name(lhs) + ", " + fs.str() + ")",
                       at.line, at.column);
    }
    grammar_.add_rule(lhs, fs, std::move(children));
  }

  std::string var_name(VarId v) const {
    if (v == TermGrammar::kCa) return "ca";
    if (v == TermGrammar::kSu) return "su";
    if (grammar_.any_var() && *grammar_.any_var() == v) return "any";
    return grammar_.name(v);
  }

  void expand_any() {
    auto any = grammar_.any_var();
    if (!any || !grammar_.rules(*any).empty()) return;
    for (const auto& sym : symbols_.signature()) {
      grammar_.add_rule(*any, sym, std::vector<VarId>(sym.arity, *any));
    }
  }

  TokenStream ts_;
  SymbolTable& symbols_;
  TermGrammar grammar_;
  std::map<std::string, VarId> vars_;
};

} // namespace

Program parse_program(const std::string& text,
                      std::shared_ptr<SymbolTable> symbols) {
  return ProgramParser(text, std::move(symbols)).run();
}

TermGrammar parse_grammar(const std::string& text, SymbolTable& symbols) {
  return GrammarParser(text, symbols).run();
}

} // namespace regal
