#include "doctest.h"

#include <random>

#include "regal/grammar.hpp"
#include "regal/parse.hpp"
#include "regal/restriction.hpp"
#include "testgen.hpp"

using namespace regal;

namespace {

struct Fixture {
  std::shared_ptr<SymbolTable> tbl = std::make_shared<SymbolTable>();
  TermGrammar grammar(const std::string& text) {
    return parse_grammar(text, *tbl);
  }
  // Canonical-text equality against an expected grammar in the same table.
  std::string canon(const std::string& text) {
    return to_text(parse_grammar(text, *tbl));
  }
};

void check_over_approx(const TermGrammar& g, const TermGrammar& r) {
  CHECK(includes_across(r, TermGrammar::kCa, g, TermGrammar::kCa));
  CHECK(includes_across(r, TermGrammar::kSu, g, TermGrammar::kSu));
}

} // namespace

TEST_CASE("principal_label is the set of right-hand-side constructors") {
  Fixture fx;
  TermGrammar g = fx.grammar("L > nil.\nL > cons(E, L).\nE > a.");
  auto l = g.find_by_name("L");
  auto e = g.find_by_name("E");
  REQUIRE(l);
  REQUIRE(e);
  PrincipalLabel ll = principal_label(g, *l);
  CHECK(ll.size() == 2);
  CHECK(ll.count(FunctionSymbol{"nil", 0}) == 1);
  CHECK(ll.count(FunctionSymbol{"cons", 2}) == 1);
  CHECK(principal_label(g, *e) == PrincipalLabel{FunctionSymbol{"a", 0}});
  CHECK(principal_label(g, TermGrammar::kSu).empty());
}

TEST_CASE("grammar_graph lists child edges") {
  Fixture fx;
  TermGrammar g = fx.grammar("ca > p(L).\nL > nil.\nL > cons(E, L).\nE > a.");
  GrammarGraph gg = grammar_graph(g);
  auto l = *g.find_by_name("L");
  auto e = *g.find_by_name("E");
  CHECK(gg.vertices.count(TermGrammar::kCa) == 1);
  CHECK(gg.edges.count({TermGrammar::kCa, l}) == 1);
  CHECK(gg.edges.count({l, e}) == 1);
  CHECK(gg.edges.count({l, l}) == 1);
  CHECK(gg.edges.count({e, l}) == 0);
}

TEST_CASE("chain of equal labels folds into a loop") {
  Fixture fx;
  TermGrammar g =
      fx.grammar("ca > p(X0).\nX0 > f(X1).\nX1 > f(X2).\nX2 > a.");
  WideningConfig cfg; // principal_label, k = 1
  CHECK_FALSE(codomain_certificate(g, cfg));
  TermGrammar r = restrict_grammar(g, cfg);
  CHECK(to_text(r) == fx.canon("ca > p(V1).\nV1 > a.\nV1 > f(V1)."));
  CHECK(codomain_certificate(r, cfg));
  check_over_approx(g, r);
  // The loop admits every iterate, not just the two original terms.
  auto p = *fx.tbl->lookup("p");
  auto f = *fx.tbl->lookup("f");
  auto a = *fx.tbl->lookup("a");
  Term fa = Term::app(f, {Term::app(a)});
  CHECK(member(r, TermGrammar::kCa, Term::app(p, {Term::app(f, {Term::app(f, {fa})})})));
  CHECK_FALSE(member(g, TermGrammar::kCa, Term::app(p, {Term::app(a)})));
  CHECK(member(r, TermGrammar::kCa, Term::app(p, {Term::app(a)})));
}

TEST_CASE("k = 2 admits the three-step chain unchanged") {
  Fixture fx;
  TermGrammar g =
      fx.grammar("ca > p(X0).\nX0 > f(X1).\nX1 > f(X2).\nX2 > a.");
  WideningConfig cfg{WideningVariant::principal_label, 2};
  CHECK(codomain_certificate(g, cfg));
  CHECK(to_text(restrict_grammar(g, cfg)) == to_text(normalize(g)));
}

TEST_CASE("fuse joins the violator with the nearest equal-label ancestor") {
  Fixture fx;
  TermGrammar g = fx.grammar(
      "ca > p(X).\nX > f(Y).\nY > g2(Z, Z).\nZ > f(W).\nW > a.");
  WideningConfig cfg;
  TermGrammar r = restrict_grammar(g, cfg);
  CHECK(codomain_certificate(r, cfg));
  check_over_approx(g, r);
  auto p = *fx.tbl->lookup("p");
  auto f = *fx.tbl->lookup("f");
  auto g2 = *fx.tbl->lookup("g2");
  auto a = *fx.tbl->lookup("a");
  Term fa = Term::app(f, {Term::app(a)});
  Term orig = Term::app(p, {Term::app(f, {Term::app(g2, {fa, fa})})});
  CHECK(member(g, TermGrammar::kCa, orig));
  CHECK(member(r, TermGrammar::kCa, orig));
  // X and Z are identified, so f(a) reaches call position directly.
  CHECK(member(r, TermGrammar::kCa, Term::app(p, {fa})));
  CHECK_FALSE(member(g, TermGrammar::kCa, Term::app(p, {fa})));
}

TEST_CASE("already-compliant grammars are only canonicalized") {
  Fixture fx;
  TermGrammar g = fx.grammar(
      "ca > app(L, M, N).\nL > nil.\nL > cons(E, L).\nE > a.\n"
      "M > nil.\nN > nil.\nN > cons(E, N).");
  WideningConfig cfg;
  CHECK(codomain_certificate(g, cfg));
  CHECK(to_text(restrict_grammar(g, cfg)) == to_text(normalize(g)));
}

TEST_CASE("unreachable variables are dropped by restriction") {
  Fixture fx;
  TermGrammar g = fx.grammar("ca > p(A).\nA > a.\nQ > b.");
  TermGrammar r = restrict_grammar(g, WideningConfig{});
  CHECK_FALSE(r.find_by_name("Q").has_value());
  CHECK(to_text(r) == fx.canon("ca > p(V1).\nV1 > a."));
}

TEST_CASE("restriction properties on random grammars") {
  std::mt19937_64 rng(testgen::seed_from_env(21));
  SymbolTable tbl;
  auto sig = testgen::small_signature(tbl);
  std::vector<WideningConfig> cfgs = {
      {WideningVariant::principal_label, 1},
      {WideningVariant::principal_label, 2},
      {WideningVariant::occurrence_count, 1},
      {WideningVariant::depth_bound, 2},
  };
  for (int i = 0; i < 60; ++i) {
    TermGrammar g = testgen::random_grammar(rng, sig);
    for (const auto& cfg : cfgs) {
      TermGrammar r = restrict_grammar(g, cfg);
      CHECK(r.is_discriminative());
      CHECK(codomain_certificate(r, cfg));
      check_over_approx(g, r);
      // Idempotent and deterministic.
      CHECK(to_text(restrict_grammar(r, cfg)) == to_text(r));
      CHECK(to_text(restrict_grammar(g, cfg)) == to_text(r));
    }
  }
}

TEST_CASE("variant_name is stable") {
  CHECK(variant_name(WideningVariant::principal_label) == "principal-label");
  CHECK(variant_name(WideningVariant::occurrence_count) == "occurrence-count");
  CHECK(variant_name(WideningVariant::depth_bound) == "depth-bound");
}
