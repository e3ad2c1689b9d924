#include "doctest.h"

#include <algorithm>
#include <random>

#include "regal/grammar.hpp"
#include "regal/parse.hpp"
#include "testgen.hpp"

using namespace regal;

namespace {

struct Fixture {
  std::shared_ptr<SymbolTable> tbl = std::make_shared<SymbolTable>();
  TermGrammar grammar(const std::string& text) {
    return parse_grammar(text, *tbl);
  }
  Term t(const std::string& name, std::vector<Term> args = {}) {
    FunctionSymbol sym =
        tbl->intern(name, static_cast<uint32_t>(args.size()), false);
    return Term::app(sym, std::move(args));
  }
  VarId var(const TermGrammar& g, const std::string& name) {
    auto v = g.find_by_name(name);
    REQUIRE(v.has_value());
    return *v;
  }
};

// Set intersection/subset helpers over enumerations.
std::set<Term> inter(const std::set<Term>& a, const std::set<Term>& b) {
  std::set<Term> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(out, out.begin()));
  return out;
}
bool subset(const std::set<Term>& a, const std::set<Term>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

} // namespace

TEST_CASE("member: list grammar") {
  Fixture fx;
  TermGrammar g = fx.grammar("L > nil.\nL > cons(E, L).\nE > a.");
  VarId l = fx.var(g, "L");
  Term nil = fx.t("nil");
  CHECK(member(g, l, nil));
  // Oracle: brute-force enumeration to depth 3, then look the term up.
  Term cons_a_nil = fx.t("cons", {fx.t("a"), nil});
  auto depth3 = enumerate(g, l, 3);
  CHECK(depth3.count(cons_a_nil) == 1);
  CHECK(member(g, l, cons_a_nil));
  CHECK_FALSE(member(g, l, fx.t("cons", {nil, nil})));
}

TEST_CASE("member agrees with enumeration over the whole small universe") {
  Fixture fx;
  TermGrammar g = fx.grammar("L > nil.\nL > cons(E, L).\nE > a.\nE > b.");
  VarId l = fx.var(g, "L");
  auto sig = fx.tbl->signature();
  auto inside = enumerate(g, l, 3);
  for (const Term& t : testgen::all_terms(sig, 3))
    CHECK(member(g, l, t) == (inside.count(t) == 1));
}

TEST_CASE("empties") {
  Fixture fx;
  SUBCASE("no base case") {
    TermGrammar g = fx.grammar("X > f(X).");
    auto e = empties(g);
    CHECK(e.count(fx.var(g, "X")) == 1);
  }
  SUBCASE("constant is productive") {
    TermGrammar g = fx.grammar("X > a.");
    CHECK(empties(g).count(fx.var(g, "X")) == 0);
  }
  SUBCASE("mutual emptiness") {
    TermGrammar g = fx.grammar("X > f(Y).\nY > g(X, X).\nZ > a.");
    auto e = empties(g);
    CHECK(e.count(fx.var(g, "X")) == 1);
    CHECK(e.count(fx.var(g, "Y")) == 1);
    CHECK(e.count(fx.var(g, "Z")) == 0);
    CHECK(enumerate(g, fx.var(g, "X"), 10).empty());
  }
}

TEST_CASE("normalize") {
  Fixture fx;
  SUBCASE("empty child removes the rule") {
    TermGrammar g = fx.grammar("X > f(Y).\nX > a.\nY > g(Y, Y).");
    TermGrammar n = normalize(g);
    VarId x = fx.var(n, "X");
    REQUIRE(n.rules(x).size() == 1);
    CHECK(n.rules(x)[0].symbol.name == "a");
    CHECK(n.rules(fx.var(n, "Y")).empty());
  }
  SUBCASE("identity when nothing is empty") {
    TermGrammar g = fx.grammar("L > nil.\nL > cons(E, L).\nE > a.");
    CHECK(to_text(normalize(g)) == to_text(g));
  }
  SUBCASE("binary rule with one empty child") {
    TermGrammar g = fx.grammar("X > f2(Y, Z).\nY > a.\nZ > g1(Z).");
    TermGrammar n = normalize(g);
    CHECK(n.rules(fx.var(n, "X")).empty());
    CHECK(enumerate(g, fx.var(g, "X"), 8).empty());
  }
  SUBCASE("enumerations are preserved at every depth") {
    std::mt19937_64 rng(testgen::seed_from_env(11));
    SymbolTable tbl;
    auto sig = testgen::small_signature(tbl);
    for (int i = 0; i < 50; ++i) {
      TermGrammar g = testgen::random_grammar(rng, sig);
      TermGrammar n = normalize(g);
      for (VarId v : g.var_ids())
        for (uint32_t d = 1; d <= 4; ++d)
          CHECK(enumerate(g, v, d) == enumerate(n, v, d));
    }
  }
}

TEST_CASE("includes") {
  Fixture fx;
  SUBCASE("reflexive") {
    TermGrammar g = fx.grammar("L > nil.\nL > cons(E, L).\nE > a.");
    CHECK(includes(g, fx.var(g, "L"), fx.var(g, "L")));
  }
  SUBCASE("lists over a subset alphabet") {
    TermGrammar g = fx.grammar(
        "L > nil.\nL > cons(E, L).\nE > a.\n"
        "M > nil.\nM > cons(F, M).\nF > a.\nF > b.");
    CHECK(includes(g, fx.var(g, "M"), fx.var(g, "L")));
    CHECK_FALSE(includes(g, fx.var(g, "L"), fx.var(g, "M")));
  }
  SUBCASE("pinned example, checked against depth-3 enumeration") {
    TermGrammar g = fx.grammar(
        "X > f(A).\nA > a.\n"
        "Y > f(B).\nY > g(B, B).\nB > a.\nB > b.");
    VarId x = fx.var(g, "X");
    VarId y = fx.var(g, "Y");
    CHECK(includes(g, y, x));
    CHECK_FALSE(includes(g, x, y));
    CHECK(subset(enumerate(g, x, 3), enumerate(g, y, 3)));
    CHECK_FALSE(subset(enumerate(g, y, 3), enumerate(g, x, 3)));
  }
  SUBCASE("witness is a term of sub minus sup") {
    TermGrammar g = fx.grammar(
        "X > f(A).\nA > a.\n"
        "Y > f(B).\nY > g(B, B).\nB > a.\nB > b.");
    VarId x = fx.var(g, "X");
    VarId y = fx.var(g, "Y");
    CHECK_FALSE(includes_witness(g, y, x).has_value());
    auto w = includes_witness(g, x, y);
    REQUIRE(w.has_value());
    CHECK(member(g, y, *w));
    CHECK_FALSE(member(g, x, *w));
  }
}

TEST_CASE("union") {
  Fixture fx;
  SUBCASE("disjoint constants") {
    TermGrammar g = fx.grammar("X > a.\nY > b.");
    auto [u, g2] = union_vars(g, fx.var(g, "X"), fx.var(g, "Y"));
    CHECK(enumerate(g2, u, 1) == std::set<Term>{fx.t("a"), fx.t("b")});
  }
  SUBCASE("non-linear spread is the documented over-approximation") {
    TermGrammar g = fx.grammar("X > f2(A, A).\nA > a.\nY > f2(B, B).\nB > b.");
    auto [u, g2] = union_vars(g, fx.var(g, "X"), fx.var(g, "Y"));
    Term a = fx.t("a"), b = fx.t("b");
    std::set<Term> expect = {
        fx.t("f2", {a, a}), fx.t("f2", {a, b}),
        fx.t("f2", {b, a}), fx.t("f2", {b, b})};
    CHECK(enumerate(g2, u, 2) == expect);
  }
  SUBCASE("self union preserves sem") {
    TermGrammar g = fx.grammar("L > nil.\nL > cons(E, L).\nE > a.");
    VarId l = fx.var(g, "L");
    auto [u, g2] = union_vars(g, l, l);
    CHECK(includes(g2, u, l));
    CHECK(includes(g2, l, u));
  }
}

TEST_CASE("intersect") {
  Fixture fx;
  SUBCASE("constant alphabets") {
    TermGrammar g = fx.grammar("X > a.\nX > b.\nY > b.\nY > c.");
    auto [m, g2] = intersect_vars(g, fx.var(g, "X"), fx.var(g, "Y"));
    CHECK(enumerate(g2, m, 1) == std::set<Term>{fx.t("b")});
  }
  SUBCASE("identity with the universal variable") {
    Fixture fy;
    TermGrammar g = fy.grammar("X > nil.\nX > cons(E, X).\nE > a.");
    VarId any = g.ensure_any(fy.tbl->signature());
    VarId x = fy.var(g, "X");
    auto [m, g2] = intersect_vars(g, x, any);
    CHECK(includes(g2, m, x));
    CHECK(includes(g2, x, m));
  }
  SUBCASE("lists over intersecting alphabets") {
    TermGrammar g = fx.grammar(
        "L > nil.\nL > cons(E, L).\nE > a.\nE > b.\n"
        "M > nil.\nM > cons(F, M).\nF > b.\nF > c.");
    auto [m, g2] = intersect_vars(g, fx.var(g, "L"), fx.var(g, "M"));
    auto lhs = enumerate(g2, m, 4);
    auto rhs = inter(enumerate(g, fx.var(g, "L"), 4),
                     enumerate(g, fx.var(g, "M"), 4));
    CHECK(lhs == rhs);
    TermGrammar only_b = fx.grammar("N > nil.\nN > cons(H, N).\nH > b.");
    CHECK(includes_across(only_b, fx.var(only_b, "N"), g2, m));
    CHECK(includes_across(g2, m, only_b, fx.var(only_b, "N")));
  }
}

TEST_CASE("rename_apart") {
  Fixture fx;
  TermGrammar g = fx.grammar("ca > p(L).\nL > nil.\nL > cons(E, L).\nE > a.");
  TermGrammar r = rename_apart(g);
  CHECK(r.var_count() == g.var_count());
  CHECK(includes_across(r, TermGrammar::kCa, g, TermGrammar::kCa));
  CHECK(includes_across(g, TermGrammar::kCa, r, TermGrammar::kCa));
  CHECK(enumerate(g, TermGrammar::kCa, 3) == enumerate(r, TermGrammar::kCa, 3));
}

TEST_CASE("discriminative_approx") {
  Fixture fx;
  SUBCASE("single merge under a predicate") {
    TermGrammar g = fx.grammar("ca > p(A).\nA > a.");
    VarId b = g.fresh("B");
    g.add_rule(b, fx.tbl->intern("b", 0, false), {});
    g.add_rule(TermGrammar::kCa, fx.tbl->intern("p", 1, true), {b});
    CHECK_FALSE(g.is_discriminative());
    TermGrammar d = discriminative_approx(g);
    CHECK(d.is_discriminative());
    auto got = enumerate(d, TermGrammar::kCa, 2);
    std::set<Term> expect = {
        Term::app(*fx.tbl->lookup("p"), {fx.t("a")}),
        Term::app(*fx.tbl->lookup("p"), {fx.t("b")})};
    CHECK(got == expect);
  }
  SUBCASE("identity on discriminative input") {
    TermGrammar g = fx.grammar("L > nil.\nL > cons(E, L).\nE > a.");
    CHECK(to_text(discriminative_approx(g)) == to_text(g));
  }
  SUBCASE("non-linear merge yields four terms") {
    TermGrammar g = fx.grammar("X > f2(A, A).\nA > a.\nB > b.");
    VarId x = fx.var(g, "X");
    g.add_rule(x, *fx.tbl->lookup("f2"), {fx.var(g, "B"), fx.var(g, "B")});
    TermGrammar d = discriminative_approx(g);
    CHECK(d.is_discriminative());
    CHECK(enumerate(d, fx.var(d, "X"), 2).size() == 4);
  }
}

TEST_CASE("enumerate") {
  Fixture fx;
  TermGrammar g = fx.grammar("L > nil.\nL > cons(E, L).\nE > a.");
  VarId l = fx.var(g, "L");
  CHECK(enumerate(g, l, 1) == std::set<Term>{fx.t("nil")});
  CHECK(enumerate(g, l, 2) ==
        std::set<Term>{fx.t("nil"), fx.t("cons", {fx.t("a"), fx.t("nil")})});
  SUBCASE("universal variable over a tiny signature") {
    auto tbl2 = std::make_shared<SymbolTable>();
    std::vector<FunctionSymbol> sig = {tbl2->intern("a", 0, false),
                                       tbl2->intern("f", 1, false)};
    TermGrammar h;
    VarId any = h.ensure_any(sig);
    Term a = Term::app(sig[0]);
    CHECK(enumerate(h, any, 2) == std::set<Term>{a, Term::app(sig[1], {a})});
  }
  SUBCASE("cap overflow throws") {
    auto tbl2 = std::make_shared<SymbolTable>();
    std::vector<FunctionSymbol> sig = {tbl2->intern("a", 0, false),
                                       tbl2->intern("b", 0, false),
                                       tbl2->intern("g", 2, false)};
    TermGrammar h;
    VarId any = h.ensure_any(sig);
    CHECK_THROWS_AS(enumerate(h, any, 6, 100), EnumerationOverflow);
  }
}

TEST_CASE("serialization: canonical text and records") {
  Fixture fx;
  TermGrammar g = fx.grammar(
      "ca > p(L).\nsu > p(M).\nL > cons(E, L).\nL > nil.\nE > a.\n"
      "M > nil.");
  std::string canon = to_text(g);
  // Same grammar entered in a different order serializes identically.
  Fixture fy;
  TermGrammar h = fy.grammar(
      "E > a.\nL > nil.\nL > cons(E, L).\nsu > p(M).\nM > nil.\nca > p(L).");
  CHECK(to_text(h) == canon);
  auto records = to_records(g);
  REQUIRE_FALSE(records.empty());
  CHECK(records[0].lhs == "ca");
  for (const RuleRecord& r : records)
    CHECK(r.children.size() == r.arity);
}

TEST_CASE("grammar algebra properties on random grammars") {
  std::mt19937_64 rng(testgen::seed_from_env(12));
  SymbolTable tbl;
  auto sig = testgen::small_signature(tbl);
  auto universe = testgen::all_terms(sig, 3);
  for (int i = 0; i < 60; ++i) {
    TermGrammar g = normalize(testgen::random_grammar(rng, sig));
    auto vars = g.var_ids();
    VarId x = vars[rng() % vars.size()];
    VarId y = vars[rng() % vars.size()];

    auto ex = enumerate(g, x, 4);
    auto ey = enumerate(g, y, 4);

    // union dominates
    {
      auto [u, g2] = union_vars(g, x, y);
      auto eu = enumerate(g2, u, 4);
      CHECK(subset(ex, eu));
      CHECK(subset(ey, eu));
    }
    // intersect exact
    {
      auto [m, g2] = intersect_vars(g, x, y);
      CHECK(enumerate(g2, m, 4) == inter(ex, ey));
    }
    // includes agrees with enumeration
    {
      bool inc = includes(g, x, y);
      if (inc) {
        CHECK(subset(ey, ex));
      } else {
        auto w = includes_witness(g, x, y);
        REQUIRE(w.has_value());
        CHECK(member(g, y, *w));
        CHECK_FALSE(member(g, x, *w));
      }
      if (!subset(ey, ex)) CHECK_FALSE(inc);
    }
    // member agrees with enumeration on the universe
    {
      auto e3 = enumerate(g, x, 3);
      for (const Term& t : universe)
        CHECK(member(g, x, t) == (e3.count(t) == 1));
    }
  }
}

TEST_CASE("union and intersection are commutative and associative up to sem") {
  std::mt19937_64 rng(testgen::seed_from_env(13));
  SymbolTable tbl;
  auto sig = testgen::small_signature(tbl);
  for (int i = 0; i < 20; ++i) {
    TermGrammar g = normalize(testgen::random_grammar(rng, sig));
    auto vars = g.var_ids();
    VarId x = vars[rng() % vars.size()];
    VarId y = vars[rng() % vars.size()];
    {
      auto [uxy, g1] = union_vars(g, x, y);
      auto [uyx, g2] = union_vars(g, y, x);
      CHECK(includes_across(g1, uxy, g2, uyx));
      CHECK(includes_across(g2, uyx, g1, uxy));
    }
    {
      auto [mxy, g1] = intersect_vars(g, x, y);
      auto [myx, g2] = intersect_vars(g, y, x);
      CHECK(includes_across(g1, mxy, g2, myx));
      CHECK(includes_across(g2, myx, g1, mxy));
    }
  }
}
