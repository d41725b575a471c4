#include <doctest.h>

#include "e2p/semantics.hpp"
#include "testutil.hpp"

using namespace e2p;

namespace {
FinitaryStructure tokens(int k, std::map<std::pair<std::string, std::vector<int>>, int> cards) {
  FinitaryStructure m;
  m.domain_size = k;
  m.atom_cards = std::move(cards);
  return m;
}
}  // namespace

TEST_CASE("inhabitants of basic types") {
  // product of singletons under the unit structure
  FinitaryStructure u = unit_structure({}, 1);
  auto pp = inhabitants(u, parse_formula("P /\\ P"));
  REQUIRE(pp.size() == 1);
  CHECK(pp[0] == Value::pair(Value::star(), Value::star()));

  // one total table for a universally quantified unit atom over two elements
  FinitaryStructure u2 = unit_structure({}, 2);
  auto tbl = inhabitants(u2, parse_formula("all x. P1(x)"));
  REQUIRE(tbl.size() == 1);
  CHECK(tbl[0].kind() == VKind::Table);
  CHECK(tbl[0].graph().size() == 2);

  // empty sum
  FinitaryStructure e = tokens(1, {{{"A", {}}, 0}});
  CHECK(inhabitants(e, parse_formula("False \\/ A")).empty());

  // |A -> B| = |B| ^ |A|
  FinitaryStructure m = tokens(1, {{{"A", {}}, 2}, {{"B", {}}, 3}});
  auto fns = inhabitants(m, parse_formula("A => B"));
  CHECK(fns.size() == 9);  // 3^2, counted by full enumeration
  for (const auto& f : fns) CHECK(f.graph().size() == 2);

  // existentials pair a domain element with body evidence
  FinitaryStructure m2 = tokens(2, {{{"Q", {0}}, 1}, {{"Q", {1}}, 2}});
  auto ex = inhabitants(m2, parse_formula("ex x. Q(x)"));
  CHECK(ex.size() == 3);
  CHECK(ex[0] == Value::pair(Value::dom(0), Value::token(0)));
}

TEST_CASE("cardinality laws on random small instances") {
  testutil::Rng rng(12);
  for (int i = 0; i < 60; i++) {
    int k = 1 + rng.below(2);
    std::map<std::pair<std::string, std::vector<int>>, int> cards;
    for (int d1 = 0; d1 < k; d1++) {
      cards[{"Q", {d1}}] = rng.below(3);
      for (int d2 = 0; d2 < k; d2++) cards[{"R", {d1, d2}}] = rng.below(3);
    }
    cards[{"P", {}}] = rng.below(3);
    FinitaryStructure m = tokens(k, cards);

    testutil::Rng inner(static_cast<uint32_t>(100 + i));
    Formula a = testutil::random_closed_minimal(inner, 2);
    Formula b = testutil::random_closed_minimal(inner, 2);
    if (testutil::cardinality_estimate(Formula::imp(a, b), k, 1e4) > 1e4) continue;

    size_t ca = inhabitants(m, a).size();
    size_t cb = inhabitants(m, b).size();
    CHECK(inhabitants(m, Formula::conj(a, b)).size() == ca * cb);
    CHECK(inhabitants(m, Formula::disj(a, b)).size() == ca + cb);
    size_t expect = 1;
    for (size_t j = 0; j < ca; j++) expect *= cb;
    CHECK(inhabitants(m, Formula::imp(a, b)).size() == expect);
  }
}

TEST_CASE("unit structure") {
  FinitaryStructure m = unit_structure({"d0", "d1"}, 2);
  CHECK(m.env.at("d0") == Value::dom(0));
  CHECK(m.env.at("d1") == Value::dom(1));
  CHECK_THROWS_AS(unit_structure({"d0", "d1"}, 1), std::invalid_argument);

  // every closed minimal formula is inhabited; False is not
  CHECK(!inhabitants(unit_structure({}, 1), parse_formula("P => bot")).empty());
  CHECK(inhabitants(unit_structure({}, 1),
                    Formula::imp(Formula::atom("P"), Formula::falsec()))
            .empty());
}

TEST_CASE("unit structure inhabits random closed minimal formulas") {
  testutil::Rng rng(13);
  for (int k : {1, 2, 3}) {
    FinitaryStructure m = unit_structure({}, k);
    int checked = 0;
    for (int i = 0; i < 120 && checked < 60; i++) {
      Formula f = testutil::random_closed_minimal(rng, 5);
      if (testutil::cardinality_estimate(f, k, 1e4) > 1e4) continue;
      checked++;
      CAPTURE(to_string(f));
      CHECK(!inhabitants(m, f).empty());
    }
    CHECK(checked >= 40);
  }
}

TEST_CASE("membership checking") {
  // identity inhabits A => A in every small structure
  for (int card = 0; card <= 2; card++) {
    FinitaryStructure m = tokens(1, {{{"A", {}}, card}});
    CHECK(check_membership(m, parse_term("\\x. x"), parse_formula("A => A"), 1000) ==
          Membership::Member);
  }

  // shape clash: injection against a conjunction
  FinitaryStructure m = tokens(1, {{{"A", {}}, 1}, {{"B", {}}, 1}});
  CHECK(check_membership(m, parse_term("inl (\\x. x)"), parse_formula("A /\\ B"), 1000) ==
        Membership::NotMember);

  // stuck evidence is never a member
  CHECK(check_membership(m, Term::stuck(), parse_formula("A /\\ B"), 1000) ==
        Membership::NotMember);

  // diverging evidence is inconclusive
  CHECK(check_membership(m, parse_term("(\\x. x x) (\\x. x x)"), parse_formula("A => A"), 200) ==
        Membership::Inconclusive);

  // constants: \x. \y. x inhabits A => (B => A)
  FinitaryStructure m2 = tokens(1, {{{"A", {}}, 2}, {{"B", {}}, 2}});
  CHECK(check_membership(m2, parse_term("\\x. \\y. x"), parse_formula("A => (B => A)"), 10000) ==
        Membership::Member);
  CHECK(check_membership(m2, parse_term("\\x. \\y. y"), parse_formula("A => (B => A)"), 10000) ==
        Membership::NotMember);
}

TEST_CASE("membership of the introduction realizer in all small structures") {
  Formula goal = parse_formula("((ex x. P(x)) => bot) => all x. (P(x) => bot)");
  Term evd = parse_term("\\h. \\x. \\p. h <x, p>");
  auto rep = sample_uniform_validity(goal, evd, 2, 2, 100000);
  CHECK(rep.kind == ValidityReport::Kind::AllMember);
  CHECK(rep.structures_checked > 10);
}

TEST_CASE("excluded-middle candidates are refuted by enumeration") {
  Formula lem = parse_formula("P \\/ (P => bot)");
  auto r1 = sample_uniform_validity(lem, parse_term("inl (\\x. x)"), 1, 2, 1000);
  REQUIRE(r1.kind == ValidityReport::Kind::Counterexample);
  CHECK(r1.counterexample->render() == "domain=1; P=0; bot=0");

  auto r2 = sample_uniform_validity(lem, parse_term("inr (\\x. x)"), 1, 2, 1000);
  REQUIRE(r2.kind == ValidityReport::Kind::Counterexample);
  // the refuting structure inhabits P but not bot
  CHECK(r2.counterexample->atom_cards.at({"P", {}}) > 0);
  CHECK(r2.counterexample->atom_cards.at({"bot", {}}) == 0);

  for (const char* t : {"\\x. x", "<\\x. x, \\y. y>", "stuck"}) {
    auto r = sample_uniform_validity(lem, parse_term(t), 1, 2, 1000);
    CHECK(r.kind == ValidityReport::Kind::Counterexample);
  }
}

TEST_CASE("witness flow through existential goals") {
  Formula g = parse_formula("all x. ex y. R2(x,y)");
  Term evd = parse_term("\\d. <d, w9>");  // w9 is not valid evidence uniformly
  CHECK(!is_closed(evd));
  // a proper witness function evaluates under each domain binding
  Term good = parse_term("\\d. cbvpair(d; q)");
  CHECK(!is_closed(good));
  // closed candidate: pair the element with itself; refuted when R2(d,d) is empty
  Term cand = parse_term("\\d. <d, \\z. z>");
  auto rep = sample_uniform_validity(g, cand, 2, 1, 10000);
  CHECK(rep.kind == ValidityReport::Kind::Counterexample);
}

TEST_CASE("model construction from contexts") {
  CHECK(model_of_context(Context{}, 1).unit_atoms);

  // forall constraint: the table honors the constrained point
  Context h1({DomainDecl{"d0"}, HypDecl{"f", parse_formula("all z. P1(z)")},
              HypDecl{"w0", parse_formula("P1(d0)")}, ApConstraint{"f", "d0", Pattern::var("w0")}});
  FinitaryStructure m1 = model_of_context(h1, 2);
  const Value& f = m1.env.at("f");
  REQUIRE(f.kind() == VKind::Table);
  bool found = false;
  for (const auto& [k, v] : f.graph())
    if (k == m1.env.at("d0")) {
      CHECK(v == m1.env.at("w0"));
      found = true;
    }
  CHECK(found);

  // const constraint: the table is constant at the pattern's value
  Context h2({HypDecl{"v0", parse_formula("A => B")}, HypDecl{"v1", parse_formula("B")},
              ConstConstraint{"v0", Pattern::var("v1")}});
  FinitaryStructure m2 = model_of_context(h2, 1);
  for (const auto& [k, v] : m2.env.at("v0").graph()) CHECK(v == m2.env.at("v1"));

  // ill-formed contexts are rejected
  Context bad({HypDecl{"v0", parse_formula("P(d9)")}});
  CHECK_THROWS(model_of_context(bad, 1));
  CHECK_THROWS_AS(model_of_context(h1, 1), std::invalid_argument);
}

TEST_CASE("value ordering is total and deterministic") {
  std::vector<Value> vs = {Value::star(), Value::token(0), Value::token(1), Value::dom(0),
                           Value::pair(Value::star(), Value::star()), Value::inl(Value::star()),
                           Value::inr(Value::star()), Value::table({})};
  for (size_t i = 0; i < vs.size(); i++)
    for (size_t j = 0; j < vs.size(); j++) {
      if (i == j) CHECK(vs[i] == vs[j]);
      else CHECK((vs[i] < vs[j]) != (vs[j] < vs[i]));
    }
}
