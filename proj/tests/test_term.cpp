#include <doctest.h>

#include "e2p/term.hpp"
#include "testutil.hpp"

using namespace e2p;

TEST_CASE("term parsing, sugar, and round trip") {
  CHECK(parse_term("\\x. x") == Term::lam("x", Term::var("x")));
  CHECK(parse_term("f a b") == Term::ap(Term::ap(Term::var("f"), Term::var("a")), Term::var("b")));
  CHECK(parse_term("fst t") == Term::spread(Term::var("t"), "x", "y", Term::var("x")));
  CHECK(parse_term("snd t") == Term::spread(Term::var("t"), "x", "y", Term::var("y")));
  CHECK(parse_term("if c then a else b") ==
        Term::decide(Term::var("c"), "_", Term::var("a"), "_", Term::var("b")));
  CHECK(parse_term("inl x y") == Term::ap(Term::inl(Term::var("x")), Term::var("y")));
  CHECK(parse_term("cbv(f; a)") == Term::cbv_ap(Term::var("f"), Term::var("a")));
  CHECK(parse_term("cbvpair(a; b)") == Term::cbv_pair(Term::var("a"), Term::var("b")));
  CHECK(parse_term("stuck").is(TKind::Stuck));
  CHECK_THROWS_AS(parse_term("spread(x; y. b)"), ParseError);

  testutil::Rng rng(2);
  for (int i = 0; i < 300; i++) {
    Term t = testutil::random_closed_term(rng, 5);
    std::string s = to_string(t);
    CAPTURE(s);
    Term u = parse_term(s);
    CHECK(t == u);
    CHECK(to_string(u) == s);
  }
}

TEST_CASE("free variables") {
  CHECK(free_term_vars(parse_term("\\x. x")).empty());
  CHECK(free_term_vars(parse_term("h <x, p>")) == std::set<std::string>{"h", "x", "p"});
  CHECK(free_term_vars(parse_term("spread(p; x, y. x)")) == std::set<std::string>{"p"});
}

TEST_CASE("substitution") {
  CHECK(subst_term(Term::var("v0"), "v0", parse_term("<v1, v2>")) == parse_term("<v1, v2>"));
  CHECK(subst_term(parse_term("\\v0. v0"), "v0", parse_term("inl v1")) == parse_term("\\v0. v0"));
  CHECK(subst_term(parse_term("decide(c; x. x; y. y)"), "c", parse_term("inl v3")) ==
        parse_term("decide(inl v3; x. x; y. y)"));

  // capture avoidance: the binder is renamed when the payload mentions it
  Term t = parse_term("\\x. y x");
  Term r = subst_term(t, "y", Term::var("x"));
  CHECK(alpha_equal(r, parse_term("\\z. x z")));

  testutil::Rng rng(3);
  for (int i = 0; i < 200; i++) {
    std::vector<std::string> scope = {"u", "w"};
    Term t2 = testutil::random_term(rng, 4, scope);
    CHECK(alpha_equal(subst_term(t2, "u", Term::var("u")), t2));
  }
}

TEST_CASE("alpha equality") {
  CHECK(alpha_equal(parse_term("\\x. x"), parse_term("\\y. y")));
  CHECK(!alpha_equal(parse_term("\\x. x"), parse_term("\\y. x")));
  CHECK(alpha_equal(parse_term("spread(p; a, b. <b, a>)"), parse_term("spread(p; x, y. <y, x>)")));
  CHECK(!alpha_equal(parse_term("inl x"), parse_term("inr x")));
}

TEST_CASE("principal subterm") {
  // a variable scrutinee blocks a decide
  auto p1 = principal_subterm(parse_term("decide(c; x. a; y. b)"));
  CHECK(p1.principal == Term::var("c"));
  CHECK(p1.parent().is(TKind::Decide));

  auto p2 = principal_subterm(parse_term("f t"));
  CHECK(p2.principal == Term::var("f"));

  auto p3 = principal_subterm(parse_term("cbv(f; d)"));
  CHECK(p3.principal == Term::var("d"));

  auto p4 = principal_subterm(parse_term("\\x. x"));
  CHECK(p4.principal == parse_term("\\x. x"));
  CHECK(!p4.has_parent());

  // rebuilding with the principal subterm itself is the identity
  testutil::Rng rng(4);
  for (int i = 0; i < 200; i++) {
    Term t = testutil::random_closed_term(rng, 5);
    auto p = principal_subterm(t);
    CHECK(p.rebuild_principal(p.principal) == t);
  }
}

namespace {
// independent node counter for the measure oracle
void count_kinds(const Term& t, long& nc, long& cbv, long& npr, long& cn, long& size) {
  size++;
  switch (t.kind()) {
    case TKind::Decide:
      nc++;
      count_kinds(t.scrut(), nc, cbv, npr, cn, size);
      count_kinds(t.left(), nc, cbv, npr, cn, size);
      count_kinds(t.right(), nc, cbv, npr, cn, size);
      return;
    case TKind::Spread:
      nc++;
      count_kinds(t.scrut(), nc, cbv, npr, cn, size);
      count_kinds(t.body(), nc, cbv, npr, cn, size);
      return;
    case TKind::Ap:
      nc++;
      count_kinds(t.fun(), nc, cbv, npr, cn, size);
      count_kinds(t.arg(), nc, cbv, npr, cn, size);
      return;
    case TKind::CbvAp:
      cbv++;
      count_kinds(t.fun(), nc, cbv, npr, cn, size);
      count_kinds(t.arg(), nc, cbv, npr, cn, size);
      return;
    case TKind::Pair:
      npr++;
      count_kinds(t.first(), nc, cbv, npr, cn, size);
      count_kinds(t.second(), nc, cbv, npr, cn, size);
      return;
    case TKind::CbvPair:
      cn++;
      count_kinds(t.first(), nc, cbv, npr, cn, size);
      count_kinds(t.second(), nc, cbv, npr, cn, size);
      return;
    case TKind::Inl:
    case TKind::Inr:
      cn++;
      count_kinds(t.inner(), nc, cbv, npr, cn, size);
      return;
    case TKind::Lam: count_kinds(t.body(), nc, cbv, npr, cn, size); return;
    case TKind::Var:
    case TKind::Stuck: return;
  }
}

Measure oracle_measure(const Term& t) {
  Measure m;
  count_kinds(t, m.nc, m.cbv, m.npr, m.cn, m.size);
  return m;
}
}  // namespace

TEST_CASE("measure") {
  CHECK(measure(parse_term("\\x. x")) == Measure{0, 0, 0, 0, 2});
  CHECK(measure(parse_term("<inl v0, spread(p; x, y. x)>")) == Measure{1, 0, 1, 1, 6});
  CHECK(measure(parse_term("cbvpair(v0; v1)")) == Measure{0, 0, 0, 1, 3});

  testutil::Rng rng(5);
  for (int i = 0; i < 200; i++) {
    Term t = testutil::random_closed_term(rng, 5);
    CHECK(measure(t) == oracle_measure(t));
  }
}

TEST_CASE("measure is monotone on subterms") {
  // every direct child of a term has measure <= the whole term
  testutil::Rng rng(6);
  for (int i = 0; i < 200; i++) {
    Term t = testutil::random_closed_term(rng, 5);
    Measure m = measure(t);
    auto le = [&m](const Term& sub) { return !(m < measure(sub)); };
    switch (t.kind()) {
      case TKind::Lam: CHECK(le(t.body())); break;
      case TKind::Pair:
      case TKind::CbvPair:
        CHECK(le(t.first()));
        CHECK(le(t.second()));
        break;
      case TKind::Ap:
      case TKind::CbvAp:
        CHECK(le(t.fun()));
        CHECK(le(t.arg()));
        break;
      default: break;
    }
  }
}

TEST_CASE("patterns") {
  Pattern p = Pattern::pair(Pattern::var("d0"), Pattern::inl(Pattern::var("v1")));
  CHECK(pattern_to_term(p) == parse_term("<d0, inl v1>"));
  CHECK(pattern_vars(p) == std::vector<std::string>{"d0", "v1"});
  Pattern q = subst_pattern_var(p, "v1", Pattern::pair(Pattern::var("v2"), Pattern::var("v3")));
  CHECK(pattern_vars(q) == std::vector<std::string>{"d0", "v2", "v3"});
  CHECK(to_string(p) == "<d0, inl(v1)>");
}
