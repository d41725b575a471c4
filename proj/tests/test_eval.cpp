#include <doctest.h>

#include "e2p/eval.hpp"
#include "testutil.hpp"

using namespace e2p;

TEST_CASE("single steps") {
  CHECK(*step(parse_term("(\\x. x) (inl v0)")) == parse_term("inl v0"));
  CHECK(*step(parse_term("spread(<v0, v1>; x, y. y)")) == parse_term("v1"));
  CHECK(*step(parse_term("cbvpair(inl v0; v9)")) == parse_term("<inl v0, v9>"));
  CHECK(!step(parse_term("decide(c; x. x; y. y)")));  // principal variable blocks
  CHECK(!step(parse_term("\\x. (\\y. y) x")));        // no reduction under binders
  CHECK(!step(Term::stuck()));
  CHECK(*step(parse_term("cbv(f; (\\x. x) v0)")) == parse_term("cbv(f; v0)"));
  CHECK(*step(parse_term("decide(inr v0; x. a x; y. b y)")) == parse_term("b v0"));
}

TEST_CASE("compute_to_head") {
  auto r1 = compute_to_head(parse_term("(\\x. x) (\\y. y)"), 10);
  CHECK(r1.kind == HeadKind::Canonical);
  CHECK(r1.term == parse_term("\\y. y"));

  auto r2 = compute_to_head(parse_term("h <v0, v1>"), 10);
  CHECK(r2.kind == HeadKind::PrincipalVariable);
  CHECK(r2.principal->principal == Term::var("h"));
  CHECK(r2.term == parse_term("h <v0, v1>"));

  Term omega = parse_term("(\\x. x x) (\\x. x x)");
  auto r3 = compute_to_head(omega, 100);
  CHECK(r3.kind == HeadKind::FuelExhausted);
  CHECK(r3.steps_used == 100);

  auto r4 = compute_to_head(parse_term("spread(stuck; x, y. x)"), 10);
  CHECK(r4.kind == HeadKind::Stuck);

  // a canonical form applied as a function is dead
  auto r5 = compute_to_head(parse_term("<a, b> c"), 10);
  CHECK(r5.kind == HeadKind::Stuck);
}

TEST_CASE("normalize") {
  CHECK(normalize(parse_term("\\h. (\\z. z) h"), 10).term == parse_term("\\h. h"));
  CHECK(normalize(parse_term("<(\\x. x) v0, v1>"), 10).term == parse_term("<v0, v1>"));
  CHECK(normalize(parse_term("fst <v0, v1>"), 10).term == parse_term("v0"));
  CHECK(!normalize(parse_term("(\\x. x x) (\\x. x x)"), 50).complete);

  // blocked destructors stay in place but their parts normalize
  CHECK(normalize(parse_term("spread(p; x, y. (\\z. z) x)"), 10).term ==
        parse_term("spread(p; x, y. x)"));
}

TEST_CASE("normalize is idempotent on successes") {
  testutil::Rng rng(7);
  int done = 0;
  for (int i = 0; i < 400 && done < 250; i++) {
    Term t = testutil::random_closed_term(rng, 5);
    auto r = normalize(t, 2000);
    if (!r.complete) continue;
    done++;
    auto r2 = normalize(r.term, 2000);
    CHECK(r2.complete);
    CHECK(r2.term == r.term);
    CHECK(r2.steps_used == 0);
  }
  CHECK(done > 100);
}

TEST_CASE("progress: canonical, stuck-or-dead, principal variable, or reducible") {
  testutil::Rng rng(8);
  for (int i = 0; i < 300; i++) {
    std::vector<std::string> scope = {"u"};
    Term t = testutil::random_term(rng, 5, scope);
    bool canonical = t.is_canonical();
    bool reducible = step(t).has_value();
    auto p = principal_subterm(t);
    bool blocked = !canonical && !reducible && p.principal.is(TKind::Var);
    bool dead = !canonical && !reducible && !p.principal.is(TKind::Var);
    int ways = int(canonical) + int(reducible) + int(blocked) + int(dead);
    CHECK(ways == 1);
  }
}

TEST_CASE("determinism of head computation") {
  testutil::Rng rng(9);
  for (int i = 0; i < 100; i++) {
    Term t = testutil::random_closed_term(rng, 5);
    auto a = compute_to_head(t, 500);
    auto b = compute_to_head(t, 500);
    CHECK(a.kind == b.kind);
    CHECK(a.term == b.term);
    CHECK(a.steps_used == b.steps_used);
  }
}

TEST_CASE("substituting a pattern into a normal term renormalizes within size bounds") {
  testutil::Rng rng(10);
  int done = 0;
  for (int i = 0; i < 400 && done < 150; i++) {
    std::vector<std::string> scope = {"v", "w"};
    Term t0 = testutil::random_term(rng, 4, scope);
    auto n = normalize(t0, 2000);
    if (!n.complete) continue;
    done++;
    // patterns contain only pairing, injections, and variables
    Term pat = parse_term(rng.chance(0.5) ? "<w9, inl w8>" : "inr <w7, w6>");
    Term substituted = subst_term(n.term, "v", pat);
    long bound = static_cast<long>(n.term.node_count() * pat.node_count());
    auto rn = normalize(substituted, bound > 0 ? bound : 1);
    CHECK(rn.complete);
  }
  CHECK(done > 80);
}
