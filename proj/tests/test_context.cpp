#include <doctest.h>

#include "e2p/context.hpp"

using namespace e2p;

namespace {
Context ctx(std::vector<ContextEntry> es) { return Context(std::move(es)); }
}  // namespace

TEST_CASE("name indices") {
  CHECK(name_index("v0") == 0);
  CHECK(name_index("v17") == 17);
  CHECK(name_index("d3") == 3);
  CHECK(name_index("foo") == -1);
  CHECK(name_index("w12") == 12);
}

TEST_CASE("well-formedness of small contexts") {
  CHECK(!check_wellformed(ctx({})));
  CHECK(!check_wellformed(ctx({DomainDecl{"d0"}, HypDecl{"v0", parse_formula("P(d0)")}})));

  // type mentions an undeclared domain variable
  auto v1 = check_wellformed(ctx({HypDecl{"v0", parse_formula("P(d0)")}}));
  REQUIRE(v1);
  CHECK(v1->kind == ViolationKind::UndeclaredVariable);

  // stratification: constraint on v1 with pattern variable v0 fails 1 < 0
  auto v2 = check_wellformed(ctx({DomainDecl{"d0"},
                                  HypDecl{"v1", parse_formula("all z. P(z)")},
                                  HypDecl{"v0", parse_formula("P(d0)")},
                                  ApConstraint{"v1", "d0", Pattern::var("v0")}}));
  REQUIRE(v2);
  CHECK(v2->kind == ViolationKind::StratificationBreach);

  // the well-ordered version passes
  CHECK(!check_wellformed(ctx({DomainDecl{"d0"},
                               HypDecl{"v0", parse_formula("all z. P(z)")},
                               HypDecl{"v1", parse_formula("P(d0)")},
                               ApConstraint{"v0", "d0", Pattern::var("v1")}})));

  // duplicate constraint on the same key
  auto v3 = check_wellformed(ctx({DomainDecl{"d0"},
                                  HypDecl{"v0", parse_formula("all z. P(z)")},
                                  HypDecl{"v1", parse_formula("P(d0)")},
                                  HypDecl{"v2", parse_formula("P(d0)")},
                                  ApConstraint{"v0", "d0", Pattern::var("v1")},
                                  ApConstraint{"v0", "d0", Pattern::var("v2")}}));
  REQUIRE(v3);
  CHECK(v3->kind == ViolationKind::DuplicateConstraint);

  // pattern shape cannot inhabit the declared type
  auto v4 = check_wellformed(ctx({HypDecl{"v0", parse_formula("A => B")},
                                  HypDecl{"v1", parse_formula("A")},
                                  ConstConstraint{"v0", Pattern::inl(Pattern::var("v1"))}}));
  REQUIRE(v4);
  CHECK(v4->kind == ViolationKind::PatternTypeMismatch);
}

TEST_CASE("fresh variables take the least unused index") {
  Context empty;
  CHECK(empty.fresh_evidence_var() == "v0");

  Context h = ctx({HypDecl{"v0", parse_formula("A")}, HypDecl{"v3", parse_formula("B")}});
  CHECK(h.fresh_evidence_var() == "v4");

  Context d = ctx({DomainDecl{"d1"}});
  CHECK(d.fresh_domain_var() == "d2");

  Context r;
  r.reserve_indices_from(parse_term("\\v5. v5 d2"));
  CHECK(r.fresh_evidence_var() == "v6");
  CHECK(r.fresh_domain_var() == "d3");
}

TEST_CASE("subst_in_structure splices pattern declarations") {
  // decide case: c : A \/ B replaced by inl x0 declares x0 : A in place
  EvidenceStructure s1{ctx({HypDecl{"c", parse_formula("A \\/ B")},
                            HypDecl{"v9", parse_formula("C")}}),
                       parse_formula("C"), parse_term("decide(c; x. x; y. y)")};
  EvidenceStructure r1 = subst_in_structure(s1, "c", Pattern::inl(Pattern::var("x0")));
  REQUIRE(r1.context.entries().size() == 2);
  CHECK(r1.context.hyp_type("x0") == parse_formula("A"));
  CHECK(!r1.context.declares("c"));
  CHECK(r1.evidence == parse_term("decide(inl x0; x. x; y. y)"));

  // conjunction case: p := <x0, y0> splices both components
  EvidenceStructure s2{ctx({HypDecl{"p", parse_formula("A /\\ B")}}), parse_formula("A"),
                       parse_term("fst p")};
  EvidenceStructure r2 =
      subst_in_structure(s2, "p", Pattern::pair(Pattern::var("x0"), Pattern::var("y0")));
  CHECK(r2.context.hyp_type("x0") == parse_formula("A"));
  CHECK(r2.context.hyp_type("y0") == parse_formula("B"));
  CHECK(r2.evidence == parse_term("spread(<x0, y0>; x, y. x)"));

  // existential pattern declares the witness as a domain variable
  EvidenceStructure s3{ctx({HypDecl{"p", parse_formula("ex z. P(z)")}}), parse_formula("Q0"),
                       parse_term("v7")};
  EvidenceStructure r3 =
      subst_in_structure(s3, "p", Pattern::pair(Pattern::var("d0"), Pattern::var("y0")));
  CHECK(r3.context.has_domain("d0"));
  CHECK(r3.context.hyp_type("y0") == parse_formula("P(d0)"));
  CHECK(r3.evidence == parse_term("v7"));  // variable not occurring: evidence unchanged

  // constraints rewrite their bodies
  EvidenceStructure s4{ctx({DomainDecl{"d0"},
                            HypDecl{"v0", parse_formula("all z. P(z) /\\ P(z)")},
                            HypDecl{"v1", parse_formula("P(d0) /\\ P(d0)")},
                            ApConstraint{"v0", "d0", Pattern::var("v1")}}),
                       parse_formula("P(d0)"), parse_term("v1")};
  EvidenceStructure r4 =
      subst_in_structure(s4, "v1", Pattern::pair(Pattern::var("v2"), Pattern::var("v3")));
  auto body = r4.context.ap_constraint("v0", "d0");
  REQUIRE(body);
  CHECK(*body == Pattern::pair(Pattern::var("v2"), Pattern::var("v3")));
  CHECK(!check_wellformed(r4.context));

  // incompatible pattern shapes are rejected
  CHECK_THROWS_AS(subst_in_structure(s2, "p", Pattern::inl(Pattern::var("z0"))),
                  IncompatiblePattern);
}

TEST_CASE("rendering") {
  Context h = ctx({DomainDecl{"d0"}, HypDecl{"v0", parse_formula("P(d0)")},
                   HypDecl{"v1", parse_formula("A => B")},
                   ConstConstraint{"v1", Pattern::var("v2")}});
  CHECK(to_string(h) == "d0:D; v0:P(d0); v1:A => B; v1 = const(v2)");
}
