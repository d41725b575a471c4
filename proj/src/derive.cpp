#include "e2p/derive.hpp"

#include <cassert>
#include <sstream>

namespace e2p {

std::string_view rule_name(RuleId r) {
  switch (r) {
    case RuleId::AndPair: return "AndPair";
    case RuleId::ExPair: return "ExPair";
    case RuleId::ExValPair: return "ExValPair";
    case RuleId::OrInl: return "OrInl";
    case RuleId::OrInr: return "OrInr";
    case RuleId::ImpLam: return "ImpLam";
    case RuleId::AllLam: return "AllLam";
    case RuleId::VarAx: return "VarAx";
    case RuleId::DecideR: return "DecideR";
    case RuleId::AndSpread: return "AndSpread";
    case RuleId::ExSpread: return "ExSpread";
    case RuleId::ApplyConst: return "ApplyConst";
    case RuleId::ImpApply: return "ImpApply";
    case RuleId::AllApply: return "AllApply";
    case RuleId::ApplyModel: return "ApplyModel";
    case RuleId::AllCbv: return "AllCbv";
  }
  return "?";
}

namespace {

MatchFailure clash(const std::string& why) { return MatchFailure{why}; }

std::variant<RuleId, MatchFailure> match_canonical(const EvidenceStructure& s) {
  const Term& e = s.evidence;
  const Formula& g = s.goal;
  switch (e.kind()) {
    case TKind::Pair:
      if (g.is(FKind::And)) return RuleId::AndPair;
      if (g.is(FKind::Ex)) {
        if (e.first().is_canonical())
          return clash("existential witness computed to a canonical form, not a domain element");
        return RuleId::ExPair;
      }
      return clash("pair against goal " + to_string(g));
    case TKind::Inl:
      if (g.is(FKind::Or)) return RuleId::OrInl;
      return clash("inl against goal " + to_string(g));
    case TKind::Inr:
      if (g.is(FKind::Or)) return RuleId::OrInr;
      return clash("inr against goal " + to_string(g));
    case TKind::Lam:
      if (g.is(FKind::Imp)) return RuleId::ImpLam;
      if (g.is(FKind::All)) return RuleId::AllLam;
      return clash("lambda against goal " + to_string(g));
    default: return clash("evidence is not canonical");
  }
}

}  // namespace

std::variant<RuleId, MatchFailure> match_rule(const EvidenceStructure& s) {
  const Term& e = s.evidence;
  if (e.is_canonical()) return match_canonical(s);
  if (e.is(TKind::Stuck)) return clash("evidence is stuck");

  PrincipalPath p = principal_subterm(e);
  if (!p.principal.is(TKind::Var))
    return clash("principal subterm is not a variable (head " +
                 std::string(kind_name(p.principal.kind())) + ")");
  const std::string& v = p.principal.name();

  if (!p.has_parent()) {
    // the evidence is the bare variable v
    auto t = s.context.hyp_type(v);
    if (!t) return clash("variable " + v + " is not declared as a hypothesis");
    if (!alpha_equal(*t, s.goal))
      return clash("hypothesis " + v + " : " + to_string(*t) + " does not match goal " +
                   to_string(s.goal));
    return RuleId::VarAx;
  }

  const Term& parent = p.parent();
  switch (parent.kind()) {
    case TKind::Decide: {
      auto t = s.context.hyp_type(v);
      if (!t) return clash("decide on undeclared variable " + v);
      if (!t->is(FKind::Or)) return clash("decide on " + v + " : " + to_string(*t));
      return RuleId::DecideR;
    }
    case TKind::Spread: {
      auto t = s.context.hyp_type(v);
      if (!t) return clash("spread on undeclared variable " + v);
      if (t->is(FKind::And)) return RuleId::AndSpread;
      if (t->is(FKind::Ex)) return RuleId::ExSpread;
      return clash("spread on " + v + " : " + to_string(*t));
    }
    case TKind::Ap: {
      if (s.context.const_constraint(v)) return RuleId::ApplyConst;
      auto t = s.context.hyp_type(v);
      if (!t) return clash("application of undeclared variable " + v);
      if (t->is(FKind::Imp)) return RuleId::ImpApply;
      if (t->is(FKind::All)) {
        if (parent.arg().is_canonical())
          return clash("domain argument of " + v + " computed to a canonical form");
        return RuleId::AllApply;
      }
      return clash("application of " + v + " : " + to_string(*t));
    }
    case TKind::CbvAp: {
      // principal variable is the argument; the function must be a declared
      // universal hypothesis
      const Term& f = parent.fun();
      if (!f.is(TKind::Var)) return clash("call-by-value apply with a non-variable function");
      if (s.context.ap_constraint(f.name(), v)) return RuleId::ApplyModel;
      auto ft = s.context.hyp_type(f.name());
      if (!ft) return clash("call-by-value apply of undeclared " + f.name());
      if (!ft->is(FKind::All))
        return clash("call-by-value apply of " + f.name() + " : " + to_string(*ft));
      if (!s.context.has_domain(v))
        return clash("argument " + v + " of " + f.name() + " is not a declared domain variable");
      return RuleId::AllCbv;
    }
    case TKind::CbvPair: {
      if (p.spine.size() != 1)
        return clash("call-by-value pair blocked below the evidence head");
      if (!s.goal.is(FKind::Ex)) return clash("call-by-value pair against goal " + to_string(s.goal));
      if (!s.context.has_domain(v))
        return clash("existential witness " + v + " is not a declared domain variable");
      return RuleId::ExValPair;
    }
    default: return clash("unexpected parent of principal variable");
  }
}

// ---------------------------------------------------------------------------

namespace {

DerivationStep make_step(RuleId r, std::vector<EvidenceStructure> children,
                         std::optional<ProofRule> pr = std::nullopt, std::string hyp = "",
                         std::string p1 = "", std::string p2 = "") {
  return DerivationStep{r, std::move(children), pr, std::move(hyp), std::move(p1), std::move(p2)};
}

}  // namespace

DerivationStep apply_rule(const EvidenceStructure& s, RuleId r) {
  const Term& e = s.evidence;
  const Formula& g = s.goal;

  switch (r) {
    case RuleId::AndPair:
      return make_step(r,
                       {EvidenceStructure{s.context, g.left(), e.first()},
                        EvidenceStructure{s.context, g.right(), e.second()}},
                       ProofRule::RightAnd);

    case RuleId::ExPair:
      return make_step(
          r, {EvidenceStructure{s.context, g, Term::cbv_pair(e.first(), e.second())}});

    case RuleId::OrInl:
      return make_step(r, {EvidenceStructure{s.context, g.left(), e.inner()}},
                       ProofRule::RightOrL);
    case RuleId::OrInr:
      return make_step(r, {EvidenceStructure{s.context, g.right(), e.inner()}},
                       ProofRule::RightOrR);

    case RuleId::ImpLam: {
      Context h = s.context;
      std::string v = h.fresh_evidence_var();
      h.append(HypDecl{v, g.left()});
      Term body = subst_term(e.body(), e.bound(), Term::var(v));
      return make_step(r, {EvidenceStructure{std::move(h), g.right(), std::move(body)}},
                       ProofRule::RightImp, "", v);
    }

    case RuleId::AllLam: {
      Context h = s.context;
      std::string d = h.fresh_domain_var();
      h.append(DomainDecl{d});
      Formula sub = subst_domain_var(g.body(), g.bound(), d);
      Term body = subst_term(e.body(), e.bound(), Term::var(d));
      return make_step(r, {EvidenceStructure{std::move(h), std::move(sub), std::move(body)}},
                       ProofRule::RightAll, "", d);
    }

    case RuleId::VarAx:
      return make_step(r, {}, ProofRule::Axiom, e.name());

    default: break;
  }

  // principal-variable rules
  PrincipalPath p = principal_subterm(e);
  assert(p.principal.is(TKind::Var));
  const std::string& v = p.principal.name();

  switch (r) {
    case RuleId::ExValPair: {
      // evidence is cbvpair(d; rest) at the head; goal is ex x. G
      const Term& rest = p.parent().second();
      Formula sub = subst_domain_var(g.body(), g.bound(), v);
      return make_step(r, {EvidenceStructure{s.context, std::move(sub), rest}},
                       ProofRule::RightEx, "", v);
    }

    case RuleId::DecideR: {
      const Term& dec = p.parent();
      Context h = s.context;
      std::string x = h.fresh_evidence_var();
      std::string y = h.fresh_evidence_var();
      Term left = subst_term(dec.left(), dec.var1(), Term::var(x));
      Term right = subst_term(dec.right(), dec.var2(), Term::var(y));
      EvidenceStructure base1{h, g, p.rebuild_parent(left)};
      EvidenceStructure base2{h, g, p.rebuild_parent(right)};
      EvidenceStructure c1 = subst_in_structure(base1, v, Pattern::inl(Pattern::var(x)));
      EvidenceStructure c2 = subst_in_structure(base2, v, Pattern::inr(Pattern::var(y)));
      return make_step(r, {std::move(c1), std::move(c2)}, ProofRule::LeftOr, v, x, y);
    }

    case RuleId::AndSpread: {
      const Term& sp = p.parent();
      Context h = s.context;
      std::string x = h.fresh_evidence_var();
      std::string y = h.fresh_evidence_var();
      Term body = subst_term(subst_term(sp.body(), sp.var1(), Term::var(x)), sp.var2(),
                             Term::var(y));
      EvidenceStructure base{h, g, p.rebuild_parent(body)};
      EvidenceStructure c = subst_in_structure(base, v, Pattern::pair(Pattern::var(x), Pattern::var(y)));
      return make_step(r, {std::move(c)}, ProofRule::LeftAnd, v, x, y);
    }

    case RuleId::ExSpread: {
      const Term& sp = p.parent();
      Context h = s.context;
      std::string d = h.fresh_domain_var();
      std::string y = h.fresh_evidence_var();
      Term body = subst_term(subst_term(sp.body(), sp.var1(), Term::var(d)), sp.var2(),
                             Term::var(y));
      EvidenceStructure base{h, g, p.rebuild_parent(body)};
      EvidenceStructure c = subst_in_structure(base, v, Pattern::pair(Pattern::var(d), Pattern::var(y)));
      return make_step(r, {std::move(c)}, ProofRule::LeftEx, v, d, y);
    }

    case RuleId::ApplyConst: {
      Pattern body = *s.context.const_constraint(v);
      return make_step(r, {EvidenceStructure{s.context, g, p.rebuild_parent(pattern_to_term(body))}});
    }

    case RuleId::ImpApply: {
      const Term& apn = p.parent();
      Formula ft = *s.context.hyp_type(v);
      Context h2 = s.context;
      std::string w = h2.fresh_evidence_var();
      h2.append(HypDecl{w, ft.right()});
      h2.append(ConstConstraint{v, Pattern::var(w)});
      EvidenceStructure arg{s.context, ft.left(), apn.arg()};
      EvidenceStructure cont{std::move(h2), g, p.rebuild_parent(Term::var(w))};
      return make_step(r, {std::move(arg), std::move(cont)}, ProofRule::LeftImp, v, w);
    }

    case RuleId::AllApply: {
      const Term& apn = p.parent();
      Term rewritten = p.rebuild_parent(Term::cbv_ap(Term::var(v), apn.arg()));
      return make_step(r, {EvidenceStructure{s.context, g, std::move(rewritten)}});
    }

    case RuleId::ApplyModel: {
      const Term& cb = p.parent();
      Pattern body = *s.context.ap_constraint(cb.fun().name(), v);
      return make_step(r, {EvidenceStructure{s.context, g, p.rebuild_parent(pattern_to_term(body))}});
    }

    case RuleId::AllCbv: {
      const Term& cb = p.parent();
      const std::string& f = cb.fun().name();
      Formula ft = *s.context.hyp_type(f);
      Context h = s.context;
      std::string w = h.fresh_evidence_var();
      Formula inst = subst_domain_var(ft.body(), ft.bound(), v);
      h.append(HypDecl{w, inst});
      h.append(ApConstraint{f, v, Pattern::var(w)});
      EvidenceStructure c{std::move(h), g, p.rebuild_parent(Term::var(w))};
      return make_step(r, {std::move(c)}, ProofRule::LeftAll, f, v, w);
    }

    default: break;
  }
  assert(false && "apply_rule: unhandled rule");
  return make_step(RuleId::VarAx, {});
}

// ---------------------------------------------------------------------------
// The driver.

namespace {

struct DriveError {
  DriveStatus status;
  std::string message;
  EvidenceStructure at;
};

struct Driver {
  const DriveOptions& opts;
  long budget;
  long rule_count = 0;
  long measure_violations = 0;

  Proof run(const EvidenceStructure& s) {
    EvidenceStructure cur = s;

    if (opts.pre_normalize) {
      auto nr = normalize_budget(cur.evidence, budget);
      if (!nr.complete) throw DriveError{DriveStatus::FuelExhausted, "normalization ran out of fuel", cur};
      cur.evidence = nr.term;
    }

    // compute to a head usable by the rules
    EvalOutcome out = compute_to_head_budget(cur.evidence, budget);
    switch (out.kind) {
      case HeadKind::FuelExhausted:
        throw DriveError{DriveStatus::FuelExhausted, "evaluation ran out of fuel", cur};
      case HeadKind::Stuck:
        cur.evidence = out.term;
        throw DriveError{DriveStatus::StuckEvidence,
                         "evidence is stuck: " + to_string(out.term), cur};
      default: cur.evidence = out.term; break;
    }

    auto m = match_rule(cur);
    if (const auto* f = std::get_if<MatchFailure>(&m))
      throw DriveError{DriveStatus::NoRuleMatches, f->reason, cur};
    RuleId rule = std::get<RuleId>(m);

    if (budget <= 0) throw DriveError{DriveStatus::FuelExhausted, "rule budget exhausted", cur};
    budget--;
    rule_count++;
    if (opts.trace) opts.trace(rule_count, rule, cur);

    DerivationStep step = apply_rule(cur, rule);
    assert(step.children.size() <= 2);

    Measure parent_measure = measure(cur.evidence);
    std::vector<Proof> sub;
    sub.reserve(step.children.size());
    for (auto& child : step.children) {
      if (opts.debug_checks) {
        if (auto v = check_wellformed(child.context))
          throw DriveError{DriveStatus::InvalidInput,
                           "derived context ill-formed: " + v->message, child};
      }
      if (opts.pre_normalize) {
        auto nr = normalize_budget(child.evidence, budget);
        if (!nr.complete)
          throw DriveError{DriveStatus::FuelExhausted, "normalization ran out of fuel", child};
        child.evidence = nr.term;
        if (!(measure(child.evidence) < parent_measure)) measure_violations++;
      }
      sub.push_back(run(child));
    }

    if (!step.proof_rule) return std::move(sub[0]);

    switch (*step.proof_rule) {
      case ProofRule::Axiom: return Proof::axiom(step.hyp);
      case ProofRule::RightAnd: return Proof::right_and(std::move(sub[0]), std::move(sub[1]));
      case ProofRule::RightOrL: return Proof::right_or_l(std::move(sub[0]));
      case ProofRule::RightOrR: return Proof::right_or_r(std::move(sub[0]));
      case ProofRule::RightImp: return Proof::right_imp(step.p1, std::move(sub[0]));
      case ProofRule::RightAll: return Proof::right_all(step.p1, std::move(sub[0]));
      case ProofRule::RightEx: return Proof::right_ex(step.p1, std::move(sub[0]));
      case ProofRule::LeftAnd:
        return Proof::left_and(step.hyp, step.p1, step.p2, std::move(sub[0]));
      case ProofRule::LeftOr:
        return Proof::left_or(step.hyp, step.p1, step.p2, std::move(sub[0]), std::move(sub[1]));
      case ProofRule::LeftImp:
        return Proof::left_imp(step.hyp, step.p1, std::move(sub[0]), std::move(sub[1]));
      case ProofRule::LeftAll:
        return Proof::left_all(step.hyp, step.p1, step.p2, std::move(sub[0]));
      case ProofRule::LeftEx:
        return Proof::left_ex(step.hyp, step.p1, step.p2, std::move(sub[0]));
      default: break;
    }
    assert(false && "driver emitted an unexpected proof rule");
    return Proof::axiom("");
  }
};

}  // namespace

DriveOutcome prove_from_evidence(const Formula& goal, const Term& evidence,
                                 const DriveOptions& opts) {
  DriveOutcome out;
  if (!is_minimal(goal)) {
    out.status = DriveStatus::InvalidInput;
    out.message = "goal is not a minimal-logic formula";
    return out;
  }
  if (!is_closed(goal)) {
    out.status = DriveStatus::InvalidInput;
    out.message = "goal is not closed";
    return out;
  }
  if (!is_closed(evidence)) {
    out.status = DriveStatus::InvalidInput;
    out.message = "evidence term is not closed";
    return out;
  }
  if (opts.fuel <= 0) {
    out.status = DriveStatus::InvalidInput;
    out.message = "fuel must be positive";
    return out;
  }

  Context root;
  root.reserve_indices_from(evidence);
  EvidenceStructure s{std::move(root), goal, evidence};

  Driver d{opts, opts.fuel};
  try {
    Proof p = d.run(s);
    out.status = DriveStatus::Proved;
    out.proof = std::move(p);
  } catch (const DriveError& e) {
    out.status = e.status;
    out.message = e.message;
    out.failed_at = e.at;
  } catch (const IncompatiblePattern& e) {
    out.status = DriveStatus::NoRuleMatches;
    out.message = e.what();
  }
  out.steps_used = opts.fuel - d.budget;
  out.rule_applications = d.rule_count;
  out.measure_violations = d.measure_violations;
  return out;
}

}  // namespace e2p
