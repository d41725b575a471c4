#include "e2p/eval.hpp"

namespace e2p {

std::optional<Term> step(const Term& t) {
  switch (t.kind()) {
    case TKind::Var:
    case TKind::Stuck:
    case TKind::Pair:
    case TKind::Inl:
    case TKind::Inr:
    case TKind::Lam: return std::nullopt;

    case TKind::Ap: {
      const Term& f = t.fun();
      if (f.is(TKind::Lam)) return subst_term(f.body(), f.bound(), t.arg());
      if (auto s = step(f)) return Term::ap(*s, t.arg());
      return std::nullopt;
    }
    case TKind::Spread: {
      const Term& s = t.scrut();
      if (s.is(TKind::Pair))
        return subst_term(subst_term(t.body(), t.var1(), s.first()), t.var2(), s.second());
      if (auto r = step(s)) return Term::spread(*r, t.var1(), t.var2(), t.body());
      return std::nullopt;
    }
    case TKind::Decide: {
      const Term& s = t.scrut();
      if (s.is(TKind::Inl)) return subst_term(t.left(), t.var1(), s.inner());
      if (s.is(TKind::Inr)) return subst_term(t.right(), t.var2(), s.inner());
      if (auto r = step(s)) return Term::decide(*r, t.var1(), t.left(), t.var2(), t.right());
      return std::nullopt;
    }
    case TKind::CbvAp: {
      const Term& a = t.arg();
      if (a.is_canonical()) return Term::ap(t.fun(), a);
      if (auto r = step(a)) return Term::cbv_ap(t.fun(), *r);
      return std::nullopt;
    }
    case TKind::CbvPair: {
      const Term& a = t.first();
      if (a.is_canonical()) return Term::pair(a, t.second());
      if (auto r = step(a)) return Term::cbv_pair(*r, t.second());
      return std::nullopt;
    }
  }
  return std::nullopt;
}

EvalOutcome compute_to_head_budget(Term t, long& budget) {
  long used = 0;
  for (;;) {
    if (t.is_canonical()) return {HeadKind::Canonical, t, used, std::nullopt};
    if (budget <= 0) return {HeadKind::FuelExhausted, t, used, std::nullopt};
    auto s = step(t);
    if (!s) {
      PrincipalPath p = principal_subterm(t);
      if (p.principal.is(TKind::Var))
        return {HeadKind::PrincipalVariable, t, used, std::move(p)};
      return {HeadKind::Stuck, t, used, std::nullopt};
    }
    t = std::move(*s);
    used++;
    budget--;
  }
}

EvalOutcome compute_to_head(Term t, long fuel) {
  long budget = fuel;
  return compute_to_head_budget(std::move(t), budget);
}

namespace {

struct OutOfFuel {};

Term nf(const Term& t, long& budget) {
  Term cur = t;
  while (auto s = step(cur)) {
    if (budget <= 0) throw OutOfFuel{};
    budget--;
    cur = std::move(*s);
  }
  // no head redex remains; a blocked head cannot be unblocked by normalizing
  // children, so recursing once per child suffices
  switch (cur.kind()) {
    case TKind::Var:
    case TKind::Stuck: return cur;
    case TKind::Pair: return Term::pair(nf(cur.first(), budget), nf(cur.second(), budget));
    case TKind::CbvPair: return Term::cbv_pair(nf(cur.first(), budget), nf(cur.second(), budget));
    case TKind::Inl: return Term::inl(nf(cur.inner(), budget));
    case TKind::Inr: return Term::inr(nf(cur.inner(), budget));
    case TKind::Lam: return Term::lam(cur.bound(), nf(cur.body(), budget));
    case TKind::Ap: return Term::ap(nf(cur.fun(), budget), nf(cur.arg(), budget));
    case TKind::CbvAp: return Term::cbv_ap(nf(cur.fun(), budget), nf(cur.arg(), budget));
    case TKind::Spread:
      return Term::spread(nf(cur.scrut(), budget), cur.var1(), cur.var2(), nf(cur.body(), budget));
    case TKind::Decide:
      return Term::decide(nf(cur.scrut(), budget), cur.var1(), nf(cur.left(), budget), cur.var2(),
                          nf(cur.right(), budget));
  }
  return cur;
}

}  // namespace

NormalizeResult normalize_budget(Term t, long& budget) {
  long before = budget;
  try {
    Term r = nf(t, budget);
    return {true, r, before - budget};
  } catch (const OutOfFuel&) {
    return {false, t, before - budget};
  }
}

NormalizeResult normalize(Term t, long fuel) {
  long budget = fuel;
  return normalize_budget(std::move(t), budget);
}

}  // namespace e2p
