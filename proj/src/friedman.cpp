#include "e2p/friedman.hpp"

namespace e2p {

namespace {

// Both directions are built by mutual induction; `n` supplies fresh labels
// (h<n>) and eigenvariables (u<n>) for the whole tree.
struct Builder {
  long n = 0;

  std::string hyp() { return "h" + std::to_string(n++); }
  std::string eigen() { return "u" + std::to_string(n++); }

  // proof of G from a hypothesis h : G^False
  Proof from_translated(const Formula& g, const std::string& h) {
    switch (g.kind()) {
      case FKind::Atom: {
        // h : G \/ False
        std::string x = hyp(), y = hyp();
        return Proof::left_or(h, x, y, Proof::axiom(x), Proof::false_elim(y));
      }
      case FKind::False: return Proof::axiom(h);
      case FKind::And: {
        std::string x = hyp(), y = hyp();
        Proof l = from_translated(g.left(), x);
        Proof r = from_translated(g.right(), y);
        return Proof::left_and(h, x, y, Proof::right_and(std::move(l), std::move(r)));
      }
      case FKind::Or: {
        std::string x = hyp(), y = hyp();
        Proof l = Proof::right_or_l(from_translated(g.left(), x));
        Proof r = Proof::right_or_r(from_translated(g.right(), y));
        return Proof::left_or(h, x, y, std::move(l), std::move(r));
      }
      case FKind::Imp: {
        // h : A^F => B^F  |-  A => B
        std::string a = hyp(), v = hyp();
        Proof arg = to_translated(g.left(), a);        // |- A^F  from a : A
        Proof cont = from_translated(g.right(), v);    // B  from v : B^F
        return Proof::right_imp(a, Proof::left_imp(h, v, std::move(arg), std::move(cont)));
      }
      case FKind::All: {
        std::string d = eigen(), w = hyp();
        Formula inst = subst_domain_var(g.body(), g.bound(), d);
        Proof sub = from_translated(inst, w);
        return Proof::right_all(d, Proof::left_all(h, d, w, std::move(sub)));
      }
      case FKind::Ex: {
        std::string d = eigen(), y = hyp();
        Formula inst = subst_domain_var(g.body(), g.bound(), d);
        Proof sub = Proof::right_ex(d, from_translated(inst, y));
        return Proof::left_ex(h, d, y, std::move(sub));
      }
    }
    return Proof::axiom(h);
  }

  // proof of G^False from a hypothesis h : G
  Proof to_translated(const Formula& g, const std::string& h) {
    switch (g.kind()) {
      case FKind::Atom: return Proof::right_or_l(Proof::axiom(h));
      case FKind::False: return Proof::axiom(h);
      case FKind::And: {
        std::string x = hyp(), y = hyp();
        Proof l = to_translated(g.left(), x);
        Proof r = to_translated(g.right(), y);
        return Proof::left_and(h, x, y, Proof::right_and(std::move(l), std::move(r)));
      }
      case FKind::Or: {
        std::string x = hyp(), y = hyp();
        Proof l = Proof::right_or_l(to_translated(g.left(), x));
        Proof r = Proof::right_or_r(to_translated(g.right(), y));
        return Proof::left_or(h, x, y, std::move(l), std::move(r));
      }
      case FKind::Imp: {
        // h : A => B  |-  A^F => B^F
        std::string a = hyp(), v = hyp();
        Proof arg = from_translated(g.left(), a);   // |- A  from a : A^F
        Proof cont = to_translated(g.right(), v);   // B^F  from v : B
        return Proof::right_imp(a, Proof::left_imp(h, v, std::move(arg), std::move(cont)));
      }
      case FKind::All: {
        std::string d = eigen(), w = hyp();
        Formula inst = subst_domain_var(g.body(), g.bound(), d);
        Proof sub = to_translated(inst, w);
        return Proof::right_all(d, Proof::left_all(h, d, w, std::move(sub)));
      }
      case FKind::Ex: {
        std::string d = eigen(), y = hyp();
        Formula inst = subst_domain_var(g.body(), g.bound(), d);
        Proof sub = Proof::right_ex(d, to_translated(inst, y));
        return Proof::left_ex(h, d, y, std::move(sub));
      }
    }
    return Proof::axiom(h);
  }
};

}  // namespace

std::pair<Proof, Proof> false_instantiation_equivalence(const Formula& phi) {
  Builder b;
  std::string h1 = b.hyp();
  Proof dir1 = Proof::right_imp(h1, b.from_translated(phi, h1));
  std::string h2 = b.hyp();
  Proof dir2 = Proof::right_imp(h2, b.to_translated(phi, h2));
  return {std::move(dir1), std::move(dir2)};
}

Proof il_proof_from_translation(const Formula& goal, const Proof& ml_proof) {
  Builder b;
  std::string h = b.hyp();
  Proof body = b.from_translated(goal, h);
  return Proof::cut(a_translate(goal, Formula::falsec()), h, ml_proof, std::move(body));
}

}  // namespace e2p
