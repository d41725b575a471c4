#include "e2p/proof.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "lexer.hpp"

namespace e2p {

std::string_view rule_name(ProofRule r) {
  switch (r) {
    case ProofRule::Axiom: return "Axiom";
    case ProofRule::RightAnd: return "RightAnd";
    case ProofRule::RightOrL: return "RightOrL";
    case ProofRule::RightOrR: return "RightOrR";
    case ProofRule::RightImp: return "RightImp";
    case ProofRule::RightAll: return "RightAll";
    case ProofRule::RightEx: return "RightEx";
    case ProofRule::LeftAnd: return "LeftAnd";
    case ProofRule::LeftOr: return "LeftOr";
    case ProofRule::LeftImp: return "LeftImp";
    case ProofRule::LeftAll: return "LeftAll";
    case ProofRule::LeftEx: return "LeftEx";
    case ProofRule::FalseElim: return "FalseElim";
    case ProofRule::Cut: return "Cut";
  }
  return "?";
}

struct Proof::Node {
  ProofRule rule;
  std::string hyp;     // hypothesis label for Axiom/Left*/FalseElim
  std::string p1, p2;  // further parameters, rule-specific
  std::optional<Formula> cutf;
  std::vector<Proof> premises;
};

namespace {
std::shared_ptr<const Proof::Node> mk(Proof::Node n) {
  return std::make_shared<const Proof::Node>(std::move(n));
}
}  // namespace

Proof::Proof() : n_(mk({ProofRule::Axiom, "", "", "", std::nullopt, {}})) {}

Proof Proof::axiom(std::string hyp) {
  return Proof(mk({ProofRule::Axiom, std::move(hyp), "", "", std::nullopt, {}}));
}
Proof Proof::right_and(Proof l, Proof r) {
  return Proof(mk({ProofRule::RightAnd, "", "", "", std::nullopt, {std::move(l), std::move(r)}}));
}
Proof Proof::right_or_l(Proof p) {
  return Proof(mk({ProofRule::RightOrL, "", "", "", std::nullopt, {std::move(p)}}));
}
Proof Proof::right_or_r(Proof p) {
  return Proof(mk({ProofRule::RightOrR, "", "", "", std::nullopt, {std::move(p)}}));
}
Proof Proof::right_imp(std::string fresh, Proof p) {
  return Proof(mk({ProofRule::RightImp, "", std::move(fresh), "", std::nullopt, {std::move(p)}}));
}
Proof Proof::right_all(std::string eigen, Proof p) {
  return Proof(mk({ProofRule::RightAll, "", std::move(eigen), "", std::nullopt, {std::move(p)}}));
}
Proof Proof::right_ex(std::string witness, Proof p) {
  return Proof(mk({ProofRule::RightEx, "", std::move(witness), "", std::nullopt, {std::move(p)}}));
}
Proof Proof::left_and(std::string hyp, std::string x, std::string y, Proof p) {
  return Proof(mk({ProofRule::LeftAnd, std::move(hyp), std::move(x), std::move(y), std::nullopt,
                   {std::move(p)}}));
}
Proof Proof::left_or(std::string hyp, std::string x, std::string y, Proof l, Proof r) {
  return Proof(mk({ProofRule::LeftOr, std::move(hyp), std::move(x), std::move(y), std::nullopt,
                   {std::move(l), std::move(r)}}));
}
Proof Proof::left_imp(std::string hyp, std::string fresh, Proof arg, Proof cont) {
  return Proof(mk({ProofRule::LeftImp, std::move(hyp), std::move(fresh), "", std::nullopt,
                   {std::move(arg), std::move(cont)}}));
}
Proof Proof::left_all(std::string hyp, std::string inst, std::string fresh, Proof p) {
  return Proof(mk({ProofRule::LeftAll, std::move(hyp), std::move(inst), std::move(fresh),
                   std::nullopt, {std::move(p)}}));
}
Proof Proof::left_ex(std::string hyp, std::string eigen, std::string fresh, Proof p) {
  return Proof(mk({ProofRule::LeftEx, std::move(hyp), std::move(eigen), std::move(fresh),
                   std::nullopt, {std::move(p)}}));
}
Proof Proof::false_elim(std::string hyp) {
  return Proof(mk({ProofRule::FalseElim, std::move(hyp), "", "", std::nullopt, {}}));
}
Proof Proof::cut(Formula cutf, std::string fresh, Proof arg, Proof cont) {
  return Proof(mk({ProofRule::Cut, "", std::move(fresh), "", std::move(cutf),
                   {std::move(arg), std::move(cont)}}));
}

ProofRule Proof::rule() const { return n_->rule; }
const std::string& Proof::hyp() const { return n_->hyp; }
const std::string& Proof::param1() const { return n_->p1; }
const std::string& Proof::param2() const { return n_->p2; }
const Formula& Proof::cut_formula() const {
  assert(n_->cutf);
  return *n_->cutf;
}
const std::vector<Proof>& Proof::premises() const { return n_->premises; }

size_t Proof::node_count() const {
  size_t n = 1;
  for (const auto& p : premises()) n += p.node_count();
  return n;
}

bool Proof::contains_rule(ProofRule r) const {
  if (rule() == r) return true;
  for (const auto& p : premises())
    if (p.contains_rule(r)) return true;
  return false;
}

std::string to_string(const Sequent& s) {
  std::ostringstream os;
  for (size_t i = 0; i < s.hyps.size(); i++) {
    if (i) os << "; ";
    os << s.hyps[i].label << ":";
    if (s.hyps[i].is_domain)
      os << "D";
    else
      os << to_string(s.hyps[i].type);
  }
  os << " |- " << to_string(s.conclusion);
  return os.str();
}

std::string CheckFailure::render() const {
  std::ostringstream os;
  os << "at [";
  for (size_t i = 0; i < path.size(); i++) {
    if (i) os << '.';
    os << path[i];
  }
  os << "]: " << reason;
  return os.str();
}

// ---------------------------------------------------------------------------
// Checking.

namespace {

struct Checker {
  LogicMode mode;
  std::optional<CheckFailure> failure;
  std::vector<int> path;

  bool fail(const std::string& why) {
    failure = CheckFailure{path, why};
    return false;
  }

  static const SequentHyp* find(const Sequent& s, const std::string& label) {
    for (const auto& h : s.hyps)
      if (h.label == label) return &h;
    return nullptr;
  }

  bool label_free(const Sequent& s, const std::string& label) { return find(s, label) == nullptr; }

  bool run(const Sequent& seq, const Proof& pt) {
    switch (pt.rule()) {
      case ProofRule::Axiom: {
        const SequentHyp* h = find(seq, pt.hyp());
        if (!h) return fail("no hypothesis labeled " + pt.hyp());
        if (h->is_domain) return fail(pt.hyp() + " is a domain declaration");
        if (!alpha_equal(h->type, seq.conclusion))
          return fail("hypothesis " + pt.hyp() + " : " + to_string(h->type) +
                      " does not match goal " + to_string(seq.conclusion));
        return true;
      }

      case ProofRule::RightAnd: {
        if (!seq.conclusion.is(FKind::And)) return fail("RightAnd against non-conjunction");
        return premise(pt, 0, {seq.hyps, seq.conclusion.left()}) &&
               premise(pt, 1, {seq.hyps, seq.conclusion.right()});
      }
      case ProofRule::RightOrL: {
        if (!seq.conclusion.is(FKind::Or)) return fail("RightOrL against non-disjunction");
        return premise(pt, 0, {seq.hyps, seq.conclusion.left()});
      }
      case ProofRule::RightOrR: {
        if (!seq.conclusion.is(FKind::Or)) return fail("RightOrR against non-disjunction");
        return premise(pt, 0, {seq.hyps, seq.conclusion.right()});
      }
      case ProofRule::RightImp: {
        if (!seq.conclusion.is(FKind::Imp)) return fail("RightImp against non-implication");
        if (!label_free(seq, pt.param1())) return fail("label " + pt.param1() + " already in use");
        Sequent s2{seq.hyps, seq.conclusion.right()};
        s2.hyps.push_back({pt.param1(), false, seq.conclusion.left()});
        return premise(pt, 0, s2);
      }
      case ProofRule::RightAll: {
        if (!seq.conclusion.is(FKind::All)) return fail("RightAll against non-universal");
        if (!label_free(seq, pt.param1()))
          return fail("eigenvariable " + pt.param1() + " already declared");
        Sequent s2{seq.hyps,
                   subst_domain_var(seq.conclusion.body(), seq.conclusion.bound(), pt.param1())};
        s2.hyps.push_back({pt.param1(), true, Formula::falsec()});
        return premise(pt, 0, s2);
      }
      case ProofRule::RightEx: {
        if (!seq.conclusion.is(FKind::Ex)) return fail("RightEx against non-existential");
        const SequentHyp* w = find(seq, pt.param1());
        if (!w || !w->is_domain)
          return fail("witness " + pt.param1() + " is not a declared domain variable");
        Sequent s2{seq.hyps,
                   subst_domain_var(seq.conclusion.body(), seq.conclusion.bound(), pt.param1())};
        return premise(pt, 0, s2);
      }

      case ProofRule::LeftAnd: {
        const SequentHyp* h = find(seq, pt.hyp());
        if (!h || h->is_domain) return fail("no formula hypothesis " + pt.hyp());
        if (!h->type.is(FKind::And)) return fail(pt.hyp() + " is not a conjunction");
        if (!label_free(seq, pt.param1()) || !label_free(seq, pt.param2()) ||
            pt.param1() == pt.param2())
          return fail("labels for LeftAnd are not fresh");
        Sequent s2{{}, seq.conclusion};
        for (const auto& hh : seq.hyps) {
          if (hh.label == pt.hyp()) {
            s2.hyps.push_back({pt.param1(), false, h->type.left()});
            s2.hyps.push_back({pt.param2(), false, h->type.right()});
          } else {
            s2.hyps.push_back(hh);
          }
        }
        return premise(pt, 0, s2);
      }
      case ProofRule::LeftOr: {
        const SequentHyp* h = find(seq, pt.hyp());
        if (!h || h->is_domain) return fail("no formula hypothesis " + pt.hyp());
        if (!h->type.is(FKind::Or)) return fail(pt.hyp() + " is not a disjunction");
        if (!label_free(seq, pt.param1()) || !label_free(seq, pt.param2()))
          return fail("labels for LeftOr are not fresh");
        Sequent sl{{}, seq.conclusion}, sr{{}, seq.conclusion};
        for (const auto& hh : seq.hyps) {
          if (hh.label == pt.hyp()) {
            sl.hyps.push_back({pt.param1(), false, h->type.left()});
            sr.hyps.push_back({pt.param2(), false, h->type.right()});
          } else {
            sl.hyps.push_back(hh);
            sr.hyps.push_back(hh);
          }
        }
        return premise(pt, 0, sl) && premise(pt, 1, sr);
      }
      case ProofRule::LeftImp: {
        const SequentHyp* h = find(seq, pt.hyp());
        if (!h || h->is_domain) return fail("no formula hypothesis " + pt.hyp());
        if (!h->type.is(FKind::Imp)) return fail(pt.hyp() + " is not an implication");
        if (!label_free(seq, pt.param1())) return fail("label " + pt.param1() + " already in use");
        Sequent arg{seq.hyps, h->type.left()};
        Sequent cont{seq.hyps, seq.conclusion};
        cont.hyps.push_back({pt.param1(), false, h->type.right()});
        return premise(pt, 0, arg) && premise(pt, 1, cont);
      }
      case ProofRule::LeftAll: {
        const SequentHyp* h = find(seq, pt.hyp());
        if (!h || h->is_domain) return fail("no formula hypothesis " + pt.hyp());
        if (!h->type.is(FKind::All)) return fail(pt.hyp() + " is not universal");
        const SequentHyp* d = find(seq, pt.param1());
        if (!d || !d->is_domain)
          return fail("instance " + pt.param1() + " is not a declared domain variable");
        if (!label_free(seq, pt.param2())) return fail("label " + pt.param2() + " already in use");
        Sequent s2{seq.hyps, seq.conclusion};
        s2.hyps.push_back(
            {pt.param2(), false, subst_domain_var(h->type.body(), h->type.bound(), pt.param1())});
        return premise(pt, 0, s2);
      }
      case ProofRule::LeftEx: {
        const SequentHyp* h = find(seq, pt.hyp());
        if (!h || h->is_domain) return fail("no formula hypothesis " + pt.hyp());
        if (!h->type.is(FKind::Ex)) return fail(pt.hyp() + " is not existential");
        if (!label_free(seq, pt.param1()))
          return fail("eigenvariable " + pt.param1() + " already declared");
        if (!label_free(seq, pt.param2()) || pt.param1() == pt.param2())
          return fail("label " + pt.param2() + " is not fresh");
        Sequent s2{{}, seq.conclusion};
        Formula inst = subst_domain_var(h->type.body(), h->type.bound(), pt.param1());
        for (const auto& hh : seq.hyps) {
          if (hh.label == pt.hyp()) {
            s2.hyps.push_back({pt.param1(), true, Formula::falsec()});
            s2.hyps.push_back({pt.param2(), false, inst});
          } else {
            s2.hyps.push_back(hh);
          }
        }
        return premise(pt, 0, s2);
      }

      case ProofRule::FalseElim: {
        if (mode == LogicMode::Minimal) return fail("FalseElim is not a minimal-logic rule");
        const SequentHyp* h = find(seq, pt.hyp());
        if (!h || h->is_domain) return fail("no formula hypothesis " + pt.hyp());
        if (!h->type.is(FKind::False)) return fail(pt.hyp() + " is not False");
        return true;
      }

      case ProofRule::Cut: {
        const Formula& a = pt.cut_formula();
        if (mode == LogicMode::Minimal && !is_minimal(a))
          return fail("cut formula is not minimal");
        for (const auto& fv : free_domain_vars(a)) {
          const SequentHyp* d = find(seq, fv);
          if (!d || !d->is_domain) return fail("cut formula mentions undeclared " + fv);
        }
        if (!label_free(seq, pt.param1())) return fail("label " + pt.param1() + " already in use");
        Sequent arg{seq.hyps, a};
        Sequent cont{seq.hyps, seq.conclusion};
        cont.hyps.push_back({pt.param1(), false, a});
        return premise(pt, 0, arg) && premise(pt, 1, cont);
      }
    }
    return fail("unknown rule");
  }

  bool premise(const Proof& pt, int i, const Sequent& sub) {
    path.push_back(i);
    bool ok = run(sub, pt.premises()[i]);
    path.pop_back();
    return ok;
  }
};

std::optional<std::string> arity_check(const Proof& pt, size_t expected_premises) {
  if (pt.premises().size() != expected_premises)
    return std::string(rule_name(pt.rule())) + " expects " + std::to_string(expected_premises) +
           " premises, has " + std::to_string(pt.premises().size());
  return std::nullopt;
}

std::optional<CheckFailure> check_arities(const Proof& pt, std::vector<int>& path) {
  size_t want = 1;
  switch (pt.rule()) {
    case ProofRule::Axiom:
    case ProofRule::FalseElim: want = 0; break;
    case ProofRule::RightAnd:
    case ProofRule::LeftOr:
    case ProofRule::LeftImp:
    case ProofRule::Cut: want = 2; break;
    default: want = 1; break;
  }
  if (auto e = arity_check(pt, want)) return CheckFailure{path, *e};
  for (size_t i = 0; i < pt.premises().size(); i++) {
    path.push_back(static_cast<int>(i));
    if (auto f = check_arities(pt.premises()[i], path)) return f;
    path.pop_back();
  }
  return std::nullopt;
}

}  // namespace

std::optional<CheckFailure> check_proof(const Formula& goal, const Proof& pt, LogicMode mode) {
  if (!is_closed(goal)) return CheckFailure{{}, "goal is not closed"};
  if (mode == LogicMode::Minimal && !is_minimal(goal))
    return CheckFailure{{}, "goal is not a minimal-logic formula"};
  {
    std::vector<int> path;
    if (auto f = check_arities(pt, path)) return f;
  }
  Checker c{mode, std::nullopt, {}};
  Sequent root{{}, goal};
  if (!c.run(root, pt)) return c.failure;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Extraction.

Term extract_evidence(const Proof& pt) {
  switch (pt.rule()) {
    case ProofRule::Axiom: return Term::var(pt.hyp());
    case ProofRule::RightAnd:
      return Term::pair(extract_evidence(pt.premises()[0]), extract_evidence(pt.premises()[1]));
    case ProofRule::RightOrL: return Term::inl(extract_evidence(pt.premises()[0]));
    case ProofRule::RightOrR: return Term::inr(extract_evidence(pt.premises()[0]));
    case ProofRule::RightImp:
      return Term::lam(pt.param1(), extract_evidence(pt.premises()[0]));
    case ProofRule::RightAll:
      return Term::lam(pt.param1(), extract_evidence(pt.premises()[0]));
    case ProofRule::RightEx:
      return Term::pair(Term::var(pt.param1()), extract_evidence(pt.premises()[0]));
    case ProofRule::LeftAnd:
      return Term::spread(Term::var(pt.hyp()), pt.param1(), pt.param2(),
                          extract_evidence(pt.premises()[0]));
    case ProofRule::LeftOr:
      return Term::decide(Term::var(pt.hyp()), pt.param1(), extract_evidence(pt.premises()[0]),
                          pt.param2(), extract_evidence(pt.premises()[1]));
    case ProofRule::LeftImp:
      return subst_term(extract_evidence(pt.premises()[1]), pt.param1(),
                        Term::ap(Term::var(pt.hyp()), extract_evidence(pt.premises()[0])));
    case ProofRule::LeftAll:
      return subst_term(extract_evidence(pt.premises()[0]), pt.param2(),
                        Term::ap(Term::var(pt.hyp()), Term::var(pt.param1())));
    case ProofRule::LeftEx:
      return Term::spread(Term::var(pt.hyp()), pt.param1(), pt.param2(),
                          extract_evidence(pt.premises()[0]));
    case ProofRule::FalseElim: return Term::var(pt.hyp());
    case ProofRule::Cut:
      return Term::ap(Term::lam(pt.param1(), extract_evidence(pt.premises()[1])),
                      extract_evidence(pt.premises()[0]));
  }
  return Term::stuck();
}

Term compose_cut(const Term& evd1, const Term& evd2) { return Term::ap(evd2, evd1); }

// ---------------------------------------------------------------------------
// Printing / parsing.

namespace {
void print_proof(std::ostream& os, const Proof& p) {
  os << '(' << rule_name(p.rule());
  switch (p.rule()) {
    case ProofRule::Axiom:
    case ProofRule::FalseElim: os << ' ' << p.hyp(); break;
    case ProofRule::RightAnd:
    case ProofRule::RightOrL:
    case ProofRule::RightOrR: break;
    case ProofRule::RightImp:
    case ProofRule::RightAll:
    case ProofRule::RightEx: os << ' ' << p.param1(); break;
    case ProofRule::LeftAnd:
    case ProofRule::LeftOr:
      os << ' ' << p.hyp() << ' ' << p.param1() << ' ' << p.param2();
      break;
    case ProofRule::LeftImp: os << ' ' << p.hyp() << ' ' << p.param1(); break;
    case ProofRule::LeftAll:
    case ProofRule::LeftEx:
      os << ' ' << p.hyp() << ' ' << p.param1() << ' ' << p.param2();
      break;
    case ProofRule::Cut:
      os << " \"" << to_string(p.cut_formula()) << "\" " << p.param1();
      break;
  }
  for (const auto& sub : p.premises()) {
    os << ' ';
    print_proof(os, sub);
  }
  os << ')';
}

class ProofParser {
public:
  explicit ProofParser(std::string_view text) : lex_(text) {}

  Proof parse() {
    Proof p = node();
    lex_.expect_end();
    return p;
  }

private:
  Lexer lex_;

  Proof node() {
    lex_.expect("(");
    std::string rule = lex_.ident();
    Proof result;
    if (rule == "Axiom") {
      result = Proof::axiom(lex_.ident());
    } else if (rule == "FalseElim") {
      result = Proof::false_elim(lex_.ident());
    } else if (rule == "RightAnd") {
      auto s = subs2(rule);
      result = Proof::right_and(s.first, s.second);
    } else if (rule == "RightOrL") {
      result = Proof::right_or_l(node());
    } else if (rule == "RightOrR") {
      result = Proof::right_or_r(node());
    } else if (rule == "RightImp") {
      std::string h = lex_.ident();
      result = Proof::right_imp(h, node());
    } else if (rule == "RightAll") {
      std::string d = lex_.ident();
      result = Proof::right_all(d, node());
    } else if (rule == "RightEx") {
      std::string d = lex_.ident();
      result = Proof::right_ex(d, node());
    } else if (rule == "LeftAnd") {
      std::string h = lex_.ident(), x = lex_.ident(), y = lex_.ident();
      result = Proof::left_and(h, x, y, node());
    } else if (rule == "LeftOr") {
      std::string h = lex_.ident(), x = lex_.ident(), y = lex_.ident();
      auto s = subs2(rule);
      result = Proof::left_or(h, x, y, s.first, s.second);
    } else if (rule == "LeftImp") {
      std::string h = lex_.ident(), v = lex_.ident();
      auto s = subs2(rule);
      result = Proof::left_imp(h, v, s.first, s.second);
    } else if (rule == "LeftAll") {
      std::string h = lex_.ident(), d = lex_.ident(), w = lex_.ident();
      result = Proof::left_all(h, d, w, node());
    } else if (rule == "LeftEx") {
      std::string h = lex_.ident(), d = lex_.ident(), y = lex_.ident();
      result = Proof::left_ex(h, d, y, node());
    } else if (rule == "Cut") {
      Formula a = parse_formula(lex_.quoted());
      std::string v = lex_.ident();
      auto s = subs2(rule);
      result = Proof::cut(a, v, s.first, s.second);
    } else {
      throw ParseError("unknown proof rule '" + rule + "'", lex_.pos());
    }
    lex_.expect(")");
    return result;
  }

  std::pair<Proof, Proof> subs2(const std::string& rule) {
    if (lex_.peek_raw() != '(') throw ParseError(rule + " needs two premises", lex_.pos());
    Proof a = node();
    if (lex_.peek_raw() != '(') throw ParseError(rule + " needs two premises", lex_.pos());
    Proof b = node();
    return {std::move(a), std::move(b)};
  }
};
}  // namespace

std::string to_string(const Proof& p) {
  std::ostringstream os;
  print_proof(os, p);
  return os.str();
}

Proof parse_proof(std::string_view text) {
  ProofParser p(text);
  return p.parse();
}

std::string to_string(const ProofFile& f) {
  return "goal: " + to_string(f.goal) + "\n" + to_string(f.proof) + "\n";
}

ProofFile parse_proof_file(std::string_view text) {
  size_t nl = text.find('\n');
  std::string_view first = text.substr(0, nl == std::string_view::npos ? text.size() : nl);
  size_t colon = first.find(':');
  if (first.substr(0, colon) != "goal" || colon == std::string_view::npos)
    throw ParseError("proof file must start with 'goal: <formula>'", 0);
  Formula goal = parse_formula(first.substr(colon + 1));
  std::string_view rest = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
  return ProofFile{std::move(goal), parse_proof(rest)};
}

}  // namespace e2p
