#include "e2p/formula.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "lexer.hpp"

namespace e2p {

struct Formula::Node {
  FKind kind;
  std::string name;               // Atom: relation symbol; All/Ex: bound variable
  std::vector<std::string> args;  // Atom
  std::vector<Formula> kids;      // And/Or/Imp: [l, r]; All/Ex: [body]
};

namespace {
std::shared_ptr<const Formula::Node> mk(Formula::Node n) {
  return std::make_shared<const Formula::Node>(std::move(n));
}
const std::shared_ptr<const Formula::Node>& false_node() {
  static const std::shared_ptr<const Formula::Node> n = mk({FKind::False, {}, {}, {}});
  return n;
}
}  // namespace

Formula::Formula() : n_(false_node()) {}

Formula Formula::atom(std::string rel, std::vector<std::string> args) {
  return Formula(mk({FKind::Atom, std::move(rel), std::move(args), {}}));
}
Formula Formula::falsec() { return Formula(); }
Formula Formula::conj(Formula l, Formula r) {
  return Formula(mk({FKind::And, {}, {}, {std::move(l), std::move(r)}}));
}
Formula Formula::disj(Formula l, Formula r) {
  return Formula(mk({FKind::Or, {}, {}, {std::move(l), std::move(r)}}));
}
Formula Formula::imp(Formula l, Formula r) {
  return Formula(mk({FKind::Imp, {}, {}, {std::move(l), std::move(r)}}));
}
Formula Formula::neg(Formula f) { return imp(std::move(f), falsec()); }
Formula Formula::all(std::string var, Formula body) {
  return Formula(mk({FKind::All, std::move(var), {}, {std::move(body)}}));
}
Formula Formula::ex(std::string var, Formula body) {
  return Formula(mk({FKind::Ex, std::move(var), {}, {std::move(body)}}));
}

FKind Formula::kind() const { return n_->kind; }
const std::string& Formula::rel() const {
  assert(kind() == FKind::Atom);
  return n_->name;
}
const std::vector<std::string>& Formula::args() const {
  assert(kind() == FKind::Atom);
  return n_->args;
}
const Formula& Formula::left() const {
  assert(kind() == FKind::And || kind() == FKind::Or || kind() == FKind::Imp);
  return n_->kids[0];
}
const Formula& Formula::right() const {
  assert(kind() == FKind::And || kind() == FKind::Or || kind() == FKind::Imp);
  return n_->kids[1];
}
const std::string& Formula::bound() const {
  assert(kind() == FKind::All || kind() == FKind::Ex);
  return n_->name;
}
const Formula& Formula::body() const {
  assert(kind() == FKind::All || kind() == FKind::Ex);
  return n_->kids[0];
}

bool Formula::operator==(const Formula& rhs) const {
  if (n_ == rhs.n_) return true;
  if (kind() != rhs.kind()) return false;
  switch (kind()) {
    case FKind::Atom: return rel() == rhs.rel() && args() == rhs.args();
    case FKind::False: return true;
    case FKind::And:
    case FKind::Or:
    case FKind::Imp: return left() == rhs.left() && right() == rhs.right();
    case FKind::All:
    case FKind::Ex: return bound() == rhs.bound() && body() == rhs.body();
  }
  return false;
}

size_t Formula::node_count() const {
  switch (kind()) {
    case FKind::Atom:
    case FKind::False: return 1;
    case FKind::And:
    case FKind::Or:
    case FKind::Imp: return 1 + left().node_count() + right().node_count();
    case FKind::All:
    case FKind::Ex: return 1 + body().node_count();
  }
  return 1;
}

namespace {

bool alpha_eq(const Formula& a, const Formula& b,
              std::vector<std::pair<std::string, std::string>>& bound) {
  if (a.kind() != b.kind()) return false;
  auto var_eq = [&bound](const std::string& x, const std::string& y) {
    for (auto it = bound.rbegin(); it != bound.rend(); ++it) {
      if (it->first == x || it->second == y) return it->first == x && it->second == y;
    }
    return x == y;
  };
  switch (a.kind()) {
    case FKind::False: return true;
    case FKind::Atom: {
      if (a.rel() != b.rel() || a.args().size() != b.args().size()) return false;
      for (size_t i = 0; i < a.args().size(); i++)
        if (!var_eq(a.args()[i], b.args()[i])) return false;
      return true;
    }
    case FKind::And:
    case FKind::Or:
    case FKind::Imp:
      return alpha_eq(a.left(), b.left(), bound) && alpha_eq(a.right(), b.right(), bound);
    case FKind::All:
    case FKind::Ex: {
      bound.emplace_back(a.bound(), b.bound());
      bool ok = alpha_eq(a.body(), b.body(), bound);
      bound.pop_back();
      return ok;
    }
  }
  return false;
}

}  // namespace

bool alpha_equal(const Formula& a, const Formula& b) {
  std::vector<std::pair<std::string, std::string>> bound;
  return alpha_eq(a, b, bound);
}

bool is_minimal(const Formula& f) {
  switch (f.kind()) {
    case FKind::False: return false;
    case FKind::Atom: return true;
    case FKind::And:
    case FKind::Or:
    case FKind::Imp: return is_minimal(f.left()) && is_minimal(f.right());
    case FKind::All:
    case FKind::Ex: return is_minimal(f.body());
  }
  return true;
}

namespace {
void free_vars_into(const Formula& f, std::set<std::string>& out,
                    std::vector<std::string>& bound) {
  switch (f.kind()) {
    case FKind::False: return;
    case FKind::Atom:
      for (const auto& a : f.args())
        if (std::find(bound.begin(), bound.end(), a) == bound.end()) out.insert(a);
      return;
    case FKind::And:
    case FKind::Or:
    case FKind::Imp:
      free_vars_into(f.left(), out, bound);
      free_vars_into(f.right(), out, bound);
      return;
    case FKind::All:
    case FKind::Ex:
      bound.push_back(f.bound());
      free_vars_into(f.body(), out, bound);
      bound.pop_back();
      return;
  }
}
}  // namespace

std::set<std::string> free_domain_vars(const Formula& f) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  free_vars_into(f, out, bound);
  return out;
}

bool is_closed(const Formula& f) { return free_domain_vars(f).empty(); }

namespace {
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  std::string cand = base + "'";
  while (avoid.count(cand)) cand += "'";
  return cand;
}
}  // namespace

Formula subst_domain_var(const Formula& f, const std::string& x, const std::string& d) {
  if (x == d) return f;
  switch (f.kind()) {
    case FKind::False: return f;
    case FKind::Atom: {
      auto args = f.args();
      bool hit = false;
      for (auto& a : args)
        if (a == x) { a = d; hit = true; }
      return hit ? Formula::atom(f.rel(), std::move(args)) : f;
    }
    case FKind::And: return Formula::conj(subst_domain_var(f.left(), x, d), subst_domain_var(f.right(), x, d));
    case FKind::Or: return Formula::disj(subst_domain_var(f.left(), x, d), subst_domain_var(f.right(), x, d));
    case FKind::Imp: return Formula::imp(subst_domain_var(f.left(), x, d), subst_domain_var(f.right(), x, d));
    case FKind::All:
    case FKind::Ex: {
      if (f.bound() == x) return f;  // occurrence is bound below here
      Formula body = f.body();
      std::string b = f.bound();
      if (b == d && free_domain_vars(body).count(x)) {
        // rename to avoid capturing the incoming d
        auto avoid = free_domain_vars(body);
        avoid.insert(x);
        avoid.insert(d);
        std::string nb = fresh_name(b, avoid);
        body = subst_domain_var(body, b, nb);
        b = nb;
      }
      Formula nb2 = subst_domain_var(body, x, d);
      return f.kind() == FKind::All ? Formula::all(b, nb2) : Formula::ex(b, nb2);
    }
  }
  return f;
}

Formula a_translate(const Formula& f, const Formula& a) {
  switch (f.kind()) {
    case FKind::Atom: return Formula::disj(f, a);
    case FKind::False: return a;
    case FKind::And: return Formula::conj(a_translate(f.left(), a), a_translate(f.right(), a));
    case FKind::Or: return Formula::disj(a_translate(f.left(), a), a_translate(f.right(), a));
    case FKind::Imp: return Formula::imp(a_translate(f.left(), a), a_translate(f.right(), a));
    case FKind::All:
    case FKind::Ex: {
      std::string b = f.bound();
      Formula body = f.body();
      if (free_domain_vars(a).count(b)) {
        auto avoid = free_domain_vars(body);
        for (const auto& v : free_domain_vars(a)) avoid.insert(v);
        std::string nb = fresh_name(b, avoid);
        body = subst_domain_var(body, b, nb);
        b = nb;
      }
      Formula tb = a_translate(body, a);
      return f.kind() == FKind::All ? Formula::all(b, tb) : Formula::ex(b, tb);
    }
  }
  return f;
}

namespace {
void collect_language(const Formula& f, Language& lang) {
  switch (f.kind()) {
    case FKind::Atom: {
      int ar = static_cast<int>(f.args().size());
      auto [it, inserted] = lang.relations.emplace(f.rel(), ar);
      if (!inserted && it->second != ar)
        throw std::runtime_error("relation symbol '" + f.rel() + "' used with arities " +
                                 std::to_string(it->second) + " and " + std::to_string(ar));
      return;
    }
    case FKind::False: return;
    case FKind::And:
    case FKind::Or:
    case FKind::Imp:
      collect_language(f.left(), lang);
      collect_language(f.right(), lang);
      return;
    case FKind::All:
    case FKind::Ex: collect_language(f.body(), lang); return;
  }
}
}  // namespace

Language language_of(const Formula& f) {
  Language lang;
  collect_language(f, lang);
  return lang;
}

// ---------------------------------------------------------------------------
// Printing.  Precedence levels (loosest to tightest):
//   0 formula (quantifiers extend maximally right)
//   1 implication (right-assoc)   2 disjunction   3 conjunction
//   4 negation-free prefix        5 atoms / parens
// Negation sugar is not reproduced on output; ~p prints as its expansion.

namespace {
void print_formula(std::ostream& os, const Formula& f, int prec) {
  switch (f.kind()) {
    case FKind::Atom: {
      os << f.rel();
      if (!f.args().empty()) {
        os << '(';
        for (size_t i = 0; i < f.args().size(); i++) {
          if (i) os << ',';
          os << f.args()[i];
        }
        os << ')';
      }
      return;
    }
    case FKind::False: os << "False"; return;
    case FKind::All:
    case FKind::Ex: {
      bool paren = prec > 0;
      if (paren) os << '(';
      os << (f.kind() == FKind::All ? "all " : "ex ") << f.bound() << ". ";
      print_formula(os, f.body(), 0);
      if (paren) os << ')';
      return;
    }
    case FKind::Imp: {
      bool paren = prec > 1;
      if (paren) os << '(';
      print_formula(os, f.left(), 2);
      os << " => ";
      print_formula(os, f.right(), 1);
      if (paren) os << ')';
      return;
    }
    case FKind::Or: {
      bool paren = prec > 2;
      if (paren) os << '(';
      print_formula(os, f.left(), 3);
      os << " \\/ ";
      print_formula(os, f.right(), 2);
      if (paren) os << ')';
      return;
    }
    case FKind::And: {
      bool paren = prec > 3;
      if (paren) os << '(';
      print_formula(os, f.left(), 4);
      os << " /\\ ";
      print_formula(os, f.right(), 3);
      if (paren) os << ')';
      return;
    }
  }
}
}  // namespace

std::string to_string(const Formula& f) {
  std::ostringstream os;
  print_formula(os, f, 0);
  return os.str();
}

// ---------------------------------------------------------------------------
// Parsing.

namespace {

const std::set<std::string> kFormulaKeywords = {"all", "ex", "False"};

class FormulaParser {
public:
  explicit FormulaParser(std::string_view text) : lex_(text) {}

  Formula parse() {
    Formula f = formula();
    lex_.expect_end();
    return f;
  }

private:
  Lexer lex_;

  Formula formula() {
    if (lex_.peek_ident("all") || lex_.peek_ident("ex")) return quantified();
    return implication();
  }

  Formula quantified() {
    bool universal = lex_.peek_ident("all");
    lex_.ident();
    std::string var = ident_nonkw();
    lex_.expect(".");
    Formula body = formula();
    return universal ? Formula::all(var, body) : Formula::ex(var, body);
  }

  Formula implication() {
    Formula l = disjunction();
    if (lex_.try_sym("=>")) return Formula::imp(l, formula());
    return l;
  }

  Formula disjunction() {
    Formula l = conjunction();
    if (lex_.try_sym("\\/")) {
      Formula r = (lex_.peek_ident("all") || lex_.peek_ident("ex")) ? quantified() : disjunction();
      return Formula::disj(l, r);
    }
    return l;
  }

  Formula conjunction() {
    Formula l = negation();
    if (lex_.try_sym("/\\")) {
      Formula r = (lex_.peek_ident("all") || lex_.peek_ident("ex")) ? quantified() : conjunction();
      return Formula::conj(l, r);
    }
    return l;
  }

  Formula negation() {
    if (lex_.try_sym("~")) return Formula::neg(negation());
    return atomlike();
  }

  Formula atomlike() {
    if (lex_.try_sym("(")) {
      Formula f = formula();
      lex_.expect(")");
      return f;
    }
    if (lex_.peek_ident("False")) {
      lex_.ident();
      return Formula::falsec();
    }
    std::string rel = ident_nonkw();
    std::vector<std::string> args;
    if (lex_.try_sym("(")) {
      args.push_back(ident_nonkw());
      while (lex_.try_sym(",")) args.push_back(ident_nonkw());
      lex_.expect(")");
    }
    return Formula::atom(rel, std::move(args));
  }

  std::string ident_nonkw() {
    size_t at = lex_.pos();
    std::string s = lex_.ident();
    if (kFormulaKeywords.count(s)) throw ParseError("unexpected keyword '" + s + "'", at);
    return s;
  }
};

}  // namespace

Formula parse_formula(std::string_view text) {
  FormulaParser p(text);
  Formula f = p.parse();
  language_of(f);  // reject inconsistent arities early
  return f;
}

}  // namespace e2p
