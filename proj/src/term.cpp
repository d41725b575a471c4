#include "e2p/term.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "lexer.hpp"

namespace e2p {

struct Term::Node {
  TKind kind;
  std::string name;        // Var name; Lam bound; Spread/Decide first binder
  std::string name2;       // Spread/Decide second binder
  std::vector<Term> kids;  // by role, see accessors
};

namespace {
std::shared_ptr<const Term::Node> mk(Term::Node n) {
  return std::make_shared<const Term::Node>(std::move(n));
}
const std::shared_ptr<const Term::Node>& stuck_node() {
  static const std::shared_ptr<const Term::Node> n = mk({TKind::Stuck, {}, {}, {}});
  return n;
}
}  // namespace

std::string_view kind_name(TKind k) {
  switch (k) {
    case TKind::Var: return "var";
    case TKind::Pair: return "pair";
    case TKind::Inl: return "inl";
    case TKind::Inr: return "inr";
    case TKind::Lam: return "lam";
    case TKind::Ap: return "ap";
    case TKind::Spread: return "spread";
    case TKind::Decide: return "decide";
    case TKind::CbvAp: return "cbv";
    case TKind::CbvPair: return "cbvpair";
    case TKind::Stuck: return "stuck";
  }
  return "?";
}

Term::Term() : n_(stuck_node()) {}

Term Term::var(std::string name) { return Term(mk({TKind::Var, std::move(name), {}, {}})); }
Term Term::pair(Term l, Term r) {
  return Term(mk({TKind::Pair, {}, {}, {std::move(l), std::move(r)}}));
}
Term Term::inl(Term t) { return Term(mk({TKind::Inl, {}, {}, {std::move(t)}})); }
Term Term::inr(Term t) { return Term(mk({TKind::Inr, {}, {}, {std::move(t)}})); }
Term Term::lam(std::string bound, Term body) {
  return Term(mk({TKind::Lam, std::move(bound), {}, {std::move(body)}}));
}
Term Term::ap(Term fun, Term arg) {
  return Term(mk({TKind::Ap, {}, {}, {std::move(fun), std::move(arg)}}));
}
Term Term::spread(Term scrut, std::string x, std::string y, Term body) {
  return Term(mk({TKind::Spread, std::move(x), std::move(y), {std::move(scrut), std::move(body)}}));
}
Term Term::decide(Term scrut, std::string x, Term left, std::string y, Term right) {
  return Term(mk({TKind::Decide, std::move(x), std::move(y),
                  {std::move(scrut), std::move(left), std::move(right)}}));
}
Term Term::cbv_ap(Term fun, Term arg) {
  return Term(mk({TKind::CbvAp, {}, {}, {std::move(fun), std::move(arg)}}));
}
Term Term::cbv_pair(Term first, Term second) {
  return Term(mk({TKind::CbvPair, {}, {}, {std::move(first), std::move(second)}}));
}
Term Term::stuck() { return Term(); }

TKind Term::kind() const { return n_->kind; }
bool Term::is_canonical() const {
  TKind k = kind();
  return k == TKind::Pair || k == TKind::Inl || k == TKind::Inr || k == TKind::Lam;
}

const std::string& Term::name() const { assert(is(TKind::Var)); return n_->name; }
const Term& Term::first() const {
  assert(is(TKind::Pair) || is(TKind::CbvPair));
  return n_->kids[0];
}
const Term& Term::second() const {
  assert(is(TKind::Pair) || is(TKind::CbvPair));
  return n_->kids[1];
}
const Term& Term::inner() const {
  assert(is(TKind::Inl) || is(TKind::Inr));
  return n_->kids[0];
}
const std::string& Term::bound() const { assert(is(TKind::Lam)); return n_->name; }
const Term& Term::body() const {
  assert(is(TKind::Lam) || is(TKind::Spread));
  return n_->kids[is(TKind::Lam) ? 0 : 1];
}
const Term& Term::fun() const {
  assert(is(TKind::Ap) || is(TKind::CbvAp));
  return n_->kids[0];
}
const Term& Term::arg() const {
  assert(is(TKind::Ap) || is(TKind::CbvAp));
  return n_->kids[1];
}
const Term& Term::scrut() const {
  assert(is(TKind::Spread) || is(TKind::Decide));
  return n_->kids[0];
}
const std::string& Term::var1() const {
  assert(is(TKind::Spread) || is(TKind::Decide));
  return n_->name;
}
const std::string& Term::var2() const {
  assert(is(TKind::Spread) || is(TKind::Decide));
  return n_->name2;
}
const Term& Term::left() const { assert(is(TKind::Decide)); return n_->kids[1]; }
const Term& Term::right() const { assert(is(TKind::Decide)); return n_->kids[2]; }

bool Term::operator==(const Term& rhs) const {
  if (n_ == rhs.n_) return true;
  if (kind() != rhs.kind()) return false;
  if (n_->name != rhs.n_->name || n_->name2 != rhs.n_->name2) return false;
  if (n_->kids.size() != rhs.n_->kids.size()) return false;
  for (size_t i = 0; i < n_->kids.size(); i++)
    if (n_->kids[i] != rhs.n_->kids[i]) return false;
  return true;
}

size_t Term::node_count() const {
  size_t n = 1;
  for (const auto& k : n_->kids) n += k.node_count();
  return n;
}

// ---------------------------------------------------------------------------

namespace {

bool alpha_eq(const Term& a, const Term& b,
              std::vector<std::pair<std::string, std::string>>& bound) {
  if (a.kind() != b.kind()) return false;
  auto var_eq = [&bound](const std::string& x, const std::string& y) {
    for (auto it = bound.rbegin(); it != bound.rend(); ++it) {
      if (it->first == x || it->second == y) return it->first == x && it->second == y;
    }
    return x == y;
  };
  switch (a.kind()) {
    case TKind::Var: return var_eq(a.name(), b.name());
    case TKind::Stuck: return true;
    case TKind::Pair:
    case TKind::CbvPair:
      return alpha_eq(a.first(), b.first(), bound) && alpha_eq(a.second(), b.second(), bound);
    case TKind::Inl:
    case TKind::Inr: return alpha_eq(a.inner(), b.inner(), bound);
    case TKind::Ap:
    case TKind::CbvAp:
      return alpha_eq(a.fun(), b.fun(), bound) && alpha_eq(a.arg(), b.arg(), bound);
    case TKind::Lam: {
      bound.emplace_back(a.bound(), b.bound());
      bool ok = alpha_eq(a.body(), b.body(), bound);
      bound.pop_back();
      return ok;
    }
    case TKind::Spread: {
      if (!alpha_eq(a.scrut(), b.scrut(), bound)) return false;
      bound.emplace_back(a.var1(), b.var1());
      bound.emplace_back(a.var2(), b.var2());
      bool ok = alpha_eq(a.body(), b.body(), bound);
      bound.pop_back();
      bound.pop_back();
      return ok;
    }
    case TKind::Decide: {
      if (!alpha_eq(a.scrut(), b.scrut(), bound)) return false;
      bound.emplace_back(a.var1(), b.var1());
      bool ok = alpha_eq(a.left(), b.left(), bound);
      bound.pop_back();
      if (!ok) return false;
      bound.emplace_back(a.var2(), b.var2());
      ok = alpha_eq(a.right(), b.right(), bound);
      bound.pop_back();
      return ok;
    }
  }
  return false;
}

void free_vars_into(const Term& t, std::set<std::string>& out, std::vector<std::string>& bound) {
  auto is_bound = [&bound](const std::string& v) {
    return std::find(bound.begin(), bound.end(), v) != bound.end();
  };
  switch (t.kind()) {
    case TKind::Var:
      if (!is_bound(t.name())) out.insert(t.name());
      return;
    case TKind::Stuck: return;
    case TKind::Pair:
    case TKind::CbvPair:
      free_vars_into(t.first(), out, bound);
      free_vars_into(t.second(), out, bound);
      return;
    case TKind::Inl:
    case TKind::Inr: free_vars_into(t.inner(), out, bound); return;
    case TKind::Ap:
    case TKind::CbvAp:
      free_vars_into(t.fun(), out, bound);
      free_vars_into(t.arg(), out, bound);
      return;
    case TKind::Lam:
      bound.push_back(t.bound());
      free_vars_into(t.body(), out, bound);
      bound.pop_back();
      return;
    case TKind::Spread:
      free_vars_into(t.scrut(), out, bound);
      bound.push_back(t.var1());
      bound.push_back(t.var2());
      free_vars_into(t.body(), out, bound);
      bound.pop_back();
      bound.pop_back();
      return;
    case TKind::Decide:
      free_vars_into(t.scrut(), out, bound);
      bound.push_back(t.var1());
      free_vars_into(t.left(), out, bound);
      bound.pop_back();
      bound.push_back(t.var2());
      free_vars_into(t.right(), out, bound);
      bound.pop_back();
      return;
  }
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  std::string cand = base + "'";
  while (avoid.count(cand)) cand += "'";
  return cand;
}

}  // namespace

bool alpha_equal(const Term& a, const Term& b) {
  std::vector<std::pair<std::string, std::string>> bound;
  return alpha_eq(a, b, bound);
}

std::set<std::string> free_term_vars(const Term& t) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  free_vars_into(t, out, bound);
  return out;
}

bool is_closed(const Term& t) { return free_term_vars(t).empty(); }

namespace {

// Renames binder b of `body` when it would capture a free variable of e or
// shadow v while v occurs free underneath. Returns the (possibly new) binder.
std::string freshen_binder(std::string b, Term& body, const std::string& v,
                           const std::set<std::string>& fv_e) {
  if (b != v && fv_e.count(b) && free_term_vars(body).count(v)) {
    auto avoid = free_term_vars(body);
    avoid.insert(fv_e.begin(), fv_e.end());
    avoid.insert(v);
    std::string nb = fresh_name(b, avoid);
    body = subst_term(body, b, Term::var(nb));
    return nb;
  }
  return b;
}

Term subst(const Term& t, const std::string& v, const Term& e, const std::set<std::string>& fv_e) {
  switch (t.kind()) {
    case TKind::Var: return t.name() == v ? e : t;
    case TKind::Stuck: return t;
    case TKind::Pair: return Term::pair(subst(t.first(), v, e, fv_e), subst(t.second(), v, e, fv_e));
    case TKind::CbvPair:
      return Term::cbv_pair(subst(t.first(), v, e, fv_e), subst(t.second(), v, e, fv_e));
    case TKind::Inl: return Term::inl(subst(t.inner(), v, e, fv_e));
    case TKind::Inr: return Term::inr(subst(t.inner(), v, e, fv_e));
    case TKind::Ap: return Term::ap(subst(t.fun(), v, e, fv_e), subst(t.arg(), v, e, fv_e));
    case TKind::CbvAp: return Term::cbv_ap(subst(t.fun(), v, e, fv_e), subst(t.arg(), v, e, fv_e));
    case TKind::Lam: {
      if (t.bound() == v) return t;
      Term body = t.body();
      std::string b = freshen_binder(t.bound(), body, v, fv_e);
      return Term::lam(b, subst(body, v, e, fv_e));
    }
    case TKind::Spread: {
      Term s = subst(t.scrut(), v, e, fv_e);
      if (t.var1() == v || t.var2() == v)
        return Term::spread(s, t.var1(), t.var2(), t.body());
      Term body = t.body();
      std::string x = freshen_binder(t.var1(), body, v, fv_e);
      // re-freshen second binder against the (possibly renamed) body
      std::string y = t.var2();
      if (fv_e.count(y) && free_term_vars(body).count(v)) {
        auto avoid = free_term_vars(body);
        avoid.insert(fv_e.begin(), fv_e.end());
        avoid.insert(v);
        avoid.insert(x);
        std::string ny = fresh_name(y, avoid);
        body = subst_term(body, y, Term::var(ny));
        y = ny;
      }
      return Term::spread(s, x, y, subst(body, v, e, fv_e));
    }
    case TKind::Decide: {
      Term s = subst(t.scrut(), v, e, fv_e);
      Term l = t.left();
      std::string x = t.var1();
      if (x != v) {
        x = freshen_binder(x, l, v, fv_e);
        l = subst(l, v, e, fv_e);
      }
      Term r = t.right();
      std::string y = t.var2();
      if (y != v) {
        y = freshen_binder(y, r, v, fv_e);
        r = subst(r, v, e, fv_e);
      }
      return Term::decide(s, x, l, y, r);
    }
  }
  return t;
}

}  // namespace

Term subst_term(const Term& t, const std::string& v, const Term& e) {
  return subst(t, v, e, free_term_vars(e));
}

// ---------------------------------------------------------------------------

namespace {
void count_into(const Term& t, Measure& m) {
  m.size++;
  switch (t.kind()) {
    case TKind::Decide:
    case TKind::Spread:
    case TKind::Ap: m.nc++; break;
    case TKind::CbvAp: m.cbv++; break;
    case TKind::Pair: m.npr++; break;
    case TKind::CbvPair:
    case TKind::Inl:
    case TKind::Inr: m.cn++; break;
    default: break;
  }
  switch (t.kind()) {
    case TKind::Var:
    case TKind::Stuck: break;
    case TKind::Pair:
    case TKind::CbvPair:
      count_into(t.first(), m);
      count_into(t.second(), m);
      break;
    case TKind::Inl:
    case TKind::Inr: count_into(t.inner(), m); break;
    case TKind::Lam: count_into(t.body(), m); break;
    case TKind::Ap:
    case TKind::CbvAp:
      count_into(t.fun(), m);
      count_into(t.arg(), m);
      break;
    case TKind::Spread:
      count_into(t.scrut(), m);
      count_into(t.body(), m);
      break;
    case TKind::Decide:
      count_into(t.scrut(), m);
      count_into(t.left(), m);
      count_into(t.right(), m);
      break;
  }
}
}  // namespace

Measure measure(const Term& t) {
  Measure m;
  count_into(t, m);
  return m;
}

std::string to_string(const Measure& m) {
  std::ostringstream os;
  os << '<' << m.nc << ',' << m.cbv << ',' << m.npr << ',' << m.cn << ',' << m.size << '>';
  return os.str();
}

// ---------------------------------------------------------------------------

PrincipalPath principal_subterm(const Term& t) {
  PrincipalPath p;
  Term cur = t;
  for (;;) {
    switch (cur.kind()) {
      case TKind::Decide:
      case TKind::Spread:
        p.spine.push_back(cur);
        cur = cur.scrut();
        continue;
      case TKind::Ap:
        p.spine.push_back(cur);
        cur = cur.fun();
        continue;
      case TKind::CbvAp:
        p.spine.push_back(cur);
        cur = cur.arg();
        continue;
      case TKind::CbvPair:
        p.spine.push_back(cur);
        cur = cur.first();
        continue;
      default:
        p.principal = cur;
        return p;
    }
  }
}

namespace {
Term replace_spine_child(const Term& node, const Term& child) {
  switch (node.kind()) {
    case TKind::Decide:
      return Term::decide(child, node.var1(), node.left(), node.var2(), node.right());
    case TKind::Spread: return Term::spread(child, node.var1(), node.var2(), node.body());
    case TKind::Ap: return Term::ap(child, node.arg());
    case TKind::CbvAp: return Term::cbv_ap(node.fun(), child);
    case TKind::CbvPair: return Term::cbv_pair(child, node.second());
    default: assert(false); return node;
  }
}
}  // namespace

Term PrincipalPath::rebuild_principal(const Term& replacement) const {
  Term cur = replacement;
  for (auto it = spine.rbegin(); it != spine.rend(); ++it) cur = replace_spine_child(*it, cur);
  return cur;
}

Term PrincipalPath::rebuild_parent(const Term& replacement) const {
  assert(has_parent());
  Term cur = replacement;
  for (auto it = spine.rbegin() + 1; it != spine.rend(); ++it) cur = replace_spine_child(*it, cur);
  return cur;
}

// ---------------------------------------------------------------------------
// Patterns.

struct Pattern::Node {
  PKind kind;
  std::string name;
  std::vector<Pattern> kids;
};

namespace {
std::shared_ptr<const Pattern::Node> mkp(Pattern::Node n) {
  return std::make_shared<const Pattern::Node>(std::move(n));
}
}  // namespace

Pattern Pattern::var(std::string name) { return Pattern(mkp({PKind::Var, std::move(name), {}})); }
Pattern Pattern::pair(Pattern l, Pattern r) {
  return Pattern(mkp({PKind::Pair, {}, {std::move(l), std::move(r)}}));
}
Pattern Pattern::inl(Pattern p) { return Pattern(mkp({PKind::Inl, {}, {std::move(p)}})); }
Pattern Pattern::inr(Pattern p) { return Pattern(mkp({PKind::Inr, {}, {std::move(p)}})); }

PKind Pattern::kind() const { return n_->kind; }
const std::string& Pattern::name() const { assert(kind() == PKind::Var); return n_->name; }
const Pattern& Pattern::first() const { assert(kind() == PKind::Pair); return n_->kids[0]; }
const Pattern& Pattern::second() const { assert(kind() == PKind::Pair); return n_->kids[1]; }
const Pattern& Pattern::inner() const {
  assert(kind() == PKind::Inl || kind() == PKind::Inr);
  return n_->kids[0];
}

bool Pattern::operator==(const Pattern& rhs) const {
  if (n_ == rhs.n_) return true;
  if (kind() != rhs.kind()) return false;
  if (n_->name != rhs.n_->name) return false;
  if (n_->kids.size() != rhs.n_->kids.size()) return false;
  for (size_t i = 0; i < n_->kids.size(); i++)
    if (n_->kids[i] != rhs.n_->kids[i]) return false;
  return true;
}

Term pattern_to_term(const Pattern& p) {
  switch (p.kind()) {
    case PKind::Var: return Term::var(p.name());
    case PKind::Pair: return Term::pair(pattern_to_term(p.first()), pattern_to_term(p.second()));
    case PKind::Inl: return Term::inl(pattern_to_term(p.inner()));
    case PKind::Inr: return Term::inr(pattern_to_term(p.inner()));
  }
  return Term::stuck();
}

std::vector<std::string> pattern_vars(const Pattern& p) {
  std::vector<std::string> out;
  switch (p.kind()) {
    case PKind::Var: out.push_back(p.name()); break;
    case PKind::Pair: {
      auto l = pattern_vars(p.first());
      auto r = pattern_vars(p.second());
      out.insert(out.end(), l.begin(), l.end());
      out.insert(out.end(), r.begin(), r.end());
      break;
    }
    case PKind::Inl:
    case PKind::Inr: out = pattern_vars(p.inner()); break;
  }
  return out;
}

Pattern subst_pattern_var(const Pattern& p, const std::string& v, const Pattern& repl) {
  switch (p.kind()) {
    case PKind::Var: return p.name() == v ? repl : p;
    case PKind::Pair:
      return Pattern::pair(subst_pattern_var(p.first(), v, repl),
                           subst_pattern_var(p.second(), v, repl));
    case PKind::Inl: return Pattern::inl(subst_pattern_var(p.inner(), v, repl));
    case PKind::Inr: return Pattern::inr(subst_pattern_var(p.inner(), v, repl));
  }
  return p;
}

std::string to_string(const Pattern& p) {
  switch (p.kind()) {
    case PKind::Var: return p.name();
    case PKind::Pair: return "<" + to_string(p.first()) + ", " + to_string(p.second()) + ">";
    case PKind::Inl: return "inl(" + to_string(p.inner()) + ")";
    case PKind::Inr: return "inr(" + to_string(p.inner()) + ")";
  }
  return "";
}

// ---------------------------------------------------------------------------
// Printing. Levels: 0 = term (lambda extends right), 1 = application chain,
// 2 = primary. inl/inr take a primary argument.

namespace {
void print_term(std::ostream& os, const Term& t, int prec) {
  switch (t.kind()) {
    case TKind::Var: os << t.name(); return;
    case TKind::Stuck: os << "stuck"; return;
    case TKind::Pair:
      os << '<';
      print_term(os, t.first(), 0);
      os << ", ";
      print_term(os, t.second(), 0);
      os << '>';
      return;
    case TKind::Lam: {
      bool paren = prec > 0;
      if (paren) os << '(';
      os << '\\' << t.bound() << ". ";
      print_term(os, t.body(), 0);
      if (paren) os << ')';
      return;
    }
    case TKind::Ap: {
      bool paren = prec > 1;
      if (paren) os << '(';
      print_term(os, t.fun(), 1);
      os << ' ';
      print_term(os, t.arg(), 2);
      if (paren) os << ')';
      return;
    }
    case TKind::Inl:
    case TKind::Inr: {
      bool paren = prec > 1;
      if (paren) os << '(';
      os << (t.is(TKind::Inl) ? "inl " : "inr ");
      print_term(os, t.inner(), 2);
      if (paren) os << ')';
      return;
    }
    case TKind::Spread:
      os << "spread(";
      print_term(os, t.scrut(), 0);
      os << "; " << t.var1() << ", " << t.var2() << ". ";
      print_term(os, t.body(), 0);
      os << ')';
      return;
    case TKind::Decide:
      os << "decide(";
      print_term(os, t.scrut(), 0);
      os << "; " << t.var1() << ". ";
      print_term(os, t.left(), 0);
      os << "; " << t.var2() << ". ";
      print_term(os, t.right(), 0);
      os << ')';
      return;
    case TKind::CbvAp:
      os << "cbv(";
      print_term(os, t.fun(), 0);
      os << "; ";
      print_term(os, t.arg(), 0);
      os << ')';
      return;
    case TKind::CbvPair:
      os << "cbvpair(";
      print_term(os, t.first(), 0);
      os << "; ";
      print_term(os, t.second(), 0);
      os << ')';
      return;
  }
}
}  // namespace

std::string to_string(const Term& t) {
  std::ostringstream os;
  print_term(os, t, 0);
  return os.str();
}

// ---------------------------------------------------------------------------
// Parsing.
//
//   term  := '\' IDENT '.' term | 'if' term 'then' term 'else' term | app
//   app   := prim+                          (left-associative)
//   prim  := IDENT | '<' term ',' term '>' | 'inl' prim | 'inr' prim
//          | 'fst' prim | 'snd' prim | 'stuck'
//          | 'spread' '(' term ';' IDENT ',' IDENT '.' term ')'
//          | 'decide' '(' term ';' IDENT '.' term ';' IDENT '.' term ')'
//          | 'cbv' '(' term ';' term ')' | 'cbvpair' '(' term ';' term ')'
//          | '(' term ')'
//
// fst/snd/if are sugar and expand at parse time.

namespace {

const std::set<std::string> kTermKeywords = {"inl", "inr",  "spread", "decide",  "cbv",
                                             "cbvpair", "stuck", "fst", "snd", "if", "then", "else"};

class TermParser {
public:
  explicit TermParser(std::string_view text) : lex_(text) {}

  Term parse() {
    Term t = term();
    lex_.expect_end();
    return t;
  }

private:
  Lexer lex_;

  Term term() {
    if (lex_.try_sym("\\")) {
      std::string b = ident_nonkw();
      lex_.expect(".");
      return Term::lam(b, term());
    }
    if (lex_.peek_ident("if")) {
      lex_.ident();
      Term c = term();
      if (!lex_.peek_ident("then")) throw ParseError("expected 'then'", lex_.pos());
      lex_.ident();
      Term a = term();
      if (!lex_.peek_ident("else")) throw ParseError("expected 'else'", lex_.pos());
      lex_.ident();
      Term b = term();
      return Term::decide(c, "_", a, "_", b);
    }
    return app();
  }

  Term app() {
    Term t = prim();
    while (arg_follows()) t = Term::ap(t, prim());
    return t;
  }

  bool arg_follows() const {
    char c = lex_.peek_raw();
    if (c == '(' || c == '<') return true;
    if (!Lexer::ident_start(c)) return false;
    // identifiers continue an application unless they are layout keywords
    return !lex_.peek_ident("then") && !lex_.peek_ident("else") && !lex_.peek_ident("if");
  }

  Term prim() {
    if (lex_.try_sym("(")) {
      Term t = term();
      lex_.expect(")");
      return t;
    }
    if (lex_.try_sym("<")) {
      Term a = term();
      lex_.expect(",");
      Term b = term();
      lex_.expect(">");
      return Term::pair(a, b);
    }
    if (lex_.peek_ident("inl")) { lex_.ident(); return Term::inl(prim()); }
    if (lex_.peek_ident("inr")) { lex_.ident(); return Term::inr(prim()); }
    if (lex_.peek_ident("fst")) {
      lex_.ident();
      return Term::spread(prim(), "x", "y", Term::var("x"));
    }
    if (lex_.peek_ident("snd")) {
      lex_.ident();
      return Term::spread(prim(), "x", "y", Term::var("y"));
    }
    if (lex_.peek_ident("stuck")) { lex_.ident(); return Term::stuck(); }
    if (lex_.peek_ident("spread")) {
      lex_.ident();
      lex_.expect("(");
      Term s = term();
      lex_.expect(";");
      std::string x = ident_nonkw();
      lex_.expect(",");
      std::string y = ident_nonkw();
      lex_.expect(".");
      Term b = term();
      lex_.expect(")");
      return Term::spread(s, x, y, b);
    }
    if (lex_.peek_ident("decide")) {
      lex_.ident();
      lex_.expect("(");
      Term s = term();
      lex_.expect(";");
      std::string x = ident_nonkw();
      lex_.expect(".");
      Term l = term();
      lex_.expect(";");
      std::string y = ident_nonkw();
      lex_.expect(".");
      Term r = term();
      lex_.expect(")");
      return Term::decide(s, x, l, y, r);
    }
    if (lex_.peek_ident("cbv")) {
      lex_.ident();
      lex_.expect("(");
      Term f = term();
      lex_.expect(";");
      Term a = term();
      lex_.expect(")");
      return Term::cbv_ap(f, a);
    }
    if (lex_.peek_ident("cbvpair")) {
      lex_.ident();
      lex_.expect("(");
      Term a = term();
      lex_.expect(";");
      Term b = term();
      lex_.expect(")");
      return Term::cbv_pair(a, b);
    }
    return Term::var(ident_nonkw());
  }

  std::string ident_nonkw() {
    size_t at = lex_.pos();
    std::string s = lex_.ident();
    if (kTermKeywords.count(s)) throw ParseError("unexpected keyword '" + s + "'", at);
    return s;
  }
};

}  // namespace

Term parse_term(std::string_view text) {
  TermParser p(text);
  return p.parse();
}

}  // namespace e2p
