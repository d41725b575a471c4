#pragma once

#include <compare>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "e2p/formula.hpp"

namespace e2p {

enum class TKind : uint8_t {
  Var, Pair, Inl, Inr, Lam, Ap, Spread, Decide, CbvAp, CbvPair, Stuck
};

std::string_view kind_name(TKind k);  // "var", "pair", ..., "cbvpair", "stuck"

// Untyped evidence term (realizer). Canonical forms are exactly Pair, Inl,
// Inr, Lam. `stuck` is a leaf with no redex that is not canonical. Immutable.
class Term {
public:
  Term();  // stuck

  static Term var(std::string name);
  static Term pair(Term l, Term r);
  static Term inl(Term t);
  static Term inr(Term t);
  static Term lam(std::string bound, Term body);
  static Term ap(Term fun, Term arg);
  static Term spread(Term scrut, std::string x, std::string y, Term body);
  static Term decide(Term scrut, std::string x, Term left, std::string y, Term right);
  static Term cbv_ap(Term fun, Term arg);
  static Term cbv_pair(Term first, Term second);
  static Term stuck();

  TKind kind() const;
  bool is(TKind k) const { return kind() == k; }
  bool is_canonical() const;

  const std::string& name() const;   // Var
  const Term& first() const;         // Pair/CbvPair
  const Term& second() const;        // Pair/CbvPair
  const Term& inner() const;         // Inl/Inr
  const std::string& bound() const;  // Lam
  const Term& body() const;          // Lam/Spread
  const Term& fun() const;           // Ap/CbvAp
  const Term& arg() const;           // Ap/CbvAp
  const Term& scrut() const;         // Spread/Decide
  const std::string& var1() const;   // Spread x / Decide x
  const std::string& var2() const;   // Spread y / Decide y
  const Term& left() const;          // Decide
  const Term& right() const;         // Decide

  bool operator==(const Term& rhs) const;  // structural
  bool operator!=(const Term& rhs) const { return !(*this == rhs); }
  size_t node_count() const;

  struct Node;  // exposed for the out-of-line definition; still opaque here

private:
  explicit Term(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

bool alpha_equal(const Term& a, const Term& b);
std::set<std::string> free_term_vars(const Term& t);
bool is_closed(const Term& t);

// Capture-avoiding substitution of e for free occurrences of v.
Term subst_term(const Term& t, const std::string& v, const Term& e);

// Termination measure: lexicographic <nc, cbv, npr, cn, size>.
//   nc  — Decide + Spread + Ap nodes
//   cbv — CbvAp nodes
//   npr — Pair nodes
//   cn  — CbvPair + Inl + Inr nodes
//   size — total node count (restores strict decrease on lambda-stripping steps)
struct Measure {
  long nc = 0, cbv = 0, npr = 0, cn = 0, size = 0;
  auto operator<=>(const Measure&) const = default;
};
Measure measure(const Term& t);
std::string to_string(const Measure& m);

// Principal-subterm decomposition. `spine` lists the nodes from the root down
// to (and excluding) the principal subterm; each spine node's on-path child is
// determined by its kind (Decide/Spread: scrut, Ap: fun, CbvAp: arg,
// CbvPair: first). Rebuilding with a replacement reassembles the term.
struct PrincipalPath {
  Term principal;
  std::vector<Term> spine;

  bool has_parent() const { return !spine.empty(); }
  const Term& parent() const { return spine.back(); }
  Term rebuild_principal(const Term& replacement) const;
  Term rebuild_parent(const Term& replacement) const;  // pre: has_parent()
};
PrincipalPath principal_subterm(const Term& t);

// Patterns: terms built from declared variables by pairing and injections.
enum class PKind : uint8_t { Var, Pair, Inl, Inr };

class Pattern {
public:
  static Pattern var(std::string name);
  static Pattern pair(Pattern l, Pattern r);
  static Pattern inl(Pattern p);
  static Pattern inr(Pattern p);

  PKind kind() const;
  const std::string& name() const;  // Var
  const Pattern& first() const;     // Pair
  const Pattern& second() const;    // Pair
  const Pattern& inner() const;     // Inl/Inr

  bool operator==(const Pattern& rhs) const;
  bool operator!=(const Pattern& rhs) const { return !(*this == rhs); }

  struct Node;  // exposed for the out-of-line definition; still opaque here

private:
  explicit Pattern(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

Term pattern_to_term(const Pattern& p);
std::vector<std::string> pattern_vars(const Pattern& p);  // left-to-right, with repeats
Pattern subst_pattern_var(const Pattern& p, const std::string& v, const Pattern& repl);
std::string to_string(const Pattern& p);

std::string to_string(const Term& t);
Term parse_term(std::string_view text);

}  // namespace e2p
