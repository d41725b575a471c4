#pragma once

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace e2p {

struct ParseError : std::runtime_error {
  size_t pos;
  ParseError(const std::string& what, size_t pos_) : std::runtime_error(what), pos(pos_) {}
};

enum class FKind : uint8_t { Atom, False, And, Or, Imp, All, Ex };

// First-order formula over a single domain sort. Atom arguments are domain
// variables only; there are no function symbols. Immutable, value semantics.
class Formula {
public:
  Formula();  // FalseC

  static Formula atom(std::string rel, std::vector<std::string> args = {});
  static Formula falsec();
  static Formula conj(Formula l, Formula r);
  static Formula disj(Formula l, Formula r);
  static Formula imp(Formula l, Formula r);
  static Formula neg(Formula f);  // sugar: imp(f, falsec())
  static Formula all(std::string var, Formula body);
  static Formula ex(std::string var, Formula body);

  FKind kind() const;
  bool is(FKind k) const { return kind() == k; }

  const std::string& rel() const;                // Atom
  const std::vector<std::string>& args() const;  // Atom
  const Formula& left() const;                   // And/Or/Imp
  const Formula& right() const;                  // And/Or/Imp
  const std::string& bound() const;              // All/Ex
  const Formula& body() const;                   // All/Ex

  bool operator==(const Formula& rhs) const;  // structural, bound names included
  bool operator!=(const Formula& rhs) const { return !(*this == rhs); }
  size_t node_count() const;

  struct Node;  // exposed for the out-of-line definition; still opaque here

private:
  explicit Formula(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

bool alpha_equal(const Formula& a, const Formula& b);

// True iff the formula contains no FalseC node (negation sugar expands to
// an implication into FalseC, so it is excluded as well).
bool is_minimal(const Formula& f);

std::set<std::string> free_domain_vars(const Formula& f);
bool is_closed(const Formula& f);

// Capture-avoiding substitution of domain variable d for free occurrences of x.
Formula subst_domain_var(const Formula& f, const std::string& x, const std::string& d);

// Friedman A-translation: atoms r(..) become r(..) \/ A, FalseC becomes A,
// connectives and quantifiers commute. Binders of f that would capture a free
// variable of A are renamed.
Formula a_translate(const Formula& f, const Formula& a);

struct Language {
  std::map<std::string, int> relations;  // symbol -> arity
};

// Collects relation symbols with their arities; throws ParseError-free
// std::runtime_error on an arity clash.
Language language_of(const Formula& f);

std::string to_string(const Formula& f);
Formula parse_formula(std::string_view text);

}  // namespace e2p
