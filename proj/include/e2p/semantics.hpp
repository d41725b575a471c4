#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "e2p/context.hpp"
#include "e2p/formula.hpp"
#include "e2p/term.hpp"

namespace e2p {

enum class VKind : uint8_t { Star, Token, Dom, Pair, Inl, Inr, Table };

// Semantic value of a finitary type: atomic tokens, domain elements,
// the Unit member, pairs, injections, and total function tables.
class Value {
public:
  Value();  // Star

  static Value star();
  static Value token(int i);
  static Value dom(int i);
  static Value pair(Value l, Value r);
  static Value inl(Value v);
  static Value inr(Value v);
  static Value table(std::vector<std::pair<Value, Value>> graph);

  VKind kind() const;
  int index() const;           // Token/Dom
  const Value& first() const;  // Pair
  const Value& second() const; // Pair
  const Value& inner() const;  // Inl/Inr
  const std::vector<std::pair<Value, Value>>& graph() const;  // Table

  bool operator==(const Value& rhs) const;
  bool operator!=(const Value& rhs) const { return !(*this == rhs); }
  bool operator<(const Value& rhs) const;  // total order, for determinism

  struct Node;  // exposed for the out-of-line definition; still opaque here

private:
  explicit Value(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

std::string to_string(const Value& v);

// Finite-domain structure: domain {0..k-1}, finite token sets for atom cells,
// and an environment for declared variables (domain vars map to Dom values).
struct FinitaryStructure {
  int domain_size = 1;
  bool unit_atoms = false;  // every atom cell is {Star} unless overridden
  std::map<std::pair<std::string, std::vector<int>>, int> atom_cards;
  std::map<std::string, Value> env;

  std::vector<Value> atom_set(const std::string& rel, const std::vector<int>& args) const;
  std::string render() const;  // "domain=2; P=1; R(0,1)=0; ..."
};

// Full finite set of canonical inhabitants of M(phi), in deterministic
// enumeration order. Throws on unbound free variables or when a function
// type is too large to enumerate.
std::vector<Value> inhabitants(const FinitaryStructure& m, const Formula& phi);

// The structure assigning Unit to every atom; vars map injectively to
// domain elements 0,1,... Pre: k >= vars.size().
FinitaryStructure unit_structure(const std::vector<std::string>& vars, int k);

// Extends unit_structure with values for every declared evidence variable,
// chosen in decreasing index order so that all constraints are satisfied.
// Pre: check_wellformed(h) passes and k > number of domain declarations.
FinitaryStructure model_of_context(const Context& h, int k);

enum class Membership : uint8_t { Member, NotMember, Inconclusive };

// Shape-directed membership of an evidence term in M(phi): evaluates the term
// (free variables resolved through m.env), tabulating lambdas against the
// finite antecedent/domain. Inconclusive when evaluation exhausts fuel.
Membership check_membership(const FinitaryStructure& m, const Term& t, const Formula& phi,
                            long fuel);

struct ValidityReport {
  enum class Kind : uint8_t { AllMember, Counterexample, Inconclusive };
  Kind kind = Kind::AllMember;
  std::optional<FinitaryStructure> counterexample;
  long structures_checked = 0;
};

// Enumerates every finitary structure with domain size <= k_max and per-cell
// token count <= atom_card_max over phi's language, checking membership of t
// in each. Returns the first counterexample in enumeration order.
ValidityReport sample_uniform_validity(const Formula& phi, const Term& t, int k_max,
                                       int atom_card_max, long fuel);

}  // namespace e2p
