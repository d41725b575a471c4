#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "e2p/formula.hpp"
#include "e2p/term.hpp"

namespace e2p {

struct DomainDecl { std::string name; };                               // d : D
struct HypDecl { std::string name; Formula type; };                    // v : A
struct ConstConstraint { std::string fn; Pattern body; };              // fn = const(body)
struct ApConstraint { std::string fn; std::string arg; Pattern body; };// cbv(fn; arg) = body

using ContextEntry = std::variant<DomainDecl, HypDecl, ConstConstraint, ApConstraint>;

// Index used for stratification: the numeric suffix of an indexed name
// (v7 -> 7, d12 -> 12), or -1 for names without one.
int name_index(const std::string& name);

// Ordered declarations and constraints with fresh-name counters. Constraints
// are stored at their creation point but looked up by key anywhere.
class Context {
public:
  Context() = default;
  explicit Context(std::vector<ContextEntry> entries);

  const std::vector<ContextEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  void append(ContextEntry e);

  std::optional<Formula> hyp_type(const std::string& name) const;
  bool has_domain(const std::string& name) const;
  bool declares(const std::string& name) const;  // either kind of declaration
  std::optional<size_t> decl_position(const std::string& name) const;
  std::optional<Pattern> const_constraint(const std::string& fn) const;
  std::optional<Pattern> ap_constraint(const std::string& fn, const std::string& arg) const;

  std::string fresh_evidence_var();
  std::string fresh_domain_var();
  void reserve_indices_from(const Term& t);   // bump counters past names in t
  void absorb_counters(const Context& other);  // bump counters to at least other's
  int next_evidence_index() const { return next_ev_; }
  int next_domain_index() const { return next_dom_; }

private:
  std::vector<ContextEntry> entries_;
  int next_ev_ = 0;
  int next_dom_ = 0;
};

enum class ViolationKind : uint8_t {
  UndeclaredVariable, DuplicateConstraint, StratificationBreach, PatternTypeMismatch
};

struct Violation {
  ViolationKind kind;
  size_t entry_index;
  std::string message;
};

std::optional<Violation> check_wellformed(const Context& h);

// The unit of the derivation procedure: context, minimal goal, evidence.
struct EvidenceStructure {
  Context context;
  Formula goal;
  Term evidence;
};

struct IncompatiblePattern : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Declarations the pattern's (fresh) variables receive when the pattern
// replaces a variable of the given type; throws IncompatiblePattern.
std::vector<ContextEntry> infer_pattern_decls(const Pattern& p, const Formula& type);

// Substitutes pattern p for declared variable v: v's declaration is replaced
// by p's variable declarations, later constraint bodies and the evidence term
// are rewritten. Pattern variables must be fresh for the context.
EvidenceStructure subst_in_structure(const EvidenceStructure& s, const std::string& v,
                                     const Pattern& p);

std::string to_string(const ContextEntry& e);
std::string to_string(const Context& h);  // "d0:D; v0:P(d0); cbv(v0; d0) = inl(v2)"

}  // namespace e2p
