#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "e2p/formula.hpp"
#include "e2p/term.hpp"

namespace e2p {

enum class ProofRule : uint8_t {
  Axiom, RightAnd, RightOrL, RightOrR, RightImp, RightAll, RightEx,
  LeftAnd, LeftOr, LeftImp, LeftAll, LeftEx, FalseElim, Cut
};

std::string_view rule_name(ProofRule r);

// Minimal-logic sequent-calculus derivation: a rule, its parameters, and
// premises. Only rules and parameters are stored; sequents are reconstructed
// from the root goal by the checker. Immutable.
class Proof {
public:
  Proof();  // Axiom("")

  static Proof axiom(std::string hyp);
  static Proof right_and(Proof l, Proof r);
  static Proof right_or_l(Proof p);
  static Proof right_or_r(Proof p);
  static Proof right_imp(std::string fresh_hyp, Proof p);
  static Proof right_all(std::string eigenvar, Proof p);
  static Proof right_ex(std::string witness, Proof p);
  static Proof left_and(std::string hyp, std::string x, std::string y, Proof p);
  static Proof left_or(std::string hyp, std::string x, std::string y, Proof l, Proof r);
  static Proof left_imp(std::string hyp, std::string fresh_hyp, Proof arg, Proof cont);
  static Proof left_all(std::string hyp, std::string instance, std::string fresh_hyp, Proof p);
  static Proof left_ex(std::string hyp, std::string eigenvar, std::string fresh_hyp, Proof p);
  static Proof false_elim(std::string hyp);
  static Proof cut(Formula cut_formula, std::string fresh_hyp, Proof arg, Proof cont);

  ProofRule rule() const;
  const std::string& hyp() const;     // Axiom/Left*/FalseElim
  const std::string& param1() const;  // RightImp/RightAll/RightEx/Cut fresh; Left* x/instance/eigen
  const std::string& param2() const;  // Left* y/freshHyp
  const Formula& cut_formula() const;
  const std::vector<Proof>& premises() const;

  size_t node_count() const;
  bool contains_rule(ProofRule r) const;

  struct Node;  // exposed for the out-of-line definition; still opaque here

private:
  explicit Proof(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

struct SequentHyp {
  std::string label;
  bool is_domain = false;  // d : D
  Formula type;            // meaningful when !is_domain
};

struct Sequent {
  std::vector<SequentHyp> hyps;
  Formula conclusion;
};
std::string to_string(const Sequent& s);

enum class LogicMode : uint8_t { Minimal, Intuitionistic };

struct CheckFailure {
  std::vector<int> path;  // premise indices from the root to the failing node
  std::string reason;
  std::string render() const;
};

// Reconstructs sequents top-down from (|- goal); accepts iff every rule is
// applicable, axioms close on alpha-equal hypotheses, and eigenvariable and
// label freshness conditions hold. Minimal mode also requires a minimal goal
// and rejects FalseElim and non-minimal cut formulas.
std::optional<CheckFailure> check_proof(const Formula& goal, const Proof& pt, LogicMode mode);

// BHK extraction; meaningful on checker-valid proofs.
Term extract_evidence(const Proof& pt);

// Uniform evidence for psi from evidence for psi1 and psi1 => psi.
Term compose_cut(const Term& evd1, const Term& evd2);

std::string to_string(const Proof& p);  // canonical s-expression
Proof parse_proof(std::string_view text);

struct ProofFile {
  Formula goal;
  Proof proof;
};
std::string to_string(const ProofFile& f);  // "goal: <formula>\n<s-expr>\n"
ProofFile parse_proof_file(std::string_view text);

}  // namespace e2p
