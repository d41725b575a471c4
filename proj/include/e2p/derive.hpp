#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "e2p/context.hpp"
#include "e2p/eval.hpp"
#include "e2p/proof.hpp"

namespace e2p {

// The sixteen derivation rules. The first seven match canonical evidence,
// the rest match a principal variable.
enum class RuleId : uint8_t {
  AndPair, ExPair, ExValPair, OrInl, OrInr, ImpLam, AllLam,
  VarAx, DecideR, AndSpread, ExSpread, ApplyConst, ImpApply, AllApply, ApplyModel, AllCbv
};

std::string_view rule_name(RuleId r);

struct MatchFailure {
  std::string reason;
};

// Pre: s.evidence is canonical or blocked on a declared principal variable
// (the shape compute_to_head produces). Returns the unique applicable rule,
// or the reason the evidence cannot be uniform evidence for the goal.
std::variant<RuleId, MatchFailure> match_rule(const EvidenceStructure& s);

struct DerivationStep {
  RuleId rule;
  std::vector<EvidenceStructure> children;  // 0, 1, or 2
  // Sequent-calculus action emitted by the rule; evidence-only rules
  // (ExPair, ApplyConst, AllApply, ApplyModel) emit none.
  std::optional<ProofRule> proof_rule;
  std::string hyp, p1, p2;  // parameters for the emitted proof node
};

// Pre: match_rule(s) == r. May throw IncompatiblePattern on malformed input.
DerivationStep apply_rule(const EvidenceStructure& s, RuleId r);

enum class DriveStatus : uint8_t {
  Proved, NoRuleMatches, StuckEvidence, FuelExhausted, InvalidInput
};

struct DriveOutcome {
  DriveStatus status = DriveStatus::InvalidInput;
  std::optional<Proof> proof;
  std::string message;
  std::optional<EvidenceStructure> failed_at;
  long steps_used = 0;          // evaluation steps + rule applications
  long rule_applications = 0;
  long measure_violations = 0;  // pre-normalize mode only
};

struct DriveOptions {
  long fuel = 100000;
  bool pre_normalize = false;  // fully normalize before and between steps
  bool debug_checks = false;   // check_wellformed after every rule application
  // called once per rule application: (ordinal, rule, structure at match time)
  std::function<void(long, RuleId, const EvidenceStructure&)> trace;
};

// The recursive procedure: starting from (|- goal, evidence), alternates
// computing the evidence to a head with matching and applying the sixteen
// rules, and assembles the emitted actions into a minimal-logic proof.
DriveOutcome prove_from_evidence(const Formula& goal, const Term& evidence,
                                 const DriveOptions& opts = {});

}  // namespace e2p
