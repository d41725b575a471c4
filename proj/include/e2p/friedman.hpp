#pragma once

#include <utility>

#include "e2p/formula.hpp"
#include "e2p/proof.hpp"

namespace e2p {

// Intuitionistic proofs of phi^False => phi and phi => phi^False, built by
// structural induction on phi (phi^False = a_translate(phi, FalseC)).
// Pre: phi closed. Both proofs pass check_proof in intuitionistic mode.
std::pair<Proof, Proof> false_instantiation_equivalence(const Formula& phi);

// Given a minimal-logic proof of goal^bot with the placeholder atom read as
// False (i.e. a proof that also checks against a_translate(goal, FalseC)),
// produces an intuitionistic proof of goal by cutting against the
// phi^False => phi direction above.
Proof il_proof_from_translation(const Formula& goal, const Proof& ml_proof);

}  // namespace e2p
