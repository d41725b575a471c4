#pragma once

// Shared helpers for the test suites: seeded random generators for formulas
// and evidence terms, plus a cheap cardinality estimate used to keep
// enumeration-based checks at desk scale.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "e2p/formula.hpp"
#include "e2p/term.hpp"

namespace e2p::testutil {

struct Rng {
  std::mt19937 gen;
  explicit Rng(uint32_t seed = 0) : gen(seed) {}

  int below(int n) { return std::uniform_int_distribution<int>(0, n - 1)(gen); }
  bool chance(double p) { return std::uniform_real_distribution<double>(0, 1)(gen) < p; }
  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[below(static_cast<int>(v.size()))];
  }
};

// Signature used throughout the random tests: P/0, Q/1, R/2.
inline Formula random_atom(Rng& rng, const std::vector<std::string>& scope) {
  int max_arity = std::min<int>(2, static_cast<int>(scope.size()));
  int arity = rng.below(max_arity + 1);
  switch (arity) {
    case 1: return Formula::atom("Q", {rng.pick(scope)});
    case 2: return Formula::atom("R", {rng.pick(scope), rng.pick(scope)});
    default: return Formula::atom("P");
  }
}

// Closed formula of the minimal fragment, depth <= depth. When allow_false is
// set the generator may also emit FalseC leaves (full first-order fragment).
inline Formula random_formula(Rng& rng, int depth, std::vector<std::string>& scope,
                              bool allow_false = false) {
  if (depth <= 0 || rng.chance(0.25)) {
    if (allow_false && rng.chance(0.3)) return Formula::falsec();
    return random_atom(rng, scope);
  }
  switch (rng.below(5)) {
    case 0:
      return Formula::conj(random_formula(rng, depth - 1, scope, allow_false),
                           random_formula(rng, depth - 1, scope, allow_false));
    case 1:
      return Formula::disj(random_formula(rng, depth - 1, scope, allow_false),
                           random_formula(rng, depth - 1, scope, allow_false));
    case 2:
      return Formula::imp(random_formula(rng, depth - 1, scope, allow_false),
                          random_formula(rng, depth - 1, scope, allow_false));
    default: {
      std::string v = "x" + std::to_string(scope.size());
      scope.push_back(v);
      Formula body = random_formula(rng, depth - 1, scope, allow_false);
      scope.pop_back();
      return rng.below(2) ? Formula::all(v, body) : Formula::ex(v, body);
    }
  }
}

inline Formula random_closed_minimal(Rng& rng, int depth) {
  std::vector<std::string> scope;
  return random_formula(rng, depth, scope, false);
}

inline Formula random_closed_formula(Rng& rng, int depth) {
  std::vector<std::string> scope;
  return random_formula(rng, depth, scope, true);
}

// Size of M(phi) in a structure with domain size k and every atom of
// cardinality 1, saturating just above `cap` so a `> cap` test stays true.
inline double cardinality_estimate(const Formula& f, int k, double cap) {
  auto clamp = [cap](double x) { return x > cap ? cap + 1 : x; };
  switch (f.kind()) {
    case FKind::Atom: return 1;
    case FKind::False: return 0;
    case FKind::And:
      return clamp(cardinality_estimate(f.left(), k, cap) * cardinality_estimate(f.right(), k, cap));
    case FKind::Or:
      return clamp(cardinality_estimate(f.left(), k, cap) + cardinality_estimate(f.right(), k, cap));
    case FKind::Imp: {
      double a = cardinality_estimate(f.left(), k, cap);
      double b = cardinality_estimate(f.right(), k, cap);
      double r = 1;
      for (int i = 0; i < static_cast<int>(a) && r <= cap; i++) r *= b;
      return clamp(r);
    }
    case FKind::All: {
      double b = cardinality_estimate(f.body(), k, cap);
      double r = 1;
      for (int i = 0; i < k && r <= cap; i++) r *= b;
      return clamp(r);
    }
    case FKind::Ex: return clamp(k * cardinality_estimate(f.body(), k, cap));
  }
  return 1;
}

// Arbitrary evidence term over the given free variables (may be open, may
// contain redexes and dead ends).
inline Term random_term(Rng& rng, int depth, std::vector<std::string>& scope) {
  if (depth <= 0 || (scope.size() > 0 && rng.chance(0.3))) {
    if (!scope.empty() && rng.chance(0.85)) return Term::var(rng.pick(scope));
    return rng.chance(0.5) ? Term::stuck() : Term::lam("z", Term::var("z"));
  }
  auto sub = [&](int d) { return random_term(rng, d, scope); };
  switch (rng.below(10)) {
    case 0: return Term::pair(sub(depth - 1), sub(depth - 1));
    case 1: return Term::inl(sub(depth - 1));
    case 2: return Term::inr(sub(depth - 1));
    case 3: {
      std::string v = "b" + std::to_string(scope.size());
      scope.push_back(v);
      Term body = sub(depth - 1);
      scope.pop_back();
      return Term::lam(v, body);
    }
    case 4: return Term::ap(sub(depth - 1), sub(depth - 1));
    case 5: {
      Term scrut = sub(depth - 1);
      std::string x = "b" + std::to_string(scope.size());
      std::string y = x + "y";
      scope.push_back(x);
      scope.push_back(y);
      Term body = sub(depth - 1);
      scope.pop_back();
      scope.pop_back();
      return Term::spread(scrut, x, y, body);
    }
    case 6: {
      Term scrut = sub(depth - 1);
      std::string x = "b" + std::to_string(scope.size());
      scope.push_back(x);
      Term l = sub(depth - 1);
      Term r = sub(depth - 1);
      scope.pop_back();
      return Term::decide(scrut, x, l, x, r);
    }
    case 7: return Term::cbv_ap(sub(depth - 1), sub(depth - 1));
    case 8: return Term::cbv_pair(sub(depth - 1), sub(depth - 1));
    default: return sub(0);
  }
}

inline Term random_closed_term(Rng& rng, int depth) {
  std::vector<std::string> scope;
  Term t = random_term(rng, depth, scope);
  // close any stray free variables under lambdas
  for (const auto& v : free_term_vars(t)) t = Term::lam(v, t);
  return t;
}

}  // namespace e2p::testutil
