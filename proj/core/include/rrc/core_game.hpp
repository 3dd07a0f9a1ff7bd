#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "rrc/feasibility.hpp"
#include "rrc/rational.hpp"
#include "rrc/types.hpp"

namespace rrc {

// Who the adversary may remove.  The two readings give different optima on
// some systems, so both are first-class and every solver states which one it
// answers for.
//   AnyElement      — any ground-set element may fail (removing an element
//                     outside the current solution costs nothing by itself
//                     but blocks it as recourse).
//   FirstStageOnly  — only elements of the committed first-stage set fail.
// AnyElement is the default everywhere.

struct BruteForceBudget {
  int max_explicit = 16;          // explicit and matroid-backed systems
  int max_pairwise_conflict = 12; // graph- and interval-backed systems
  long long max_nodes = 200'000'000;
};

// Outcome of the adversary removing one element (or nothing) against a fixed
// first stage: the regret delta and the best single recourse element.
struct RegretReport {
  int interdicted = kNoElement;   // kNoElement encodes "no removal"
  Rational delta;                 // w(S) - best achievable value
  int best_recourse = kNoElement; // kNoElement encodes "add nothing"
};

struct InterdictionEntry {
  Mask interdicted = 0;
  Mask recourse = 0;
  Mask second_stage = 0;
  Rational value;
};

// A first-stage set together with the adversary's options and the resulting
// guaranteed value.  For k = l = 1 the table covers every interdiction
// (including "none"); for larger budgets only the worst case is recorded.
struct RobustCertificate {
  Mask first_stage = 0;
  int k = 1;
  int l = 1;
  std::vector<InterdictionEntry> per_interdiction;
  Rational worst_case_value;
};

bool is_feasible(const FeasibilitySystem& system, Mask s);

// Best single recourse against removal of f (kNoElement = no removal):
// maximizes the value of (S - f) + e over e outside S with the result
// feasible, or keeps S - f.  Ties prefer "add nothing", then the smallest
// element index.
struct RecourseChoice {
  int element = kNoElement;
  Mask second_stage = 0;
  Rational value;
};
RecourseChoice best_single_recourse(const FeasibilitySystem& system,
                                    const Weights& weights, Mask s, int f);

RegretReport regret(const FeasibilitySystem& system, const Weights& weights,
                    Mask s, int f);

// Exact guaranteed value of first stage S against up to k removals answered
// by up to l additions.  Exponential in n; guarded by the budget.
RobustCertificate robust_value(const FeasibilitySystem& system,
                               const Weights& weights, Mask s, int k, int l,
                               InterdictionScope scope = InterdictionScope::AnyElement,
                               const BruteForceBudget& budget = {});

// Exhaustive optimum over all feasible first stages.  Ties prefer higher
// nominal weight, then the smallest set mask.
RobustCertificate brute_force_rp(const FeasibilitySystem& system,
                                 const Weights& weights, int k, int l,
                                 InterdictionScope scope = InterdictionScope::AnyElement,
                                 const BruteForceBudget& budget = {});

// Exhaustive optimum of the regret-bounded variant: the best nominal weight
// among feasible S whose every single removal can be answered within regret
// lambda.  Empty optional = no feasible S at this lambda.
struct LambdaSolution {
  Rational w_opt;
  Mask first_stage = 0;
};
std::optional<LambdaSolution> brute_force_lambda_rp(
    const FeasibilitySystem& system, const Weights& weights, const Rational& lambda,
    InterdictionScope scope = InterdictionScope::AnyElement,
    const BruteForceBudget& budget = {});

// Every regret bound that can matter: pairwise weight differences, the
// weights themselves, their negations, and zero; deduplicated, ascending.
std::vector<Rational> candidate_lambdas(const Weights& weights);

// Reduction of the one-removal one-addition game to a sweep of
// regret-bounded subproblems, with a pluggable subproblem solver.
using LambdaSolver = std::function<std::optional<LambdaSolution>(
    const FeasibilitySystem&, const Weights&, const Rational&)>;

struct LambdaSweepResult {
  RobustCertificate certificate;
  Rational lambda_star;
  // (lambda, w_opt) per candidate, in sweep order; empty optional = infeasible.
  std::vector<std::pair<Rational, std::optional<Rational>>> profile;
};
LambdaSweepResult solve_rp_via_lambda(const FeasibilitySystem& system,
                                      const Weights& weights,
                                      const LambdaSolver& solver,
                                      InterdictionScope scope = InterdictionScope::AnyElement);

}  // namespace rrc
