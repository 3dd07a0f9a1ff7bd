#include "rrc/core_game.hpp"

#include <algorithm>
#include <stdexcept>

#include "rrc/errors.hpp"

namespace rrc {
namespace {

void check_weights(const FeasibilitySystem& system, const Weights& weights) {
  if (static_cast<int>(weights.size()) != system.size()) {
    throw ValidationError("weight vector size does not match ground set");
  }
}

void check_set_in_range(const FeasibilitySystem& system, Mask s) {
  if (system.size() < kMaxGroundSet && (s >> system.size()) != 0) {
    throw ValidationError("set contains elements outside the ground set");
  }
}

void check_budgets(int k, int l) {
  if (k < 1 || l < 1) throw ValidationError("interdiction and recourse budgets must be >= 1");
  if (k > 3 || l > 3) throw ValidationError("budgets above 3 are not supported");
}

int cap_for(const FeasibilitySystem& system, const BruteForceBudget& budget) {
  return system.kind() == FeasibilitySystem::Kind::PairwiseConflict
             ? budget.max_pairwise_conflict
             : budget.max_explicit;
}

// All subsets of `pool` with at most `max_size` elements, in size-ascending
// then lexicographic order (so the empty set always comes first and ties are
// deterministic).
std::vector<Mask> small_subsets(Mask pool, int max_size) {
  const std::vector<int> elems = mask_to_indices(pool);
  std::vector<Mask> out{0};
  // frontier holds (subset, position after its largest chosen element).
  std::vector<std::pair<Mask, size_t>> frontier{{0, 0}};
  for (int size = 1; size <= max_size; ++size) {
    std::vector<std::pair<Mask, size_t>> next;
    for (const auto& [base, from] : frontier) {
      for (size_t i = from; i < elems.size(); ++i) {
        next.emplace_back(base | bit(elems[i]), i + 1);
      }
    }
    std::sort(next.begin(), next.end());
    for (const auto& [mask, from] : next) out.push_back(mask);
    frontier = std::move(next);
  }
  return out;
}

// Best second stage against interdiction F: keep (S \ F) and add up to l
// elements from outside S and F.  Deterministic: candidate additions are
// explored size-ascending, lexicographic, and only strict improvements
// replace the incumbent.
InterdictionEntry best_response(const FeasibilitySystem& system, const Weights& weights,
                                Mask s, Mask interdicted, int l,
                                long long& node_budget) {
  const Mask base = s & ~interdicted;
  const Mask full = (system.size() == kMaxGroundSet)
                        ? ~Mask{0}
                        : (bit(system.size()) - 1);
  const Mask pool = full & ~s & ~interdicted;
  InterdictionEntry entry;
  entry.interdicted = interdicted;
  entry.recourse = 0;
  entry.second_stage = base;
  entry.value = set_weight(weights, base);
  for (Mask r : small_subsets(pool, l)) {
    if (r == 0) continue;
    if (--node_budget < 0) {
      throw BudgetExceeded("exhaustive game evaluation exceeded its node budget");
    }
    const Mask stage2 = base | r;
    if (!system.feasible(stage2)) continue;
    const Rational value = set_weight(weights, stage2);
    if (entry.value < value) {
      entry.recourse = r;
      entry.second_stage = stage2;
      entry.value = value;
    }
  }
  return entry;
}

}  // namespace

bool is_feasible(const FeasibilitySystem& system, Mask s) {
  check_set_in_range(system, s);
  return system.feasible(s);
}

RecourseChoice best_single_recourse(const FeasibilitySystem& system,
                                    const Weights& weights, Mask s, int f) {
  check_weights(system, weights);
  check_set_in_range(system, s);
  if (f != kNoElement && (f < 0 || f >= system.size())) {
    throw ValidationError("interdicted element out of range");
  }
  if (!system.feasible(s)) {
    throw ValidationError("first-stage set is infeasible");
  }
  const Mask base = (f == kNoElement) ? s : (s & ~bit(f));
  const Rational base_weight = set_weight(weights, base);
  RecourseChoice choice;
  choice.element = kNoElement;
  choice.second_stage = base;
  choice.value = base_weight;
  for (int e = 0; e < system.size(); ++e) {
    if (has_bit(s, e) || e == f) continue;
    const Mask stage2 = base | bit(e);
    if (!system.feasible(stage2)) continue;
    const Rational value = base_weight + weights[static_cast<size_t>(e)];
    if (choice.value < value) {
      choice.element = e;
      choice.second_stage = stage2;
      choice.value = value;
    }
  }
  return choice;
}

RegretReport regret(const FeasibilitySystem& system, const Weights& weights,
                    Mask s, int f) {
  const RecourseChoice choice = best_single_recourse(system, weights, s, f);
  RegretReport report;
  report.interdicted = f;
  report.delta = set_weight(weights, s) - choice.value;
  report.best_recourse = choice.element;
  return report;
}

RobustCertificate robust_value(const FeasibilitySystem& system, const Weights& weights,
                               Mask s, int k, int l, InterdictionScope scope,
                               const BruteForceBudget& budget) {
  check_weights(system, weights);
  check_set_in_range(system, s);
  check_budgets(k, l);
  if (!system.feasible(s)) {
    throw ValidationError("first-stage set is infeasible");
  }
  RobustCertificate cert;
  cert.first_stage = s;
  cert.k = k;
  cert.l = l;

  if (k == 1 && l == 1) {
    // Full per-interdiction table: no removal first, then each allowed f.
    std::vector<int> targets;
    targets.push_back(kNoElement);
    for (int f = 0; f < system.size(); ++f) {
      if (scope == InterdictionScope::FirstStageOnly && !has_bit(s, f)) continue;
      targets.push_back(f);
    }
    bool first = true;
    for (int f : targets) {
      const RecourseChoice choice = best_single_recourse(system, weights, s, f);
      InterdictionEntry entry;
      entry.interdicted = (f == kNoElement) ? 0 : bit(f);
      entry.recourse = (choice.element == kNoElement) ? 0 : bit(choice.element);
      entry.second_stage = choice.second_stage;
      entry.value = choice.value;
      if (first || entry.value < cert.worst_case_value) {
        cert.worst_case_value = entry.value;
      }
      first = false;
      cert.per_interdiction.push_back(std::move(entry));
    }
    return cert;
  }

  // Larger budgets: exhaustive over interdiction sets, worst entry only.
  const Mask full = (system.size() == kMaxGroundSet) ? ~Mask{0} : (bit(system.size()) - 1);
  const Mask pool = (scope == InterdictionScope::FirstStageOnly) ? s : full;
  long long nodes = budget.max_nodes;
  bool first = true;
  InterdictionEntry worst;
  for (Mask f : small_subsets(pool, k)) {
    const InterdictionEntry entry = best_response(system, weights, s, f, l, nodes);
    if (first || entry.value < worst.value) {
      worst = entry;
      cert.worst_case_value = entry.value;
      first = false;
    }
  }
  cert.per_interdiction.push_back(std::move(worst));
  return cert;
}

namespace {

// Worst-case value of S without building certificate entries.  May stop
// early (returning any value strictly below `abort_below`) once the result
// cannot reach that bound; exact otherwise.
Rational robust_value_only(const FeasibilitySystem& system, const Weights& weights,
                           Mask s, int k, int l, InterdictionScope scope,
                           long long& nodes, const Rational* abort_below) {
  if (k == 1 && l == 1) {
    const Mask full = (system.size() == kMaxGroundSet) ? ~Mask{0} : (bit(system.size()) - 1);
    Rational worst;
    bool first = true;
    for (int f = kNoElement; f < system.size(); ++f) {
      if (f != kNoElement && scope == InterdictionScope::FirstStageOnly && !has_bit(s, f)) {
        continue;
      }
      if (--nodes < 0) {
        throw BudgetExceeded("exhaustive game evaluation exceeded its node budget");
      }
      const Mask base = (f == kNoElement) ? s : (s & ~bit(f));
      const Rational base_weight = set_weight(weights, base);
      Rational best = base_weight;
      const Mask pool = full & ~s & ~((f == kNoElement) ? Mask{0} : bit(f));
      for_each_bit(pool, [&](int e) {
        if (!system.feasible(base | bit(e))) return;
        const Rational value = base_weight + weights[static_cast<size_t>(e)];
        if (best < value) best = value;
      });
      if (first || best < worst) {
        worst = best;
        first = false;
      }
      if (abort_below != nullptr && worst < *abort_below) return worst;
    }
    return worst;
  }
  const Mask full = (system.size() == kMaxGroundSet) ? ~Mask{0} : (bit(system.size()) - 1);
  const Mask pool = (scope == InterdictionScope::FirstStageOnly) ? s : full;
  Rational worst;
  bool first = true;
  for (Mask f : small_subsets(pool, k)) {
    const InterdictionEntry entry = best_response(system, weights, s, f, l, nodes);
    if (first || entry.value < worst) {
      worst = entry.value;
      first = false;
    }
    if (abort_below != nullptr && worst < *abort_below) return worst;
  }
  return worst;
}

}  // namespace

RobustCertificate brute_force_rp(const FeasibilitySystem& system, const Weights& weights,
                                 int k, int l, InterdictionScope scope,
                                 const BruteForceBudget& budget) {
  check_weights(system, weights);
  check_budgets(k, l);
  if (system.size() > cap_for(system, budget)) {
    throw BudgetExceeded("instance exceeds the exhaustive-search size cap");
  }
  FeasibilitySystem sys = system;
  if (sys.size() <= 24) sys.build_table();

  const Mask limit = (sys.size() == kMaxGroundSet) ? ~Mask{0} : (bit(sys.size()) - 1);
  long long nodes = budget.max_nodes;
  bool have_best = false;
  Mask best_set = 0;
  Rational best_value;
  Rational best_weight;
  for (Mask s = 0;; ++s) {
    if (sys.feasible(s)) {
      const Rational value = robust_value_only(sys, weights, s, k, l, scope, nodes,
                                               have_best ? &best_value : nullptr);
      const Rational nominal = set_weight(weights, s);
      if (!have_best || best_value < value ||
          (value == best_value && best_weight < nominal)) {
        have_best = true;
        best_set = s;
        best_value = value;
        best_weight = nominal;
      }
    }
    if (s == limit) break;
  }
  return robust_value(sys, weights, best_set, k, l, scope, budget);
}

std::optional<LambdaSolution> brute_force_lambda_rp(const FeasibilitySystem& system,
                                                    const Weights& weights,
                                                    const Rational& lambda,
                                                    InterdictionScope scope,
                                                    const BruteForceBudget& budget) {
  check_weights(system, weights);
  if (system.size() > cap_for(system, budget)) {
    throw BudgetExceeded("instance exceeds the exhaustive-search size cap");
  }
  FeasibilitySystem sys = system;
  if (sys.size() <= 24) sys.build_table();

  const Mask limit = (sys.size() == kMaxGroundSet) ? ~Mask{0} : (bit(sys.size()) - 1);
  const Mask full = limit;
  bool have_best = false;
  Mask best_set = 0;
  Rational best_weight;
  for (Mask s = 0;; ++s) {
    if (sys.feasible(s)) {
      const Rational nominal = set_weight(weights, s);
      // Only strictly better candidates need the regret check at all.
      if (!have_best || best_weight < nominal) {
        bool ok = true;
        for (int f = kNoElement; f < sys.size() && ok; ++f) {
          if (f != kNoElement && scope == InterdictionScope::FirstStageOnly &&
              !has_bit(s, f)) {
            continue;
          }
          const Mask base = (f == kNoElement) ? s : (s & ~bit(f));
          const Rational base_weight = set_weight(weights, base);
          Rational best = base_weight;
          const Mask pool = full & ~s & ~((f == kNoElement) ? Mask{0} : bit(f));
          for_each_bit(pool, [&](int e) {
            if (!sys.feasible(base | bit(e))) return;
            const Rational value = base_weight + weights[static_cast<size_t>(e)];
            if (best < value) best = value;
          });
          if (lambda < nominal - best) ok = false;  // regret of f exceeds lambda
        }
        if (ok) {
          have_best = true;
          best_set = s;
          best_weight = nominal;
        }
      }
    }
    if (s == limit) break;
  }
  if (!have_best) return std::nullopt;
  return LambdaSolution{best_weight, best_set};
}

std::vector<Rational> candidate_lambdas(const Weights& weights) {
  std::vector<Rational> out;
  out.push_back(Rational(0));
  for (size_t j = 0; j < weights.size(); ++j) {
    out.push_back(weights[j]);
    out.push_back(-weights[j]);
    for (size_t k = 0; k < weights.size(); ++k) {
      if (j != k) out.push_back(weights[j] - weights[k]);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

LambdaSweepResult solve_rp_via_lambda(const FeasibilitySystem& system,
                                      const Weights& weights, const LambdaSolver& solver,
                                      InterdictionScope scope) {
  check_weights(system, weights);
  LambdaSweepResult result;
  bool have_best = false;
  Rational best_value;
  Mask best_set = 0;
  for (const Rational& lambda : candidate_lambdas(weights)) {
    const std::optional<LambdaSolution> sol = solver(system, weights, lambda);
    result.profile.emplace_back(lambda,
                                sol ? std::optional<Rational>(sol->w_opt) : std::nullopt);
    if (!sol) continue;
    const Rational value = sol->w_opt - lambda;
    if (!have_best || best_value < value) {
      have_best = true;
      best_value = value;
      best_set = sol->first_stage;
      result.lambda_star = lambda;
    }
  }
  if (!have_best) {
    throw std::logic_error("regret sweep found no feasible bound; this cannot happen");
  }
  result.certificate = robust_value(system, weights, best_set, 1, 1, scope);
  if (result.certificate.worst_case_value < best_value) {
    throw std::logic_error("certificate value fell below the sweep bound");
  }
  return result;
}

}  // namespace rrc
