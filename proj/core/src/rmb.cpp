#include "rrc/rmb.hpp"

#include "rrc/errors.hpp"

namespace rrc {

RobustCertificate solve_kk_rmb(const Matroid& m, const Weights& weights, int k,
                               const BruteForceBudget& budget) {
  if (static_cast<int>(weights.size()) != m.size()) {
    throw ValidationError("weight vector size must match the ground set");
  }
  const Mask basis = greedy_max_basis(m, weights);
  FeasibilitySystem system = FeasibilitySystem::from_matroid(m);
  RobustCertificate cert =
      robust_value(system, weights, basis, k, k, InterdictionScope::AnyElement, budget);
  // Replace each entry's recourse by the one-by-one exchange policy; the
  // entry value is what that policy actually achieves.
  for (InterdictionEntry& entry : cert.per_interdiction) {
    const ExchangeRecoursePath path =
        exchange_recourse(m, weights, basis, entry.interdicted);
    entry.recourse = path.added;
    entry.second_stage = path.final_set;
    entry.value = path.value;
  }
  return cert;
}

}  // namespace rrc
