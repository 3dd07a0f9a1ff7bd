#pragma once

#include "rrc/core_game.hpp"
#include "rrc/matroid.hpp"

namespace rrc {

// Recoverable matroid basis under k removals answered by k additions.
// The first stage is always the greedy maximum-weight basis; its guaranteed
// value is computed by the exact game (exponential adversary, budget-guarded).
// Certificate entries replay the iterative one-exchange-per-removal recourse
// policy, which attains the exact value on matroids with nonnegative weights;
// the worst case recorded is the exact one either way.
RobustCertificate solve_kk_rmb(const Matroid& m, const Weights& weights, int k,
                               const BruteForceBudget& budget = {});

}  // namespace rrc
