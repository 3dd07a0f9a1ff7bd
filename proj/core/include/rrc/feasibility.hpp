#pragma once

#include <memory>
#include <vector>

#include "rrc/matroid.hpp"
#include "rrc/types.hpp"

namespace rrc {

// A downward-closed set system over elements 0..n-1, the common currency of
// every solver here.  Three representations cover all instance types:
//   * Explicit   — the antichain of maximal feasible sets.
//   * MatroidRank — an independence oracle.
//   * PairwiseConflict — S is feasible iff no element of S conflicts with
//     another (stable sets, matchings via the line graph, disjoint intervals).
class FeasibilitySystem {
public:
  enum class Kind { Explicit, MatroidRank, PairwiseConflict };

  // maximal_sets must be a non-empty antichain; duplicates are dropped.
  static FeasibilitySystem from_maximal_sets(int n, std::vector<Mask> maximal_sets);
  static FeasibilitySystem from_matroid(Matroid m);
  // conflicts[i] = mask of elements that cannot appear together with i.
  // Must be symmetric and irreflexive.
  static FeasibilitySystem from_conflicts(int n, std::vector<Mask> conflicts);

  Kind kind() const { return kind_; }
  int size() const { return n_; }
  bool feasible(Mask s) const;

  // Precomputes a 2^n lookup table (n <= 24) to accelerate hot loops; the
  // semantics of feasible() do not change.
  void build_table();
  bool has_table() const { return !table_.empty(); }

  const std::vector<Mask>& maximal_sets() const { return maximal_sets_; }
  const std::vector<Mask>& conflicts() const { return conflicts_; }
  const Matroid& matroid() const { return *matroid_; }

private:
  FeasibilitySystem() = default;
  bool feasible_uncached(Mask s) const;

  Kind kind_ = Kind::Explicit;
  int n_ = 0;
  std::vector<Mask> maximal_sets_;
  std::vector<Mask> conflicts_;
  std::shared_ptr<const Matroid> matroid_;
  std::vector<unsigned char> table_;
};

}  // namespace rrc
