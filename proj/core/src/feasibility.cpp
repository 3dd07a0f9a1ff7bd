#include "rrc/feasibility.hpp"

#include <algorithm>

#include "rrc/errors.hpp"

namespace rrc {

FeasibilitySystem FeasibilitySystem::from_maximal_sets(int n,
                                                       std::vector<Mask> maximal_sets) {
  if (n < 0 || n > kMaxGroundSet) {
    throw ValidationError("ground set size must be between 0 and 64");
  }
  std::sort(maximal_sets.begin(), maximal_sets.end());
  maximal_sets.erase(std::unique(maximal_sets.begin(), maximal_sets.end()),
                     maximal_sets.end());
  if (maximal_sets.empty()) {
    throw ValidationError("explicit system needs at least one maximal set");
  }
  const Mask full = (n == kMaxGroundSet) ? ~Mask{0} : (bit(n) - 1);
  for (Mask a : maximal_sets) {
    if ((a & ~full) != 0) throw ValidationError("maximal set outside ground set");
    for (Mask b : maximal_sets) {
      if (a != b && (a & b) == a) {
        throw ValidationError("maximal sets must form an antichain");
      }
    }
  }
  FeasibilitySystem sys;
  sys.kind_ = Kind::Explicit;
  sys.n_ = n;
  sys.maximal_sets_ = std::move(maximal_sets);
  return sys;
}

FeasibilitySystem FeasibilitySystem::from_matroid(Matroid m) {
  FeasibilitySystem sys;
  sys.kind_ = Kind::MatroidRank;
  sys.n_ = m.size();
  sys.matroid_ = std::make_shared<const Matroid>(std::move(m));
  return sys;
}

FeasibilitySystem FeasibilitySystem::from_conflicts(int n, std::vector<Mask> conflicts) {
  if (n < 0 || n > kMaxGroundSet) {
    throw ValidationError("ground set size must be between 0 and 64");
  }
  if (static_cast<int>(conflicts.size()) != n) {
    throw ValidationError("conflict table size does not match ground set");
  }
  for (int i = 0; i < n; ++i) {
    if (has_bit(conflicts[static_cast<size_t>(i)], i)) {
      throw ValidationError("conflict table must be irreflexive");
    }
    for_each_bit(conflicts[static_cast<size_t>(i)], [&](int j) {
      if (j >= n || !has_bit(conflicts[static_cast<size_t>(j)], i)) {
        throw ValidationError("conflict table must be symmetric");
      }
    });
  }
  FeasibilitySystem sys;
  sys.kind_ = Kind::PairwiseConflict;
  sys.n_ = n;
  sys.conflicts_ = std::move(conflicts);
  return sys;
}

bool FeasibilitySystem::feasible(Mask s) const {
  if (!table_.empty()) return table_[s] != 0;
  return feasible_uncached(s);
}

bool FeasibilitySystem::feasible_uncached(Mask s) const {
  switch (kind_) {
    case Kind::Explicit:
      for (Mask a : maximal_sets_) {
        if ((s & ~a) == 0) return true;
      }
      return false;
    case Kind::MatroidRank:
      return matroid_->is_independent(s);
    case Kind::PairwiseConflict: {
      bool ok = true;
      for_each_bit(s, [&](int i) {
        if ((conflicts_[static_cast<size_t>(i)] & s) != 0) ok = false;
      });
      return ok;
    }
  }
  return false;
}

void FeasibilitySystem::build_table() {
  if (!table_.empty()) return;
  if (n_ > 24) throw ValidationError("feasibility table limited to 24 elements");
  table_.assign(size_t{1} << n_, 0);
  for (Mask s = 0; s < (Mask{1} << n_); ++s) {
    table_[s] = feasible_uncached(s) ? 1 : 0;
  }
}

}  // namespace rrc
