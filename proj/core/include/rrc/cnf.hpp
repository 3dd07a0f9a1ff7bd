#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace rrc {

// A 3-CNF formula.  Literals use the sign convention of DIMACS: +v is the
// positive literal of variable v-1, -v its negation.  Every clause has
// exactly three literals over three distinct variables.
struct CnfFormula {
  int n_vars = 0;
  std::vector<std::array<int, 3>> clauses;

  static CnfFormula make(int n_vars, std::vector<std::array<int, 3>> clauses);

  bool clause_satisfied(size_t clause, std::uint32_t assignment) const;
  bool satisfied_by(std::uint32_t assignment) const;
};

// Exhaustive satisfiability (n_vars <= 20): the smallest satisfying
// assignment as a bit mask (bit v = variable v true), or empty.
std::optional<std::uint32_t> satisfiable_exhaustive(const CnfFormula& f);

}  // namespace rrc
