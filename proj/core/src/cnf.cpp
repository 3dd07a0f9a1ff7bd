#include "rrc/cnf.hpp"

#include <cstdlib>

#include "rrc/errors.hpp"

namespace rrc {

CnfFormula CnfFormula::make(int n_vars, std::vector<std::array<int, 3>> clauses) {
  if (n_vars < 1 || n_vars > 30) {
    throw ValidationError("variable count must be between 1 and 30");
  }
  for (const auto& clause : clauses) {
    for (int lit : clause) {
      if (lit == 0 || std::abs(lit) > n_vars) {
        throw ValidationError("literal out of range");
      }
    }
    if (std::abs(clause[0]) == std::abs(clause[1]) ||
        std::abs(clause[0]) == std::abs(clause[2]) ||
        std::abs(clause[1]) == std::abs(clause[2])) {
      throw ValidationError("clause variables must be pairwise distinct");
    }
  }
  CnfFormula f;
  f.n_vars = n_vars;
  f.clauses = std::move(clauses);
  return f;
}

bool CnfFormula::clause_satisfied(size_t clause, std::uint32_t assignment) const {
  for (int lit : clauses[clause]) {
    const int var = std::abs(lit) - 1;
    const bool value = (assignment >> var) & 1u;
    if ((lit > 0) == value) return true;
  }
  return false;
}

bool CnfFormula::satisfied_by(std::uint32_t assignment) const {
  for (size_t c = 0; c < clauses.size(); ++c) {
    if (!clause_satisfied(c, assignment)) return false;
  }
  return true;
}

std::optional<std::uint32_t> satisfiable_exhaustive(const CnfFormula& f) {
  if (f.n_vars > 20) {
    throw BudgetExceeded("formula too large for exhaustive satisfiability");
  }
  const std::uint32_t limit = 1u << f.n_vars;
  for (std::uint32_t a = 0; a < limit; ++a) {
    if (f.satisfied_by(a)) return a;
  }
  return std::nullopt;
}

}  // namespace rrc
