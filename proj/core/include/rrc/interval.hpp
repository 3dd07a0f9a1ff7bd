#pragma once

#include <optional>
#include <vector>

#include "rrc/core_game.hpp"
#include "rrc/feasibility.hpp"
#include "rrc/rational.hpp"
#include "rrc/types.hpp"

namespace rrc {

// A job occupying the half-open interval [start, finish).
struct Job {
  long long start = 0;
  long long finish = 0;
  Rational weight;
};

void validate_jobs(const std::vector<Job>& jobs);

// Disjoint job subsets as a downward-closed system over job indices.
FeasibilitySystem interval_system(const std::vector<Job>& jobs);

struct WeightedSelection {
  Rational value;
  Mask selected = 0;
  bool feasible = true;  // selection re-verified against the model
};

// Maximum-weight set of pairwise-disjoint jobs; the classical DP over jobs
// ordered by finish time.  Ties prefer the earlier-computed state (leaving a
// job out), then smaller job ids.
WeightedSelection solve_is_dp(const std::vector<Job>& jobs);

// A two-interval job: a core "red" interval [red_start, red_end) inside an
// "outer" envelope [outer_start, outer_end); the margin around the red part
// is its blue region.  A selection is feasible when no red interval meets
// any other selected job's outer interval.  Backup-only entries carry an
// empty red interval (red_start == red_end) and never enter the DP.
struct ColoredJob {
  long long red_start = 0;
  long long red_end = 0;
  long long outer_start = 0;
  long long outer_end = 0;
  Rational weight;
  Rational lambda_value;
  enum class Origin { UniversalPath, PrivatePair, BackupOnly } origin = Origin::UniversalPath;
  int source_job = kNoElement;  // original job this entry selects (or backs up)
  int backup_job = kNoElement;  // designated replacement; kNoElement = none / universal
};

void validate_colored_jobs(const std::vector<ColoredJob>& jobs);

// Selection over colored entries.  A colored instance built from n jobs can
// hold up to n + n(n-1) entries, which outgrows the 64-bit masks used for
// ordinary ground sets, so entries are listed by index instead.
struct ColoredSelection {
  Rational value;
  std::vector<int> selected;  // entry indices, strictly ascending
  bool feasible = true;       // selection re-verified against the model
};

bool isc_feasible(const std::vector<ColoredJob>& jobs, const std::vector<int>& selection);

// Which lookup the two-coordinate sweep uses when appending a job.
//   TwoBound   — prior red ends bounded by the job's outer start, prior outer
//                ends by its red start (exact; the default).
//   AltLookup  — the transposed single-grid variant: prior red ends bounded
//                by the job's red start, prior outer ends by its outer start.
//                Disagrees with the exhaustive oracle on some instances and
//                exists for comparison runs; its result carries a feasibility
//                flag instead of a guarantee.
enum class IscDpMode { TwoBound, AltLookup };

// Maximum-weight ISC-feasible selection by a two-coordinate grid sweep.
// Inputs must all have non-empty red intervals.  In TwoBound mode the
// returned selection is re-verified and .feasible is always true.
ColoredSelection solve_isc_dp(const std::vector<ColoredJob>& jobs,
                              IscDpMode mode = IscDpMode::TwoBound);

// Exact maximum over all subsets passing isc_feasible (job count capped).
ColoredSelection brute_force_isc(const std::vector<ColoredJob>& jobs,
                                 int max_jobs = 20,
                                 long long max_nodes = 200'000'000);

// Independent exact reference: jobs sorted by red end form chains whose
// consecutive-pair constraints imply all pairwise ones, so a quadratic
// longest-chain recursion matches the subset optimum.  Used to cross-check
// the grid DP on instances too large to enumerate.
ColoredSelection isc_chain_reference(const std::vector<ColoredJob>& jobs);

// The per-(u, bk) colored instance: universal-path entries for every other
// job (replacement value w_j - w(u)), private-pair entries for ordered pairs
// (replacement value w_j - w_k), zero-weight backup-only entries for u and
// bk; entries with replacement value above lambda are dropped.
std::vector<ColoredJob> build_isc_instance(const std::vector<Job>& jobs, int u, int bk,
                                           const Rational& lambda);

// The DP-ready part of a backup pair's colored instance: build_isc_instance
// minus the backup-only entries and minus any entry whose red interval
// invades a backup's span (those cannot coexist with the force-included
// backups).  Exactly what solve_lambda_ris feeds the grid sweep, exposed so
// oracles can check the sweep on the same inputs.
std::vector<ColoredJob> lambda_ris_selectables(const std::vector<Job>& jobs, int u,
                                               int bk, const Rational& lambda);

// Backup pairs admitted at this bound: (none, none) and every (u, none) when
// lambda >= 0; otherwise all ordered pairs with w(u) >= w(bk) >= -lambda.
std::vector<std::pair<int, int>> lambda_ris_backup_pairs(const std::vector<Job>& jobs,
                                                         const Rational& lambda);

// Best first stage whose every single-removal regret stays within lambda,
// by sweeping backup pairs (u, bk) and solving the colored instance each
// induces.  Empty optional: lambda < 0 and no pair qualifies.
struct LambdaRisSolution {
  Rational w_opt;
  Mask first_stage = 0;
  int universal_backup = kNoElement;
  int secondary_backup = kNoElement;
  std::vector<int> backup_of;  // per original job: its designated backup
};
std::optional<LambdaRisSolution> solve_lambda_ris(const std::vector<Job>& jobs,
                                                  const Rational& lambda,
                                                  IscDpMode mode = IscDpMode::TwoBound);

// One-removal one-addition optimum for interval scheduling: sweeps the
// candidate regret bounds, maximizing w_opt(lambda) - lambda (ties: smallest
// lambda).  The certificate's worst case is recomputed exactly.
struct RisResult {
  RobustCertificate certificate;
  Rational lambda_star;
  int universal_backup = kNoElement;
  int secondary_backup = kNoElement;
  std::vector<int> backup_of;
  // (lambda, w_opt) for each candidate actually evaluated, in sweep order.
  std::vector<std::pair<Rational, std::optional<Rational>>> profile;
};
RisResult solve_ris(const std::vector<Job>& jobs, IscDpMode mode = IscDpMode::TwoBound);

}  // namespace rrc
