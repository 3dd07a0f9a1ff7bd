#include "rrc/interval.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "rrc/errors.hpp"

namespace rrc {
namespace {

bool spans_overlap(long long a_start, long long a_end, long long b_start, long long b_end) {
  return a_start < b_end && b_start < a_end;  // both half-open
}

}  // namespace

void validate_jobs(const std::vector<Job>& jobs) {
  if (jobs.size() > static_cast<size_t>(kMaxGroundSet)) {
    throw ValidationError("at most 64 jobs are supported");
  }
  for (const Job& job : jobs) {
    if (job.start >= job.finish) {
      throw ValidationError("job interval must be non-empty (start < finish)");
    }
    if (job.weight.is_negative()) {
      throw ValidationError("job weights must be nonnegative");
    }
  }
}

FeasibilitySystem interval_system(const std::vector<Job>& jobs) {
  validate_jobs(jobs);
  const int n = static_cast<int>(jobs.size());
  std::vector<Mask> conflicts(static_cast<size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (spans_overlap(jobs[static_cast<size_t>(i)].start, jobs[static_cast<size_t>(i)].finish,
                        jobs[static_cast<size_t>(j)].start, jobs[static_cast<size_t>(j)].finish)) {
        conflicts[static_cast<size_t>(i)] |= bit(j);
        conflicts[static_cast<size_t>(j)] |= bit(i);
      }
    }
  }
  return FeasibilitySystem::from_conflicts(n, std::move(conflicts));
}

WeightedSelection solve_is_dp(const std::vector<Job>& jobs) {
  validate_jobs(jobs);
  const int n = static_cast<int>(jobs.size());
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    if (jobs[static_cast<size_t>(i)].finish != jobs[static_cast<size_t>(j)].finish) {
      return jobs[static_cast<size_t>(i)].finish < jobs[static_cast<size_t>(j)].finish;
    }
    return i < j;
  });
  std::vector<long long> finishes;
  finishes.reserve(static_cast<size_t>(n));
  for (int j : order) finishes.push_back(jobs[static_cast<size_t>(j)].finish);

  // dp[i] = best value over the first i jobs in finish order.
  std::vector<Rational> dp(static_cast<size_t>(n) + 1);
  std::vector<char> include(static_cast<size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i) {
    const Job& job = jobs[static_cast<size_t>(order[static_cast<size_t>(i - 1)])];
    // Jobs finishing at or before this one's start are compatible.
    const int pred = static_cast<int>(
        std::upper_bound(finishes.begin(), finishes.begin() + (i - 1), job.start) -
        finishes.begin());
    const Rational take = job.weight + dp[static_cast<size_t>(pred)];
    dp[static_cast<size_t>(i)] = dp[static_cast<size_t>(i - 1)];
    if (dp[static_cast<size_t>(i)] < take) {
      dp[static_cast<size_t>(i)] = take;
      include[static_cast<size_t>(i)] = 1;
    }
  }
  WeightedSelection result;
  result.value = dp[static_cast<size_t>(n)];
  for (int i = n; i > 0;) {
    if (include[static_cast<size_t>(i)]) {
      const Job& job = jobs[static_cast<size_t>(order[static_cast<size_t>(i - 1)])];
      result.selected |= bit(order[static_cast<size_t>(i - 1)]);
      i = static_cast<int>(
          std::upper_bound(finishes.begin(), finishes.begin() + (i - 1), job.start) -
          finishes.begin());
    } else {
      --i;
    }
  }
  return result;
}

void validate_colored_jobs(const std::vector<ColoredJob>& jobs) {
  // An n-job ground set induces at most n + n(n-1) = n^2 colored entries,
  // and the ground set itself is capped at kMaxGroundSet jobs.
  constexpr size_t kMaxColored =
      static_cast<size_t>(kMaxGroundSet) * static_cast<size_t>(kMaxGroundSet);
  if (jobs.size() > kMaxColored) {
    throw ValidationError("at most 4096 colored jobs are supported");
  }
  for (const ColoredJob& job : jobs) {
    if (!(job.outer_start <= job.red_start && job.red_start <= job.red_end &&
          job.red_end <= job.outer_end)) {
      throw ValidationError("red interval must sit inside the outer interval");
    }
    if (job.outer_start >= job.outer_end) {
      throw ValidationError("outer interval must be non-empty");
    }
    if (job.weight.is_negative()) {
      throw ValidationError("colored-job weights must be nonnegative");
    }
  }
}

bool isc_feasible(const std::vector<ColoredJob>& jobs, const std::vector<int>& selection) {
  for (int j : selection) {
    const ColoredJob& a = jobs[static_cast<size_t>(j)];
    if (a.red_start == a.red_end) continue;  // empty red constrains nothing
    for (int k : selection) {
      if (k == j) continue;
      const ColoredJob& b = jobs[static_cast<size_t>(k)];
      if (spans_overlap(a.red_start, a.red_end, b.outer_start, b.outer_end)) {
        return false;
      }
    }
  }
  return true;
}

namespace {

int grid_pred(const std::vector<long long>& grid, long long x) {
  // 1-based index of the largest grid value <= x; 0 = the sentinel state.
  return static_cast<int>(std::upper_bound(grid.begin(), grid.end(), x) - grid.begin());
}

}  // namespace

ColoredSelection solve_isc_dp(const std::vector<ColoredJob>& jobs, IscDpMode mode) {
  validate_colored_jobs(jobs);
  for (const ColoredJob& job : jobs) {
    if (job.red_start == job.red_end) {
      throw ValidationError("jobs with empty red intervals must be excluded by the caller");
    }
  }
  const int n = static_cast<int>(jobs.size());
  ColoredSelection result;
  if (n == 0) return result;

  std::vector<long long> grid_b;
  std::vector<long long> grid_r;
  for (const ColoredJob& job : jobs) {
    grid_b.push_back(job.red_end);
    grid_r.push_back(job.outer_end);
    if (mode == IscDpMode::TwoBound) {
      grid_b.push_back(job.outer_start);
      grid_r.push_back(job.red_start);
    }
  }
  std::sort(grid_b.begin(), grid_b.end());
  grid_b.erase(std::unique(grid_b.begin(), grid_b.end()), grid_b.end());
  std::sort(grid_r.begin(), grid_r.end());
  grid_r.erase(std::unique(grid_r.begin(), grid_r.end()), grid_r.end());
  const int nb = static_cast<int>(grid_b.size());
  const int nr = static_cast<int>(grid_r.size());

  // Per job: the cell it is scored at and the cell its predecessors live in.
  std::map<std::pair<int, int>, std::vector<int>> bucket;
  std::vector<std::pair<int, int>> lookup(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    const ColoredJob& job = jobs[static_cast<size_t>(j)];
    bucket[{grid_pred(grid_b, job.red_end), grid_pred(grid_r, job.outer_end)}].push_back(j);
    if (mode == IscDpMode::TwoBound) {
      // Prior jobs: red ends within the outer start, outer ends within the
      // red start — exactly the pairwise compatibility bounds.
      lookup[static_cast<size_t>(j)] = {grid_pred(grid_b, job.outer_start),
                                        grid_pred(grid_r, job.red_start)};
    } else {
      lookup[static_cast<size_t>(j)] = {grid_pred(grid_b, job.red_start),
                                        grid_pred(grid_r, job.outer_start)};
    }
  }

  // s[ib][ir], row 0 and column 0 as the empty sentinel.
  const auto at = [nr](int ib, int ir) {
    return static_cast<size_t>(ib) * static_cast<size_t>(nr + 1) + static_cast<size_t>(ir);
  };
  std::vector<Rational> s(static_cast<size_t>(nb + 1) * static_cast<size_t>(nr + 1));
  std::vector<signed char> kind(s.size(), -1);  // 0 carry-b, 1 carry-r, 2 job
  std::vector<int> job_choice(s.size(), kNoElement);
  for (int ib = 1; ib <= nb; ++ib) {
    for (int ir = 1; ir <= nr; ++ir) {
      Rational best = s[at(ib - 1, ir)];
      signed char how = 0;
      int via = kNoElement;
      if (best < s[at(ib, ir - 1)]) {
        best = s[at(ib, ir - 1)];
        how = 1;
      }
      if (const auto it = bucket.find({ib, ir}); it != bucket.end()) {
        for (int j : it->second) {
          const auto& [lb, lr] = lookup[static_cast<size_t>(j)];
          const Rational cand = jobs[static_cast<size_t>(j)].weight + s[at(lb, lr)];
          if (best < cand) {
            best = cand;
            how = 2;
            via = j;
          }
        }
      }
      s[at(ib, ir)] = best;
      kind[at(ib, ir)] = how;
      job_choice[at(ib, ir)] = via;
    }
  }

  result.value = s[at(nb, nr)];
  int ib = nb, ir = nr;
  while (ib > 0 && ir > 0) {
    switch (kind[at(ib, ir)]) {
      case 0: --ib; break;
      case 1: --ir; break;
      default: {
        const int j = job_choice[at(ib, ir)];
        result.selected.push_back(j);
        const auto& [lb, lr] = lookup[static_cast<size_t>(j)];
        ib = lb;
        ir = lr;
        break;
      }
    }
  }
  std::sort(result.selected.begin(), result.selected.end());

  result.feasible = isc_feasible(jobs, result.selected);
  Rational check;
  for (int j : result.selected) check += jobs[static_cast<size_t>(j)].weight;
  if (mode == IscDpMode::TwoBound) {
    if (!result.feasible || !(check == result.value)) {
      throw std::logic_error("two-bound sweep produced an unverifiable selection");
    }
  }
  return result;
}

namespace {

struct IscSearch {
  const std::vector<ColoredJob>& jobs;
  long long nodes_left;
  Rational best_value;
  std::vector<int> best_pick;
  std::vector<int> chosen;

  bool compatible(int j) const {
    const ColoredJob& a = jobs[static_cast<size_t>(j)];
    for (int k : chosen) {
      const ColoredJob& b = jobs[static_cast<size_t>(k)];
      if (a.red_start < a.red_end &&
          spans_overlap(a.red_start, a.red_end, b.outer_start, b.outer_end)) {
        return false;
      }
      if (b.red_start < b.red_end &&
          spans_overlap(b.red_start, b.red_end, a.outer_start, a.outer_end)) {
        return false;
      }
    }
    return true;
  }

  void run(size_t idx, const Rational& value) {
    if (--nodes_left < 0) {
      throw BudgetExceeded("subset enumeration exceeded its node budget");
    }
    if (idx == jobs.size()) {
      if (best_value < value) {
        best_value = value;
        best_pick = chosen;
      }
      return;
    }
    if (compatible(static_cast<int>(idx))) {
      chosen.push_back(static_cast<int>(idx));
      run(idx + 1, value + jobs[idx].weight);
      chosen.pop_back();
    }
    run(idx + 1, value);
  }
};

}  // namespace

ColoredSelection brute_force_isc(const std::vector<ColoredJob>& jobs, int max_jobs,
                                 long long max_nodes) {
  validate_colored_jobs(jobs);
  if (static_cast<int>(jobs.size()) > max_jobs) {
    throw BudgetExceeded("instance exceeds the subset-enumeration cap");
  }
  IscSearch search{jobs, max_nodes, Rational(0), {}, {}};
  search.run(0, Rational(0));
  ColoredSelection result;
  result.value = search.best_value;
  result.selected = search.best_pick;
  result.feasible = true;
  return result;
}

ColoredSelection isc_chain_reference(const std::vector<ColoredJob>& jobs) {
  validate_colored_jobs(jobs);
  for (const ColoredJob& job : jobs) {
    if (job.red_start == job.red_end) {
      throw ValidationError("jobs with empty red intervals must be excluded by the caller");
    }
  }
  const int n = static_cast<int>(jobs.size());
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    if (jobs[static_cast<size_t>(i)].red_end != jobs[static_cast<size_t>(j)].red_end) {
      return jobs[static_cast<size_t>(i)].red_end < jobs[static_cast<size_t>(j)].red_end;
    }
    return i < j;
  });
  // best[p] = top chain value ending at order[p]; feasible sets are chains
  // whose consecutive members satisfy the two pairwise bounds, so scanning
  // earlier chain ends suffices for exactness.
  std::vector<Rational> best(static_cast<size_t>(n));
  std::vector<int> parent(static_cast<size_t>(n), kNoElement);
  ColoredSelection result;
  int best_end = kNoElement;
  for (int p = 0; p < n; ++p) {
    const ColoredJob& job = jobs[static_cast<size_t>(order[static_cast<size_t>(p)])];
    best[static_cast<size_t>(p)] = job.weight;
    for (int q = 0; q < p; ++q) {
      const ColoredJob& prev = jobs[static_cast<size_t>(order[static_cast<size_t>(q)])];
      if (prev.red_end <= job.outer_start && prev.outer_end <= job.red_start) {
        const Rational cand = job.weight + best[static_cast<size_t>(q)];
        if (best[static_cast<size_t>(p)] < cand) {
          best[static_cast<size_t>(p)] = cand;
          parent[static_cast<size_t>(p)] = q;
        }
      }
    }
    if (result.value < best[static_cast<size_t>(p)]) {
      result.value = best[static_cast<size_t>(p)];
      best_end = p;
    }
  }
  for (int p = best_end; p != kNoElement; p = parent[static_cast<size_t>(p)]) {
    result.selected.push_back(order[static_cast<size_t>(p)]);
  }
  std::sort(result.selected.begin(), result.selected.end());
  if (!isc_feasible(jobs, result.selected)) {
    throw std::logic_error("chain reference produced an infeasible selection");
  }
  return result;
}

std::vector<ColoredJob> build_isc_instance(const std::vector<Job>& jobs, int u, int bk,
                                           const Rational& lambda) {
  validate_jobs(jobs);
  const int n = static_cast<int>(jobs.size());
  const auto check_index = [n](int x, const char* what) {
    if (x != kNoElement && (x < 0 || x >= n)) {
      throw ValidationError(std::string(what) + " out of range");
    }
  };
  check_index(u, "universal backup");
  check_index(bk, "secondary backup");
  if (bk != kNoElement && u == kNoElement) {
    throw ValidationError("a secondary backup requires a universal backup");
  }
  if (u != kNoElement && bk != kNoElement) {
    if (u == bk) throw ValidationError("backup jobs must be distinct");
    if (jobs[static_cast<size_t>(u)].weight < jobs[static_cast<size_t>(bk)].weight ||
        jobs[static_cast<size_t>(bk)].weight < -lambda) {
      throw ValidationError("backups must satisfy w(u) >= w(bk) >= -lambda");
    }
  }
  const Rational w_u = (u == kNoElement) ? Rational(0) : jobs[static_cast<size_t>(u)].weight;

  std::vector<ColoredJob> out;
  for (int j = 0; j < n; ++j) {
    if (j == u || j == bk) continue;
    const Job& job = jobs[static_cast<size_t>(j)];
    // Universal-path entry: replace j by u (or by nothing) when it fails.
    const Rational lv = job.weight - w_u;
    if (!(lambda < lv)) {
      ColoredJob cj;
      cj.red_start = job.start;
      cj.red_end = job.finish;
      cj.outer_start = job.start;
      cj.outer_end = job.finish;
      cj.weight = job.weight;
      cj.lambda_value = lv;
      cj.origin = ColoredJob::Origin::UniversalPath;
      cj.source_job = j;
      cj.backup_job = u;
      out.push_back(cj);
    }
    // Private-pair entries: replace j by a specific k when it fails; the
    // outer envelope keeps k's span free of other selected jobs.
    for (int k = 0; k < n; ++k) {
      if (k == j || k == u || k == bk) continue;
      const Job& backup = jobs[static_cast<size_t>(k)];
      const Rational pair_lv = job.weight - backup.weight;
      if (lambda < pair_lv) continue;
      ColoredJob cj;
      cj.red_start = job.start;
      cj.red_end = job.finish;
      cj.outer_start = std::min(job.start, backup.start);
      cj.outer_end = std::max(job.finish, backup.finish);
      cj.weight = job.weight;
      cj.lambda_value = pair_lv;
      cj.origin = ColoredJob::Origin::PrivatePair;
      cj.source_job = j;
      cj.backup_job = k;
      out.push_back(cj);
    }
  }
  for (int backup : {u, bk}) {
    if (backup == kNoElement) continue;
    const Job& job = jobs[static_cast<size_t>(backup)];
    ColoredJob cj;
    cj.red_start = job.start;
    cj.red_end = job.start;  // empty red: only the outer span constrains others
    cj.outer_start = job.start;
    cj.outer_end = job.finish;
    cj.weight = Rational(0);
    cj.lambda_value = Rational(0);
    cj.origin = ColoredJob::Origin::BackupOnly;
    cj.source_job = backup;
    cj.backup_job = kNoElement;
    out.push_back(cj);
  }
  return out;
}

std::vector<ColoredJob> lambda_ris_selectables(const std::vector<Job>& jobs, int u, int bk,
                                               const Rational& lambda) {
  const std::vector<ColoredJob> built = build_isc_instance(jobs, u, bk, lambda);
  // Selectable entries whose red part would invade a backup's span cannot
  // coexist with the force-included backup-only entries; drop them now.
  std::vector<ColoredJob> selectable;
  for (const ColoredJob& cj : built) {
    if (cj.origin == ColoredJob::Origin::BackupOnly) continue;
    bool clear = true;
    for (int backup : {u, bk}) {
      if (backup == kNoElement) continue;
      const Job& span = jobs[static_cast<size_t>(backup)];
      if (spans_overlap(cj.red_start, cj.red_end, span.start, span.finish)) clear = false;
    }
    if (clear) selectable.push_back(cj);
  }
  return selectable;
}

std::vector<std::pair<int, int>> lambda_ris_backup_pairs(const std::vector<Job>& jobs,
                                                         const Rational& lambda) {
  const int n = static_cast<int>(jobs.size());
  std::vector<std::pair<int, int>> pairs;
  if (!lambda.is_negative()) {
    pairs.emplace_back(kNoElement, kNoElement);
    for (int u = 0; u < n; ++u) pairs.emplace_back(u, kNoElement);
    return pairs;
  }
  for (int u = 0; u < n; ++u) {
    for (int bk = 0; bk < n; ++bk) {
      if (u == bk) continue;
      if (jobs[static_cast<size_t>(u)].weight < jobs[static_cast<size_t>(bk)].weight) continue;
      if (jobs[static_cast<size_t>(bk)].weight < -lambda) continue;
      pairs.emplace_back(u, bk);
    }
  }
  return pairs;
}

std::optional<LambdaRisSolution> solve_lambda_ris(const std::vector<Job>& jobs,
                                                  const Rational& lambda, IscDpMode mode) {
  validate_jobs(jobs);
  const int n = static_cast<int>(jobs.size());
  const std::vector<std::pair<int, int>> pairs = lambda_ris_backup_pairs(jobs, lambda);
  if (pairs.empty()) return std::nullopt;

  bool have_best = false;
  LambdaRisSolution best;
  for (const std::pair<int, int>& pair : pairs) {
    const std::vector<ColoredJob> selectable =
        lambda_ris_selectables(jobs, pair.first, pair.second, lambda);
    const ColoredSelection dp = solve_isc_dp(selectable, mode);
    if (have_best && !(best.w_opt < dp.value)) continue;
    LambdaRisSolution candidate;
    candidate.w_opt = dp.value;
    candidate.universal_backup = pair.first;
    candidate.secondary_backup = pair.second;
    candidate.backup_of.assign(static_cast<size_t>(n), kNoElement);
    for (int idx : dp.selected) {
      const ColoredJob& cj = selectable[static_cast<size_t>(idx)];
      candidate.first_stage |= bit(cj.source_job);
      candidate.backup_of[static_cast<size_t>(cj.source_job)] = cj.backup_job;
    }
    best = std::move(candidate);
    have_best = true;
  }
  if (!have_best) return std::nullopt;

  if (mode == IscDpMode::TwoBound) {
    // The selection must honor the regret bound for every possible removal;
    // anything else is an internal error, not an input problem.
    const FeasibilitySystem system = interval_system(jobs);
    Weights weights;
    weights.reserve(jobs.size());
    for (const Job& job : jobs) weights.push_back(job.weight);
    if (!(set_weight(weights, best.first_stage) == best.w_opt)) {
      throw std::logic_error("backup-pair sweep value disagrees with its selection");
    }
    for (int f = kNoElement; f < n; ++f) {
      const RegretReport report = regret(system, weights, best.first_stage, f);
      if (lambda < report.delta) {
        throw std::logic_error("backup-pair sweep violated the regret bound");
      }
    }
  }
  return best;
}

RisResult solve_ris(const std::vector<Job>& jobs, IscDpMode mode) {
  validate_jobs(jobs);
  Weights weights;
  weights.reserve(jobs.size());
  for (const Job& job : jobs) weights.push_back(job.weight);
  const Rational nominal_best = solve_is_dp(jobs).value;

  RisResult result;
  bool have_best = false;
  Rational best_value;
  std::optional<LambdaRisSolution> best_solution;
  for (const Rational& lambda : candidate_lambdas(weights)) {
    // w_opt(lambda) never exceeds the nominal optimum, so once the nominal
    // bound cannot beat the incumbent no later lambda can either.
    if (have_best && !(best_value < nominal_best - lambda)) break;
    std::optional<LambdaRisSolution> sol = solve_lambda_ris(jobs, lambda, mode);
    result.profile.emplace_back(lambda,
                                sol ? std::optional<Rational>(sol->w_opt) : std::nullopt);
    if (!sol) continue;
    const Rational value = sol->w_opt - lambda;
    if (!have_best || best_value < value) {
      have_best = true;
      best_value = value;
      best_solution = std::move(sol);
      result.lambda_star = lambda;
    }
  }
  if (!have_best || !best_solution) {
    throw std::logic_error("regret sweep found no feasible bound; this cannot happen");
  }
  result.universal_backup = best_solution->universal_backup;
  result.secondary_backup = best_solution->secondary_backup;
  result.backup_of = best_solution->backup_of;
  result.certificate = robust_value(interval_system(jobs), weights,
                                    best_solution->first_stage, 1, 1,
                                    InterdictionScope::AnyElement);
  if (mode == IscDpMode::TwoBound &&
      !(result.certificate.worst_case_value == best_value)) {
    throw std::logic_error("certificate value disagrees with the sweep optimum");
  }
  return result;
}

}  // namespace rrc
