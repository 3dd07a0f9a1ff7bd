#include "rrc/generate.hpp"

#include <algorithm>
#include <map>

#include "rrc/errors.hpp"

namespace rrc {

std::vector<Job> gen_intervals(int n, long long horizon, long long wmax,
                               std::uint64_t seed) {
  if (n < 0 || n > kMaxGroundSet) throw ValidationError("job count out of range");
  if (horizon < 1 || wmax < 1) throw ValidationError("horizon and wmax must be positive");
  SplitMix64 rng(seed);
  std::vector<Job> jobs;
  jobs.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    Job job;
    job.start = static_cast<long long>(rng.below(static_cast<std::uint64_t>(horizon)));
    const long long max_len = horizon - job.start;
    job.finish = job.start + 1 +
                 static_cast<long long>(rng.below(static_cast<std::uint64_t>(max_len)));
    job.weight = Rational(1 + static_cast<long long>(rng.below(static_cast<std::uint64_t>(wmax))));
    jobs.push_back(job);
  }
  return jobs;
}

BipartiteSample gen_bipartite_graph(int n, double p, std::uint64_t seed) {
  if (n < 0 || n > kMaxGroundSet) throw ValidationError("vertex count out of range");
  if (p < 0.0 || p > 1.0) throw ValidationError("edge probability must lie in [0, 1]");
  SplitMix64 rng(seed);
  std::vector<int> side(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) side[static_cast<size_t>(v)] = rng.chance(0.5) ? 1 : 0;
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (side[static_cast<size_t>(u)] == side[static_cast<size_t>(v)]) continue;
      if (rng.chance(p)) edges.emplace_back(u, v);
    }
  }
  return BipartiteSample{Graph::simple(n, std::move(edges)), std::move(side)};
}

Matroid gen_partition_matroid(int n, int max_blocks, std::uint64_t seed) {
  if (n < 1 || n > kMaxGroundSet) throw ValidationError("element count out of range");
  if (max_blocks < 1) throw ValidationError("need at least one block");
  SplitMix64 rng(seed);
  const int n_buckets = rng.range_int(1, std::min(max_blocks, n));
  std::map<int, std::vector<int>> buckets;
  for (int e = 0; e < n; ++e) {
    buckets[rng.range_int(0, n_buckets - 1)].push_back(e);
  }
  std::vector<std::vector<int>> blocks;
  std::vector<int> caps;
  for (auto& [id, members] : buckets) {
    caps.push_back(rng.range_int(1, static_cast<int>(members.size())));
    blocks.push_back(std::move(members));
  }
  return Matroid::partition(n, std::move(blocks), std::move(caps));
}

std::vector<Mask> gen_explicit_family(int n, std::uint64_t seed) {
  if (n < 1 || n > 20) throw ValidationError("element count out of range");
  SplitMix64 rng(seed);
  const int draws = rng.range_int(1, std::max(2, n));
  std::vector<Mask> picked;
  for (int d = 0; d < draws; ++d) {
    picked.push_back(rng.next() & (bit(n) - 1));
  }
  // Keep the maximal draws, then close downward.
  std::vector<Mask> maximal;
  for (Mask a : picked) {
    bool dominated = false;
    for (Mask b : picked) {
      if (a != b && (a & b) == a) dominated = true;
    }
    if (!dominated) maximal.push_back(a);
  }
  std::sort(maximal.begin(), maximal.end());
  maximal.erase(std::unique(maximal.begin(), maximal.end()), maximal.end());
  std::vector<Mask> family;
  for (Mask top : maximal) {
    // enumerate all subsets of top
    Mask sub = top;
    while (true) {
      family.push_back(sub);
      if (sub == 0) break;
      sub = (sub - 1) & top;
    }
  }
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  return family;
}

CnfFormula gen_cnf3(int n_vars, int n_clauses, std::uint64_t seed) {
  if (n_vars < 3) throw ValidationError("three distinct variables need n_vars >= 3");
  if (n_clauses < 1) throw ValidationError("need at least one clause");
  SplitMix64 rng(seed);
  std::vector<std::array<int, 3>> clauses;
  clauses.reserve(static_cast<size_t>(n_clauses));
  for (int j = 0; j < n_clauses; ++j) {
    int vars[3];
    vars[0] = rng.range_int(1, n_vars);
    do {
      vars[1] = rng.range_int(1, n_vars);
    } while (vars[1] == vars[0]);
    do {
      vars[2] = rng.range_int(1, n_vars);
    } while (vars[2] == vars[0] || vars[2] == vars[1]);
    std::array<int, 3> clause;
    for (int t = 0; t < 3; ++t) {
      clause[static_cast<size_t>(t)] = rng.chance(0.5) ? vars[t] : -vars[t];
    }
    clauses.push_back(clause);
  }
  return CnfFormula::make(n_vars, std::move(clauses));
}

Weights gen_weights(int n, long long lo, long long hi, std::uint64_t seed) {
  if (n < 0) throw ValidationError("element count out of range");
  if (lo > hi) throw ValidationError("empty weight range");
  SplitMix64 rng(seed);
  Weights w;
  w.reserve(static_cast<size_t>(n));
  for (int e = 0; e < n; ++e) {
    w.push_back(Rational(lo + static_cast<long long>(
                                  rng.below(static_cast<std::uint64_t>(hi - lo + 1)))));
  }
  return w;
}

}  // namespace rrc
