#pragma once

#include <cstdint>
#include <vector>

#include "rrc/cnf.hpp"
#include "rrc/graph.hpp"
#include "rrc/interval.hpp"
#include "rrc/matroid.hpp"
#include "rrc/types.hpp"

namespace rrc {

// Deterministic 64-bit generator (splitmix64).  Every generator below is a
// pure function of its parameters and seed, so instance corpora are
// reproducible byte for byte.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform value in [0, bound); bound >= 1.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

  int range_int(int lo, int hi) {  // inclusive ends
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  // True with probability p, via a 53-bit draw (exact same result on any
  // platform with IEEE doubles).
  bool chance(double p) {
    const double draw = static_cast<double>(next() >> 11) * 0x1.0p-53;
    return draw < p;
  }
};

// n jobs with endpoints in [0, horizon] and integer weights in [1, wmax].
std::vector<Job> gen_intervals(int n, long long horizon, long long wmax,
                               std::uint64_t seed);

struct BipartiteSample {
  Graph graph;
  std::vector<int> side;  // side[v] in {0,1}
};
// Random two-sided graph: each vertex gets a side, each cross pair an edge
// with probability p.
BipartiteSample gen_bipartite_graph(int n, double p, std::uint64_t seed);

// Random partition matroid: elements thrown into up to max_blocks buckets,
// each cap drawn from [1, block size].
Matroid gen_partition_matroid(int n, int max_blocks, std::uint64_t seed);

// Random downward-closed family given by a sampled maximal antichain.
std::vector<Mask> gen_explicit_family(int n, std::uint64_t seed);

// Random 3-CNF with exactly three distinct variables per clause.
CnfFormula gen_cnf3(int n_vars, int n_clauses, std::uint64_t seed);

// Integer weights in [lo, hi] per element.
Weights gen_weights(int n, long long lo, long long hi, std::uint64_t seed);

}  // namespace rrc
