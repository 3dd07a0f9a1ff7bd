#include "rrc/selftest.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "rrc/cnf.hpp"
#include "rrc/core_game.hpp"
#include "rrc/errors.hpp"
#include "rrc/feasibility.hpp"
#include "rrc/generate.hpp"
#include "rrc/graph.hpp"
#include "rrc/instance_io.hpp"
#include "rrc/interval.hpp"
#include "rrc/matroid.hpp"
#include "rrc/reductions.hpp"
#include "rrc/rmb.hpp"
#include "rrc/types.hpp"

namespace rrc {

int battery_threads(int requested) {
  long long t = requested;
  if (t <= 0) {
    if (const char* env = std::getenv("THREADS"); env != nullptr && *env != '\0') {
      t = std::strtoll(env, nullptr, 10);
    }
  }
  if (t <= 0) t = static_cast<long long>(std::thread::hardware_concurrency());
  if (t < 1) t = 1;
  if (t > 16) t = 16;
  return static_cast<int>(t);
}

namespace {

// ---------------------------------------------------------------------------
// Harness: deterministic parallel case runner + per-criterion timing.

void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
  if (n <= 0) return;
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  const auto drain = [&] {
    for (;;) {
      const int i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers - 1));
  for (int t = 1; t < workers; ++t) pool.emplace_back(drain);
  drain();
  for (std::thread& th : pool) th.join();
}

// Runs `one(i)` over all indices; the reported error is always the one with
// the smallest index, so the outcome is independent of thread scheduling.
std::string run_cases(int n, int workers,
                      const std::function<std::optional<std::string>(int)>& one) {
  std::vector<std::optional<std::string>> errors(static_cast<size_t>(n));
  parallel_for(n, workers, [&](int i) {
    try {
      errors[static_cast<size_t>(i)] = one(i);
    } catch (const std::exception& e) {
      errors[static_cast<size_t>(i)] = std::string("unexpected exception: ") + e.what();
    }
  });
  for (int i = 0; i < n; ++i) {
    if (errors[static_cast<size_t>(i)]) {
      return "case " + std::to_string(i) + ": " + *errors[static_cast<size_t>(i)];
    }
  }
  return std::string();
}

template <typename Body>
CriterionResult run_criterion(int index, std::string name, double limit_seconds,
                              Body&& body) {
  CriterionResult r;
  r.index = index;
  r.name = std::move(name);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("unexpected exception: ") + e.what();
  }
  const auto t1 = std::chrono::steady_clock::now();
  r.seconds = std::chrono::duration<double>(t1 - t0).count();
  if (r.passed && limit_seconds > 0.0 && r.seconds > limit_seconds) {
    std::ostringstream os;
    os << r.detail << " [took " << r.seconds << " s, budget " << limit_seconds << " s]";
    r.detail = os.str();
    r.passed = false;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Formatting helpers for counterexample dumps.

std::string fmt_mask(Mask m) {
  std::string out = "{";
  bool first = true;
  for_each_bit(m, [&](int i) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  });
  return out + "}";
}

std::string fmt_masks(const std::vector<Mask>& v) {
  std::string out = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ",";
    out += fmt_mask(v[i]);
  }
  return out + "]";
}

std::string fmt_weights(const Weights& w) {
  std::string out = "[";
  for (size_t i = 0; i < w.size(); ++i) {
    if (i > 0) out += ",";
    out += w[i].to_string();
  }
  return out + "]";
}

std::string fmt_edges(const std::vector<std::pair<int, int>>& edges) {
  std::string out = "[";
  for (size_t i = 0; i < edges.size(); ++i) {
    if (i > 0) out += ",";
    out += "(" + std::to_string(edges[i].first) + "," + std::to_string(edges[i].second) + ")";
  }
  return out + "]";
}

std::string fmt_jobs(const std::vector<Job>& jobs) {
  std::string out = "[";
  for (size_t i = 0; i < jobs.size(); ++i) {
    if (i > 0) out += ",";
    out += "(" + std::to_string(jobs[i].start) + "," + std::to_string(jobs[i].finish) +
           ",w" + jobs[i].weight.to_string() + ")";
  }
  return out + "]";
}

std::string fmt_cnf(const CnfFormula& f) {
  std::string out = "vars=" + std::to_string(f.n_vars) + " clauses=[";
  for (size_t j = 0; j < f.clauses.size(); ++j) {
    if (j > 0) out += ",";
    out += "[" + std::to_string(f.clauses[j][0]) + "," + std::to_string(f.clauses[j][1]) +
           "," + std::to_string(f.clauses[j][2]) + "]";
  }
  return out + "]";
}

// ---------------------------------------------------------------------------
// Small graph utilities used by several criteria.

bool graph_connected(const Graph& g) {
  if (g.n_vertices <= 1) return true;
  const std::vector<Mask> adj = g.adjacency();
  Mask seen = bit(0);
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    Mask fresh = adj[static_cast<size_t>(v)] & ~seen;
    seen |= fresh;
    for_each_bit(fresh, [&](int u) { stack.push_back(u); });
  }
  return popcount(seen) == g.n_vertices;
}

bool stable_in(const Graph& g, Mask s) {
  for (const auto& [u, v] : g.edges) {
    if (has_bit(s, u) && has_bit(s, v)) return false;
  }
  return true;
}

// Every member of s can fail and be replaced by an outside vertex keeping a
// stable set of the same size.
std::optional<std::string> check_repairable_stable(const Graph& g, Mask s, int alpha) {
  if (popcount(s) != alpha) {
    return "claimed set " + fmt_mask(s) + " has size " + std::to_string(popcount(s)) +
           ", maximum stable size is " + std::to_string(alpha);
  }
  if (!stable_in(g, s)) return "claimed set " + fmt_mask(s) + " is not stable";
  bool bad = false;
  int bad_v = -1;
  for_each_bit(s, [&](int v) {
    if (bad) return;
    bool repaired = false;
    for (int u = 0; u < g.n_vertices && !repaired; ++u) {
      if (u == v || has_bit(s, u)) continue;
      if (stable_in(g, (s & ~bit(v)) | bit(u))) repaired = true;
    }
    if (!repaired) {
      bad = true;
      bad_v = v;
    }
  });
  if (bad) {
    return "vertex " + std::to_string(bad_v) + " of " + fmt_mask(s) + " cannot be replaced";
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Criterion 1: the walkthrough instance, end to end, with pinned values.

const std::vector<Job>& walkthrough_jobs() {
  static const std::vector<Job> jobs = {{1, 3, Rational(10)},
                                        {2, 5, Rational(8)},
                                        {4, 7, Rational(2)},
                                        {6, 9, Rational(8)},
                                        {8, 10, Rational(10)}};
  return jobs;
}

void criterion_walkthrough(CriterionResult& r) {
  const std::vector<Job>& jobs = walkthrough_jobs();
  Weights w;
  for (const Job& job : jobs) w.push_back(job.weight);
  const FeasibilitySystem sys = interval_system(jobs);

  const WeightedSelection nominal = solve_is_dp(jobs);
  if (!(nominal.value == Rational(22)) || nominal.selected != indices_to_mask({0, 2, 4})) {
    r.passed = false;
    r.detail = "nominal schedule: got value " + nominal.value.to_string() + " at " +
               fmt_mask(nominal.selected) + ", expected 22 at {0,2,4}";
    return;
  }

  const RisResult ris = solve_ris(jobs);
  if (!(ris.certificate.worst_case_value == Rational(18)) ||
      !(ris.lambda_star == Rational(2)) ||
      ris.certificate.first_stage != indices_to_mask({0, 4})) {
    r.passed = false;
    r.detail = "robust schedule: got value " + ris.certificate.worst_case_value.to_string() +
               " at " + fmt_mask(ris.certificate.first_stage) + " (bound " +
               ris.lambda_star.to_string() + "), expected 18 at {0,4} with bound 2";
    return;
  }

  const RobustCertificate eval =
      robust_value(sys, w, indices_to_mask({0, 2, 4}), 1, 1);
  if (!(eval.worst_case_value == Rational(12))) {
    r.passed = false;
    r.detail = "evaluating {0,2,4}: got " + eval.worst_case_value.to_string() + ", expected 12";
    return;
  }

  const std::vector<std::pair<long long, std::optional<long long>>> spots = {
      {2, 20}, {10, 22}, {0, 16}, {-1, 8}};
  for (const auto& [lam, expect] : spots) {
    const Rational lambda(lam);
    const std::optional<LambdaRisSolution> mine = solve_lambda_ris(jobs, lambda);
    const std::optional<LambdaSolution> ref = brute_force_lambda_rp(sys, w, lambda);
    const bool mine_has = mine.has_value();
    if (mine_has != ref.has_value() || mine_has != expect.has_value() ||
        (mine_has && (!(mine->w_opt == Rational(*expect)) || !(ref->w_opt == mine->w_opt)))) {
      r.passed = false;
      r.detail = "bound " + lambda.to_string() + ": solver " +
                 (mine ? mine->w_opt.to_string() : std::string("infeasible")) + ", oracle " +
                 (ref ? ref->w_opt.to_string() : std::string("infeasible")) + ", expected " +
                 (expect ? std::to_string(*expect) : std::string("infeasible"));
      return;
    }
  }

  r.passed = true;
  r.detail = "nominal 22 at {0,2,4}; robust 18 at {0,4} with bound 2; eval({0,2,4}) = 12";
}

// ---------------------------------------------------------------------------
// Criteria 2 and 3 share a battery of small matroids.

struct MatroidCase {
  Matroid m;
  std::string label;
};

bool edge_mask_is_canonical(int nv, const std::vector<std::pair<int, int>>& pairs,
                            std::uint32_t em) {
  std::vector<std::vector<int>> pair_index(static_cast<size_t>(nv),
                                           std::vector<int>(static_cast<size_t>(nv), -1));
  for (size_t p = 0; p < pairs.size(); ++p) {
    pair_index[static_cast<size_t>(pairs[p].first)][static_cast<size_t>(pairs[p].second)] =
        static_cast<int>(p);
    pair_index[static_cast<size_t>(pairs[p].second)][static_cast<size_t>(pairs[p].first)] =
        static_cast<int>(p);
  }
  std::vector<int> perm(static_cast<size_t>(nv));
  for (int i = 0; i < nv; ++i) perm[static_cast<size_t>(i)] = i;
  do {
    std::uint32_t mapped = 0;
    for (size_t p = 0; p < pairs.size(); ++p) {
      if ((em >> p) & 1u) {
        const int u = perm[static_cast<size_t>(pairs[p].first)];
        const int v = perm[static_cast<size_t>(pairs[p].second)];
        mapped |= 1u << pair_index[static_cast<size_t>(u)][static_cast<size_t>(v)];
      }
    }
    if (mapped < em) return false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return true;
}

std::vector<MatroidCase> matroid_battery() {
  std::vector<MatroidCase> out;
  for (int n = 1; n <= 7; ++n) {
    for (int rank = 0; rank <= n; ++rank) {
      out.push_back({Matroid::uniform(n, rank),
                     "uniform(n=" + std::to_string(n) + ",rank=" + std::to_string(rank) + ")"});
    }
  }
  for (int nv = 2; nv <= 5; ++nv) {
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < nv; ++u) {
      for (int v = u + 1; v < nv; ++v) pairs.emplace_back(u, v);
    }
    for (std::uint32_t em = 0; em < (1u << pairs.size()); ++em) {
      std::vector<std::pair<int, int>> edges;
      for (size_t p = 0; p < pairs.size(); ++p) {
        if ((em >> p) & 1u) edges.push_back(pairs[p]);
      }
      if (edges.empty()) continue;
      const Graph g = Graph::simple(nv, edges);
      if (!graph_connected(g)) continue;
      if (!edge_mask_is_canonical(nv, pairs, em)) continue;
      out.push_back({Matroid::graphic(nv, edges),
                     "graphic(nv=" + std::to_string(nv) + ",edges=" + fmt_edges(edges) + ")"});
    }
  }
  for (int i = 0; i < 20; ++i) {
    const std::uint64_t seed = 900 + static_cast<std::uint64_t>(i);
    const int n = 2 + (i % 7);
    Matroid m = gen_partition_matroid(n, 4, seed);
    std::string label = "partition(seed=" + std::to_string(seed) + ",blocks=[";
    const auto& blocks = m.partition_blocks();
    const auto& caps = m.partition_caps();
    for (size_t b = 0; b < blocks.size(); ++b) {
      if (b > 0) label += ",";
      label += "[";
      for (size_t j = 0; j < blocks[b].size(); ++j) {
        if (j > 0) label += ",";
        label += std::to_string(blocks[b][j]);
      }
      label += "]cap" + std::to_string(caps[b]);
    }
    label += "])";
    out.push_back({std::move(m), std::move(label)});
  }
  return out;
}

Weights battery_weights(size_t matroid_index, int vector_index, int n) {
  return gen_weights(n, 0, 9,
                     7001 + 97 * static_cast<std::uint64_t>(matroid_index) +
                         static_cast<std::uint64_t>(vector_index));
}

void criterion_matroid_battery(CriterionResult& r, const std::vector<MatroidCase>& battery,
                               int workers) {
  const std::string err = run_cases(
      static_cast<int>(battery.size()), workers, [&](int i) -> std::optional<std::string> {
        const Matroid& m = battery[static_cast<size_t>(i)].m;
        const FeasibilitySystem sys = FeasibilitySystem::from_matroid(m);
        for (int j = 0; j < 5; ++j) {
          const Weights w = battery_weights(static_cast<size_t>(i), j, m.size());
          for (int k = 1; k <= 2; ++k) {
            const RobustCertificate mine = solve_kk_rmb(m, w, k);
            const RobustCertificate ref = brute_force_rp(sys, w, k, k);
            if (!(mine.worst_case_value == ref.worst_case_value)) {
              return battery[static_cast<size_t>(i)].label + " w=" + fmt_weights(w) +
                     " k=l=" + std::to_string(k) + ": greedy guarantees " +
                     mine.worst_case_value.to_string() + " but the optimum is " +
                     ref.worst_case_value.to_string() + " at " + fmt_mask(ref.first_stage);
            }
          }
        }
        return std::nullopt;
      });
  r.passed = err.empty();
  r.detail = err.empty() ? std::to_string(battery.size()) +
                               " matroids x 5 weight vectors x k=l in {1,2}: " +
                               std::to_string(battery.size() * 10) + " games agree"
                         : err;
}

void criterion_exchange(CriterionResult& r, const std::vector<MatroidCase>& battery,
                        int workers) {
  std::atomic<long long> answers{0};
  const std::string err = run_cases(
      static_cast<int>(battery.size()), workers, [&](int i) -> std::optional<std::string> {
        const Matroid& m = battery[static_cast<size_t>(i)].m;
        const int n = m.size();
        for (int j = 0; j < 5; ++j) {
          const Weights w = battery_weights(static_cast<size_t>(i), j, n);
          const Mask basis = greedy_max_basis(m, w);
          for (const int f : mask_to_indices(basis)) {
            const int g = best_exchange(m, w, basis, f);
            Mask after = basis & ~bit(f);
            if (g != kNoElement) after |= bit(g);
            if (!m.is_independent(after)) {
              return battery[static_cast<size_t>(i)].label + " w=" + fmt_weights(w) +
                     " drop " + std::to_string(f) + ": exchange produced dependent set " +
                     fmt_mask(after);
            }
            int best_size = -1;
            Rational best_w;
            for (Mask t = 0; t < bit(n); ++t) {
              if (has_bit(t, f) || !m.is_independent(t)) continue;
              const int sz = popcount(t);
              const Rational tw = set_weight(w, t);
              if (sz > best_size) {
                best_size = sz;
                best_w = tw;
              } else if (sz == best_size && best_w < tw) {
                best_w = tw;
              }
            }
            if (popcount(after) != best_size || !(set_weight(w, after) == best_w)) {
              return battery[static_cast<size_t>(i)].label + " w=" + fmt_weights(w) +
                     " drop " + std::to_string(f) + ": exchange keeps " +
                     set_weight(w, after).to_string() + " with " + fmt_mask(after) +
                     ", best deletion-minor basis has " + best_w.to_string();
            }
            answers.fetch_add(1, std::memory_order_relaxed);
          }
        }
        return std::nullopt;
      });
  r.passed = err.empty();
  r.detail = err.empty()
                 ? std::to_string(answers.load()) + " single-deletion answers optimal across " +
                       std::to_string(battery.size()) + " matroids x 5 weight vectors"
                 : err;
}

// ---------------------------------------------------------------------------
// Criterion 4: every hereditary non-matroid on <= 4 elements (up to
// relabeling) admits weights under which each nominal optimum is strictly
// beaten by the robust optimum.

Mask permute_mask(Mask m, const std::vector<int>& perm) {
  Mask out = 0;
  for_each_bit(m, [&](int i) { out |= bit(perm[static_cast<size_t>(i)]); });
  return out;
}

struct FamilyCase {
  int n = 0;
  std::vector<Mask> maximal;
};

std::vector<FamilyCase> non_matroid_families() {
  std::vector<FamilyCase> out;
  for (int n = 1; n <= 4; ++n) {
    const int subsets = 1 << n;
    std::vector<std::vector<int>> perms;
    std::vector<int> perm(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i;
    do {
      perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));

    for (std::uint32_t fam = 1; fam < (1u << subsets); ++fam) {
      std::vector<Mask> maximal;
      for (int b = 0; b < subsets; ++b) {
        if ((fam >> b) & 1u) maximal.push_back(static_cast<Mask>(b));
      }
      bool antichain = true;
      for (size_t a = 0; a < maximal.size() && antichain; ++a) {
        for (size_t b = 0; b < maximal.size() && antichain; ++b) {
          if (a != b && (maximal[a] & maximal[b]) == maximal[a]) antichain = false;
        }
      }
      if (!antichain) continue;
      std::uint32_t canon = fam;
      for (const std::vector<int>& p : perms) {
        std::uint32_t mapped = 0;
        for (const Mask mx : maximal) mapped |= 1u << permute_mask(mx, p);
        canon = std::min(canon, mapped);
      }
      if (canon != fam) continue;
      std::vector<Mask> family;
      for (Mask s = 0; s < static_cast<Mask>(subsets); ++s) {
        for (const Mask mx : maximal) {
          if ((s & mx) == s) {
            family.push_back(s);
            break;
          }
        }
      }
      if (is_matroid_family(n, family)) continue;
      out.push_back({n, std::move(maximal)});
    }
  }
  return out;
}

void criterion_non_matroid_gap(CriterionResult& r, int workers) {
  const std::vector<FamilyCase> families = non_matroid_families();
  const std::string err = run_cases(
      static_cast<int>(families.size()), workers, [&](int i) -> std::optional<std::string> {
        const FamilyCase& fc = families[static_cast<size_t>(i)];
        std::vector<Mask> family;
        for (Mask s = 0; s < bit(fc.n); ++s) {
          for (const Mask mx : fc.maximal) {
            if ((s & mx) == s) {
              family.push_back(s);
              break;
            }
          }
        }
        const std::optional<NonMatroidWitness> witness =
            find_non_matroid_witness(fc.n, family);
        if (!witness) {
          return "family " + fmt_masks(fc.maximal) + " on " + std::to_string(fc.n) +
                 " elements: no exchange-failure witness found";
        }
        const Weights w = adversarial_weights(*witness, fc.n);
        const FeasibilitySystem sys = FeasibilitySystem::from_maximal_sets(fc.n, fc.maximal);
        const RobustCertificate best =
            brute_force_rp(sys, w, 1, 1, InterdictionScope::FirstStageOnly);
        Rational nominal_max;
        bool any = false;
        for (Mask s = 0; s < bit(fc.n); ++s) {
          if (!sys.feasible(s)) continue;
          const Rational v = set_weight(w, s);
          if (!any || nominal_max < v) {
            nominal_max = v;
            any = true;
          }
        }
        for (Mask s = 0; s < bit(fc.n); ++s) {
          if (!sys.feasible(s) || !(set_weight(w, s) == nominal_max)) continue;
          const RobustCertificate rv =
              robust_value(sys, w, s, 1, 1, InterdictionScope::FirstStageOnly);
          if (!(rv.worst_case_value < best.worst_case_value)) {
            return "family " + fmt_masks(fc.maximal) + " weights " + fmt_weights(w) +
                   " witness(x=" + fmt_mask(witness->x) + ",y=" + fmt_mask(witness->y) +
                   ",a=" + std::to_string(witness->a) + ",b=" + std::to_string(witness->b) +
                   ",c=" + std::to_string(witness->c) + "): nominal optimum " + fmt_mask(s) +
                   " guarantees " + rv.worst_case_value.to_string() +
                   ", not strictly below the robust optimum " +
                   best.worst_case_value.to_string() + " at " + fmt_mask(best.first_stage);
          }
        }
        return std::nullopt;
      });
  r.passed = err.empty();
  r.detail = err.empty() ? std::to_string(families.size()) +
                               " hereditary non-matroid systems (<=4 elements, up to "
                               "relabeling): every nominal optimum strictly beaten"
                         : err;
}

// ---------------------------------------------------------------------------
// Criterion 5: the degree-one structural test matches exhaustive
// repairability on connected bipartite graphs, and the solver value matches
// the game optimum.

std::optional<std::string> check_rbss_graph(const Graph& g) {
  const std::optional<Mask> pendant = repairable_stable_set(g);
  const std::optional<Mask> brute = brute_force_repairable_stable_set(g);
  const std::string head =
      "graph(nv=" + std::to_string(g.n_vertices) + ",edges=" + fmt_edges(g.edges) + "): ";
  if (pendant.has_value() != brute.has_value()) {
    return head + "structural test says " + (pendant ? "repairable" : "not repairable") +
           ", exhaustive search says " + (brute ? "repairable" : "not repairable");
  }
  const int alpha = popcount(max_stable_set_bipartite(g));
  if (pendant) {
    if (std::optional<std::string> bad = check_repairable_stable(g, *pendant, alpha)) {
      return head + *bad;
    }
  }
  const RbssSolution sol = solve_unweighted_rbss(g);
  const Weights unit(static_cast<size_t>(g.n_vertices), Rational(1));
  const FeasibilitySystem sys = stable_set_system(g);
  const RobustCertificate ref = brute_force_rp(sys, unit, 1, 1);
  if (!(sol.certificate.worst_case_value == ref.worst_case_value)) {
    return head + "solver guarantees " + sol.certificate.worst_case_value.to_string() +
           ", game optimum is " + ref.worst_case_value.to_string();
  }
  const RobustCertificate recheck = robust_value(sys, unit, sol.first_stage, 1, 1);
  if (!(recheck.worst_case_value == sol.certificate.worst_case_value)) {
    return head + "solver first stage " + fmt_mask(sol.first_stage) + " actually guarantees " +
           recheck.worst_case_value.to_string() + ", not " +
           sol.certificate.worst_case_value.to_string();
  }
  const Rational expect(pendant ? alpha : alpha - 1);
  if (!(sol.certificate.worst_case_value == expect)) {
    return head + "value " + sol.certificate.worst_case_value.to_string() +
           " does not match the repairability rule (" + expect.to_string() + ")";
  }
  return std::nullopt;
}

void criterion_pendant(CriterionResult& r, int workers) {
  std::vector<Graph> graphs;
  int exhaustive = 0;
  for (int nv = 1; nv <= 6; ++nv) {
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < nv; ++u) {
      for (int v = u + 1; v < nv; ++v) pairs.emplace_back(u, v);
    }
    for (std::uint32_t em = 0; em < (1u << pairs.size()); ++em) {
      std::vector<std::pair<int, int>> edges;
      for (size_t p = 0; p < pairs.size(); ++p) {
        if ((em >> p) & 1u) edges.push_back(pairs[p]);
      }
      const Graph g = Graph::simple(nv, edges);
      if (!graph_connected(g) || !bipartition(g)) continue;
      graphs.push_back(g);
      ++exhaustive;
    }
  }
  int sampled = 0;
  for (const int nv : {7, 8}) {
    int got = 0;
    std::uint64_t seed = nv == 7 ? 5001 : 6001;
    const std::uint64_t stop = seed + 200000;
    for (; got < 300 && seed < stop; ++seed) {
      const double p = (seed % 3 == 0) ? 0.25 : (seed % 3 == 1 ? 0.4 : 0.6);
      BipartiteSample sample = gen_bipartite_graph(nv, p, seed);
      if (!graph_connected(sample.graph)) continue;
      graphs.push_back(std::move(sample.graph));
      ++got;
      ++sampled;
    }
    if (got < 300) {
      r.passed = false;
      r.detail = "could not sample 300 connected bipartite graphs on " + std::to_string(nv) +
                 " vertices";
      return;
    }
  }
  const std::string err =
      run_cases(static_cast<int>(graphs.size()), workers, [&](int i) {
        return check_rbss_graph(graphs[static_cast<size_t>(i)]);
      });
  r.passed = err.empty();
  r.detail = err.empty() ? std::to_string(exhaustive) +
                               " connected bipartite graphs (<=6 vertices, exhaustive) + " +
                               std::to_string(sampled) + " sampled (7-8 vertices) agree"
                         : err;
}

// ---------------------------------------------------------------------------
// Criterion 6: satisfiability <=> the matching reduction has a fully
// repairable maximum matching.

void criterion_matching_reduction(CriterionResult& r, int workers) {
  std::vector<CnfFormula> formulas;
  for (int i = 0; i < 100; ++i) {
    const int nv = 3 + (i % 4);
    const int m = 1 + (i % 8);
    formulas.push_back(gen_cnf3(nv, m, 1300 + static_cast<std::uint64_t>(i)));
  }
  {
    // The complete formula on three variables: every sign pattern present,
    // hence unsatisfiable, and minimal with that property.
    std::vector<std::array<int, 3>> clauses;
    for (int s = 0; s < 8; ++s) {
      clauses.push_back({(s & 1) ? 1 : -1, (s & 2) ? 2 : -2, (s & 4) ? 3 : -3});
    }
    formulas.push_back(CnfFormula::make(3, std::move(clauses)));
  }
  std::atomic<int> sat_count{0};
  const std::string err = run_cases(
      static_cast<int>(formulas.size()), workers, [&](int i) -> std::optional<std::string> {
        const CnfFormula& f = formulas[static_cast<size_t>(i)];
        const bool sat = satisfiable_exhaustive(f).has_value();
        if (sat) sat_count.fetch_add(1, std::memory_order_relaxed);
        const ReductionOutput red = reduce_3sat_to_rbm(f);
        const int n = f.n_vars;
        const int m = static_cast<int>(f.clauses.size());
        if (red.graph.n_vertices != 3 * n + 2 * m ||
            static_cast<int>(red.graph.edges.size()) != 2 * n + 4 * m ||
            red.matching_target != m + n) {
          return fmt_cnf(f) + ": reduction shape wrong (nv=" +
                 std::to_string(red.graph.n_vertices) + ", edges=" +
                 std::to_string(red.graph.edges.size()) + ", target=" +
                 std::to_string(red.matching_target) + ")";
        }
        if (max_matching(red.graph).size != red.matching_target) {
          return fmt_cnf(f) + ": maximum matching size " +
                 std::to_string(max_matching(red.graph).size) + " != target " +
                 std::to_string(red.matching_target);
        }
        std::optional<Mask> rep;
        try {
          rep = brute_force_repairable_matching(red.graph, 44, 400'000'000);
        } catch (const BudgetExceeded& e) {
          return fmt_cnf(f) + ": search budget exhausted (" + e.what() + ")";
        }
        const bool decision = rep.has_value() && popcount(*rep) == red.matching_target;
        if (decision != sat) {
          return fmt_cnf(f) + ": formula is " + (sat ? "satisfiable" : "unsatisfiable") +
                 " but the reduction says " + (decision ? "yes" : "no");
        }
        if (rep) {
          Mask covered = 0;
          for (const int e : mask_to_indices(*rep)) {
            const auto& [u, v] = red.graph.edges[static_cast<size_t>(e)];
            if (has_bit(covered, u) || has_bit(covered, v)) {
              return fmt_cnf(f) + ": returned edge set is not a matching";
            }
            covered |= bit(u) | bit(v);
          }
        }
        return std::nullopt;
      });
  r.passed = err.empty();
  r.detail = err.empty() ? std::to_string(formulas.size()) + " formulas (" +
                               std::to_string(sat_count.load()) +
                               " satisfiable): reduction decision matches satisfiability"
                         : err;
}

// ---------------------------------------------------------------------------
// Criterion 7: satisfiability <=> the weighted stable-set reduction clears
// its threshold.

void criterion_stable_reduction(CriterionResult& r, int workers) {
  std::vector<CnfFormula> formulas;
  for (int i = 0; i < 50; ++i) {
    const int nv = 3 + (i % 2);
    const int m = 1 + (i % 5);
    formulas.push_back(gen_cnf3(nv, m, 1400 + static_cast<std::uint64_t>(i)));
  }
  std::atomic<int> sat_count{0};
  const std::string err = run_cases(
      static_cast<int>(formulas.size()), workers, [&](int i) -> std::optional<std::string> {
        const CnfFormula& f = formulas[static_cast<size_t>(i)];
        const bool sat = satisfiable_exhaustive(f).has_value();
        if (sat) sat_count.fetch_add(1, std::memory_order_relaxed);
        const ReductionOutput red = reduce_3sat_to_rwss(f);
        const int n = f.n_vars;
        const int m = static_cast<int>(f.clauses.size());
        if (red.graph.n_vertices != 5 * n + 4 * m || !red.has_threshold) {
          return fmt_cnf(f) + ": reduction shape wrong (nv=" +
                 std::to_string(red.graph.n_vertices) + ")";
        }
        if (!bipartition(red.graph)) {
          return fmt_cnf(f) + ": reduction graph is not bipartite";
        }
        bool decision = false;
        try {
          decision = robust_stable_set_at_least(red.graph, red.vertex_weights, red.threshold);
        } catch (const BudgetExceeded& e) {
          return fmt_cnf(f) + ": search budget exhausted (" + e.what() + ")";
        }
        if (decision != sat) {
          return fmt_cnf(f) + ": formula is " + (sat ? "satisfiable" : "unsatisfiable") +
                 " but the threshold test says " + (decision ? "yes" : "no") + " (threshold " +
                 red.threshold.to_string() + ")";
        }
        return std::nullopt;
      });
  r.passed = err.empty();
  r.detail = err.empty() ? std::to_string(formulas.size()) + " formulas (" +
                               std::to_string(sat_count.load()) +
                               " satisfiable): threshold decision matches satisfiability"
                         : err;
}

// ---------------------------------------------------------------------------
// Criteria 8 and 9: the interval pipeline against exhaustive oracles, plus
// monotonicity of the relaxation sweep.

using SweepProfile = std::vector<std::pair<Rational, std::optional<Rational>>>;

void criterion_interval_pipeline(CriterionResult& r, int workers,
                                 std::vector<SweepProfile>& sweeps) {
  const int instances = 300;
  sweeps.assign(instances, {});
  std::atomic<long long> lambda_evals{0};
  std::atomic<long long> colored_instances{0};
  std::atomic<long long> enumerated{0};
  const std::string err =
      run_cases(instances, workers, [&](int i) -> std::optional<std::string> {
        const std::uint64_t seed = 1500 + static_cast<std::uint64_t>(i);
        const int n = 1 + (i % 9);
        const std::vector<Job> jobs = gen_intervals(n, 20, 20, seed);
        Weights w;
        for (const Job& job : jobs) w.push_back(job.weight);
        const FeasibilitySystem sys = interval_system(jobs);
        const std::string head = "seed " + std::to_string(seed) + " jobs " + fmt_jobs(jobs);

        const RisResult mine = solve_ris(jobs);
        const RobustCertificate ref = brute_force_rp(sys, w, 1, 1);
        if (!(mine.certificate.worst_case_value == ref.worst_case_value)) {
          return head + ": pipeline value " + mine.certificate.worst_case_value.to_string() +
                 " vs exhaustive " + ref.worst_case_value.to_string();
        }

        for (const Rational& lam : candidate_lambdas(w)) {
          const std::optional<LambdaRisSolution> mine_l = solve_lambda_ris(jobs, lam);
          const std::optional<LambdaSolution> ref_l = brute_force_lambda_rp(sys, w, lam);
          lambda_evals.fetch_add(1, std::memory_order_relaxed);
          if (mine_l.has_value() != ref_l.has_value()) {
            return head + " bound " + lam.to_string() + ": solver says " +
                   (mine_l ? "feasible" : "infeasible") + ", oracle says " +
                   (ref_l ? "feasible" : "infeasible");
          }
          if (mine_l && !(mine_l->w_opt == ref_l->w_opt)) {
            return head + " bound " + lam.to_string() + ": solver weight " +
                   mine_l->w_opt.to_string() + " vs oracle " + ref_l->w_opt.to_string();
          }
          sweeps[static_cast<size_t>(i)].emplace_back(
              lam, mine_l ? std::optional<Rational>(mine_l->w_opt) : std::nullopt);

          for (const std::pair<int, int>& pair : lambda_ris_backup_pairs(jobs, lam)) {
            const std::vector<ColoredJob> sel =
                lambda_ris_selectables(jobs, pair.first, pair.second, lam);
            const ColoredSelection dp = solve_isc_dp(sel);
            const ColoredSelection chain = isc_chain_reference(sel);
            colored_instances.fetch_add(1, std::memory_order_relaxed);
            if (!(dp.value == chain.value)) {
              return head + " bound " + lam.to_string() + " backups (" +
                     std::to_string(pair.first) + "," + std::to_string(pair.second) +
                     "): sweep value " + dp.value.to_string() + " vs chain oracle " +
                     chain.value.to_string();
            }
            if (sel.size() <= 18) {
              const ColoredSelection bf = brute_force_isc(sel, 18);
              enumerated.fetch_add(1, std::memory_order_relaxed);
              if (!(dp.value == bf.value)) {
                return head + " bound " + lam.to_string() + " backups (" +
                       std::to_string(pair.first) + "," + std::to_string(pair.second) +
                       "): sweep value " + dp.value.to_string() + " vs enumeration " +
                       bf.value.to_string();
              }
            }
          }
        }
        return std::nullopt;
      });
  r.passed = err.empty();
  if (err.empty()) {
    std::ostringstream os;
    os << instances << " instances, " << lambda_evals.load() << " bound evaluations, "
       << colored_instances.load() << " colored instances checked ("
       << enumerated.load() << " also enumerated)";
    r.detail = os.str();
  } else {
    r.detail = err;
  }
}

void criterion_sweep_monotone(CriterionResult& r, const std::vector<SweepProfile>& sweeps) {
  long long points = 0;
  for (size_t i = 0; i < sweeps.size(); ++i) {
    bool seen = false;
    Rational prev;
    for (const auto& [lam, value] : sweeps[i]) {
      ++points;
      if (!value) {
        if (seen) {
          r.passed = false;
          r.detail = "profile " + std::to_string(i) + ": feasibility lost at bound " +
                     lam.to_string() + " after being feasible at a smaller bound";
          return;
        }
        continue;
      }
      if (seen && *value < prev) {
        r.passed = false;
        r.detail = "profile " + std::to_string(i) + ": weight dropped to " +
                   value->to_string() + " at bound " + lam.to_string() + " from " +
                   prev.to_string();
        return;
      }
      prev = *value;
      seen = true;
    }
  }
  r.passed = true;
  r.detail = std::to_string(sweeps.size()) + " sweep profiles (" + std::to_string(points) +
             " points) nondecreasing";
}

// ---------------------------------------------------------------------------
// Criterion 10: identical CLI invocations produce identical bytes.

std::optional<std::string> capture_command(const std::string& cmd, int& exit_code,
                                           std::string& out) {
  out.clear();
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return "popen failed for: " + cmd;
  char buf[4096];
  size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int status = ::pclose(pipe);
  exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  return std::nullopt;
}

bool write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  out << bytes;
  return static_cast<bool>(out);
}

void criterion_cli_determinism(CriterionResult& r, const std::string& cli_path) {
  if (cli_path.empty()) {
    r.passed = false;
    r.detail = "no CLI binary path provided";
    return;
  }
  std::error_code ec;
  if (!std::filesystem::exists(cli_path, ec)) {
    r.passed = false;
    r.detail = "CLI binary not found at " + cli_path;
    return;
  }
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() /
      ("rrc-selftest-" + std::to_string(static_cast<long long>(::getpid())));
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    r.passed = false;
    r.detail = "cannot create temp directory " + dir.string();
    return;
  }

  Instance intervals;
  intervals.type = "intervals";
  intervals.jobs = walkthrough_jobs();

  Instance matroid;
  matroid.type = "matroid";
  matroid.n_elements = 5;
  matroid.matroid = std::make_shared<const Matroid>(Matroid::uniform(5, 2));
  matroid.weights = {Rational(5), Rational(4), Rational(3), Rational(2), Rational(1)};

  Instance explicit_inst;
  explicit_inst.type = "explicit";
  explicit_inst.n_elements = 4;
  explicit_inst.maximal_sets = {indices_to_mask({0, 1}), indices_to_mask({1, 2}),
                                indices_to_mask({2, 3}), indices_to_mask({0, 3})};
  explicit_inst.weights = {Rational(2), Rational(1), Rational(3), Rational(1)};

  Instance graph_inst;
  graph_inst.type = "graph";
  graph_inst.graph = Graph::simple(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});

  const std::filesystem::path intervals_path = dir / "intervals.json";
  const std::filesystem::path matroid_path = dir / "matroid.json";
  const std::filesystem::path explicit_path = dir / "explicit.json";
  const std::filesystem::path graph_path = dir / "graph.json";
  const std::filesystem::path cnf_path = dir / "formula.cnf";
  const bool wrote = write_file(intervals_path, serialize_instance(intervals) + "\n") &&
                     write_file(matroid_path, serialize_instance(matroid) + "\n") &&
                     write_file(explicit_path, serialize_instance(explicit_inst) + "\n") &&
                     write_file(graph_path, serialize_instance(graph_inst) + "\n") &&
                     write_file(cnf_path, "p cnf 3 2\n1 2 -3 0\n-1 2 3 0\n");
  if (!wrote) {
    r.passed = false;
    r.detail = "cannot write temp inputs under " + dir.string();
    std::filesystem::remove_all(dir, ec);
    return;
  }

  const auto q = [](const std::filesystem::path& p) { return "'" + p.string() + "'"; };
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"solve rp", "solve rp --instance " + q(explicit_path) + " --k 1 --l 1"},
      {"solve rmb", "solve rmb --instance " + q(matroid_path) + " --k 2"},
      {"solve rbss", "solve rbss --instance " + q(graph_path)},
      {"solve ris", "solve ris --instance " + q(intervals_path)},
      {"eval", "eval --instance " + q(intervals_path) + " --first-stage 0,2,4"},
      {"reduce sat2rbm", "reduce sat2rbm --cnf " + q(cnf_path)},
      {"reduce sat2rwss", "reduce sat2rwss --cnf " + q(cnf_path)},
      {"gen intervals", "gen intervals --n 7 --seed 5"},
  };

  std::string failure;
  for (const auto& [label, args] : cases) {
    const std::string cmd = "'" + cli_path + "' " + args + " 2>/dev/null";
    std::string first, second;
    int code1 = -1, code2 = -1;
    if (auto e = capture_command(cmd, code1, first)) {
      failure = *e;
      break;
    }
    if (auto e = capture_command(cmd, code2, second)) {
      failure = *e;
      break;
    }
    if (code1 != 0 || code2 != 0) {
      failure = label + ": exit codes " + std::to_string(code1) + "/" + std::to_string(code2);
      break;
    }
    if (first.empty()) {
      failure = label + ": empty output";
      break;
    }
    if (first != second) {
      failure = label + ": two runs differ (" + std::to_string(first.size()) + " vs " +
                std::to_string(second.size()) + " bytes)";
      break;
    }
  }
  std::filesystem::remove_all(dir, ec);
  r.passed = failure.empty();
  r.detail = failure.empty()
                 ? std::to_string(cases.size()) + " commands x 2 runs byte-identical"
                 : failure;
}

}  // namespace

std::vector<CriterionResult> run_acceptance_battery(const std::string& cli_path,
                                                    int threads) {
  const int workers = battery_threads(threads);
  const std::vector<MatroidCase> battery = matroid_battery();
  std::vector<SweepProfile> sweeps;

  std::vector<CriterionResult> out;
  out.push_back(run_criterion(1, "interval walkthrough end to end", 1.0,
                              [&](CriterionResult& r) { criterion_walkthrough(r); }));
  out.push_back(run_criterion(2, "greedy matches brute force on the matroid battery", 300.0,
                              [&](CriterionResult& r) {
                                criterion_matroid_battery(r, battery, workers);
                              }));
  out.push_back(run_criterion(3, "one-deletion exchange recourse is optimal", 60.0,
                              [&](CriterionResult& r) {
                                criterion_exchange(r, battery, workers);
                              }));
  out.push_back(run_criterion(4, "non-matroid systems defeat every nominal optimum", 300.0,
                              [&](CriterionResult& r) { criterion_non_matroid_gap(r, workers); }));
  out.push_back(run_criterion(5, "degree-one rule matches exhaustive repairability", 300.0,
                              [&](CriterionResult& r) { criterion_pendant(r, workers); }));
  out.push_back(run_criterion(6, "matching reduction tracks satisfiability", 600.0,
                              [&](CriterionResult& r) {
                                criterion_matching_reduction(r, workers);
                              }));
  out.push_back(run_criterion(7, "stable-set reduction tracks satisfiability", 600.0,
                              [&](CriterionResult& r) {
                                criterion_stable_reduction(r, workers);
                              }));
  out.push_back(run_criterion(8, "interval pipeline agrees with its oracles", 900.0,
                              [&](CriterionResult& r) {
                                criterion_interval_pipeline(r, workers, sweeps);
                              }));
  out.push_back(run_criterion(9, "relaxation sweep is monotone", 0.0,
                              [&](CriterionResult& r) { criterion_sweep_monotone(r, sweeps); }));
  out.push_back(run_criterion(10, "CLI output is byte-deterministic", 0.0,
                              [&](CriterionResult& r) {
                                criterion_cli_determinism(r, cli_path);
                              }));
  return out;
}

}  // namespace rrc
