#include "rrc/graph.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>

#include "rrc/errors.hpp"

namespace rrc {

Graph Graph::simple(int n_vertices, std::vector<std::pair<int, int>> edges) {
  if (n_vertices < 0 || n_vertices > kMaxGroundSet) {
    throw ValidationError("vertex count must be between 0 and 64");
  }
  std::set<std::pair<int, int>> seen;
  for (auto& [u, v] : edges) {
    if (u < 0 || u >= n_vertices || v < 0 || v >= n_vertices) {
      throw ValidationError("edge endpoint out of range");
    }
    if (u == v) throw ValidationError("self-loops are not allowed");
    if (u > v) std::swap(u, v);
    if (!seen.insert({u, v}).second) throw ValidationError("duplicate edge");
  }
  Graph g;
  g.n_vertices = n_vertices;
  g.edges = std::move(edges);
  return g;
}

std::vector<Mask> Graph::adjacency() const {
  std::vector<Mask> adj(static_cast<size_t>(n_vertices), 0);
  for (const auto& [u, v] : edges) {
    adj[static_cast<size_t>(u)] |= bit(v);
    adj[static_cast<size_t>(v)] |= bit(u);
  }
  return adj;
}

int Graph::degree(int v) const {
  int d = 0;
  for (const auto& [a, b] : edges) {
    if (a == v || b == v) ++d;
  }
  return d;
}

std::optional<std::vector<int>> bipartition(const Graph& g) {
  const auto adj = g.adjacency();
  std::vector<int> color(static_cast<size_t>(g.n_vertices), -1);
  for (int root = 0; root < g.n_vertices; ++root) {
    if (color[static_cast<size_t>(root)] != -1) continue;
    color[static_cast<size_t>(root)] = 0;
    std::deque<int> queue{root};
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      bool odd_cycle = false;
      for_each_bit(adj[static_cast<size_t>(v)], [&](int u) {
        if (color[static_cast<size_t>(u)] == -1) {
          color[static_cast<size_t>(u)] = 1 - color[static_cast<size_t>(v)];
          queue.push_back(u);
        } else if (color[static_cast<size_t>(u)] == color[static_cast<size_t>(v)]) {
          odd_cycle = true;
        }
      });
      if (odd_cycle) return std::nullopt;
    }
  }
  return color;
}

FeasibilitySystem stable_set_system(const Graph& g) {
  std::vector<Mask> conflicts(static_cast<size_t>(g.n_vertices), 0);
  for (const auto& [u, v] : g.edges) {
    conflicts[static_cast<size_t>(u)] |= bit(v);
    conflicts[static_cast<size_t>(v)] |= bit(u);
  }
  return FeasibilitySystem::from_conflicts(g.n_vertices, std::move(conflicts));
}

FeasibilitySystem matching_system(const Graph& g) {
  const int m = static_cast<int>(g.edges.size());
  if (m > kMaxGroundSet) throw ValidationError("edge count must be at most 64");
  std::vector<Mask> conflicts(static_cast<size_t>(m), 0);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const auto& [a, b] = g.edges[static_cast<size_t>(i)];
      const auto& [c, d] = g.edges[static_cast<size_t>(j)];
      if (a == c || a == d || b == c || b == d) {
        conflicts[static_cast<size_t>(i)] |= bit(j);
        conflicts[static_cast<size_t>(j)] |= bit(i);
      }
    }
  }
  return FeasibilitySystem::from_conflicts(m, std::move(conflicts));
}

namespace {

bool kuhn_augment(int v, const std::vector<std::vector<int>>& adj_list,
                  std::vector<int>& match_of, std::vector<char>& visited) {
  for (int u : adj_list[static_cast<size_t>(v)]) {
    if (visited[static_cast<size_t>(u)]) continue;
    visited[static_cast<size_t>(u)] = 1;
    if (match_of[static_cast<size_t>(u)] == kNoElement ||
        kuhn_augment(match_of[static_cast<size_t>(u)], adj_list, match_of, visited)) {
      match_of[static_cast<size_t>(u)] = v;
      match_of[static_cast<size_t>(v)] = u;
      return true;
    }
  }
  return false;
}

}  // namespace

MatchingResult max_matching(const Graph& g) {
  const auto parts = bipartition(g);
  if (!parts) throw ValidationError("maximum matching requires a bipartite graph");
  std::vector<std::vector<int>> adj_list(static_cast<size_t>(g.n_vertices));
  for (const auto& [u, v] : g.edges) {
    adj_list[static_cast<size_t>(u)].push_back(v);
    adj_list[static_cast<size_t>(v)].push_back(u);
  }
  for (auto& nb : adj_list) std::sort(nb.begin(), nb.end());

  MatchingResult result;
  result.side = *parts;
  result.match_of.assign(static_cast<size_t>(g.n_vertices), kNoElement);
  for (int v = 0; v < g.n_vertices; ++v) {
    if (result.side[static_cast<size_t>(v)] != 0) continue;
    if (result.match_of[static_cast<size_t>(v)] != kNoElement) continue;
    std::vector<char> visited(static_cast<size_t>(g.n_vertices), 0);
    if (kuhn_augment(v, adj_list, result.match_of, visited)) ++result.size;
  }
  return result;
}

namespace {

// Vertices reachable from unmatched left vertices by paths alternating
// non-matching (left to right) and matching (right to left) edges.
Mask alternating_reachable(const Graph& g, const MatchingResult& matching) {
  const auto adj = g.adjacency();
  Mask z = 0;
  std::deque<int> queue;
  for (int v = 0; v < g.n_vertices; ++v) {
    if (matching.side[static_cast<size_t>(v)] == 0 &&
        matching.match_of[static_cast<size_t>(v)] == kNoElement) {
      z |= bit(v);
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    if (matching.side[static_cast<size_t>(v)] == 0) {
      for_each_bit(adj[static_cast<size_t>(v)], [&](int u) {
        if (matching.match_of[static_cast<size_t>(v)] == u) return;
        if (!has_bit(z, u)) {
          z |= bit(u);
          queue.push_back(u);
        }
      });
    } else {
      const int u = matching.match_of[static_cast<size_t>(v)];
      if (u != kNoElement && !has_bit(z, u)) {
        z |= bit(u);
        queue.push_back(u);
      }
    }
  }
  return z;
}

}  // namespace

Mask max_stable_set_bipartite(const Graph& g) {
  const MatchingResult matching = max_matching(g);
  const Mask z = alternating_reachable(g, matching);
  Mask stable = 0;
  for (int v = 0; v < g.n_vertices; ++v) {
    const bool left = matching.side[static_cast<size_t>(v)] == 0;
    if ((left && has_bit(z, v)) || (!left && !has_bit(z, v))) stable |= bit(v);
  }
  return stable;
}

Mask min_vertex_cover_bipartite(const Graph& g) {
  const Mask full = (g.n_vertices == kMaxGroundSet) ? ~Mask{0} : (bit(g.n_vertices) - 1);
  return full & ~max_stable_set_bipartite(g);
}

std::optional<Mask> repairable_stable_set(const Graph& g) {
  if (!bipartition(g)) {
    if (!is_koenig_egervary(g)) {
      throw ValidationError(
          "repairable stable sets need matching and cover numbers to agree");
    }
  }
  const auto adj = g.adjacency();
  // Forced edges: each degree-one vertex commits the edge to its unique
  // neighbor.  They must tile all vertices exactly once.
  std::vector<int> partner(static_cast<size_t>(g.n_vertices), kNoElement);
  std::vector<char> forced_end(static_cast<size_t>(g.n_vertices), 0);
  for (int v = 0; v < g.n_vertices; ++v) {
    if (popcount(adj[static_cast<size_t>(v)]) != 1) continue;
    const int u = lowest_bit(adj[static_cast<size_t>(v)]);
    forced_end[static_cast<size_t>(v)] = 1;
    if (partner[static_cast<size_t>(v)] == kNoElement &&
        partner[static_cast<size_t>(u)] == kNoElement) {
      partner[static_cast<size_t>(v)] = u;
      partner[static_cast<size_t>(u)] = v;
    } else if (partner[static_cast<size_t>(v)] != u) {
      return std::nullopt;  // two forced edges collide at a vertex
    }
  }
  for (int v = 0; v < g.n_vertices; ++v) {
    if (partner[static_cast<size_t>(v)] == kNoElement) return std::nullopt;
  }
  Mask s = 0;
  for (int v = 0; v < g.n_vertices; ++v) {
    const int u = partner[static_cast<size_t>(v)];
    if (v >= u) continue;  // visit each forced edge once, from its low end
    if (forced_end[static_cast<size_t>(v)]) {
      s |= bit(v);
    } else {
      s |= bit(u);
    }
  }
  return s;
}

RbssSolution solve_unweighted_rbss(const Graph& g) {
  if (!bipartition(g)) {
    throw ValidationError("the unweighted robust stable-set solver needs a bipartite graph");
  }
  RbssSolution solution;
  const Weights unit(static_cast<size_t>(g.n_vertices), Rational(1));
  const FeasibilitySystem system = stable_set_system(g);
  const std::optional<Mask> repairable = repairable_stable_set(g);
  if (repairable) {
    solution.repairable = true;
    solution.first_stage = *repairable;
  } else {
    solution.repairable = false;
    solution.first_stage = max_stable_set_bipartite(g);
  }
  solution.certificate = robust_value(system, unit, solution.first_stage, 1, 1,
                                      InterdictionScope::AnyElement);
  return solution;
}

namespace {

// Branching on the smallest vertex that still has a neighbor: leave it
// unmatched, or match it to each neighbor in turn.  Memoized on the set of
// remaining vertices.
int matching_branch(Mask alive, const std::vector<Mask>& adj,
                    std::unordered_map<Mask, int>& memo) {
  int v = kNoElement;
  Mask nb = 0;
  Mask rest = alive;
  while (rest) {
    const int cand = lowest_bit(rest);
    rest &= rest - 1;
    const Mask cand_nb = adj[static_cast<size_t>(cand)] & alive;
    if (cand_nb != 0) {
      v = cand;
      nb = cand_nb;
      break;
    }
  }
  if (v == kNoElement) return 0;
  if (const auto it = memo.find(alive); it != memo.end()) return it->second;
  int best = matching_branch(alive & ~bit(v), adj, memo);
  for_each_bit(nb, [&](int u) {
    best = std::max(best, 1 + matching_branch(alive & ~bit(v) & ~bit(u), adj, memo));
  });
  memo.emplace(alive, best);
  return best;
}

void cover_branch(Mask removed, const std::vector<Mask>& adj, int used, int& best) {
  if (used >= best) return;
  // First edge not yet covered; it needs one of its endpoints removed.
  for (size_t v = 0; v < adj.size(); ++v) {
    if (has_bit(removed, static_cast<int>(v))) continue;
    const Mask nb = adj[v] & ~removed;
    if (nb == 0) continue;
    cover_branch(removed | bit(static_cast<int>(v)), adj, used + 1, best);
    cover_branch(removed | bit(lowest_bit(nb)), adj, used + 1, best);
    return;
  }
  best = used;
}

}  // namespace

int max_matching_size_exact(const Graph& g, int max_vertices) {
  if (g.n_vertices > max_vertices) {
    throw BudgetExceeded("graph too large for the exact matching search");
  }
  if (bipartition(g)) return max_matching(g).size;
  const Mask full = (g.n_vertices == kMaxGroundSet) ? ~Mask{0} : (bit(g.n_vertices) - 1);
  std::unordered_map<Mask, int> memo;
  return matching_branch(full, g.adjacency(), memo);
}

int min_vertex_cover_size_exact(const Graph& g, int max_vertices) {
  if (g.n_vertices > max_vertices) {
    throw BudgetExceeded("graph too large for the exact cover search");
  }
  int best = g.n_vertices;
  cover_branch(0, g.adjacency(), 0, best);
  return best;
}

bool is_koenig_egervary(const Graph& g, int max_vertices) {
  if (bipartition(g)) return true;
  return max_matching_size_exact(g, max_vertices) ==
         min_vertex_cover_size_exact(g, max_vertices);
}

namespace {

struct RepairableMatchingSearch {
  const Graph& g;
  const std::vector<Mask> vertex_of_edge;  // endpoint mask per edge
  int target = 0;
  long long nodes_left = 0;
  bool bipartite = false;
  std::vector<int> side;

  std::vector<int> chosen;
  Mask chosen_mask = 0;
  Mask covered = 0;

  // Can every chosen edge still be replaced if it fails?  Optimistic: any
  // other edge disjoint from the rest of the current matching counts, so a
  // "no" can only become more certain as the matching grows.
  bool partially_repairable() const {
    for (int f : chosen) {
      const Mask others = covered & ~vertex_of_edge[static_cast<size_t>(f)];
      bool found = false;
      for (size_t e = 0; e < vertex_of_edge.size(); ++e) {
        if (static_cast<int>(e) != f && (vertex_of_edge[e] & others) == 0) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
    return true;
  }

  bool fully_repairable() const {
    for (int f : chosen) {
      const Mask others = covered & ~vertex_of_edge[static_cast<size_t>(f)];
      bool found = false;
      for (size_t e = 0; e < vertex_of_edge.size(); ++e) {
        if (!has_bit(chosen_mask, static_cast<int>(e)) &&
            (vertex_of_edge[e] & others) == 0) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
    return true;
  }

  // Largest matching reachable from the current state using edges >= from.
  int extendable_bound(size_t from) const {
    if (!bipartite) {
      // Count edges still mountable; crude but sound.
      int count = 0;
      for (size_t e = from; e < vertex_of_edge.size(); ++e) {
        if ((vertex_of_edge[e] & covered) == 0) ++count;
      }
      return static_cast<int>(chosen.size()) + count;
    }
    std::vector<std::vector<int>> adj_list(static_cast<size_t>(g.n_vertices));
    for (size_t e = from; e < g.edges.size(); ++e) {
      if ((vertex_of_edge[e] & covered) != 0) continue;
      adj_list[static_cast<size_t>(g.edges[e].first)].push_back(g.edges[e].second);
      adj_list[static_cast<size_t>(g.edges[e].second)].push_back(g.edges[e].first);
    }
    std::vector<int> match_of(static_cast<size_t>(g.n_vertices), kNoElement);
    int size = 0;
    for (int v = 0; v < g.n_vertices; ++v) {
      if (side[static_cast<size_t>(v)] != 0 || has_bit(covered, v)) continue;
      if (match_of[static_cast<size_t>(v)] != kNoElement) continue;
      std::vector<char> visited(static_cast<size_t>(g.n_vertices), 0);
      if (kuhn_augment(v, adj_list, match_of, visited)) ++size;
    }
    return static_cast<int>(chosen.size()) + size;
  }

  std::optional<Mask> search(size_t from) {
    if (--nodes_left < 0) {
      throw BudgetExceeded("repairable-matching search exceeded its node budget");
    }
    if (static_cast<int>(chosen.size()) == target) {
      if (fully_repairable()) return chosen_mask;
      return std::nullopt;
    }
    if (from >= g.edges.size()) return std::nullopt;
    if (extendable_bound(from) < target) return std::nullopt;
    if (!partially_repairable()) return std::nullopt;

    const Mask ends = vertex_of_edge[from];
    if ((ends & covered) == 0) {
      chosen.push_back(static_cast<int>(from));
      chosen_mask |= bit(static_cast<int>(from));
      covered |= ends;
      if (auto hit = search(from + 1)) return hit;
      covered &= ~ends;
      chosen_mask &= ~bit(static_cast<int>(from));
      chosen.pop_back();
    }
    return search(from + 1);
  }
};

}  // namespace

std::optional<Mask> brute_force_repairable_matching(const Graph& g, int max_edges,
                                                    long long max_nodes) {
  if (static_cast<int>(g.edges.size()) > max_edges) {
    throw BudgetExceeded("graph exceeds the repairable-matching search cap");
  }
  std::vector<Mask> vertex_of_edge;
  vertex_of_edge.reserve(g.edges.size());
  for (const auto& [u, v] : g.edges) vertex_of_edge.push_back(bit(u) | bit(v));

  const auto parts = bipartition(g);
  RepairableMatchingSearch search{
      .g = g,
      .vertex_of_edge = std::move(vertex_of_edge),
      .target = 0,
      .nodes_left = max_nodes,
      .bipartite = parts.has_value(),
      .side = parts ? *parts : std::vector<int>(),
      .chosen = {},
      .chosen_mask = 0,
      .covered = 0,
  };
  search.target = parts ? max_matching(g).size : max_matching_size_exact(g);
  if (search.target == 0) {
    // The empty matching is trivially repairable (nothing can fail).
    return Mask{0};
  }
  return search.search(0);
}

std::optional<Mask> brute_force_repairable_stable_set(const Graph& g, int max_vertices) {
  if (g.n_vertices > max_vertices) {
    throw BudgetExceeded("graph exceeds the repairable-stable-set search cap");
  }
  const auto adj = g.adjacency();
  const Mask limit = (g.n_vertices == kMaxGroundSet) ? ~Mask{0} : (bit(g.n_vertices) - 1);
  const auto stable = [&](Mask s) {
    bool ok = true;
    for_each_bit(s, [&](int v) {
      if ((adj[static_cast<size_t>(v)] & s) != 0) ok = false;
    });
    return ok;
  };
  int alpha = 0;
  for (Mask s = 0;; ++s) {
    if (stable(s)) alpha = std::max(alpha, popcount(s));
    if (s == limit) break;
  }
  for (Mask s = 0;; ++s) {
    if (popcount(s) == alpha && stable(s)) {
      bool repairable = true;
      for_each_bit(s, [&](int v) {
        if (!repairable) return;
        bool found = false;
        for (int u = 0; u < g.n_vertices && !found; ++u) {
          if (has_bit(s, u) || u == v) continue;
          if (stable((s & ~bit(v)) | bit(u))) found = true;
        }
        if (!found) repairable = false;
      });
      if (repairable) return s;
    }
    if (s == limit) break;
  }
  return std::nullopt;
}

}  // namespace rrc
