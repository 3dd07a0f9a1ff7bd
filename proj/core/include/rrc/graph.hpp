#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "rrc/core_game.hpp"
#include "rrc/feasibility.hpp"
#include "rrc/types.hpp"

namespace rrc {

// A simple undirected graph on vertices 0..n-1 (n <= 64 so vertex sets fit
// in a Mask).  Edge order is preserved as given; endpoints are normalized to
// (min, max).
struct Graph {
  int n_vertices = 0;
  std::vector<std::pair<int, int>> edges;

  static Graph simple(int n_vertices, std::vector<std::pair<int, int>> edges);

  std::vector<Mask> adjacency() const;          // neighbor mask per vertex
  int degree(int v) const;
};

// Two-coloring by BFS over components (smallest unvisited vertex first,
// color 0 at the root); empty optional when an odd cycle exists.
std::optional<std::vector<int>> bipartition(const Graph& g);

// Stable sets of g as a downward-closed system over vertices.
FeasibilitySystem stable_set_system(const Graph& g);
// Matchings of g as a downward-closed system over edge indices.
FeasibilitySystem matching_system(const Graph& g);

// Maximum bipartite matching (augmenting paths, deterministic vertex and
// neighbor order).  match_of[v] is the partner of v or kNoElement.
struct MatchingResult {
  int size = 0;
  std::vector<int> match_of;
  std::vector<int> side;  // the 2-coloring used
};
MatchingResult max_matching(const Graph& g);

// Maximum stable set of a bipartite graph from a maximum matching: with
// Z the vertices alternating-reachable from the unmatched left vertices,
// the set is (left ∩ Z) ∪ (right \ Z); its complement is a minimum vertex
// cover of the same size as the matching.
Mask max_stable_set_bipartite(const Graph& g);
Mask min_vertex_cover_bipartite(const Graph& g);

// A maximum stable set every element of which can be replaced after failing,
// if one exists.  The test is structural: the edges forced by degree-one
// vertices must form a perfect matching, and the set takes one degree-one
// endpoint per forced edge (smaller index when both qualify).  Precondition:
// g is bipartite, or matching and cover numbers agree (checked).
std::optional<Mask> repairable_stable_set(const Graph& g);

// One-removal one-addition optimum for unit-weight stable sets: the full
// stable-set size when a repairable set exists, one less otherwise.
struct RbssSolution {
  Mask first_stage = 0;
  bool repairable = false;
  RobustCertificate certificate;
};
RbssSolution solve_unweighted_rbss(const Graph& g);

// Does the maximum-matching size equal the minimum-vertex-cover size?
// Bipartite graphs short-circuit to true; otherwise both numbers are
// computed exactly (vertex count capped).
bool is_koenig_egervary(const Graph& g, int max_vertices = 24);

// Exact matching and cover numbers by branching; exposed for tests and the
// König–Egerváry check.
int max_matching_size_exact(const Graph& g, int max_vertices = 24);
int min_vertex_cover_size_exact(const Graph& g, int max_vertices = 24);

// Exhaustive search for a maximum matching in which every edge can be
// replaced after failing.  Returns the first such matching (edge-index mask)
// in depth-first edge order, or empty when none exists.  Bipartite inputs
// are pruned by matching extendability; the node budget guards the rest.
std::optional<Mask> brute_force_repairable_matching(const Graph& g,
                                                    int max_edges = 20,
                                                    long long max_nodes = 50'000'000);

// Exhaustive search for a repairable maximum stable set (vertex count
// capped); the reference oracle for the structural pendant test.
std::optional<Mask> brute_force_repairable_stable_set(const Graph& g,
                                                      int max_vertices = 20);

}  // namespace rrc
