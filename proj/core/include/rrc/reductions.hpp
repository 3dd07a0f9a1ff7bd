#pragma once

#include <string>
#include <vector>

#include "rrc/cnf.hpp"
#include "rrc/graph.hpp"
#include "rrc/rational.hpp"
#include "rrc/types.hpp"

namespace rrc {

// A formula turned into a graph instance.  Vertex labels name each vertex's
// gadget role ("a1", "na1", "b1", "c2", ...); the weight vector and threshold
// are populated only by the stable-set reduction.
struct ReductionOutput {
  Graph graph;
  std::vector<std::string> vertex_labels;
  Weights vertex_weights;
  Rational threshold;
  bool has_threshold = false;
  int matching_target = 0;  // matching reduction: the size m + n to look for
};

// Formula -> unweighted bipartite graph whose maximum matchings have size
// m + n, with a repairable one existing iff the formula is satisfiable.
// Per variable x_i: vertices a_i ("ai"), its negation ("nai"), and a hub b_i
// joined to both; per clause j: a private z_j matched to c_j, plus an edge
// from c_j to each of its three literal vertices.
ReductionOutput reduce_3sat_to_rbm(const CnfFormula& formula);

// Formula -> weighted bipartite graph and threshold for the one-removal
// one-addition stable-set game.  Heavy weight s on the b_i and c_j vertices,
// light weight r on their private connectors, unit weight on literal
// vertices; threshold (m+n-1)s + r + n with r = 2, s = (2n+3m)r + 2n + 1.
ReductionOutput reduce_3sat_to_rwss(const CnfFormula& formula);

// Exact decision "does some stable first stage guarantee at least this value
// against one removal answered by one addition?" by branch and bound over
// vertices in descending weight order.  Used to verify the stable-set
// reduction; budget-guarded.
bool robust_stable_set_at_least(const Graph& g, const Weights& weights,
                                const Rational& threshold,
                                long long max_nodes = 50'000'000);

}  // namespace rrc
