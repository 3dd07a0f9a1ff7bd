#include "rrc/reductions.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "rrc/errors.hpp"

namespace rrc {
namespace {

std::string role(const char* prefix, int index) {
  return std::string(prefix) + std::to_string(index + 1);
}

}  // namespace

ReductionOutput reduce_3sat_to_rbm(const CnfFormula& formula) {
  const int n = formula.n_vars;
  const int m = static_cast<int>(formula.clauses.size());
  // Vertex layout: a_i = i, negated a_i = n+i, b_i = 2n+i, c_j = 3n+j,
  // z_j = 3n+m+j.
  const auto pos_vertex = [](int var) { return var; };
  const auto neg_vertex = [n](int var) { return n + var; };
  const auto literal_vertex = [&](int lit) {
    const int var = std::abs(lit) - 1;
    return lit > 0 ? pos_vertex(var) : neg_vertex(var);
  };

  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    edges.emplace_back(pos_vertex(i), 2 * n + i);
    edges.emplace_back(neg_vertex(i), 2 * n + i);
  }
  for (int j = 0; j < m; ++j) {
    edges.emplace_back(3 * n + j, 3 * n + m + j);
  }
  for (int j = 0; j < m; ++j) {
    for (int lit : formula.clauses[static_cast<size_t>(j)]) {
      edges.emplace_back(literal_vertex(lit), 3 * n + j);
    }
  }

  ReductionOutput out;
  out.graph = Graph::simple(3 * n + 2 * m, std::move(edges));
  out.matching_target = m + n;
  out.vertex_labels.reserve(static_cast<size_t>(out.graph.n_vertices));
  for (int i = 0; i < n; ++i) out.vertex_labels.push_back(role("a", i));
  for (int i = 0; i < n; ++i) out.vertex_labels.push_back(role("na", i));
  for (int i = 0; i < n; ++i) out.vertex_labels.push_back(role("b", i));
  for (int j = 0; j < m; ++j) out.vertex_labels.push_back(role("c", j));
  for (int j = 0; j < m; ++j) out.vertex_labels.push_back(role("z", j));
  return out;
}

ReductionOutput reduce_3sat_to_rwss(const CnfFormula& formula) {
  const int n = formula.n_vars;
  const int m = static_cast<int>(formula.clauses.size());
  // Vertex layout: a_i = i, negated a_i = n+i, b_i = 2n+i, b_i' = 3n+i,
  // b_i'' = 4n+i, c_j = 5n+j, the three clause connectors = 5n+m+3j+t.
  const auto literal_vertex = [n](int lit) {
    const int var = std::abs(lit) - 1;
    return lit > 0 ? var : n + var;
  };
  const int n_vertices = 5 * n + 4 * m;

  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    edges.emplace_back(2 * n + i, 3 * n + i);
    edges.emplace_back(2 * n + i, 4 * n + i);
    edges.emplace_back(3 * n + i, i);
    edges.emplace_back(4 * n + i, n + i);
  }
  for (int j = 0; j < m; ++j) {
    for (int t = 0; t < 3; ++t) {
      edges.emplace_back(5 * n + j, 5 * n + m + 3 * j + t);
    }
  }
  for (int j = 0; j < m; ++j) {
    for (int t = 0; t < 3; ++t) {
      edges.emplace_back(5 * n + m + 3 * j + t,
                         literal_vertex(formula.clauses[static_cast<size_t>(j)][static_cast<size_t>(t)]));
    }
  }

  const Rational r(2);
  const Rational s = Rational(2 * n + 3 * m) * r + Rational(2 * n + 1);

  ReductionOutput out;
  out.graph = Graph::simple(n_vertices, std::move(edges));
  out.threshold = Rational(m + n - 1) * s + r + Rational(n);
  out.has_threshold = true;

  out.vertex_weights.assign(static_cast<size_t>(n_vertices), Rational(1));
  for (int i = 0; i < n; ++i) {
    out.vertex_weights[static_cast<size_t>(2 * n + i)] = s;
    out.vertex_weights[static_cast<size_t>(3 * n + i)] = r;
    out.vertex_weights[static_cast<size_t>(4 * n + i)] = r;
  }
  for (int j = 0; j < m; ++j) {
    out.vertex_weights[static_cast<size_t>(5 * n + j)] = s;
    for (int t = 0; t < 3; ++t) {
      out.vertex_weights[static_cast<size_t>(5 * n + m + 3 * j + t)] = r;
    }
  }

  out.vertex_labels.reserve(static_cast<size_t>(n_vertices));
  for (int i = 0; i < n; ++i) out.vertex_labels.push_back(role("a", i));
  for (int i = 0; i < n; ++i) out.vertex_labels.push_back(role("na", i));
  for (int i = 0; i < n; ++i) out.vertex_labels.push_back(role("b", i));
  for (int i = 0; i < n; ++i) out.vertex_labels.push_back(role("b", i) + "_1");
  for (int i = 0; i < n; ++i) out.vertex_labels.push_back(role("b", i) + "_2");
  for (int j = 0; j < m; ++j) out.vertex_labels.push_back(role("c", j));
  for (int j = 0; j < m; ++j) {
    for (int t = 0; t < 3; ++t) {
      out.vertex_labels.push_back(role("c", j) + "_" + std::to_string(t + 1));
    }
  }
  return out;
}

namespace {

// Branch and bound over vertices in descending weight order, include-first,
// accepting as soon as any stable set's exact one-removal one-addition value
// reaches the threshold.
struct StableThresholdSearch {
  const int n;
  const Weights& weights;
  const std::vector<Mask>& adjacency;
  const Rational threshold;
  std::vector<int> order;
  std::vector<Rational> suffix_weight;  // decided-independent upper bound tail
  Rational w_max;
  long long nodes_left;

  bool leaf_reaches_threshold(Mask s, const Rational& s_weight) const {
    for (int f = kNoElement; f < n; ++f) {
      Mask base = s;
      Rational base_weight = s_weight;
      if (f != kNoElement) {
        if (has_bit(s, f)) {
          base &= ~bit(f);
          base_weight -= weights[static_cast<size_t>(f)];
        }
      }
      Rational best = base_weight;
      for (int e = 0; e < n; ++e) {
        if (e == f || has_bit(s, e)) continue;
        if ((adjacency[static_cast<size_t>(e)] & base) != 0) continue;
        const Rational cand = base_weight + weights[static_cast<size_t>(e)];
        if (best < cand) best = cand;
      }
      if (best < threshold) return false;  // this removal already sinks it
    }
    return true;
  }

  bool search(int pos, Mask chosen, const Rational& chosen_weight) {
    if (--nodes_left < 0) {
      throw BudgetExceeded("stable-set threshold search exceeded its node budget");
    }
    // Even taking every undecided vertex plus one recourse addition cannot
    // reach the threshold: prune.
    if (chosen_weight + suffix_weight[static_cast<size_t>(pos)] + w_max < threshold) {
      return false;
    }
    if (pos == n) return leaf_reaches_threshold(chosen, chosen_weight);
    const int v = order[static_cast<size_t>(pos)];
    if ((adjacency[static_cast<size_t>(v)] & chosen) == 0) {
      if (search(pos + 1, chosen | bit(v), chosen_weight + weights[static_cast<size_t>(v)])) {
        return true;
      }
    }
    return search(pos + 1, chosen, chosen_weight);
  }
};

}  // namespace

bool robust_stable_set_at_least(const Graph& g, const Weights& weights,
                                const Rational& threshold, long long max_nodes) {
  if (static_cast<int>(weights.size()) != g.n_vertices) {
    throw ValidationError("weight vector size must match the vertex count");
  }
  for (const Rational& w : weights) {
    if (w.is_negative()) throw ValidationError("vertex weights must be nonnegative");
  }
  const int n = g.n_vertices;
  if (n > kMaxGroundSet) throw ValidationError("at most 64 vertices are supported");

  const std::vector<Mask> adjacency = g.adjacency();
  StableThresholdSearch search{
      n, weights, adjacency, threshold, {}, {}, Rational(0), max_nodes};
  search.order.resize(static_cast<size_t>(n));
  std::iota(search.order.begin(), search.order.end(), 0);
  std::sort(search.order.begin(), search.order.end(), [&](int a, int b) {
    if (!(weights[static_cast<size_t>(a)] == weights[static_cast<size_t>(b)])) {
      return weights[static_cast<size_t>(b)] < weights[static_cast<size_t>(a)];
    }
    return a < b;
  });
  search.suffix_weight.assign(static_cast<size_t>(n) + 1, Rational(0));
  for (int p = n - 1; p >= 0; --p) {
    search.suffix_weight[static_cast<size_t>(p)] =
        search.suffix_weight[static_cast<size_t>(p) + 1] +
        weights[static_cast<size_t>(search.order[static_cast<size_t>(p)])];
  }
  for (const Rational& w : weights) {
    if (search.w_max < w) search.w_max = w;
  }
  return search.search(0, 0, Rational(0));
}

}  // namespace rrc
