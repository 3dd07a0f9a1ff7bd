#include "rrc/matroid.hpp"

#include <algorithm>
#include <numeric>

#include "rrc/errors.hpp"

namespace rrc {
namespace {

// Union-find over vertices, used for the acyclicity test of graphic matroids.
struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }
  // Returns false when u and v were already connected.
  bool unite(int u, int v) {
    int ru = find(u), rv = find(v);
    if (ru == rv) return false;
    parent[ru] = rv;
    return true;
  }
};

void check_ground_size(int n) {
  if (n < 0 || n > kMaxGroundSet) {
    throw ValidationError("ground set size must be between 0 and 64");
  }
}

}  // namespace

Matroid Matroid::uniform(int n, int rank) {
  check_ground_size(n);
  if (rank < 0 || rank > n) throw ValidationError("uniform matroid rank out of range");
  Matroid m;
  m.kind_ = Kind::Uniform;
  m.n_ = n;
  m.uniform_rank_ = rank;
  return m;
}

Matroid Matroid::partition(int n, std::vector<std::vector<int>> blocks,
                           std::vector<int> caps) {
  check_ground_size(n);
  if (blocks.size() != caps.size()) {
    throw ValidationError("partition matroid: one cap per block required");
  }
  std::vector<int> block_of(static_cast<size_t>(n), -1);
  for (size_t b = 0; b < blocks.size(); ++b) {
    if (caps[b] < 0) throw ValidationError("partition matroid: negative cap");
    for (int e : blocks[b]) {
      if (e < 0 || e >= n) throw ValidationError("partition matroid: element out of range");
      if (block_of[static_cast<size_t>(e)] != -1) {
        throw ValidationError("partition matroid: element listed twice");
      }
      block_of[static_cast<size_t>(e)] = static_cast<int>(b);
    }
  }
  for (int e = 0; e < n; ++e) {
    if (block_of[static_cast<size_t>(e)] == -1) {
      throw ValidationError("partition matroid: element missing from blocks");
    }
  }
  Matroid m;
  m.kind_ = Kind::Partition;
  m.n_ = n;
  m.blocks_ = std::move(blocks);
  m.caps_ = std::move(caps);
  m.block_of_ = std::move(block_of);
  return m;
}

Matroid Matroid::graphic(int n_vertices, std::vector<std::pair<int, int>> edges) {
  check_ground_size(static_cast<int>(edges.size()));
  if (n_vertices < 0) throw ValidationError("graphic matroid: negative vertex count");
  for (auto& [u, v] : edges) {
    if (u < 0 || u >= n_vertices || v < 0 || v >= n_vertices) {
      throw ValidationError("graphic matroid: edge endpoint out of range");
    }
    if (u == v) throw ValidationError("graphic matroid: self-loop not supported");
  }
  Matroid m;
  m.kind_ = Kind::Graphic;
  m.n_ = static_cast<int>(edges.size());
  m.n_vertices_ = n_vertices;
  m.edges_ = std::move(edges);
  return m;
}

Matroid Matroid::explicit_independence(int n, std::vector<Mask> independent_sets) {
  check_ground_size(n);
  std::sort(independent_sets.begin(), independent_sets.end());
  independent_sets.erase(
      std::unique(independent_sets.begin(), independent_sets.end()),
      independent_sets.end());
  if (independent_sets.empty() || independent_sets.front() != 0) {
    throw ValidationError("explicit family must contain the empty set");
  }
  const Mask full = (n == kMaxGroundSet) ? ~Mask{0} : (bit(n) - 1);
  for (Mask s : independent_sets) {
    if ((s & ~full) != 0) throw ValidationError("explicit family: set outside ground set");
  }
  // Hereditary check: every one-element-smaller subset must be present.
  for (Mask s : independent_sets) {
    for_each_bit(s, [&](int e) {
      const Mask t = s & ~bit(e);
      if (!std::binary_search(independent_sets.begin(), independent_sets.end(), t)) {
        throw ValidationError("explicit family is not downward closed");
      }
    });
  }
  Matroid m;
  m.kind_ = Kind::ExplicitIndependence;
  m.n_ = n;
  m.explicit_sets_ = std::move(independent_sets);
  return m;
}

bool Matroid::is_independent(Mask s) const {
  switch (kind_) {
    case Kind::Uniform:
      return popcount(s) <= uniform_rank_;
    case Kind::Partition: {
      for (size_t b = 0; b < blocks_.size(); ++b) {
        int count = 0;
        for (int e : blocks_[b]) {
          if (has_bit(s, e)) ++count;
        }
        if (count > caps_[b]) return false;
      }
      return true;
    }
    case Kind::Graphic: {
      Dsu dsu(n_vertices_);
      bool acyclic = true;
      for_each_bit(s, [&](int e) {
        if (!dsu.unite(edges_[static_cast<size_t>(e)].first,
                       edges_[static_cast<size_t>(e)].second)) {
          acyclic = false;
        }
      });
      return acyclic;
    }
    case Kind::ExplicitIndependence:
      return std::binary_search(explicit_sets_.begin(), explicit_sets_.end(), s);
  }
  return false;
}

int Matroid::rank() const {
  Mask cur = 0;
  int r = 0;
  for (int e = 0; e < n_; ++e) {
    if (is_independent(cur | bit(e))) {
      cur |= bit(e);
      ++r;
    }
  }
  return r;
}

Mask greedy_max_basis(const Matroid& m, const Weights& w) {
  if (static_cast<int>(w.size()) != m.size()) {
    throw ValidationError("weight vector size does not match ground set");
  }
  std::vector<int> order(w.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return w[static_cast<size_t>(j)] < w[static_cast<size_t>(i)];
  });
  Mask basis = 0;
  for (int e : order) {
    if (m.is_independent(basis | bit(e))) basis |= bit(e);
  }
  return basis;
}

int best_exchange(const Matroid& m, const Weights& w, Mask basis, int f) {
  if (static_cast<int>(w.size()) != m.size()) {
    throw ValidationError("weight vector size does not match ground set");
  }
  if (f < 0 || f >= m.size() || !has_bit(basis, f)) {
    throw ValidationError("best_exchange: f must be a basis element");
  }
  if (!m.is_independent(basis) || popcount(basis) != m.rank()) {
    throw ValidationError("best_exchange: the given set is not a basis");
  }
  const Mask without = basis & ~bit(f);
  int best = kNoElement;
  for (int g = 0; g < m.size(); ++g) {
    if (g == f || has_bit(basis, g)) continue;
    if (!m.is_independent(without | bit(g))) continue;
    if (best == kNoElement || w[static_cast<size_t>(best)] < w[static_cast<size_t>(g)]) {
      best = g;
    }
  }
  return best;
}

ExchangeRecoursePath exchange_recourse(const Matroid& m, const Weights& w,
                                       Mask basis, Mask interdicted) {
  if (static_cast<int>(w.size()) != m.size()) {
    throw ValidationError("weight vector size does not match ground set");
  }
  Mask current = basis;
  Mask added = 0;
  // Delete ascending; after each deletion take the single best substitute
  // available outside the interdicted set.
  for_each_bit(interdicted, [&](int f) {
    if (!has_bit(current, f)) return;
    current &= ~bit(f);
    int best = kNoElement;
    for (int g = 0; g < m.size(); ++g) {
      if (has_bit(current, g) || has_bit(interdicted, g) || has_bit(added, g)) continue;
      if (!m.is_independent(current | bit(g))) continue;
      if (best == kNoElement || w[static_cast<size_t>(best)] < w[static_cast<size_t>(g)]) {
        best = g;
      }
    }
    if (best != kNoElement) {
      current |= bit(best);
      added |= bit(best);
    }
  });
  Rational value;
  for_each_bit(current, [&](int e) { value += w[static_cast<size_t>(e)]; });
  return ExchangeRecoursePath{current, added, value};
}

namespace {

// Shared setup for the family-level checks: densify the (validated
// hereditary, validated sized) family into a 2^n membership table.
std::vector<unsigned char> densify_family(int n, const std::vector<Mask>& sets,
                                          int max_n, const char* op) {
  if (n < 0 || n > max_n) {
    throw ValidationError(std::string(op) + ": ground set too large for exhaustive check");
  }
  std::vector<unsigned char> ind(size_t{1} << n, 0);
  for (Mask s : sets) {
    if (s >> n) throw ValidationError(std::string(op) + ": set outside ground set");
    ind[s] = 1;
  }
  if (!ind[0]) throw ValidationError(std::string(op) + ": family must contain the empty set");
  for (Mask s = 1; s < (Mask{1} << n); ++s) {
    if (!ind[s]) continue;
    for_each_bit(s, [&](int e) {
      if (!ind[s & ~bit(e)]) {
        throw ValidationError(std::string(op) + ": family is not downward closed");
      }
    });
  }
  return ind;
}

}  // namespace

bool is_matroid_family(int n, const std::vector<Mask>& independent_sets) {
  const auto ind = densify_family(n, independent_sets, 20, "is_matroid_family");
  const Mask full = (Mask{1} << n) - 1;
  // rank[A] = size of the largest independent subset of A.
  std::vector<signed char> rank(size_t{1} << n, 0);
  for (Mask a = 1; a <= full; ++a) {
    if (ind[a]) {
      rank[a] = static_cast<signed char>(popcount(a));
      continue;
    }
    signed char best = 0;
    for_each_bit(a, [&](int e) {
      best = std::max(best, rank[a & ~bit(e)]);
    });
    rank[a] = best;
  }
  // Exchange fails at I exactly when some independent set avoiding all of
  // I's independent extensions is still larger than I.
  for (Mask i = 0; i <= full; ++i) {
    if (!ind[i]) continue;
    Mask ext = 0;
    for (int e = 0; e < n; ++e) {
      if (!has_bit(i, e) && ind[i | bit(e)]) ext |= bit(e);
    }
    if (rank[full & ~ext] > popcount(i)) return false;
    if (n == 0) break;
  }
  return true;
}

std::vector<Mask> maximal_sets_of_family(const std::vector<Mask>& family) {
  std::vector<Mask> sorted = family;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<Mask> maximal;
  for (Mask s : sorted) {
    bool is_max = true;
    for (Mask t : sorted) {
      if (t != s && (t & s) == s) {
        is_max = false;
        break;
      }
    }
    if (is_max) maximal.push_back(s);
  }
  return maximal;
}

std::optional<NonMatroidWitness> find_non_matroid_witness(
    int n, const std::vector<Mask>& independent_sets) {
  densify_family(n, independent_sets, 16, "find_non_matroid_witness");
  if (is_matroid_family(n, independent_sets)) return std::nullopt;

  const std::vector<Mask> maximal = maximal_sets_of_family(independent_sets);
  // Scan pairs of maximal sets in ascending mask order and pick the first
  // (X, Y, a, (b, c)) whose blocking condition holds: every maximal set
  // inside X ∪ Y contains a, or contains both b and c.
  for (size_t xi = 0; xi < maximal.size(); ++xi) {
    for (size_t yi = xi + 1; yi < maximal.size(); ++yi) {
      const Mask x = maximal[xi];
      const Mask y = maximal[yi];
      const Mask united = x | y;
      const Mask sym_diff = x ^ y;
      std::vector<Mask> inside;
      for (Mask z : maximal) {
        if ((z & ~united) == 0) inside.push_back(z);
      }
      const auto diff = mask_to_indices(sym_diff);
      for (int a : diff) {
        for (size_t bi = 0; bi < diff.size(); ++bi) {
          if (diff[bi] == a) continue;
          for (size_t ci = bi + 1; ci < diff.size(); ++ci) {
            if (diff[ci] == a) continue;
            const int b = diff[bi];
            const int c = diff[ci];
            bool blocked = true;
            for (Mask z : inside) {
              if (!has_bit(z, a) && !(has_bit(z, b) && has_bit(z, c))) {
                blocked = false;
                break;
              }
            }
            if (blocked) return NonMatroidWitness{x, y, a, b, c};
          }
        }
      }
    }
  }
  return std::nullopt;
}

Weights adversarial_weights(const NonMatroidWitness& witness, int n) {
  if (witness.a < 0 || witness.a >= n || witness.b < 0 || witness.b >= n ||
      witness.c < 0 || witness.c >= n) {
    throw ValidationError("adversarial_weights: witness elements out of range");
  }
  Weights w(static_cast<size_t>(n), Rational(0));
  w[static_cast<size_t>(witness.a)] = Rational(3);
  w[static_cast<size_t>(witness.b)] = Rational(2);
  w[static_cast<size_t>(witness.c)] = Rational(2);
  return w;
}

}  // namespace rrc
