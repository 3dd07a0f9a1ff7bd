#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "rrc/types.hpp"

namespace rrc {

// A matroid over an indexed ground set, exposed through an independence
// oracle.  Uniform, partition, and graphic matroids answer structurally;
// explicit families answer by membership.
class Matroid {
public:
  enum class Kind { Uniform, Partition, Graphic, ExplicitIndependence };

  static Matroid uniform(int n, int rank);
  // blocks must partition 0..n-1; caps[i] bounds the pick from blocks[i].
  static Matroid partition(int n, std::vector<std::vector<int>> blocks,
                           std::vector<int> caps);
  // Elements are edge indices; independent = acyclic edge subset.
  static Matroid graphic(int n_vertices,
                         std::vector<std::pair<int, int>> edges);
  // The family must be hereditary and contain the empty set; this is
  // validated eagerly.  Whether the exchange property holds is NOT assumed
  // here — is_matroid_family answers that separately.
  static Matroid explicit_independence(int n, std::vector<Mask> independent_sets);

  Kind kind() const { return kind_; }
  int size() const { return n_; }
  bool is_independent(Mask s) const;
  int rank() const;  // rank of the full ground set

  int graphic_vertices() const { return n_vertices_; }
  const std::vector<std::pair<int, int>>& graphic_edges() const { return edges_; }
  const std::vector<std::vector<int>>& partition_blocks() const { return blocks_; }
  const std::vector<int>& partition_caps() const { return caps_; }
  int uniform_rank() const { return uniform_rank_; }
  const std::vector<Mask>& explicit_sets() const { return explicit_sets_; }

private:
  Matroid() = default;

  Kind kind_ = Kind::Uniform;
  int n_ = 0;
  // Uniform
  int uniform_rank_ = 0;
  // Partition
  std::vector<std::vector<int>> blocks_;
  std::vector<int> caps_;
  std::vector<int> block_of_;
  // Graphic
  int n_vertices_ = 0;
  std::vector<std::pair<int, int>> edges_;
  // Explicit
  std::vector<Mask> explicit_sets_;  // sorted, for binary-search membership
};

// Maximum-weight basis by the greedy rule: elements in descending weight
// (ties by smaller index), added whenever independence is preserved.
// Negative-weight elements are still added — a basis is always completed.
Mask greedy_max_basis(const Matroid& m, const Weights& w);

// The maximum-weight g (ties: smaller index) with B - f + g a basis, or
// kNoElement when f is a coloop and no substitute exists.
int best_exchange(const Matroid& m, const Weights& w, Mask basis, int f);

// Deletes the elements of F one by one (ascending index) from basis B,
// answering each deletion with the best single exchange available in the
// remaining minor.  Returns the final set, the added elements, and the value.
struct ExchangeRecoursePath {
  Mask final_set;
  Mask added;
  Rational value;
};
ExchangeRecoursePath exchange_recourse(const Matroid& m, const Weights& w,
                                       Mask basis, Mask interdicted);

// Exchange-property test for an explicit hereditary family (n <= 20).
// Uses the rank function over all subsets: the property fails at some
// independent I iff the ground set minus I's independent extensions still
// has rank larger than |I|.
bool is_matroid_family(int n, const std::vector<Mask>& independent_sets);

// Certificate that an explicit hereditary family is not a matroid: two
// maximal sets X, Y and distinguished elements a, b, c of their symmetric
// difference such that every maximal set inside X ∪ Y contains a or both of
// b and c.  Verified exhaustively at construction.
struct NonMatroidWitness {
  Mask x;
  Mask y;
  int a;
  int b;
  int c;
};
std::optional<NonMatroidWitness> find_non_matroid_witness(
    int n, const std::vector<Mask>& independent_sets);

// w(a) = 3, w(b) = w(c) = 2, every other element 0.
Weights adversarial_weights(const NonMatroidWitness& witness, int n);

// Inclusion-wise maximal sets of an explicit family, sorted ascending.
std::vector<Mask> maximal_sets_of_family(const std::vector<Mask>& family);

}  // namespace rrc
