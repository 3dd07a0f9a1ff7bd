#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rrc/cnf.hpp"
#include "rrc/core_game.hpp"
#include "rrc/feasibility.hpp"
#include "rrc/graph.hpp"
#include "rrc/interval.hpp"
#include "rrc/matroid.hpp"
#include "rrc/reductions.hpp"
#include "rrc/types.hpp"

namespace rrc {

// In-memory form of an instance file (format_version 1).  Only the fields
// belonging to `type` are meaningful:
//   "explicit"  — n_elements, maximal_sets, weights (optional, default 1)
//   "matroid"   — matroid, weights (optional, default 1)
//   "graph"     — graph, side (optional bipartition), weights (optional)
//   "intervals" — jobs (weights live inside the jobs)
struct Instance {
  std::string type;
  int n_elements = 0;
  std::vector<Mask> maximal_sets;
  std::shared_ptr<const Matroid> matroid;
  std::optional<Graph> graph;
  std::vector<int> side;  // side[v] in {0,1}; empty when no bipartition given
  std::vector<Job> jobs;
  Weights weights;             // empty when the file omitted them
};

// Strict parser: unknown fields, wrong shapes, and structural violations
// (non-antichain maximal sets, non-simple graphs, empty intervals, edges
// inside a declared bipartition side) all raise ValidationError.
Instance parse_instance(const std::string& text);

// Canonical bytes: fixed key order, maximal sets sorted, single line.
// parse_instance(serialize_instance(x)) reproduces x exactly.
std::string serialize_instance(const Instance& instance);

// Ground-set size, game system, and weight vector the instance denotes
// (unit weights where the file omitted them).
int instance_ground_size(const Instance& instance);
FeasibilitySystem instance_system(const Instance& instance);
Weights instance_weights(const Instance& instance);

std::uint64_t fnv1a64(const std::string& bytes);
std::string digest_hex(std::uint64_t value);

CnfFormula parse_dimacs_cnf(const std::string& text);

// Solution files.  robust_value and lambda_star serialize as rational
// strings; certificate entries list interdicted/recourse element ids.
struct SolutionFileData {
  std::string solver;
  std::vector<std::pair<std::string, std::string>> parameters;  // ordered
  std::string instance_digest;  // hex of fnv1a64 over canonical instance bytes
  int k = 1;
  int l = 1;
  std::vector<int> first_stage;  // sorted ids
  Rational robust_value;
  std::optional<Rational> lambda_star;
  std::vector<InterdictionEntry> certificate;
};
std::string serialize_solution(const SolutionFileData& solution);
SolutionFileData parse_solution(const std::string& text);

// Reduction payloads carry a ready-to-solve graph instance plus the gadget
// labels and the side condition (matching size target or value threshold).
std::string serialize_reduction(const ReductionOutput& reduction);

}  // namespace rrc
