#include "rrc/instance_io.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "json.hpp"
#include "rrc/errors.hpp"

namespace rrc {
namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& message) { throw ValidationError(message); }

void require_keys(const ordered_json& obj, std::initializer_list<const char*> allowed,
                  const char* where) {
  for (const auto& item : obj.items()) {
    const bool known =
        std::any_of(allowed.begin(), allowed.end(),
                    [&](const char* key) { return item.key() == key; });
    if (!known) fail(std::string("unknown field \"") + item.key() + "\" in " + where);
  }
}

const ordered_json& require_field(const ordered_json& obj, const char* key,
                                  const char* where) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(std::string("missing field \"") + key + "\" in " + where);
  return *it;
}

long long as_int(const ordered_json& value, const char* what) {
  if (!value.is_number_integer()) fail(std::string(what) + " must be an integer");
  return value.get<long long>();
}

int as_index(const ordered_json& value, const char* what) {
  const long long raw = as_int(value, what);
  if (raw < 0 || raw >= kMaxGroundSet) fail(std::string(what) + " out of range");
  return static_cast<int>(raw);
}

int as_count(const ordered_json& value, const char* what) {
  const long long raw = as_int(value, what);
  if (raw < 0 || raw > kMaxGroundSet) fail(std::string(what) + " out of range");
  return static_cast<int>(raw);
}

Rational as_rational(const ordered_json& value, const char* what) {
  if (value.is_number_integer()) return Rational(value.get<long long>());
  if (value.is_string()) {
    try {
      return Rational::parse(value.get<std::string>());
    } catch (const std::exception& e) {
      fail(std::string(what) + ": " + e.what());
    }
  }
  fail(std::string(what) + " must be an integer or a \"p/q\" string");
}

ordered_json rational_to_json(const Rational& value) {
  const std::string text = value.to_string();
  if (text.find('/') == std::string::npos) {
    return ordered_json(std::stoll(text));
  }
  return ordered_json(text);
}

std::vector<int> as_index_list(const ordered_json& value, const char* what) {
  if (!value.is_array()) fail(std::string(what) + " must be an array");
  std::vector<int> out;
  out.reserve(value.size());
  for (const auto& item : value) out.push_back(as_index(item, what));
  return out;
}

Weights as_weights(const ordered_json& value, size_t expected, const char* what) {
  if (!value.is_array()) fail(std::string(what) + " must be an array");
  if (value.size() != expected) fail(std::string(what) + " has the wrong length");
  Weights out;
  out.reserve(value.size());
  for (const auto& item : value) out.push_back(as_rational(item, what));
  return out;
}

std::vector<std::pair<int, int>> as_edge_list(const ordered_json& value) {
  if (!value.is_array()) fail("edges must be an array of pairs");
  std::vector<std::pair<int, int>> out;
  out.reserve(value.size());
  for (const auto& item : value) {
    if (!item.is_array() || item.size() != 2) fail("each edge must be a pair");
    out.emplace_back(as_index(item[0], "edge endpoint"), as_index(item[1], "edge endpoint"));
  }
  return out;
}

ordered_json indices_json(Mask mask) {
  ordered_json out = ordered_json::array();
  for_each_bit(mask, [&](int i) { out.push_back(i); });
  return out;
}

ordered_json weights_json(const Weights& weights) {
  ordered_json out = ordered_json::array();
  for (const Rational& w : weights) out.push_back(rational_to_json(w));
  return out;
}

std::shared_ptr<const Matroid> parse_matroid_payload(const ordered_json& obj) {
  const std::string kind =
      require_field(obj, "kind", "matroid payload").get<std::string>();
  if (kind == "uniform") {
    require_keys(obj, {"kind", "n", "rank"}, "uniform matroid payload");
    const int n = as_count(require_field(obj, "n", "matroid payload"), "n");
    const long long rank = as_int(require_field(obj, "rank", "matroid payload"), "rank");
    return std::make_shared<Matroid>(Matroid::uniform(n, static_cast<int>(rank)));
  }
  if (kind == "partition") {
    require_keys(obj, {"kind", "n", "blocks", "caps"}, "partition matroid payload");
    const int n = as_count(require_field(obj, "n", "matroid payload"), "n");
    const ordered_json& blocks_json = require_field(obj, "blocks", "matroid payload");
    if (!blocks_json.is_array()) fail("blocks must be an array of index arrays");
    std::vector<std::vector<int>> blocks;
    for (const auto& block : blocks_json) blocks.push_back(as_index_list(block, "block"));
    const ordered_json& caps_json = require_field(obj, "caps", "matroid payload");
    if (!caps_json.is_array()) fail("caps must be an array");
    std::vector<int> caps;
    for (const auto& cap : caps_json) {
      caps.push_back(static_cast<int>(as_int(cap, "cap")));
    }
    return std::make_shared<Matroid>(Matroid::partition(n, std::move(blocks), std::move(caps)));
  }
  if (kind == "graphic") {
    require_keys(obj, {"kind", "n_vertices", "edges"}, "graphic matroid payload");
    const int n_vertices =
        as_count(require_field(obj, "n_vertices", "matroid payload"), "n_vertices");
    return std::make_shared<Matroid>(Matroid::graphic(
        n_vertices, as_edge_list(require_field(obj, "edges", "matroid payload"))));
  }
  fail("matroid kind must be \"uniform\", \"partition\", or \"graphic\"");
}

ordered_json matroid_to_json(const Matroid& m) {
  ordered_json out = ordered_json::object();
  switch (m.kind()) {
    case Matroid::Kind::Uniform:
      out["kind"] = "uniform";
      out["n"] = m.size();
      out["rank"] = m.uniform_rank();
      break;
    case Matroid::Kind::Partition: {
      out["kind"] = "partition";
      out["n"] = m.size();
      ordered_json blocks = ordered_json::array();
      for (const auto& block : m.partition_blocks()) blocks.push_back(block);
      out["blocks"] = std::move(blocks);
      out["caps"] = m.partition_caps();
      break;
    }
    case Matroid::Kind::Graphic: {
      out["kind"] = "graphic";
      out["n_vertices"] = m.graphic_vertices();
      ordered_json edges = ordered_json::array();
      for (const auto& [u, v] : m.graphic_edges()) {
        edges.push_back(ordered_json::array({u, v}));
      }
      out["edges"] = std::move(edges);
      break;
    }
    case Matroid::Kind::ExplicitIndependence:
      fail("explicit independence families serialize as \"explicit\" instances");
  }
  return out;
}

ordered_json instance_to_json(const Instance& instance) {
  ordered_json out = ordered_json::object();
  out["format_version"] = 1;
  out["type"] = instance.type;
  if (instance.type == "explicit") {
    out["n"] = instance.n_elements;
    ordered_json sets = ordered_json::array();
    std::vector<Mask> sorted = instance.maximal_sets;
    std::sort(sorted.begin(), sorted.end());
    for (Mask m : sorted) sets.push_back(indices_json(m));
    out["maximal_sets"] = std::move(sets);
    if (!instance.weights.empty()) out["weights"] = weights_json(instance.weights);
  } else if (instance.type == "matroid") {
    out["matroid"] = matroid_to_json(*instance.matroid);
    if (!instance.weights.empty()) out["weights"] = weights_json(instance.weights);
  } else if (instance.type == "graph") {
    out["n_vertices"] = instance.graph->n_vertices;
    ordered_json edges = ordered_json::array();
    for (const auto& [u, v] : instance.graph->edges) {
      edges.push_back(ordered_json::array({u, v}));
    }
    out["edges"] = std::move(edges);
    if (!instance.side.empty()) {
      ordered_json a = ordered_json::array();
      ordered_json b = ordered_json::array();
      for (int v = 0; v < instance.graph->n_vertices; ++v) {
        (instance.side[static_cast<size_t>(v)] == 0 ? a : b).push_back(v);
      }
      out["bipartition"] = ordered_json::array({std::move(a), std::move(b)});
    }
    if (!instance.weights.empty()) out["vertex_weights"] = weights_json(instance.weights);
  } else if (instance.type == "intervals") {
    ordered_json jobs = ordered_json::array();
    for (const Job& job : instance.jobs) {
      jobs.push_back(ordered_json::array(
          {job.start, job.finish, rational_to_json(job.weight)}));
    }
    out["jobs"] = std::move(jobs);
  } else {
    fail("instance type must be \"explicit\", \"matroid\", \"graph\", or \"intervals\"");
  }
  return out;
}

ordered_json parse_json_text(const std::string& text, const char* what) {
  try {
    return ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    fail(std::string(what) + " is not valid JSON: " + e.what());
  }
}

}  // namespace

Instance parse_instance(const std::string& text) {
  const ordered_json root = parse_json_text(text, "instance file");
  if (!root.is_object()) fail("instance file must be a JSON object");
  if (as_int(require_field(root, "format_version", "instance"), "format_version") != 1) {
    fail("unsupported format_version");
  }
  Instance instance;
  instance.type = require_field(root, "type", "instance").get<std::string>();

  if (instance.type == "explicit") {
    require_keys(root, {"format_version", "type", "n", "maximal_sets", "weights"},
                 "explicit instance");
    instance.n_elements = as_count(require_field(root, "n", "instance"), "n");
    const ordered_json& sets = require_field(root, "maximal_sets", "instance");
    if (!sets.is_array() || sets.empty()) fail("maximal_sets must be a non-empty array");
    for (const auto& entry : sets) {
      const std::vector<int> ids = as_index_list(entry, "maximal set");
      for (int id : ids) {
        if (id >= instance.n_elements) fail("maximal set element out of range");
      }
      instance.maximal_sets.push_back(indices_to_mask(ids));
    }
    std::sort(instance.maximal_sets.begin(), instance.maximal_sets.end());
    if (const auto it = root.find("weights"); it != root.end()) {
      instance.weights =
          as_weights(*it, static_cast<size_t>(instance.n_elements), "weights");
    }
    // Construction validates the antichain property.
    FeasibilitySystem::from_maximal_sets(instance.n_elements, instance.maximal_sets);
  } else if (instance.type == "matroid") {
    require_keys(root, {"format_version", "type", "matroid", "weights"},
                 "matroid instance");
    const ordered_json& payload = require_field(root, "matroid", "instance");
    if (!payload.is_object()) fail("matroid payload must be an object");
    instance.matroid = parse_matroid_payload(payload);
    if (const auto it = root.find("weights"); it != root.end()) {
      instance.weights =
          as_weights(*it, static_cast<size_t>(instance.matroid->size()), "weights");
    }
  } else if (instance.type == "graph") {
    require_keys(root,
                 {"format_version", "type", "n_vertices", "edges", "bipartition",
                  "vertex_weights"},
                 "graph instance");
    const int n =
        as_count(require_field(root, "n_vertices", "instance"), "n_vertices");
    instance.graph =
        Graph::simple(n, as_edge_list(require_field(root, "edges", "instance")));
    if (const auto it = root.find("bipartition"); it != root.end()) {
      if (!it->is_array() || it->size() != 2) fail("bipartition must be two arrays");
      instance.side.assign(static_cast<size_t>(n), -1);
      for (int which = 0; which < 2; ++which) {
        for (int v : as_index_list((*it)[static_cast<size_t>(which)], "bipartition")) {
          if (v >= n || instance.side[static_cast<size_t>(v)] != -1) {
            fail("bipartition must partition the vertices");
          }
          instance.side[static_cast<size_t>(v)] = which;
        }
      }
      for (int v = 0; v < n; ++v) {
        if (instance.side[static_cast<size_t>(v)] == -1) {
          fail("bipartition must partition the vertices");
        }
      }
      for (const auto& [u, v] : instance.graph->edges) {
        if (instance.side[static_cast<size_t>(u)] == instance.side[static_cast<size_t>(v)]) {
          fail("an edge stays inside one bipartition side");
        }
      }
    }
    if (const auto it = root.find("vertex_weights"); it != root.end()) {
      instance.weights = as_weights(*it, static_cast<size_t>(n), "vertex_weights");
    }
  } else if (instance.type == "intervals") {
    require_keys(root, {"format_version", "type", "jobs"}, "intervals instance");
    const ordered_json& jobs = require_field(root, "jobs", "instance");
    if (!jobs.is_array()) fail("jobs must be an array");
    for (const auto& entry : jobs) {
      if (!entry.is_array() || entry.size() != 3) {
        fail("each job must be [start, finish, weight]");
      }
      Job job;
      job.start = as_int(entry[0], "job start");
      job.finish = as_int(entry[1], "job finish");
      job.weight = as_rational(entry[2], "job weight");
      instance.jobs.push_back(job);
    }
    validate_jobs(instance.jobs);
  } else {
    fail("instance type must be \"explicit\", \"matroid\", \"graph\", or \"intervals\"");
  }
  return instance;
}

std::string serialize_instance(const Instance& instance) {
  return instance_to_json(instance).dump();
}

int instance_ground_size(const Instance& instance) {
  if (instance.type == "explicit") return instance.n_elements;
  if (instance.type == "matroid") return instance.matroid->size();
  if (instance.type == "graph") return instance.graph->n_vertices;
  return static_cast<int>(instance.jobs.size());
}

FeasibilitySystem instance_system(const Instance& instance) {
  if (instance.type == "explicit") {
    return FeasibilitySystem::from_maximal_sets(instance.n_elements,
                                                instance.maximal_sets);
  }
  if (instance.type == "matroid") return FeasibilitySystem::from_matroid(*instance.matroid);
  if (instance.type == "graph") return stable_set_system(*instance.graph);
  return interval_system(instance.jobs);
}

Weights instance_weights(const Instance& instance) {
  if (instance.type == "intervals") {
    Weights w;
    w.reserve(instance.jobs.size());
    for (const Job& job : instance.jobs) w.push_back(job.weight);
    return w;
  }
  if (!instance.weights.empty()) return instance.weights;
  return Weights(static_cast<size_t>(instance_ground_size(instance)), Rational(1));
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char byte : bytes) {
    hash ^= byte;
    hash *= 1099511628211ULL;
  }
  return hash;
}

std::string digest_hex(std::uint64_t value) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<size_t>(i)] = digits[value & 0xf];
    value >>= 4;
  }
  return out;
}

CnfFormula parse_dimacs_cnf(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int n_vars = -1;
  long long n_clauses = -1;
  std::vector<std::array<int, 3>> clauses;
  std::vector<int> pending;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    if (line[0] == 'p') {
      if (n_vars != -1) fail("duplicate DIMACS header");
      std::istringstream header(line);
      std::string p, cnf;
      header >> p >> cnf >> n_vars >> n_clauses;
      if (header.fail() || cnf != "cnf" || n_vars < 1 || n_clauses < 0) {
        fail("malformed DIMACS header");
      }
      continue;
    }
    if (n_vars == -1) fail("clause before DIMACS header");
    std::istringstream body(line);
    int literal = 0;
    while (body >> literal) {
      if (literal == 0) {
        if (pending.size() != 3) fail("every clause needs exactly 3 literals");
        clauses.push_back({pending[0], pending[1], pending[2]});
        pending.clear();
        continue;
      }
      if (std::abs(literal) > n_vars) fail("literal exceeds the declared variable count");
      pending.push_back(literal);
    }
    if (!body.eof()) fail("non-numeric token in a clause line");
  }
  if (n_vars == -1) fail("missing DIMACS header");
  if (!pending.empty()) fail("unterminated clause at end of input");
  if (static_cast<long long>(clauses.size()) != n_clauses) {
    fail("clause count disagrees with the DIMACS header");
  }
  return CnfFormula::make(n_vars, std::move(clauses));
}

namespace {

ordered_json certificate_entry_json(const InterdictionEntry& entry) {
  ordered_json out = ordered_json::object();
  out["interdicted"] = indices_json(entry.interdicted);
  out["recourse"] = indices_json(entry.recourse);
  out["value"] = entry.value.to_string();
  return out;
}

}  // namespace

std::string serialize_solution(const SolutionFileData& solution) {
  ordered_json out = ordered_json::object();
  out["format_version"] = 1;
  out["payload"] = "solution";
  out["solver"] = solution.solver;
  ordered_json params = ordered_json::object();
  for (const auto& [key, value] : solution.parameters) params[key] = value;
  out["parameters"] = std::move(params);
  out["instance_digest"] = solution.instance_digest;
  out["k"] = solution.k;
  out["l"] = solution.l;
  out["first_stage"] = solution.first_stage;
  out["robust_value"] = solution.robust_value.to_string();
  if (solution.lambda_star) out["lambda_star"] = solution.lambda_star->to_string();
  ordered_json certificate = ordered_json::array();
  for (const InterdictionEntry& entry : solution.certificate) {
    certificate.push_back(certificate_entry_json(entry));
  }
  out["certificate"] = std::move(certificate);
  return out.dump();
}

SolutionFileData parse_solution(const std::string& text) {
  const ordered_json root = parse_json_text(text, "solution file");
  if (!root.is_object()) fail("solution file must be a JSON object");
  require_keys(root,
               {"format_version", "payload", "solver", "parameters", "instance_digest",
                "k", "l", "first_stage", "robust_value", "lambda_star", "certificate"},
               "solution");
  if (as_int(require_field(root, "format_version", "solution"), "format_version") != 1) {
    fail("unsupported format_version");
  }
  if (require_field(root, "payload", "solution").get<std::string>() != "solution") {
    fail("payload must be \"solution\"");
  }
  SolutionFileData out;
  out.solver = require_field(root, "solver", "solution").get<std::string>();
  const ordered_json& params = require_field(root, "parameters", "solution");
  if (!params.is_object()) fail("parameters must be an object");
  for (const auto& item : params.items()) {
    if (!item.value().is_string()) fail("parameter values must be strings");
    out.parameters.emplace_back(item.key(), item.value().get<std::string>());
  }
  out.instance_digest =
      require_field(root, "instance_digest", "solution").get<std::string>();
  out.k = static_cast<int>(as_int(require_field(root, "k", "solution"), "k"));
  out.l = static_cast<int>(as_int(require_field(root, "l", "solution"), "l"));
  out.first_stage = as_index_list(require_field(root, "first_stage", "solution"),
                                  "first_stage");
  out.robust_value =
      as_rational(require_field(root, "robust_value", "solution"), "robust_value");
  if (const auto it = root.find("lambda_star"); it != root.end()) {
    out.lambda_star = as_rational(*it, "lambda_star");
  }
  const ordered_json& certificate = require_field(root, "certificate", "solution");
  if (!certificate.is_array()) fail("certificate must be an array");
  for (const auto& entry : certificate) {
    require_keys(entry, {"interdicted", "recourse", "value"}, "certificate entry");
    InterdictionEntry parsed;
    parsed.interdicted =
        indices_to_mask(as_index_list(require_field(entry, "interdicted", "entry"),
                                      "interdicted"));
    parsed.recourse = indices_to_mask(
        as_index_list(require_field(entry, "recourse", "entry"), "recourse"));
    parsed.value = as_rational(require_field(entry, "value", "entry"), "value");
    parsed.second_stage = 0;  // not serialized; derivable from the instance
    out.certificate.push_back(parsed);
  }
  return out;
}

std::string serialize_reduction(const ReductionOutput& reduction) {
  Instance inner;
  inner.type = "graph";
  inner.graph = reduction.graph;
  if (const auto sides = bipartition(reduction.graph)) inner.side = *sides;
  inner.weights = reduction.vertex_weights;

  ordered_json out = ordered_json::object();
  out["format_version"] = 1;
  out["payload"] = "reduction";
  out["reduction"] = reduction.has_threshold ? "stable-set" : "matching";
  out["instance"] = instance_to_json(inner);
  out["labels"] = reduction.vertex_labels;
  if (reduction.has_threshold) {
    out["threshold"] = reduction.threshold.to_string();
  } else {
    out["matching_target"] = reduction.matching_target;
  }
  return out.dump();
}

}  // namespace rrc
