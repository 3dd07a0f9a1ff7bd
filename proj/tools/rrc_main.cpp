#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
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
#include "rrc/selftest.hpp"
#include "rrc/types.hpp"

namespace {

using rrc::Rational;
using ordered_json = nlohmann::ordered_json;

void diagnostic(const char* kind, const std::string& message) {
  ordered_json j;
  j["error"] = kind;
  j["message"] = message;
  std::cerr << j.dump() << "\n";
}

void warning_line(const char* kind, const std::string& message) {
  ordered_json j;
  j["warning"] = kind;
  j["message"] = message;
  std::cerr << j.dump() << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw rrc::ValidationError("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Every payload goes to stdout as a single line unless --out redirects it.
void emit(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload << "\n";
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw rrc::ValidationError("cannot write output file: " + out_path);
  out << payload << "\n";
}

rrc::Instance load_instance(const std::string& path) {
  return rrc::parse_instance(read_file(path));
}

std::string instance_digest(const rrc::Instance& instance) {
  return rrc::digest_hex(rrc::fnv1a64(rrc::serialize_instance(instance)));
}

rrc::Mask parse_id_list(const std::string& text, int n) {
  rrc::Mask mask = 0;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    if (token.empty()) throw rrc::ValidationError("empty id in element list");
    size_t used = 0;
    int id = 0;
    try {
      id = std::stoi(token, &used);
    } catch (const std::exception&) {
      throw rrc::ValidationError("bad element id: " + token);
    }
    if (used != token.size()) throw rrc::ValidationError("bad element id: " + token);
    if (id < 0 || id >= n) {
      throw rrc::ValidationError("element id out of range: " + token);
    }
    mask |= rrc::bit(id);
  }
  return mask;
}

std::string solution_payload(const std::string& solver, const rrc::Instance& instance,
                             int k, int l, const rrc::RobustCertificate& cert,
                             std::optional<Rational> lambda_star,
                             std::vector<std::pair<std::string, std::string>> parameters) {
  rrc::SolutionFileData data;
  data.solver = solver;
  data.parameters = std::move(parameters);
  data.instance_digest = instance_digest(instance);
  data.k = k;
  data.l = l;
  data.first_stage = rrc::mask_to_indices(cert.first_stage);
  data.robust_value = cert.worst_case_value;
  data.lambda_star = std::move(lambda_star);
  data.certificate = cert.per_interdiction;
  return rrc::serialize_solution(data);
}

// ---------------------------------------------------------------------------
// solve subcommands

void run_solve_rp(const std::string& instance_path, int k, int l,
                  const std::string& out_path) {
  const rrc::Instance inst = load_instance(instance_path);
  const rrc::FeasibilitySystem sys = rrc::instance_system(inst);
  const rrc::Weights w = rrc::instance_weights(inst);
  const rrc::RobustCertificate cert = rrc::brute_force_rp(sys, w, k, l);
  emit(solution_payload("exhaustive", inst, k, l, cert, std::nullopt, {}), out_path);
}

void run_solve_rmb(const std::string& instance_path, int k, const std::string& out_path) {
  const rrc::Instance inst = load_instance(instance_path);
  if (inst.type != "matroid") {
    throw rrc::ValidationError("solve rmb needs a matroid instance");
  }
  const rrc::Weights w = rrc::instance_weights(inst);
  const rrc::RobustCertificate cert = rrc::solve_kk_rmb(*inst.matroid, w, k);
  emit(solution_payload("greedy-exchange", inst, k, k, cert, std::nullopt, {}), out_path);
}

void run_solve_rbss(const std::string& instance_path, const std::string& out_path) {
  const rrc::Instance inst = load_instance(instance_path);
  if (inst.type != "graph") {
    throw rrc::ValidationError("solve rbss needs a graph instance");
  }
  const rrc::RbssSolution sol = rrc::solve_unweighted_rbss(*inst.graph);
  emit(solution_payload("pendant-matching", inst, 1, 1, sol.certificate, std::nullopt,
                        {{"repairable", sol.repairable ? "true" : "false"}}),
       out_path);
}

void run_solve_ris(const std::string& instance_path, const std::string& lambda_text,
                   bool alt_dp, const std::string& out_path) {
  const rrc::Instance inst = load_instance(instance_path);
  if (inst.type != "intervals") {
    throw rrc::ValidationError("solve ris needs an intervals instance");
  }
  const rrc::IscDpMode mode =
      alt_dp ? rrc::IscDpMode::AltLookup : rrc::IscDpMode::TwoBound;
  const char* mode_name = alt_dp ? "alt-lookup" : "two-bound";

  if (!lambda_text.empty()) {
    const Rational lambda = Rational::parse(lambda_text);
    const std::optional<rrc::LambdaRisSolution> sol =
        rrc::solve_lambda_ris(inst.jobs, lambda, mode);
    ordered_json j;
    j["format_version"] = 1;
    j["payload"] = "lambda-solution";
    j["instance_digest"] = instance_digest(inst);
    j["mode"] = mode_name;
    j["lambda"] = lambda.to_string();
    j["feasible"] = sol.has_value();
    if (sol) {
      j["w_opt"] = sol->w_opt.to_string();
      j["first_stage"] = rrc::mask_to_indices(sol->first_stage);
      if (sol->universal_backup != rrc::kNoElement) {
        j["universal_backup"] = sol->universal_backup;
      }
      if (sol->secondary_backup != rrc::kNoElement) {
        j["secondary_backup"] = sol->secondary_backup;
      }
      ordered_json backups = ordered_json::array();
      for (const int job : rrc::mask_to_indices(sol->first_stage)) {
        const int b = sol->backup_of[static_cast<size_t>(job)];
        if (b != rrc::kNoElement) backups.push_back(ordered_json::array({job, b}));
      }
      j["backup_of"] = std::move(backups);
    }
    emit(j.dump(), out_path);
    return;
  }

  if (inst.jobs.size() > 25) {
    warning_line("sweep-size",
                 "more than 25 jobs: the bound sweep may take a very long time");
  }
  const rrc::RisResult sol = rrc::solve_ris(inst.jobs, mode);
  emit(solution_payload("interval-sweep", inst, 1, 1, sol.certificate, sol.lambda_star,
                        {{"mode", mode_name}}),
       out_path);
}

// ---------------------------------------------------------------------------
// eval

void run_eval(const std::string& instance_path, const std::string& first_stage_text,
              int k, int l, const std::string& out_path) {
  const rrc::Instance inst = load_instance(instance_path);
  const rrc::FeasibilitySystem sys = rrc::instance_system(inst);
  const rrc::Weights w = rrc::instance_weights(inst);
  const rrc::Mask s = parse_id_list(first_stage_text, rrc::instance_ground_size(inst));
  if (!sys.feasible(s)) {
    throw rrc::ValidationError("the given first stage is not feasible in this instance");
  }
  const rrc::RobustCertificate cert = rrc::robust_value(sys, w, s, k, l);
  emit(solution_payload("evaluate", inst, k, l, cert, std::nullopt, {}), out_path);
}

// ---------------------------------------------------------------------------
// check / witness

std::vector<rrc::Mask> explicit_family_of(const rrc::Instance& inst) {
  const int n = rrc::instance_ground_size(inst);
  if (n > 20) {
    throw rrc::ValidationError("family checks need at most 20 elements");
  }
  const rrc::FeasibilitySystem sys = rrc::instance_system(inst);
  std::vector<rrc::Mask> family;
  for (rrc::Mask s = 0; s < rrc::bit(n); ++s) {
    if (sys.feasible(s)) family.push_back(s);
  }
  return family;
}

void run_check_matroid(const std::string& instance_path, const std::string& out_path) {
  const rrc::Instance inst = load_instance(instance_path);
  if (inst.type != "explicit" && inst.type != "matroid") {
    throw rrc::ValidationError("check matroid needs an explicit or matroid instance");
  }
  const int n = rrc::instance_ground_size(inst);
  ordered_json j;
  j["format_version"] = 1;
  j["payload"] = "check";
  j["check"] = "matroid";
  j["instance_digest"] = instance_digest(inst);
  if (inst.type == "matroid" && n > 20) {
    // Structural kinds satisfy the exchange property by construction; the
    // exhaustive test is only needed (and only possible) for small grounds.
    j["result"] = true;
    j["method"] = "structural";
  } else {
    j["result"] = rrc::is_matroid_family(n, explicit_family_of(inst));
    j["method"] = "exhaustive";
  }
  emit(j.dump(), out_path);
}

void run_check_repairable(const std::string& instance_path, const std::string& out_path) {
  const rrc::Instance inst = load_instance(instance_path);
  if (inst.type != "graph") {
    throw rrc::ValidationError("check repairable-stable-set needs a graph instance");
  }
  const std::optional<rrc::Mask> s = rrc::repairable_stable_set(*inst.graph);
  ordered_json j;
  j["format_version"] = 1;
  j["payload"] = "check";
  j["check"] = "repairable-stable-set";
  j["instance_digest"] = instance_digest(inst);
  j["result"] = s.has_value();
  if (s) j["first_stage"] = rrc::mask_to_indices(*s);
  emit(j.dump(), out_path);
}

void run_check_koenig(const std::string& instance_path, const std::string& out_path) {
  const rrc::Instance inst = load_instance(instance_path);
  if (inst.type != "graph") {
    throw rrc::ValidationError("check koenig-egervary needs a graph instance");
  }
  ordered_json j;
  j["format_version"] = 1;
  j["payload"] = "check";
  j["check"] = "koenig-egervary";
  j["instance_digest"] = instance_digest(inst);
  j["result"] = rrc::is_koenig_egervary(*inst.graph);
  emit(j.dump(), out_path);
}

void run_witness_non_matroid(const std::string& instance_path, const std::string& out_path) {
  const rrc::Instance inst = load_instance(instance_path);
  if (inst.type != "explicit" && inst.type != "matroid") {
    throw rrc::ValidationError("witness non-matroid needs an explicit or matroid instance");
  }
  const int n = rrc::instance_ground_size(inst);
  const std::vector<rrc::Mask> family = explicit_family_of(inst);
  const std::optional<rrc::NonMatroidWitness> witness =
      rrc::find_non_matroid_witness(n, family);
  ordered_json j;
  j["format_version"] = 1;
  j["payload"] = "witness";
  j["witness"] = "non-matroid";
  j["instance_digest"] = instance_digest(inst);
  j["found"] = witness.has_value();
  if (witness) {
    j["x"] = rrc::mask_to_indices(witness->x);
    j["y"] = rrc::mask_to_indices(witness->y);
    j["a"] = witness->a;
    j["b"] = witness->b;
    j["c"] = witness->c;
    ordered_json w = ordered_json::array();
    for (const Rational& x : rrc::adversarial_weights(*witness, n)) {
      w.push_back(x.to_string());
    }
    j["adversarial_weights"] = std::move(w);
  }
  emit(j.dump(), out_path);
}

// ---------------------------------------------------------------------------
// reduce

void run_reduce(const std::string& cnf_path, bool to_matching, const std::string& out_path) {
  const rrc::CnfFormula f = rrc::parse_dimacs_cnf(read_file(cnf_path));
  const rrc::ReductionOutput red =
      to_matching ? rrc::reduce_3sat_to_rbm(f) : rrc::reduce_3sat_to_rwss(f);
  emit(rrc::serialize_reduction(red), out_path);
}

// ---------------------------------------------------------------------------
// gen

void run_gen_intervals(int n, std::uint64_t seed, long long horizon, long long wmax,
                       const std::string& out_path) {
  rrc::Instance inst;
  inst.type = "intervals";
  inst.jobs = rrc::gen_intervals(n, horizon, wmax, seed);
  emit(rrc::serialize_instance(inst), out_path);
}

void run_gen_bipartite(int n, std::uint64_t seed, double p, long long wmax,
                       const std::string& out_path) {
  rrc::BipartiteSample sample = rrc::gen_bipartite_graph(n, p, seed);
  rrc::Instance inst;
  inst.type = "graph";
  inst.graph = std::move(sample.graph);
  inst.side = std::move(sample.side);
  if (wmax > 0) inst.weights = rrc::gen_weights(n, 0, wmax, seed + 1);
  emit(rrc::serialize_instance(inst), out_path);
}

void run_gen_partition_matroid(int n, std::uint64_t seed, int max_blocks, long long wmax,
                               const std::string& out_path) {
  rrc::Instance inst;
  inst.type = "matroid";
  inst.n_elements = n;
  inst.matroid = std::make_shared<const rrc::Matroid>(
      rrc::gen_partition_matroid(n, max_blocks, seed));
  if (wmax > 0) inst.weights = rrc::gen_weights(n, 0, wmax, seed + 1);
  emit(rrc::serialize_instance(inst), out_path);
}

void run_gen_explicit(int n, std::uint64_t seed, long long wmax,
                      const std::string& out_path) {
  rrc::Instance inst;
  inst.type = "explicit";
  inst.n_elements = n;
  inst.maximal_sets = rrc::maximal_sets_of_family(rrc::gen_explicit_family(n, seed));
  if (wmax > 0) inst.weights = rrc::gen_weights(n, 0, wmax, seed + 1);
  emit(rrc::serialize_instance(inst), out_path);
}

void run_gen_cnf(int vars, int clauses, std::uint64_t seed, const std::string& out_path) {
  const rrc::CnfFormula f = rrc::gen_cnf3(vars, clauses, seed);
  std::ostringstream out;
  out << "p cnf " << f.n_vars << " " << f.clauses.size() << "\n";
  for (const auto& clause : f.clauses) {
    out << clause[0] << " " << clause[1] << " " << clause[2] << " 0";
    if (&clause != &f.clauses.back()) out << "\n";
  }
  emit(out.str(), out_path);
}

// ---------------------------------------------------------------------------
// selftest

int run_selftest(int threads) {
  std::string self_path;
  std::error_code ec;
  const std::filesystem::path exe = std::filesystem::read_symlink("/proc/self/exe", ec);
  if (!ec) self_path = exe.string();
  const std::vector<rrc::CriterionResult> results =
      rrc::run_acceptance_battery(self_path, threads);
  bool all = true;
  for (const rrc::CriterionResult& r : results) {
    all = all && r.passed;
    std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << std::setw(2) << r.index << " "
              << r.name << " (" << std::fixed << std::setprecision(2) << r.seconds
              << " s): " << r.detail << "\n";
  }
  std::cout << (all ? "all criteria passed" : "SOME CRITERIA FAILED") << "\n";
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"recoverable robust optimization with commitment"};
  app.require_subcommand(1);

  std::string instance_path;
  std::string cnf_path;
  std::string out_path;
  std::string lambda_text;
  std::string first_stage_text;
  int k = 1;
  int l = 1;
  bool alt_dp = false;
  int gen_n = 5;
  int gen_vars = 3;
  int gen_clauses = 3;
  int gen_max_blocks = 4;
  std::uint64_t seed = 1;
  long long horizon = 20;
  long long wmax = 10;
  double edge_p = 0.5;
  int threads = 0;
  int exit_code = 0;

  CLI::App* solve = app.add_subcommand("solve", "solve a game on an instance file");
  solve->require_subcommand(1);

  CLI::App* rp = solve->add_subcommand("rp", "exhaustive removal/addition game optimum");
  rp->add_option("--instance", instance_path, "instance file")->required();
  rp->add_option("--k", k, "interdiction budget");
  rp->add_option("--l", l, "recourse budget");
  rp->add_option("--out", out_path, "write the payload to this file");
  rp->callback([&] { run_solve_rp(instance_path, k, l, out_path); });

  CLI::App* rmb = solve->add_subcommand("rmb", "greedy basis with exchange recourse");
  rmb->add_option("--instance", instance_path, "matroid instance file")->required();
  rmb->add_option("--k", k, "interdiction budget (recourse budget matches)");
  rmb->add_option("--out", out_path, "write the payload to this file");
  rmb->callback([&] { run_solve_rmb(instance_path, k, out_path); });

  CLI::App* rbss = solve->add_subcommand("rbss", "unweighted repairable stable set");
  rbss->add_option("--instance", instance_path, "graph instance file")->required();
  rbss->add_option("--out", out_path, "write the payload to this file");
  rbss->callback([&] { run_solve_rbss(instance_path, out_path); });

  CLI::App* ris = solve->add_subcommand("ris", "robust interval scheduling");
  ris->add_option("--instance", instance_path, "intervals instance file")->required();
  ris->add_option("--lambda", lambda_text,
                  "solve only the regret-bounded subproblem at this bound");
  ris->add_flag("--alt-isc-dp", alt_dp, "use the alternate sweep lookup (may under-select)");
  ris->add_option("--out", out_path, "write the payload to this file");
  ris->callback([&] { run_solve_ris(instance_path, lambda_text, alt_dp, out_path); });

  CLI::App* eval = app.add_subcommand("eval", "evaluate a fixed first stage");
  eval->add_option("--instance", instance_path, "instance file")->required();
  eval->add_option("--first-stage", first_stage_text, "comma-separated element ids")
      ->required();
  eval->add_option("--k", k, "interdiction budget");
  eval->add_option("--l", l, "recourse budget");
  eval->add_option("--out", out_path, "write the payload to this file");
  eval->callback([&] { run_eval(instance_path, first_stage_text, k, l, out_path); });

  CLI::App* check = app.add_subcommand("check", "structural checks");
  check->require_subcommand(1);
  CLI::App* check_m = check->add_subcommand("matroid", "exchange property of the family");
  check_m->add_option("--instance", instance_path, "explicit or matroid instance")->required();
  check_m->add_option("--out", out_path, "write the payload to this file");
  check_m->callback([&] { run_check_matroid(instance_path, out_path); });
  CLI::App* check_r =
      check->add_subcommand("repairable-stable-set", "degree-one repairability test");
  check_r->add_option("--instance", instance_path, "graph instance")->required();
  check_r->add_option("--out", out_path, "write the payload to this file");
  check_r->callback([&] { run_check_repairable(instance_path, out_path); });
  CLI::App* check_k =
      check->add_subcommand("koenig-egervary", "matching number equals cover number");
  check_k->add_option("--instance", instance_path, "graph instance")->required();
  check_k->add_option("--out", out_path, "write the payload to this file");
  check_k->callback([&] { run_check_koenig(instance_path, out_path); });

  CLI::App* witness = app.add_subcommand("witness", "certificates for structural failures");
  witness->require_subcommand(1);
  CLI::App* witness_nm =
      witness->add_subcommand("non-matroid", "exchange-failure witness and weights");
  witness_nm->add_option("--instance", instance_path, "explicit or matroid instance")
      ->required();
  witness_nm->add_option("--out", out_path, "write the payload to this file");
  witness_nm->callback([&] { run_witness_non_matroid(instance_path, out_path); });

  CLI::App* reduce = app.add_subcommand("reduce", "formula-to-game reductions");
  reduce->require_subcommand(1);
  CLI::App* red_m = reduce->add_subcommand("sat2rbm", "3-CNF to repairable matching");
  red_m->add_option("--cnf", cnf_path, "DIMACS cnf file")->required();
  red_m->add_option("--out", out_path, "write the payload to this file");
  red_m->callback([&] { run_reduce(cnf_path, true, out_path); });
  CLI::App* red_s = reduce->add_subcommand("sat2rwss", "3-CNF to weighted stable set");
  red_s->add_option("--cnf", cnf_path, "DIMACS cnf file")->required();
  red_s->add_option("--out", out_path, "write the payload to this file");
  red_s->callback([&] { run_reduce(cnf_path, false, out_path); });

  CLI::App* gen = app.add_subcommand("gen", "seeded instance generators");
  gen->require_subcommand(1);
  CLI::App* gen_i = gen->add_subcommand("intervals", "random interval jobs");
  gen_i->add_option("--n", gen_n, "number of jobs");
  gen_i->add_option("--seed", seed, "generator seed");
  gen_i->add_option("--horizon", horizon, "time horizon");
  gen_i->add_option("--wmax", wmax, "maximum weight");
  gen_i->add_option("--out", out_path, "write the payload to this file");
  gen_i->callback([&] { run_gen_intervals(gen_n, seed, horizon, wmax, out_path); });
  CLI::App* gen_b = gen->add_subcommand("bipartite", "random bipartite graph");
  gen_b->add_option("--n", gen_n, "number of vertices");
  gen_b->add_option("--seed", seed, "generator seed");
  gen_b->add_option("--p", edge_p, "edge probability");
  gen_b->add_option("--wmax", wmax, "attach vertex weights up to this value (0 = none)");
  gen_b->add_option("--out", out_path, "write the payload to this file");
  gen_b->callback([&] { run_gen_bipartite(gen_n, seed, edge_p, wmax, out_path); });
  CLI::App* gen_p = gen->add_subcommand("partition-matroid", "random partition matroid");
  gen_p->add_option("--n", gen_n, "number of elements");
  gen_p->add_option("--seed", seed, "generator seed");
  gen_p->add_option("--max-blocks", gen_max_blocks, "maximum number of blocks");
  gen_p->add_option("--wmax", wmax, "attach weights up to this value (0 = none)");
  gen_p->add_option("--out", out_path, "write the payload to this file");
  gen_p->callback(
      [&] { run_gen_partition_matroid(gen_n, seed, gen_max_blocks, wmax, out_path); });
  CLI::App* gen_e = gen->add_subcommand("explicit", "random downward-closed family");
  gen_e->add_option("--n", gen_n, "number of elements");
  gen_e->add_option("--seed", seed, "generator seed");
  gen_e->add_option("--wmax", wmax, "attach weights up to this value (0 = none)");
  gen_e->add_option("--out", out_path, "write the payload to this file");
  gen_e->callback([&] { run_gen_explicit(gen_n, seed, wmax, out_path); });
  CLI::App* gen_c = gen->add_subcommand("cnf", "random 3-CNF in DIMACS form");
  gen_c->add_option("--vars", gen_vars, "number of variables");
  gen_c->add_option("--clauses", gen_clauses, "number of clauses");
  gen_c->add_option("--seed", seed, "generator seed");
  gen_c->add_option("--out", out_path, "write the payload to this file");
  gen_c->callback([&] { run_gen_cnf(gen_vars, gen_clauses, seed, out_path); });

  CLI::App* selftest = app.add_subcommand("selftest", "run the acceptance battery");
  selftest->add_option("--threads", threads, "worker threads (0 = THREADS env or hardware)");
  selftest->callback([&] { exit_code = run_selftest(threads); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    diagnostic("usage", e.what());
    return 2;
  } catch (const rrc::ValidationError& e) {
    diagnostic("validation", e.what());
    return 2;
  } catch (const rrc::BudgetExceeded& e) {
    diagnostic("budget", e.what());
    return 3;
  } catch (const std::exception& e) {
    diagnostic("internal", e.what());
    return 1;
  }
  return exit_code;
}
