#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "rrc/errors.hpp"
#include "rrc/instance_io.hpp"

using namespace rrc;

namespace {

Instance parse_round_trip(const std::string& text) {
    Instance first = parse_instance(text);
    const std::string canonical = serialize_instance(first);
    Instance second = parse_instance(canonical);
    CHECK(serialize_instance(second) == canonical);
    return second;
}

}  // namespace

TEST_CASE("explicit instances round-trip through canonical bytes") {
    const std::string text = R"({
      "format_version": 1,
      "type": "explicit",
      "n": 3,
      "maximal_sets": [[1, 2], [0]],
      "weights": [3, "1/2", 2]
    })";
    Instance inst = parse_round_trip(text);
    CHECK(inst.n_elements == 3);
    CHECK(inst.maximal_sets == std::vector<Mask>{bit(0), bit(1) | bit(2)});
    CHECK(inst.weights[1] == Rational(1, 2));

    // Canonical bytes are a single line with integral weights as JSON
    // numbers and fractions as strings.
    const std::string canonical = serialize_instance(inst);
    CHECK(canonical.find('\n') == std::string::npos);
    CHECK(canonical.find("\"1/2\"") != std::string::npos);
    CHECK(canonical.find("\"weights\":[3,\"1/2\",2]") != std::string::npos);
}

TEST_CASE("matroid instances round-trip for every kind") {
    const char* texts[] = {
        R"({"format_version":1,"type":"matroid","matroid":{"kind":"uniform","n":4,"rank":2}})",
        R"({"format_version":1,"type":"matroid",
            "matroid":{"kind":"partition","n":3,"blocks":[[0,1],[2]],"caps":[1,1]},
            "weights":[2,9,1]})",
        R"({"format_version":1,"type":"matroid",
            "matroid":{"kind":"graphic","n_vertices":3,"edges":[[0,1],[1,2],[0,2]]}})",
    };
    for (const char* text : texts) {
        Instance inst = parse_round_trip(text);
        CHECK(inst.type == "matroid");
        CHECK(inst.matroid != nullptr);
    }
}

TEST_CASE("graph and interval instances round-trip") {
    Instance g = parse_round_trip(
        R"({"format_version":1,"type":"graph","n_vertices":4,
            "edges":[[0,1],[1,2],[2,3]],"bipartition":[[0,2],[1,3]],
            "vertex_weights":[1,1,1,1]})");
    REQUIRE(g.graph.has_value());
    CHECK(g.graph->n_vertices == 4);
    CHECK(g.side == std::vector<int>{0, 1, 0, 1});

    Instance iv = parse_round_trip(
        R"({"format_version":1,"type":"intervals",
            "jobs":[[1,3,10],[2,5,8],[4,7,2],[6,9,8],[8,10,10]]})");
    CHECK(iv.jobs.size() == 5);
    CHECK(iv.jobs[0].start == 1);
    CHECK(iv.jobs[0].weight == Rational(10));
    CHECK(instance_ground_size(iv) == 5);
    CHECK(instance_weights(iv)[4] == Rational(10));
}

TEST_CASE("strict parsing rejects malformed instance files") {
    // Unknown field.
    CHECK_THROWS_AS(parse_instance(
                        R"({"format_version":1,"type":"explicit","n":1,
                            "maximal_sets":[[0]],"bogus":true})"),
                    ValidationError);
    // Wrong format version.
    CHECK_THROWS_AS(parse_instance(
                        R"({"format_version":2,"type":"explicit","n":1,
                            "maximal_sets":[[0]]})"),
                    ValidationError);
    // Not an antichain.
    CHECK_THROWS_AS(parse_instance(
                        R"({"format_version":1,"type":"explicit","n":2,
                            "maximal_sets":[[0],[0,1]]})"),
                    ValidationError);
    // Edge inside a declared bipartition side.
    CHECK_THROWS_AS(parse_instance(
                        R"({"format_version":1,"type":"graph","n_vertices":3,
                            "edges":[[0,1],[1,2]],"bipartition":[[0],[1,2]]})"),
                    ValidationError);
    // Empty interval.
    CHECK_THROWS_AS(parse_instance(
                        R"({"format_version":1,"type":"intervals","jobs":[[2,2,1]]})"),
                    ValidationError);
    // Plain garbage.
    CHECK_THROWS_AS(parse_instance("not json"), ValidationError);
}

TEST_CASE("dimacs parsing accepts comments and validates structure") {
    auto f = parse_dimacs_cnf("c a comment\np cnf 3 2\n1 2 -3 0\n-1 2 3 0\n");
    CHECK(f.n_vars == 3);
    REQUIRE(f.clauses.size() == 2);
    CHECK(f.clauses[0] == std::array<int, 3>{1, 2, -3});
    CHECK(f.clauses[1] == std::array<int, 3>{-1, 2, 3});

    // Clause count mismatch.
    CHECK_THROWS_AS(parse_dimacs_cnf("p cnf 3 2\n1 2 3 0\n"), ValidationError);
    // Repeated variable in a clause.
    CHECK_THROWS_AS(parse_dimacs_cnf("p cnf 3 1\n1 -1 2 0\n"), ValidationError);
    // Literal out of range.
    CHECK_THROWS_AS(parse_dimacs_cnf("p cnf 2 1\n1 2 3 0\n"), ValidationError);
    // Unterminated clause.
    CHECK_THROWS_AS(parse_dimacs_cnf("p cnf 3 1\n1 2 3\n"), ValidationError);
}

TEST_CASE("hashing is stable across runs") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(digest_hex(0xcbf29ce484222325ULL) == "cbf29ce484222325");
    CHECK(digest_hex(0) == "0000000000000000");

    const std::string canonical = serialize_instance(parse_instance(
        R"({"format_version":1,"type":"explicit","n":1,"maximal_sets":[[0]]})"));
    CHECK(fnv1a64(canonical) == fnv1a64(canonical));
}

TEST_CASE("solution files round-trip with certificate and sweep bound") {
    SolutionFileData sol;
    sol.solver = "interval-sweep";
    sol.parameters = {{"mode", "two-bound"}};
    sol.instance_digest = "cbf29ce484222325";
    sol.k = 1;
    sol.l = 1;
    sol.first_stage = {0, 4};
    sol.robust_value = Rational(18);
    sol.lambda_star = Rational(2);
    InterdictionEntry entry;
    entry.interdicted = bit(0);
    entry.recourse = bit(1);
    entry.second_stage = bit(1) | bit(4);
    entry.value = Rational(18);
    sol.certificate.push_back(entry);

    const std::string text = serialize_solution(sol);
    SolutionFileData back = parse_solution(text);
    CHECK(back.solver == sol.solver);
    CHECK(back.parameters == sol.parameters);
    CHECK(back.instance_digest == sol.instance_digest);
    CHECK(back.first_stage == sol.first_stage);
    CHECK(back.robust_value == Rational(18));
    REQUIRE(back.lambda_star.has_value());
    CHECK(*back.lambda_star == Rational(2));
    REQUIRE(back.certificate.size() == 1);
    CHECK(back.certificate[0].interdicted == bit(0));
    CHECK(back.certificate[0].recourse == bit(1));
    CHECK(back.certificate[0].value == Rational(18));
    // The post-recourse set is derivable from the instance, so the file
    // stores only the moves; re-serializing is still byte-identical.
    CHECK(serialize_solution(back) == text);
}

TEST_CASE("reduction payloads embed a parseable graph instance") {
    auto formula = CnfFormula::make(3, {{1, 2, 3}});

    {
        const auto out = reduce_3sat_to_rbm(formula);
        const auto doc = nlohmann::ordered_json::parse(serialize_reduction(out));
        CHECK(doc.at("format_version") == 1);
        CHECK(doc.at("payload") == "reduction");
        CHECK(doc.at("reduction") == "matching");
        CHECK(doc.at("matching_target") == 4);
        CHECK(doc.at("labels").size() == 11);
        Instance inner = parse_instance(doc.at("instance").dump());
        CHECK(inner.type == "graph");
        CHECK(inner.graph->n_vertices == 11);
        CHECK_FALSE(inner.side.empty());
    }
    {
        const auto out = reduce_3sat_to_rwss(formula);
        const auto doc = nlohmann::ordered_json::parse(serialize_reduction(out));
        CHECK(doc.at("reduction") == "stable-set");
        CHECK(doc.at("threshold") == "80");
        Instance inner = parse_instance(doc.at("instance").dump());
        CHECK(inner.graph->n_vertices == 19);
        CHECK(inner.weights.size() == 19);
    }
}
