#include <array>
#include <string>
#include <vector>

#include "doctest.h"
#include "rrc/cnf.hpp"
#include "rrc/graph.hpp"
#include "rrc/reductions.hpp"

using namespace rrc;

namespace {

CnfFormula one_clause_all_positive() {
    return CnfFormula::make(3, {{1, 2, 3}});
}

// Every sign pattern over three variables, eight clauses: unsatisfiable,
// and minimal for that variable count.
CnfFormula all_sign_patterns() {
    std::vector<std::array<int, 3>> clauses;
    for (int s = 0; s < 8; ++s) {
        clauses.push_back({(s & 1) ? 1 : -1, (s & 2) ? 2 : -2, (s & 4) ? 3 : -3});
    }
    return CnfFormula::make(3, clauses);
}

}  // namespace

TEST_CASE("formula helpers evaluate and decide satisfiability") {
    auto f = one_clause_all_positive();
    CHECK(f.satisfied_by(0b001));
    CHECK_FALSE(f.satisfied_by(0b000));
    auto sat = satisfiable_exhaustive(f);
    REQUIRE(sat.has_value());
    CHECK(*sat == 0b001);  // smallest satisfying assignment

    CHECK_FALSE(satisfiable_exhaustive(all_sign_patterns()).has_value());
}

TEST_CASE("matching reduction lays out the documented gadget") {
    const auto out = reduce_3sat_to_rbm(one_clause_all_positive());
    const Graph& g = out.graph;

    // 3 variables, 1 clause: a_i, na_i, b_i, c_1, z_1.
    CHECK(g.n_vertices == 11);
    CHECK(g.edges.size() == 10);
    CHECK(out.matching_target == 4);  // m + n
    CHECK_FALSE(out.has_threshold);

    const std::vector<std::string> labels{"a1", "a2", "a3", "na1", "na2", "na3",
                                          "b1", "b2", "b3", "c1", "z1"};
    CHECK(out.vertex_labels == labels);

    const std::vector<std::pair<int, int>> edges{{0, 6}, {3, 6}, {1, 7}, {4, 7},
                                                 {2, 8}, {5, 8}, {9, 10}, {0, 9},
                                                 {1, 9}, {2, 9}};
    CHECK(g.edges == edges);

    CHECK(bipartition(g).has_value());
    CHECK(max_matching(g).size == 4);
}

TEST_CASE("matching reduction repairability tracks satisfiability") {
    SUBCASE("satisfiable: a repairable maximum matching exists") {
        const auto out = reduce_3sat_to_rbm(one_clause_all_positive());
        auto found = brute_force_repairable_matching(out.graph);
        REQUIRE(found.has_value());
        CHECK(popcount(*found) == out.matching_target);
    }
    SUBCASE("unsatisfiable: every maximum matching has a fragile edge") {
        const auto out = reduce_3sat_to_rbm(all_sign_patterns());
        CHECK(out.graph.n_vertices == 3 * 3 + 2 * 8);
        CHECK(out.matching_target == 11);
        auto found = brute_force_repairable_matching(out.graph, 44, 400'000'000);
        CHECK_FALSE(found.has_value());
    }
}

TEST_CASE("stable-set reduction lays out the documented weighted gadget") {
    const auto out = reduce_3sat_to_rwss(one_clause_all_positive());
    const Graph& g = out.graph;

    // Per variable: a, na, b, b', b''.  Per clause: c and three connectors.
    CHECK(g.n_vertices == 5 * 3 + 4 * 1);
    REQUIRE(out.has_threshold);

    const std::vector<std::string> labels{
        "a1", "a2", "a3", "na1", "na2", "na3", "b1",   "b2",   "b3",  "b1_1",
        "b2_1", "b3_1", "b1_2", "b2_2", "b3_2", "c1", "c1_1", "c1_2", "c1_3"};
    CHECK(out.vertex_labels == labels);

    // r = 2, s = (2n + 3m) r + 2n + 1 = 25, threshold (m+n-1)s + r + n = 80.
    const Rational s(25), r(2), unit(1);
    CHECK(out.threshold == Rational(80));
    REQUIRE(out.vertex_weights.size() == 19);
    for (int v = 0; v < 6; ++v) CHECK(out.vertex_weights[v] == unit);
    for (int v = 6; v < 9; ++v) CHECK(out.vertex_weights[v] == s);
    for (int v = 9; v < 15; ++v) CHECK(out.vertex_weights[v] == r);
    CHECK(out.vertex_weights[15] == s);
    for (int v = 16; v < 19; ++v) CHECK(out.vertex_weights[v] == r);

    const std::vector<std::pair<int, int>> edges{
        {6, 9},  {6, 12}, {0, 9},  {3, 12}, {7, 10}, {7, 13}, {1, 10}, {4, 13},
        {8, 11}, {8, 14}, {2, 11}, {5, 14}, {15, 16}, {15, 17}, {15, 18},
        {0, 16}, {1, 17}, {2, 18}};
    CHECK(g.edges == edges);
    CHECK(bipartition(g).has_value());
}

TEST_CASE("robust stable-set decision on hand-checked graphs") {
    SUBCASE("one vertex: the removal always eats it") {
        Graph g = Graph::simple(1, {});
        const Weights w{Rational(5)};
        CHECK(robust_stable_set_at_least(g, w, Rational(0)));
        CHECK_FALSE(robust_stable_set_at_least(g, w, Rational(1)));
    }
    SUBCASE("one edge: the other endpoint steps in") {
        Graph g = Graph::simple(2, {{0, 1}});
        const Weights w{Rational(3), Rational(3)};
        CHECK(robust_stable_set_at_least(g, w, Rational(3)));
        CHECK_FALSE(robust_stable_set_at_least(g, w, Rational(4)));
    }
}

TEST_CASE("stable-set reduction decision agrees with satisfiability on small formulas") {
    {
        const auto out = reduce_3sat_to_rwss(one_clause_all_positive());
        CHECK(robust_stable_set_at_least(out.graph, out.vertex_weights, out.threshold));
    }
    {
        auto f = CnfFormula::make(3, {{1, 2, 3}, {-1, -2, -3}});
        REQUIRE(satisfiable_exhaustive(f).has_value());
        const auto out = reduce_3sat_to_rwss(f);
        CHECK(robust_stable_set_at_least(out.graph, out.vertex_weights, out.threshold));
    }
}

TEST_CASE("stable-set reduction has a known blind spot at tiny connector weight") {
    // With connector weight r = 2, the baseline set of all literal, hub, and
    // clause vertices guarantees (n + m - 1) s + 2n even when nothing can be
    // repaired, because the one removal destroys at most one heavy vertex.
    // For n >= 2 that alone reaches the threshold (m+n-1)s + r + n, so the
    // decision is `true` on this unsatisfiable formula: the reduction's
    // "unsatisfiable => below threshold" direction needs a larger connector
    // weight than this regime provides.  It is pinned here as documented
    // behavior rather than hidden.
    const auto out = reduce_3sat_to_rwss(all_sign_patterns());
    REQUIRE(out.has_threshold);
    // n = 3, m = 8: s = (2*3 + 3*8) * 2 + 2*3 + 1 = 67, threshold = 675.
    CHECK(out.threshold == Rational(675));
    // Baseline guarantee: (n + m - 1) s + 2 n = 10 * 67 + 6 = 676 >= 675.
    CHECK(robust_stable_set_at_least(out.graph, out.vertex_weights, out.threshold,
                                     400'000'000));
}
