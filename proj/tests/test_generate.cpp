#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "rrc/generate.hpp"

using namespace rrc;

TEST_CASE("the generator core matches the published splitmix64 stream") {
    SplitMix64 rng(0);
    CHECK(rng.next() == 0xE220A8397B1DCDAFULL);
    CHECK(rng.next() == 0x6E789E6AA1B965F4ULL);
    CHECK(rng.next() == 0x06C45D188009454FULL);
}

TEST_CASE("generators are pure functions of their seed") {
    auto a = gen_intervals(9, 20, 10, 42);
    auto b = gen_intervals(9, 20, 10, 42);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].start == b[i].start);
        CHECK(a[i].finish == b[i].finish);
        CHECK(a[i].weight == b[i].weight);
    }

    auto g1 = gen_bipartite_graph(12, 0.4, 7);
    auto g2 = gen_bipartite_graph(12, 0.4, 7);
    CHECK(g1.graph.edges == g2.graph.edges);
    CHECK(g1.side == g2.side);

    auto f1 = gen_cnf3(4, 6, 99);
    auto f2 = gen_cnf3(4, 6, 99);
    CHECK(f1.clauses == f2.clauses);

    CHECK(gen_weights(8, 0, 9, 5) == gen_weights(8, 0, 9, 5));
    CHECK(gen_explicit_family(5, 11) == gen_explicit_family(5, 11));

    // Different seeds should not produce identical corpora (sanity check).
    auto c = gen_intervals(9, 20, 10, 1042);
    bool identical = true;
    for (size_t i = 0; i < a.size(); ++i) {
        identical = identical && a[i].start == c[i].start &&
                    a[i].finish == c[i].finish && a[i].weight == c[i].weight;
    }
    CHECK_FALSE(identical);
}

TEST_CASE("generated intervals respect the horizon and weight bounds") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        auto jobs = gen_intervals(10, 20, 10, seed);
        CHECK(jobs.size() == 10);
        CHECK_NOTHROW(validate_jobs(jobs));
        for (const auto& j : jobs) {
            CHECK(j.start >= 0);
            CHECK(j.start < j.finish);
            CHECK(j.finish <= 20);
            CHECK(j.weight >= Rational(1));
            CHECK(j.weight <= Rational(10));
            CHECK(j.weight.is_integer());
        }
    }
}

TEST_CASE("generated bipartite graphs only cross sides") {
    auto sample = gen_bipartite_graph(14, 0.5, 8);
    CHECK(sample.graph.n_vertices == 14);
    REQUIRE(sample.side.size() == 14);
    for (const auto& [u, v] : sample.graph.edges) {
        CHECK(sample.side[static_cast<size_t>(u)] !=
              sample.side[static_cast<size_t>(v)]);
    }
    auto declared = bipartition(sample.graph);
    CHECK(declared.has_value());
}

TEST_CASE("generated partition matroids cover the ground set with valid caps") {
    for (std::uint64_t seed : {900ULL, 901ULL, 902ULL}) {
        auto m = gen_partition_matroid(8, 4, seed);
        REQUIRE(m.kind() == Matroid::Kind::Partition);
        const auto& blocks = m.partition_blocks();
        const auto& caps = m.partition_caps();
        REQUIRE(blocks.size() == caps.size());
        std::set<int> seen;
        for (size_t b = 0; b < blocks.size(); ++b) {
            CHECK(!blocks[b].empty());
            CHECK(caps[b] >= 1);
            CHECK(caps[b] <= static_cast<int>(blocks[b].size()));
            for (int e : blocks[b]) {
                CHECK(seen.insert(e).second);  // no element in two blocks
                CHECK(e >= 0);
                CHECK(e < 8);
            }
        }
        CHECK(seen.size() == 8);
    }
}

TEST_CASE("generated explicit families are downward closed and contain empty") {
    for (std::uint64_t seed : {5ULL, 6ULL, 7ULL}) {
        auto family = gen_explicit_family(5, seed);
        REQUIRE(!family.empty());
        CHECK(std::find(family.begin(), family.end(), Mask{0}) != family.end());
        // Downward closure: remove any element and stay in the family.
        for (Mask s : family) {
            for_each_bit(s, [&](int i) {
                const Mask sub = s & ~bit(i);
                CHECK(std::find(family.begin(), family.end(), sub) != family.end());
            });
        }
    }
}

TEST_CASE("generated formulas use three distinct variables per clause") {
    auto f = gen_cnf3(5, 12, 1300);
    CHECK(f.n_vars == 5);
    CHECK(f.clauses.size() == 12);
    for (const auto& clause : f.clauses) {
        std::set<int> vars;
        for (int lit : clause) {
            CHECK(lit != 0);
            CHECK(std::abs(lit) <= 5);
            vars.insert(std::abs(lit));
        }
        CHECK(vars.size() == 3);
    }
}

TEST_CASE("generated weights stay within the requested range") {
    auto w = gen_weights(20, -3, 17, 4);
    REQUIRE(w.size() == 20);
    for (const auto& x : w) {
        CHECK(x >= Rational(-3));
        CHECK(x <= Rational(17));
        CHECK(x.is_integer());
    }
}
