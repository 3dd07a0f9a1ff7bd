#include <optional>
#include <vector>

#include "doctest.h"
#include "rrc/core_game.hpp"
#include "rrc/feasibility.hpp"

using namespace rrc;

namespace {

// Five intervals on a line: (1,3) (2,5) (4,7) (6,9) (8,10) with weights
// 10, 8, 2, 8, 10.  Overlap pairs: 0-1, 1-2, 2-3, 3-4.
FeasibilitySystem five_interval_system() {
    std::vector<Mask> conflicts(5, 0);
    auto add = [&](int a, int b) {
        conflicts[a] |= bit(b);
        conflicts[b] |= bit(a);
    };
    add(0, 1);
    add(1, 2);
    add(2, 3);
    add(3, 4);
    return FeasibilitySystem::from_conflicts(5, conflicts);
}

const Weights kFiveWeights{Rational(10), Rational(8), Rational(2), Rational(8),
                           Rational(10)};

}  // namespace

TEST_CASE("candidate lambdas cover differences, weights, negations, and zero") {
    {
        const auto ls = candidate_lambdas({Rational(10), Rational(8)});
        const std::vector<Rational> want{Rational(-10), Rational(-8), Rational(-2),
                                         Rational(0),   Rational(2),  Rational(8),
                                         Rational(10)};
        CHECK(ls == want);
    }
    {
        const auto ls = candidate_lambdas({});
        CHECK(ls == std::vector<Rational>{Rational(0)});
    }
    {
        const auto ls = candidate_lambdas({Rational(5), Rational(5)});
        const std::vector<Rational> want{Rational(-5), Rational(0), Rational(5)};
        CHECK(ls == want);
    }
}

TEST_CASE("interdiction scope changes the optimum on a two-branch system") {
    // Maximal sets {0} and {1,2}; weights 3, 2, 2.
    auto sys = FeasibilitySystem::from_maximal_sets(3, {bit(0), bit(1) | bit(2)});
    const Weights w{Rational(3), Rational(2), Rational(2)};

    SUBCASE("first-stage-only removals leave a recoverable branch") {
        auto cert = brute_force_rp(sys, w, 1, 1, InterdictionScope::FirstStageOnly);
        CHECK(cert.worst_case_value == Rational(3));
        CHECK(cert.first_stage == bit(1));

        auto direct =
            robust_value(sys, w, bit(1), 1, 1, InterdictionScope::FirstStageOnly);
        CHECK(direct.worst_case_value == Rational(3));
    }

    SUBCASE("free removals pin every first stage to value two") {
        const Mask sets[] = {0, bit(0), bit(1), bit(2), bit(1) | bit(2)};
        for (Mask s : sets) {
            auto cert = robust_value(sys, w, s, 1, 1, InterdictionScope::AnyElement);
            CHECK(cert.worst_case_value == Rational(2));
        }
        auto best = brute_force_rp(sys, w, 1, 1, InterdictionScope::AnyElement);
        CHECK(best.worst_case_value == Rational(2));
        // Ties go to the heaviest nominal set.
        CHECK(best.first_stage == (bit(1) | bit(2)));
    }
}

TEST_CASE("a single removable element is worth nothing under free removals") {
    auto sys = FeasibilitySystem::from_maximal_sets(1, {bit(0)});
    const Weights w{Rational(5)};
    auto cert = brute_force_rp(sys, w, 1, 1, InterdictionScope::AnyElement);
    CHECK(cert.worst_case_value == Rational(0));
    CHECK(cert.first_stage == bit(0));  // nominal tie-break
}

TEST_CASE("regret report names the damage and the best patch") {
    auto sys = five_interval_system();

    SUBCASE("the nominal optimum has an unpatchable element") {
        // S = {0,2,4}: dropping job 0 leaves {2,4} and no compatible addition.
        auto rep = regret(sys, kFiveWeights, bit(0) | bit(2) | bit(4), 0);
        CHECK(rep.interdicted == 0);
        CHECK(rep.delta == Rational(10));
        CHECK(rep.best_recourse == kNoElement);
    }
    SUBCASE("the robust optimum repairs either end") {
        auto rep = regret(sys, kFiveWeights, bit(0) | bit(4), 0);
        CHECK(rep.delta == Rational(2));
        CHECK(rep.best_recourse == 1);
    }
    SUBCASE("no removal can have negative regret when the set is extendable") {
        auto rep = regret(sys, kFiveWeights, bit(0) | bit(4), kNoElement);
        CHECK(rep.interdicted == kNoElement);
        CHECK(rep.delta == Rational(-2));
        CHECK(rep.best_recourse == 2);
    }
}

TEST_CASE("regret-bounded search on the five-interval instance") {
    auto sys = five_interval_system();

    auto at = [&](long long lambda) {
        return brute_force_lambda_rp(sys, kFiveWeights, Rational(lambda));
    };

    SUBCASE("tight positive bound keeps only the two outer jobs") {
        auto sol = at(2);
        REQUIRE(sol.has_value());
        CHECK(sol->w_opt == Rational(20));
        CHECK(sol->first_stage == (bit(0) | bit(4)));
    }
    SUBCASE("loose bound admits the nominal optimum") {
        auto sol = at(10);
        REQUIRE(sol.has_value());
        CHECK(sol->w_opt == Rational(22));
        CHECK(sol->first_stage == (bit(0) | bit(2) | bit(4)));
    }
    SUBCASE("zero bound forces a middle pair") {
        auto sol = at(0);
        REQUIRE(sol.has_value());
        CHECK(sol->w_opt == Rational(16));
    }
    SUBCASE("negative bounds demand improvement under every removal") {
        auto sol = at(-1);
        REQUIRE(sol.has_value());
        CHECK(sol->w_opt == Rational(8));
        CHECK(sol->first_stage == bit(1));

        auto deep = at(-2);
        REQUIRE(deep.has_value());
        CHECK(deep->w_opt == Rational(8));
    }
    SUBCASE("below the heaviest weight even the empty set fails") {
        CHECK_FALSE(at(-11).has_value());
        auto edge = at(-10);
        REQUIRE(edge.has_value());
        CHECK(edge->w_opt == Rational(0));
    }
}

TEST_CASE("the regret sweep reproduces the exhaustive one-one game") {
    auto sys = five_interval_system();

    LambdaSolver solver = [](const FeasibilitySystem& s, const Weights& w,
                             const Rational& lambda) {
        return brute_force_lambda_rp(s, w, lambda);
    };
    auto sweep = solve_rp_via_lambda(sys, kFiveWeights, solver);
    auto brute = brute_force_rp(sys, kFiveWeights, 1, 1);

    CHECK(sweep.certificate.worst_case_value == brute.worst_case_value);
    CHECK(sweep.certificate.worst_case_value == Rational(18));
    CHECK(sweep.certificate.first_stage == (bit(0) | bit(4)));
    CHECK(sweep.lambda_star == Rational(2));

    // Candidate bounds for weights 10,8,2,8,10.
    const std::vector<Rational> lambdas{Rational(-10), Rational(-8), Rational(-6),
                                        Rational(-2),  Rational(0),  Rational(2),
                                        Rational(6),   Rational(8),  Rational(10)};
    REQUIRE(sweep.profile.size() == lambdas.size());
    for (size_t i = 0; i < lambdas.size(); ++i) {
        CHECK(sweep.profile[i].first == lambdas[i]);
        auto direct = brute_force_lambda_rp(sys, kFiveWeights, lambdas[i]);
        REQUIRE(sweep.profile[i].second.has_value() == direct.has_value());
        if (direct) CHECK(*sweep.profile[i].second == direct->w_opt);
    }
}

TEST_CASE("robust certificates enumerate every single interdiction") {
    auto sys = five_interval_system();
    auto cert = robust_value(sys, kFiveWeights, bit(0) | bit(4), 1, 1);
    CHECK(cert.worst_case_value == Rational(18));
    CHECK(cert.k == 1);
    CHECK(cert.l == 1);
    // One entry per element plus the empty interdiction.
    CHECK(cert.per_interdiction.size() == 6);
    for (const auto& entry : cert.per_interdiction) {
        CHECK(cert.worst_case_value <= entry.value);
        CHECK(sys.feasible(entry.second_stage));
    }
}
