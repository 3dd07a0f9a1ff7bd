#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "rrc/generate.hpp"
#include "rrc/interval.hpp"

using namespace rrc;

namespace {

std::vector<Job> five_jobs() {
    return {{1, 3, Rational(10)},
            {2, 5, Rational(8)},
            {4, 7, Rational(2)},
            {6, 9, Rational(8)},
            {8, 10, Rational(10)}};
}

ColoredJob colored(long long rs, long long re, long long os, long long oe,
                   long long w) {
    ColoredJob j;
    j.red_start = rs;
    j.red_end = re;
    j.outer_start = os;
    j.outer_end = oe;
    j.weight = Rational(w);
    return j;
}

}  // namespace

TEST_CASE("job validation rejects malformed inputs") {
    CHECK_NOTHROW(validate_jobs({{0, 1, Rational(1)}}));
    CHECK_THROWS(validate_jobs({{3, 3, Rational(1)}}));   // empty interval
    CHECK_THROWS(validate_jobs({{5, 2, Rational(1)}}));   // reversed
    CHECK_THROWS(validate_jobs({{0, 1, Rational(-1)}}));  // negative weight
}

TEST_CASE("plain interval scheduling picks the heavier overlap") {
    std::vector<Job> jobs{{0, 2, Rational(1)}, {1, 3, Rational(5)}};
    auto sel = solve_is_dp(jobs);
    CHECK(sel.value == Rational(5));
    CHECK(sel.selected == bit(1));
    CHECK(sel.feasible);
}

TEST_CASE("the five-interval instance nominal optimum takes jobs 0 2 4") {
    auto sel = solve_is_dp(five_jobs());
    CHECK(sel.value == Rational(22));
    CHECK(sel.selected == (bit(0) | bit(2) | bit(4)));
}

TEST_CASE("colored feasibility forbids red intervals inside foreign envelopes") {
    std::vector<ColoredJob> jobs{colored(0, 3, 0, 3, 1), colored(2, 5, 2, 5, 1)};
    CHECK(isc_feasible(jobs, {0}));
    CHECK(isc_feasible(jobs, {1}));
    CHECK_FALSE(isc_feasible(jobs, {0, 1}));

    // Disjoint reds may sit inside touching envelopes only if the envelopes
    // avoid the other red part.
    std::vector<ColoredJob> wide{colored(0, 2, 0, 4, 1), colored(2, 4, 2, 4, 1)};
    CHECK_FALSE(isc_feasible(wide, {0, 1}));  // red 1 meets envelope 0
}

TEST_CASE("two-coordinate sweep solves small colored instances exactly") {
    SUBCASE("single job") {
        std::vector<ColoredJob> jobs{colored(0, 2, 0, 2, 7)};
        auto sel = solve_isc_dp(jobs);
        CHECK(sel.value == Rational(7));
        CHECK(sel.selected == std::vector<int>{0});
        CHECK(sel.feasible);
    }
    SUBCASE("blue margin blocks a neighbor the reds alone would allow") {
        std::vector<ColoredJob> jobs{colored(0, 2, 0, 4, 3), colored(3, 5, 3, 5, 3)};
        auto sel = solve_isc_dp(jobs);
        CHECK(sel.value == Rational(3));
        CHECK(sel.selected.size() == 1);
    }
    SUBCASE("compatible pair is taken whole") {
        std::vector<ColoredJob> jobs{colored(0, 2, 0, 2, 3), colored(2, 4, 2, 4, 3)};
        auto sel = solve_isc_dp(jobs);
        CHECK(sel.value == Rational(6));
        CHECK(sel.selected == std::vector<int>{0, 1});
    }
}

TEST_CASE("the transposed lookup undercounts on an asymmetric pair") {
    // Job A: red [0,2) in envelope [0,4).  Job B: red [5,7) in envelope [3,7).
    // A's envelope and B's red are disjoint, likewise B's envelope and A's
    // red, so both jobs fit together.
    std::vector<ColoredJob> jobs{colored(0, 2, 0, 4, 1), colored(5, 7, 3, 7, 1)};
    REQUIRE(isc_feasible(jobs, {0, 1}));

    auto exact = solve_isc_dp(jobs, IscDpMode::TwoBound);
    CHECK(exact.value == Rational(2));
    CHECK(exact.feasible);

    auto alt = solve_isc_dp(jobs, IscDpMode::AltLookup);
    CHECK(alt.value == Rational(1));  // the transposed bound rejects the pair
    CHECK(alt.feasible);              // what it returns is still feasible
}

TEST_CASE("grid sweep, chain recursion, and enumeration agree on random instances") {
    SplitMix64 rng(20260818);
    for (int iter = 0; iter < 50; ++iter) {
        const int n = 1 + static_cast<int>(rng.next() % 9);
        std::vector<ColoredJob> jobs;
        for (int i = 0; i < n; ++i) {
            const long long rs = static_cast<long long>(rng.next() % 18);
            const long long re = rs + 1 + static_cast<long long>(rng.next() % 4);
            const long long os = rs - static_cast<long long>(rng.next() % 3);
            const long long oe = re + static_cast<long long>(rng.next() % 3);
            ColoredJob j = colored(rs, re, os, oe, 1 + static_cast<long long>(rng.next() % 9));
            jobs.push_back(j);
        }
        auto dp = solve_isc_dp(jobs);
        auto chain = isc_chain_reference(jobs);
        auto brute = brute_force_isc(jobs);
        CHECK(dp.value == chain.value);
        CHECK(dp.value == brute.value);
        CHECK(isc_feasible(jobs, dp.selected));
        CHECK(isc_feasible(jobs, chain.selected));
    }
}

TEST_CASE("colored instances may outgrow a 64-bit selection mask") {
    // Nine staggered jobs under a permissive bound keep every universal-path
    // entry and all 72 private pairs: 81 colored entries, more than any
    // fixed-width mask of ground-set size can index.
    std::vector<Job> jobs;
    for (int i = 0; i < 9; ++i) {
        jobs.push_back({i, i + 2, Rational(i + 1)});
    }
    auto built = build_isc_instance(jobs, kNoElement, kNoElement, Rational(100));
    REQUIRE(built.size() == 81);
    auto dp = solve_isc_dp(built);
    auto chain = isc_chain_reference(built);
    CHECK(dp.value == chain.value);
    CHECK(dp.feasible);
    CHECK(isc_feasible(built, dp.selected));

    // The per-bound solver built on top agrees with the exhaustive oracle.
    const auto sys = interval_system(jobs);
    Weights w;
    for (const auto& j : jobs) w.push_back(j.weight);
    auto fast = solve_lambda_ris(jobs, Rational(100));
    auto slow = brute_force_lambda_rp(sys, w, Rational(100));
    REQUIRE(fast.has_value());
    REQUIRE(slow.has_value());
    CHECK(fast->w_opt == slow->w_opt);
}

TEST_CASE("a backup pair's colored instance keeps only affordable entries") {
    std::vector<Job> jobs{{1, 3, Rational(10)}, {2, 5, Rational(8)}};

    // No universal backup, bound 2: losing job 0 and re-placing job 1 costs
    // 10 - 8 = 2 (kept); the reverse costs 8 - 10 = -2 (kept); both
    // universal-path entries cost the full weight (dropped).
    auto built = build_isc_instance(jobs, kNoElement, kNoElement, Rational(2));
    REQUIRE(built.size() == 2);
    for (const auto& entry : built) {
        CHECK(entry.origin == ColoredJob::Origin::PrivatePair);
        CHECK(entry.lambda_value <= Rational(2));
        CHECK(entry.outer_start == 1);
        CHECK(entry.outer_end == 5);
    }
    CHECK(built[0].red_start == 1);
    CHECK(built[0].red_end == 3);
    CHECK(built[0].source_job == 0);
    CHECK(built[0].backup_job == 1);
    CHECK(built[0].lambda_value == Rational(2));
    CHECK(built[1].red_start == 2);
    CHECK(built[1].red_end == 5);
    CHECK(built[1].source_job == 1);
    CHECK(built[1].backup_job == 0);
    CHECK(built[1].lambda_value == Rational(-2));

    // The DP-ready view of the same pair drops nothing further here.
    auto ready = lambda_ris_selectables(jobs, kNoElement, kNoElement, Rational(2));
    CHECK(ready.size() == built.size());
}

TEST_CASE("backup pairs depend on the sign of the bound") {
    std::vector<Job> jobs{{0, 2, Rational(5)}, {3, 5, Rational(3)}};

    SUBCASE("nonnegative bounds try no backup and each universal backup") {
        auto pairs = lambda_ris_backup_pairs(jobs, Rational(0));
        const std::vector<std::pair<int, int>> want{
            {kNoElement, kNoElement}, {0, kNoElement}, {1, kNoElement}};
        CHECK(pairs == want);
    }
    SUBCASE("negative bounds need two backups heavy enough to improve") {
        auto pairs = lambda_ris_backup_pairs(jobs, Rational(-3));
        const std::vector<std::pair<int, int>> want{{0, 1}};
        CHECK(pairs == want);

        // -4 needs both backups of weight >= 4; job 1 is too light.
        CHECK(lambda_ris_backup_pairs(jobs, Rational(-4)).empty());
    }
}

TEST_CASE("regret-bounded interval search on degenerate instances") {
    SUBCASE("single job: only the empty set survives a nonnegative bound") {
        std::vector<Job> jobs{{0, 2, Rational(5)}};
        auto sol = solve_lambda_ris(jobs, Rational(0));
        REQUIRE(sol.has_value());
        CHECK(sol->w_opt == Rational(0));
        CHECK(sol->first_stage == 0);

        CHECK_FALSE(solve_lambda_ris(jobs, Rational(-5)).has_value());
    }
    SUBCASE("bound below minus the top weight is infeasible") {
        CHECK_FALSE(solve_lambda_ris(five_jobs(), Rational(-11)).has_value());
    }
}

TEST_CASE("regret-bounded interval search matches the exhaustive oracle") {
    const auto jobs = five_jobs();
    const auto sys = interval_system(jobs);
    Weights w;
    for (const auto& j : jobs) w.push_back(j.weight);

    for (const Rational& lambda : candidate_lambdas(w)) {
        auto fast = solve_lambda_ris(jobs, lambda);
        auto slow = brute_force_lambda_rp(sys, w, lambda);
        REQUIRE(fast.has_value() == slow.has_value());
        if (fast) {
            CHECK(fast->w_opt == slow->w_opt);
            // Re-verify the returned set independently.
            for (int f = kNoElement; f < static_cast<int>(jobs.size()); ++f) {
                auto rep = regret(sys, w, fast->first_stage, f);
                CHECK(rep.delta <= lambda);
            }
        }
    }
}

TEST_CASE("one-removal interval solver on the five-interval instance") {
    auto res = solve_ris(five_jobs());
    CHECK(res.certificate.worst_case_value == Rational(18));
    CHECK(res.certificate.first_stage == (bit(0) | bit(4)));
    CHECK(res.lambda_star == Rational(2));

    // Every evaluated bound agrees with the exhaustive subproblem, and the
    // sweep stops once larger bounds cannot beat the incumbent: the last
    // evaluated candidate is 2.
    const auto jobs = five_jobs();
    const auto sys = interval_system(jobs);
    Weights w;
    for (const auto& j : jobs) w.push_back(j.weight);

    REQUIRE(!res.profile.empty());
    CHECK(res.profile.back().first == Rational(2));
    Rational prev;
    bool have_prev = false;
    for (const auto& [lambda, w_opt] : res.profile) {
        auto slow = brute_force_lambda_rp(sys, w, lambda);
        REQUIRE(w_opt.has_value() == slow.has_value());
        if (w_opt) CHECK(*w_opt == slow->w_opt);
        if (have_prev) CHECK(prev < lambda);  // strictly ascending sweep
        prev = lambda;
        have_prev = true;
    }

    // Spot values on the profile.
    for (const auto& [lambda, w_opt] : res.profile) {
        if (lambda == Rational(-2)) CHECK(*w_opt == Rational(8));
        if (lambda == Rational(0)) CHECK(*w_opt == Rational(16));
        if (lambda == Rational(2)) CHECK(*w_opt == Rational(20));
    }
}

TEST_CASE("one-removal interval solver handles trivial shapes") {
    SUBCASE("a single job is always lost") {
        std::vector<Job> jobs{{0, 2, Rational(5)}};
        auto res = solve_ris(jobs);
        CHECK(res.certificate.worst_case_value == Rational(0));
    }
    SUBCASE("two identical jobs back each other up") {
        std::vector<Job> jobs{{0, 2, Rational(5)}, {0, 2, Rational(5)}};
        auto res = solve_ris(jobs);
        CHECK(res.certificate.worst_case_value == Rational(5));
        CHECK(res.certificate.first_stage == 0);  // commit nothing, recover either
        CHECK(res.lambda_star == Rational(-5));
    }
}

TEST_CASE("the transposed lookup still yields a sound lower bound end to end") {
    auto exact = solve_ris(five_jobs());
    auto alt = solve_ris(five_jobs(), IscDpMode::AltLookup);
    CHECK(alt.certificate.worst_case_value <= exact.certificate.worst_case_value);
}
