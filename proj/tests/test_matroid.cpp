#include <vector>

#include "doctest.h"
#include "rrc/feasibility.hpp"
#include "rrc/matroid.hpp"
#include "rrc/rmb.hpp"

using namespace rrc;

TEST_CASE("greedy basis picks heaviest elements and completes a basis") {
    SUBCASE("uniform rank two") {
        auto m = Matroid::uniform(3, 2);
        const Weights w{Rational(5), Rational(3), Rational(1)};
        CHECK(greedy_max_basis(m, w) == (bit(0) | bit(1)));
    }
    SUBCASE("equal weights break ties toward smaller indices") {
        auto m = Matroid::uniform(2, 1);
        const Weights w{Rational(7), Rational(7)};
        CHECK(greedy_max_basis(m, w) == bit(0));
    }
    SUBCASE("triangle graphic matroid") {
        auto m = Matroid::graphic(3, {{0, 1}, {1, 2}, {0, 2}});
        const Weights w{Rational(4), Rational(4), Rational(1)};
        CHECK(greedy_max_basis(m, w) == (bit(0) | bit(1)));
        CHECK(m.rank() == 2);
    }
    SUBCASE("partition matroid respects per-block caps") {
        auto m = Matroid::partition(3, {{0, 1}, {2}}, {1, 1});
        const Weights w{Rational(2), Rational(9), Rational(1)};
        CHECK(greedy_max_basis(m, w) == (bit(1) | bit(2)));
        CHECK(set_weight(w, greedy_max_basis(m, w)) == Rational(10));
    }
    SUBCASE("negative weights still fill the basis") {
        auto m = Matroid::uniform(3, 2);
        const Weights w{Rational(-1), Rational(-5), Rational(-3)};
        CHECK(greedy_max_basis(m, w) == (bit(0) | bit(2)));
    }
}

TEST_CASE("single-element exchange finds the best substitute or reports a coloop") {
    SUBCASE("uniform matroid swaps in the best leftover") {
        auto m = Matroid::uniform(3, 2);
        const Weights w{Rational(5), Rational(3), Rational(1)};
        CHECK(best_exchange(m, w, bit(0) | bit(1), 0) == 2);
        CHECK(best_exchange(m, w, bit(0) | bit(1), 1) == 2);
    }
    SUBCASE("triangle: the third edge replaces either chosen edge") {
        auto m = Matroid::graphic(3, {{0, 1}, {1, 2}, {0, 2}});
        const Weights w{Rational(4), Rational(4), Rational(1)};
        CHECK(best_exchange(m, w, bit(0) | bit(1), 0) == 2);
    }
    SUBCASE("a bridge has no substitute") {
        auto m = Matroid::graphic(3, {{0, 1}, {1, 2}});
        const Weights w{Rational(1), Rational(1)};
        CHECK(best_exchange(m, w, bit(0) | bit(1), 0) == kNoElement);
    }
}

TEST_CASE("iterative exchange recourse replays deletions in index order") {
    auto m = Matroid::uniform(3, 2);
    const Weights w{Rational(5), Rational(3), Rational(1)};
    const Mask basis = bit(0) | bit(1);

    SUBCASE("one deletion") {
        auto path = exchange_recourse(m, w, basis, bit(0));
        CHECK(path.final_set == (bit(1) | bit(2)));
        CHECK(path.added == bit(2));
        CHECK(path.value == Rational(4));
    }
    SUBCASE("both basis elements deleted") {
        auto path = exchange_recourse(m, w, basis, bit(0) | bit(1));
        CHECK(path.final_set == bit(2));
        CHECK(path.added == bit(2));
        CHECK(path.value == Rational(1));
    }
    SUBCASE("no deletions keep the basis") {
        auto path = exchange_recourse(m, w, basis, 0);
        CHECK(path.final_set == basis);
        CHECK(path.added == 0);
        CHECK(path.value == Rational(8));
    }
}

TEST_CASE("recoverable basis values match the exhaustive game") {
    SUBCASE("uniform rank two, one removal") {
        auto m = Matroid::uniform(3, 2);
        const Weights w{Rational(5), Rational(3), Rational(1)};
        auto cert = solve_kk_rmb(m, w, 1);
        CHECK(cert.worst_case_value == Rational(4));
        CHECK(cert.first_stage == (bit(0) | bit(1)));

        auto brute = brute_force_rp(FeasibilitySystem::from_matroid(m), w, 1, 1);
        CHECK(brute.worst_case_value == cert.worst_case_value);
    }
    SUBCASE("two equal singles, one removal") {
        auto m = Matroid::uniform(2, 1);
        const Weights w{Rational(7), Rational(7)};
        auto cert = solve_kk_rmb(m, w, 1);
        CHECK(cert.worst_case_value == Rational(7));
    }
    SUBCASE("triangle, one removal") {
        auto m = Matroid::graphic(3, {{0, 1}, {1, 2}, {0, 2}});
        const Weights w{Rational(4), Rational(4), Rational(1)};
        auto cert = solve_kk_rmb(m, w, 1);
        CHECK(cert.worst_case_value == Rational(5));
        CHECK(cert.first_stage == (bit(0) | bit(1)));
    }
}

TEST_CASE("exchange-property test separates matroids from near-misses") {
    auto closure = [](int n, std::vector<Mask> tops) {
        std::vector<Mask> family;
        const Mask full = bit(n) - 1;
        for (Mask s = 0; s <= full; ++s) {
            for (Mask t : tops) {
                if ((s & ~t) == 0) {
                    family.push_back(s);
                    break;
                }
            }
        }
        return family;
    };

    SUBCASE("opposite edge pairs of a four-cycle form a matroid") {
        // {0,1},{1,2},{2,3},{0,3} pairwise unions are rank-2 independent sets
        // of the partition matroid with blocks {0,2} and {1,3}.
        auto family = closure(4, {bit(0) | bit(1), bit(1) | bit(2), bit(2) | bit(3),
                                  bit(0) | bit(3)});
        CHECK(is_matroid_family(4, family));
        CHECK_FALSE(find_non_matroid_witness(4, family).has_value());
    }
    SUBCASE("unequal maximal sets break the exchange property") {
        auto family = closure(3, {bit(0) | bit(1), bit(2)});
        CHECK_FALSE(is_matroid_family(3, family));
        auto witness = find_non_matroid_witness(3, family);
        REQUIRE(witness.has_value());
    }
    SUBCASE("perfect matchings of a four-cycle are not a matroid") {
        // Maximal sets {0,2} and {1,3}: exchanging one element at a time
        // cannot move between them.
        auto family = closure(4, {bit(0) | bit(2), bit(1) | bit(3)});
        CHECK_FALSE(is_matroid_family(4, family));
        auto witness = find_non_matroid_witness(4, family);
        REQUIRE(witness.has_value());
        // The witness marks two maximal sets and elements of their symmetric
        // difference.
        const Mask sym = witness->x ^ witness->y;
        CHECK(has_bit(sym, witness->a));
        CHECK(has_bit(sym, witness->b));
        CHECK(has_bit(sym, witness->c));
        CHECK(witness->x != witness->y);
        // Every maximal set inside the union hits a, or both b and c.
        const Mask uni = witness->x | witness->y;
        std::vector<Mask> inside;
        for (Mask s : family) {
            if ((s & ~uni) == 0) inside.push_back(s);
        }
        for (Mask top : maximal_sets_of_family(inside)) {
            const bool hits_a = has_bit(top, witness->a);
            const bool hits_bc = has_bit(top, witness->b) && has_bit(top, witness->c);
            CHECK((hits_a || hits_bc));
        }
    }
}

TEST_CASE("adversarial weights put three on a and two on b and c") {
    {
        NonMatroidWitness w{0, 0, 0, 1, 2};
        const Weights got = adversarial_weights(w, 3);
        const Weights want{Rational(3), Rational(2), Rational(2)};
        CHECK(got == want);
    }
    {
        NonMatroidWitness w{0, 0, 4, 0, 2};
        const Weights got = adversarial_weights(w, 5);
        const Weights want{Rational(2), Rational(0), Rational(2), Rational(0),
                           Rational(3)};
        CHECK(got == want);
    }
}

TEST_CASE("maximal sets of a family drop everything dominated") {
    std::vector<Mask> family{0, bit(0), bit(1), bit(0) | bit(1), bit(2)};
    auto tops = maximal_sets_of_family(family);
    const std::vector<Mask> want{bit(0) | bit(1), bit(2)};
    CHECK(tops == want);
}
