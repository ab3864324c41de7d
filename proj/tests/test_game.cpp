#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "vclab/errors.hpp"
#include "vclab/game.hpp"
#include "vclab/rng.hpp"

using namespace vclab;
using namespace vclab::game;

namespace {

ProjectionGame hand_game() {
    // 2 y-variables, 2 z-variables, degree 1 each side; ry=2, rz=2.
    ProjectionGame g;
    g.y_count = 2;
    g.z_count = 2;
    g.ry = 2;
    g.rz = 2;
    g.constraints = {{0, 0, {0, 1}}, {1, 1, {1, 0}}};
    return g;
}

}  // namespace

TEST_CASE("validate accepts generator output and catches hand-made violations") {
    auto planted = gen_planted(4, 2, 2, 3, 2, 7);
    CHECK(validate(planted.game).empty());

    ProjectionGame irregular = hand_game();
    irregular.constraints.push_back({0, 1, {0, 1}});  // y=0 now degree 2, y=1 degree 1
    CHECK_FALSE(validate(irregular).empty());

    ProjectionGame bad_range = hand_game();
    bad_range.constraints[0].table[1] = 2;  // >= rz
    CHECK_FALSE(validate(bad_range).empty());

    ProjectionGame bad_rz = hand_game();
    bad_rz.rz = 3;  // rz > ry
    CHECK_FALSE(validate(bad_rz).empty());

    ProjectionGame dup = hand_game();
    dup.constraints.push_back(dup.constraints[0]);
    CHECK_FALSE(validate(dup).empty());
}

TEST_CASE("satisfied_fraction examples") {
    auto planted = gen_planted(4, 2, 2, 3, 2, 11);
    CHECK(satisfied_fraction(planted.game, planted.plant) == Rat(1));

    ProjectionGame single;
    single.y_count = 1;
    single.z_count = 1;
    single.ry = 2;
    single.rz = 2;
    single.constraints = {{0, 0, {0, 1}}};
    CHECK(satisfied_fraction(single, {{0}, {1}}) == Rat(0));

    // 4 constraints, exactly 3 satisfied by (A(y)=0 everywhere, A(z)=0).
    ProjectionGame four;
    four.y_count = 4;
    four.z_count = 1;
    four.ry = 2;
    four.rz = 2;
    four.constraints = {{0, 0, {0, 1}}, {1, 0, {0, 1}}, {2, 0, {0, 1}}, {3, 0, {1, 0}}};
    CHECK(satisfied_fraction(four, {{0, 0, 0, 0}, {0}}) == Rat(3, 4));

    CHECK_THROWS_AS(satisfied_fraction(four, {{0}, {0}}), DomainError);
}

TEST_CASE("gen_planted determinism and plant optimality") {
    auto a = gen_planted(4, 2, 2, 3, 2, 7);
    auto b = gen_planted(4, 2, 2, 3, 2, 7);
    CHECK(a.game.constraints.size() == b.game.constraints.size());
    for (std::size_t i = 0; i < a.game.constraints.size(); ++i) {
        CHECK(a.game.constraints[i].y == b.game.constraints[i].y);
        CHECK(a.game.constraints[i].z == b.game.constraints[i].z);
        CHECK(a.game.constraints[i].table == b.game.constraints[i].table);
    }
    CHECK(a.plant.y_labels == b.plant.y_labels);

    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto pg = gen_planted(3, 2, 2, 3, 2, seed);
        CHECK(validate(pg.game).empty());
        CHECK(satisfied_fraction(pg.game, pg.plant) == Rat(1));
    }

    CHECK_THROWS_AS(gen_planted(3, 2, 1, 2, 1, 1), DomainError);  // 3*1 % 2 != 0
    CHECK_THROWS_AS(gen_planted(2, 1, 2, 2, 1, 1), DomainError);  // degree > z_count
}

TEST_CASE("gen_scrambled keeps structure, determinism") {
    auto planted = gen_planted(2, 2, 2, 2, 2, 5);
    auto s1 = gen_scrambled(planted.game, 9);
    auto s2 = gen_scrambled(planted.game, 9);
    CHECK(validate(s1).empty());
    for (std::size_t i = 0; i < s1.constraints.size(); ++i) {
        CHECK(s1.constraints[i].y == planted.game.constraints[i].y);
        CHECK(s1.constraints[i].z == planted.game.constraints[i].z);
        CHECK(s1.constraints[i].table == s2.constraints[i].table);
    }
    // Brute-force optimum is an upper bound for any labeling; report-style
    // check that scrambles are usually imperfect.
    int imperfect = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto sc = gen_scrambled(planted.game, seed);
        Rat best = brute_force_optimum(sc);
        CHECK(best <= Rat(1));
        CHECK(best > Rat(0));
        if (best < Rat(1)) ++imperfect;
    }
    MESSAGE("imperfect scrambles out of 20: ", imperfect);
}

TEST_CASE("brute_force_optimum dominates heuristics") {
    Rng rng(42);
    auto planted = gen_planted(2, 2, 2, 2, 2, 13);
    auto sc = gen_scrambled(planted.game, 14);
    GameLabeling best_lab;
    Rat best = brute_force_optimum(sc, &best_lab);
    CHECK(satisfied_fraction(sc, best_lab) == best);
    for (int trial = 0; trial < 50; ++trial) {
        GameLabeling lab;
        for (int y = 0; y < sc.y_count; ++y) lab.y_labels.push_back(rng.uniform_int(sc.ry));
        for (int z = 0; z < sc.z_count; ++z) lab.z_labels.push_back(rng.uniform_int(sc.rz));
        CHECK(satisfied_fraction(sc, lab) <= best);
    }
}
