#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vclab/rational.hpp"

namespace vclab::game {

// A bipartite projection game: variables Y (range size ry) and Z (range size
// rz <= ry), and constraints that are total functions R_Y -> R_Z. The
// underlying constraint graph is bi-regular and simple (at most one
// constraint per (y,z) pair), which the layered construction relies on.
struct ProjectionGame {
    int y_count = 0;
    int z_count = 0;
    int ry = 0;
    int rz = 0;

    struct Constraint {
        int y = 0;
        int z = 0;
        std::vector<int> table;  // length ry, values in [0, rz)
    };
    std::vector<Constraint> constraints;
};

struct GameLabeling {
    std::vector<int> y_labels;  // values in [0, ry)
    std::vector<int> z_labels;  // values in [0, rz)
};

// Checks every structural invariant; returns all violations found.
// Violations are data, not exceptions.
std::vector<std::string> validate(const ProjectionGame& g);

// Exact fraction of constraints with table[A(y)] == A(z).
Rat satisfied_fraction(const ProjectionGame& g, const GameLabeling& labeling);

struct PlantedGame {
    ProjectionGame game;
    GameLabeling plant;  // satisfies every constraint by construction
};

// Deterministic-in-seed generator of a bi-regular game together with a fully
// satisfying labeling. degree is the Y-side degree; y_count*degree must be
// divisible by z_count and degree must be <= z_count (simple graph).
PlantedGame gen_planted(int y_count, int z_count, int degree, int ry, int rz, std::uint64_t seed);

// Re-randomizes every constraint table, keeping the graph structure. A
// desk-scale stand-in for the unsatisfiable case; no soundness guarantee.
ProjectionGame gen_scrambled(const ProjectionGame& base, std::uint64_t seed);

// Exhaustive optimum over all labelings; only feasible for tiny games.
// Used as an oracle.
Rat brute_force_optimum(const ProjectionGame& g, GameLabeling* best = nullptr);

}  // namespace vclab::game
