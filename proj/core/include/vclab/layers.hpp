#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "vclab/game.hpp"
#include "vclab/rational.hpp"

namespace vclab::layers {

struct Caps {
    long long max_layer_size = 200000;
};

// l layers of tuple variables built over a base projection game. Layer i
// (1-based) holds all tuples in Z^i x Y^{l-i}; its variables take values in
// (R_Z)^i x (R_Y)^{l-i}. Variables and values are enumerated in mixed radix
// with coordinate 1 the most significant digit.
struct LayeredInstance {
    int l = 0;
    game::ProjectionGame base;

    std::vector<long long> layer_sizes;          // [layer-1]
    std::vector<std::vector<int>> y_neighbors;   // y -> sorted distinct z list
    std::vector<std::vector<int>> table_of;      // [y][z] -> constraint index, -1 if absent

    // Explicit constraint pairs for every i < j, keyed by pair_index(i,j).
    std::vector<std::vector<std::pair<long long, long long>>> phi;

    int pair_index(int i, int j) const;

    long long digit_base(int layer, int k) const {  // k is the 1-based coordinate
        return k <= layer ? base.z_count : base.y_count;
    }
    long long value_base(int layer, int k) const { return k <= layer ? base.rz : base.ry; }

    std::vector<int> var_tuple(int layer, long long index) const;
    long long var_index(int layer, const std::vector<int>& tuple) const;

    long long range_size(int layer) const;  // |R_i| = rz^i * ry^(l-i)
    std::vector<int> value_tuple(int layer, long long index) const;
    long long value_index(int layer, const std::vector<int>& tuple) const;

    // True iff (x_i, x_j) carries a constraint: coordinates outside
    // {i+1..j} agree and every coordinate inside has a base constraint.
    bool constrained(int i, long long xi, int j, long long xj) const;

    // Neighbors of a layer-i variable in layer i+1 (the walk step).
    std::vector<long long> successors(int layer, long long var) const;
};

// Per layer, per variable, the assigned value as a coordinate tuple.
struct LayeredLabeling {
    std::vector<std::vector<std::vector<int>>> values;  // [layer-1][var][coordinate-1]
};

struct WeakDensityQuery {
    Rat delta;                           // in (0,1]
    std::vector<int> layer_indices;      // i_1 < ... < i_m
    std::vector<std::vector<char>> sets; // membership flags per queried layer
};

LayeredInstance build_layered(const game::ProjectionGame& g, int l, const Caps& caps = {});

// The unique b with b_k = table_{x_{i,k} -> x_{j,k}}(a_k) on constrained
// coordinates and b_k = a_k elsewhere.
std::vector<int> project_assignment(const LayeredInstance& inst, int i, long long xi, int j, long long xj,
                                    const std::vector<int>& a);

// Lifts a fully satisfying base labeling coordinatewise. The lifted labeling
// satisfies every constraint in every phi_ij.
LayeredLabeling lift_labeling(const LayeredInstance& inst, const game::GameLabeling& a);

struct FractionBetween {
    Rat value;
    bool empty_pair = false;  // degenerate: no constraints, fraction defined as 1
};

FractionBetween satisfied_fraction_between(const LayeredInstance& inst, const LayeredLabeling& b, int i, int j);

struct DecodedLabeling {
    game::GameLabeling labeling;
    Rat achieved;  // base-game satisfied fraction of the best class-pair extraction
};

// Partitions X_i and X_j into classes identical except on coordinate j,
// extracts a base labeling from coordinate j of B per class pair, and returns
// the extraction with the best base satisfied fraction.
DecodedLabeling decode_to_game(const LayeredInstance& inst, const LayeredLabeling& b, int i, int j);

// Fraction of phi constraints between (layer_a, set_a) and (layer_b, set_b)
// with both endpoints selected.
Rat pair_density(const LayeredInstance& inst, int layer_a, const std::vector<char>& set_a, int layer_b,
                 const std::vector<char>& set_b);

struct DensityPair {
    int a = 0, b = 0;  // positions into the query's layer list, a < b
    Rat density;
    std::vector<std::vector<Rat>> all;  // all pairwise densities (upper triangle)
};

// Exhaustive count over all queried pairs; returns the smallest (a,b) with
// density >= delta^2/4. Throws PropertyViolation if none qualifies (the
// construction proves one must exist).
DensityPair weak_density_pair(const LayeredInstance& inst, const WeakDensityQuery& q);

// Monte-Carlo estimate of Pr[E_a and E_b] for the layer-to-layer random walk,
// per queried layer pair. Diagnostic; deterministic in seed.
std::vector<std::vector<double>> random_walk_estimate(const LayeredInstance& inst, const WeakDensityQuery& q,
                                                      std::uint64_t seed, long long trials);

}  // namespace vclab::layers
