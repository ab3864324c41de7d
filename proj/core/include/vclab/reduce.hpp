#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "vclab/game.hpp"
#include "vclab/layers.hpp"
#include "vclab/rational.hpp"
#include "vclab/setfam.hpp"
#include "vclab/solve.hpp"

namespace vclab::reduce {

using setfam::Mask;

struct Caps {
    int max_range = 8;             // |R_i| per layer
    long long max_edges = 2'000'000;  // explicit mode only
};

enum class EdgeMode { Explicit, Implicit };

// The long-code hypergraph over a layered instance: one block of 2^{|R_i|}
// vertices per variable (a vertex is a subset of that variable's range), with
// p-biased weights 1/(l |X_i|) mu_p(v). Hyperedges take k-1 vertices from a
// block and one from a constrained partner block, whenever the projected
// intersection misses the partner subset entirely.
struct LongCodeHypergraph {
    int k = 3;
    Rat p;
    EdgeMode mode = EdgeMode::Explicit;
    std::shared_ptr<const layers::LayeredInstance> source;

    struct Block {
        int layer = 0;        // 1-based
        long long var = 0;    // index within the layer
        int range = 0;        // |R_i|
        long long vertex_start = 0;
    };
    std::vector<Block> blocks;                 // global variable order: layer 1..l, then var index
    std::vector<long long> layer_block_start;  // first global var id of each layer
    long long vertex_count = 0;

    // One entry per layered constraint, with the pointwise projection
    // R_i -> R_j materialized as a value-index map.
    struct BlockPair {
        int i = 0, j = 0;
        long long xi = 0, xj = 0;
        long long ga = 0, gb = 0;  // global var ids
        std::vector<int> proj;
    };
    std::vector<BlockPair> pairs;

    // Explicit mode only: sorted k-multisets of vertex ids, deduplicated.
    std::vector<std::vector<long long>> edges;

    long long global_var(int layer, long long var) const { return layer_block_start[layer - 1] + var; }
    long long vertex_id(long long gvar, Mask subset) const { return blocks[gvar].vertex_start + subset; }
    // (global var, subset mask) of a vertex id.
    std::pair<long long, Mask> vertex(long long vid) const;
    Rat vertex_weight(long long vid) const;
    Rat total_weight() const;
};

// A vertex subset with its exact cached weight.
struct VertexSet {
    std::vector<long long> ids;  // sorted, distinct
    Rat weight;
};

VertexSet make_vertex_set(const LongCodeHypergraph& h, std::vector<long long> ids);
VertexSet complement(const LongCodeHypergraph& h, const VertexSet& s);

// p = 1 - 1/(k-1-eps), exact. Requires k >= 3 and 0 < eps < k-2.
Rat bias_from_k_eps(int k, const Rat& epsilon);

LongCodeHypergraph build_hypergraph(std::shared_ptr<const layers::LayeredInstance> inst, int k, const Rat& p,
                                    const Caps& caps = {}, EdgeMode mode = EdgeMode::Explicit);

// The union over variables x of all vertices containing the lifted value of
// x. Weight is exactly p; independent by construction.
VertexSet completeness_witness(const LongCodeHypergraph& h, const game::GameLabeling& a);

struct IndependenceCheck {
    bool independent = false;
    std::vector<long long> violating_edge;  // one fully-contained edge when false
};

// No hyperedge has all of its distinct vertices inside s. Implicit mode
// iterates the edge predicate without materializing edges; both modes agree.
IndependenceCheck is_independent(const LongCodeHypergraph& h, const VertexSet& s);

struct DecodeResult {
    int layer_i = 0, layer_j = 0;
    bool hypotheses_met = false;  // enough dense layers for the weak-density argument
    int t = 0;                    // intersection threshold used, t(eps/2, k-1, p)
    Rat density;                  // constraint density of the chosen pair
    std::map<long long, Mask> b_sets;       // x in X -> B(x), |B(x)| < t
    std::map<long long, int> y_assignment;  // y in Y -> maxvar value index
    Rat expected_fraction;        // exact expectation over uniform a_x in B(x)
    double analytic_bound = 0.0;     // 1/(t^2 log(eps/4)/log(1-(1-p)^t))
};

// The soundness-side decoding procedure run on a concrete independent set:
// dense blocks -> dense layer pair -> small-intersection tuples -> maxvar.
// When fewer than ceil(8/eps) layers qualify (small l), falls back to the
// densest available pair and reports hypotheses_met = false.
DecodeResult decode_independent_set(const LongCodeHypergraph& h, const VertexSet& independent, const Rat& epsilon);

// floor(log(eps/4)/log(1-(1-p)^t)): the maximum number of pairwise disjoint
// projection sets compatible with block weight >= eps/4.
long long disjointness_budget(const Rat& epsilon, const Rat& p, long long t);

// The proof's lower bound on the expected satisfied fraction. Underflows to 0
// for large t, which keeps the bound valid.
double soundness_bound(const Rat& epsilon, const Rat& p, long long t);

// Explicit-mode conversion for the solvers; edges become distinct-vertex sets.
solve::GenericHypergraph to_generic(const LongCodeHypergraph& h);

}  // namespace vclab::reduce
