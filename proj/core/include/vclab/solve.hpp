#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "vclab/rational.hpp"

namespace vclab::solve {

// Solver-facing weighted hypergraph: positive rational vertex weights and
// edges as sets of distinct vertices.
struct GenericHypergraph {
    std::vector<Rat> weights;
    std::vector<std::vector<int>> edges;

    int vertex_count() const { return static_cast<int>(weights.size()); }
};

// Throws DomainError on any invariant violation (empty edge, bad id,
// nonpositive weight, repeated vertex within an edge).
void validate(const GenericHypergraph& h);

struct Cover {
    std::vector<int> vertices;  // sorted
    Rat weight;
};

// Keeps each edge, in input order, iff disjoint from all previously kept
// edges; the union of kept edges' vertices is a cover of weight at most
// k times the optimum. An optional seed shuffles the edge order first.
Cover greedy_matching_cover(const GenericHypergraph& h, std::optional<std::uint64_t> shuffle_seed = std::nullopt);

struct Budget {
    int max_vertices = 30;
    long long max_nodes = 1'000'000;
};

struct ExactResult {
    Cover cover;
    long long nodes = 0;
    bool optimal = false;
};

// Minimum-weight vertex cover by branch and bound: branch over the vertices
// of the first uncovered edge; lower bound from greedily chosen disjoint
// uncovered edges (each forces at least its cheapest vertex). Ties between
// equal-weight covers break toward the lexicographically smaller vertex set.
// Throws ResourceError when the budget runs out.
ExactResult exact_min_vc(const GenericHypergraph& h, const Budget& budget = {});

// Complement view: the heaviest independent set. weight(IS) + weight(VC)
// equals the total vertex weight exactly.
ExactResult exact_max_is(const GenericHypergraph& h, const Budget& budget = {});

// Greedy disjoint sub-collection: take the first set, drop everything it
// intersects, recurse. Inputs must have sets of size <= m with no element in
// more than k sets; the output then has at least n/(1+(k-1)m) sets.
std::vector<std::uint64_t> greedy_disjoint_subfamily(const std::vector<std::uint64_t>& sets, int m, int k);

// True iff the cover intersects every edge; independent re-check used by
// tests and reports.
bool is_cover(const GenericHypergraph& h, const std::vector<int>& vertices);

}  // namespace vclab::solve
