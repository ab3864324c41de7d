#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>
#include <vector>

#include "vclab/errors.hpp"
#include "vclab/rng.hpp"
#include "vclab/solve.hpp"

using namespace vclab;
using namespace vclab::solve;

namespace {

GenericHypergraph unit_weights(int n, std::vector<std::vector<int>> edges) {
    GenericHypergraph h;
    h.weights.assign(n, Rat(1));
    h.edges = std::move(edges);
    return h;
}

// 2^n brute force oracle.
Rat brute_force_min_vc(const GenericHypergraph& h) {
    const int n = h.vertex_count();
    Rat best(-1);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        bool covers = true;
        for (const auto& e : h.edges) {
            bool hit = false;
            for (int v : e)
                if (mask & (1u << v)) hit = true;
            if (!hit) {
                covers = false;
                break;
            }
        }
        if (!covers) continue;
        Rat w(0);
        for (int v = 0; v < n; ++v)
            if (mask & (1u << v)) w += h.weights[v];
        if (best < Rat(0) || w < best) best = w;
    }
    return best;
}

int brute_force_max_disjoint(const std::vector<std::uint64_t>& sets) {
    const int n = static_cast<int>(sets.size());
    int best = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::uint64_t seen = 0;
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            if (!(mask & (1u << i))) continue;
            if (seen & sets[i]) ok = false;
            seen |= sets[i];
        }
        if (ok) best = std::max(best, std::popcount(mask));
    }
    return best;
}

GenericHypergraph random_instance(Rng& rng, int max_vertices, int k) {
    GenericHypergraph h;
    int n = k + rng.uniform_int(max_vertices - k + 1);
    for (int v = 0; v < n; ++v) h.weights.push_back(Rat(1 + rng.uniform_int(5), 1 + rng.uniform_int(3)));
    int edge_count = 1 + rng.uniform_int(2 * n);
    std::set<std::vector<int>> seen;
    for (int e = 0; e < edge_count; ++e) {
        std::set<int> verts;
        while (static_cast<int>(verts.size()) < k) verts.insert(rng.uniform_int(n));
        std::vector<int> edge(verts.begin(), verts.end());
        if (seen.insert(edge).second) h.edges.push_back(edge);
    }
    return h;
}

}  // namespace

TEST_CASE("validate rejects malformed instances") {
    CHECK_NOTHROW(validate(unit_weights(3, {{0, 1, 2}})));
    CHECK_THROWS_AS(validate(unit_weights(3, {{}})), DomainError);
    CHECK_THROWS_AS(validate(unit_weights(3, {{0, 3}})), DomainError);
    CHECK_THROWS_AS(validate(unit_weights(3, {{0, 0}})), DomainError);
    GenericHypergraph bad = unit_weights(2, {{0, 1}});
    bad.weights[0] = Rat(0);
    CHECK_THROWS_AS(validate(bad), DomainError);
}

TEST_CASE("greedy matching cover examples") {
    auto one = unit_weights(3, {{0, 1, 2}});
    auto c1 = greedy_matching_cover(one);
    CHECK(c1.weight == Rat(3));
    CHECK(is_cover(one, c1.vertices));
    CHECK(exact_min_vc(one).cover.weight == Rat(1));

    auto two = unit_weights(6, {{0, 1, 2}, {3, 4, 5}});
    auto c2 = greedy_matching_cover(two);
    CHECK(c2.weight == Rat(6));
    CHECK(exact_min_vc(two).cover.weight == Rat(2));

    // A shuffled order still yields a cover.
    auto c3 = greedy_matching_cover(two, 123);
    CHECK(is_cover(two, c3.vertices));
}

TEST_CASE("exact_min_vc examples") {
    GenericHypergraph weighted = unit_weights(3, {{0, 1, 2}});
    weighted.weights = {Rat(1), Rat(2), Rat(3)};
    auto res = exact_min_vc(weighted);
    CHECK(res.optimal);
    CHECK(res.cover.weight == Rat(1));
    CHECK(res.cover.vertices == std::vector<int>{0});

    auto complete = unit_weights(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
    auto rc = exact_min_vc(complete);
    CHECK(rc.cover.weight == Rat(2));
    CHECK(rc.cover.weight == brute_force_min_vc(complete));
}

TEST_CASE("exact_min_vc budget exhaustion") {
    Rng rng(9);
    auto h = random_instance(rng, 24, 3);
    Budget tiny;
    tiny.max_nodes = 1;
    CHECK_THROWS_AS(exact_min_vc(h, tiny), ResourceError);
    Budget narrow;
    narrow.max_vertices = 4;
    CHECK_THROWS_AS(exact_min_vc(h, narrow), ResourceError);
}

TEST_CASE("exact_max_is duality") {
    auto edgeless = unit_weights(5, {});
    auto all = exact_max_is(edgeless);
    CHECK(all.cover.vertices == std::vector<int>{0, 1, 2, 3, 4});
    CHECK(all.cover.weight == Rat(5));

    auto complete = unit_weights(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
    CHECK(exact_max_is(complete).cover.weight == Rat(2));

    Rng rng(10);
    for (int trial = 0; trial < 20; ++trial) {
        auto h = random_instance(rng, 10, 3);
        Rat total(0);
        for (const Rat& w : h.weights) total += w;
        CHECK(exact_max_is(h).cover.weight + exact_min_vc(h).cover.weight == total);
    }
}

TEST_CASE("greedy vs exact on random instances, brute force cross-check") {
    Rng rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        int k = 3 + rng.uniform_int(2);
        // Unit weights: the matching argument's k-approximation is a
        // cardinality guarantee and does not hold for arbitrary weights.
        auto h = random_instance(rng, 14, k);
        h.weights.assign(h.weights.size(), Rat(1));
        auto greedy = greedy_matching_cover(h);
        auto exact = exact_min_vc(h);
        CHECK(is_cover(h, greedy.vertices));
        CHECK(is_cover(h, exact.cover.vertices));
        CHECK(greedy.weight <= Rat(k) * exact.cover.weight);
        CHECK(exact.cover.weight == brute_force_min_vc(h));
    }
}

TEST_CASE("greedy_disjoint_subfamily examples") {
    std::vector<std::uint64_t> singles{1, 2, 4, 8};
    CHECK(greedy_disjoint_subfamily(singles, 1, 1).size() == 4);

    std::vector<std::uint64_t> disjoint{0b11, 0b1100, 0b110000};
    CHECK(greedy_disjoint_subfamily(disjoint, 2, 1).size() == 3);

    // Multiplicity violation: element 0 in three sets with k=2.
    std::vector<std::uint64_t> tight{0b1, 0b11, 0b101};
    CHECK_THROWS_AS(greedy_disjoint_subfamily(tight, 2, 2), DomainError);
    // Size violation.
    CHECK_THROWS_AS(greedy_disjoint_subfamily(std::vector<std::uint64_t>{0b111}, 2, 1), DomainError);
}

TEST_CASE("greedy_disjoint_subfamily bound and oracle on random collections") {
    Rng rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        int m = 1 + rng.uniform_int(3);
        int k = 1 + rng.uniform_int(3);
        int n = 1 + rng.uniform_int(12);
        std::vector<int> usage(40, 0);
        std::vector<std::uint64_t> sets;
        for (int i = 0; i < n; ++i) {
            int size = 1 + rng.uniform_int(m);
            std::uint64_t s = 0;
            for (int pick = 0; pick < size; ++pick) {
                for (int attempt = 0; attempt < 100; ++attempt) {
                    int e = rng.uniform_int(40);
                    if (usage[e] < k && !(s & (1ULL << e))) {
                        s |= 1ULL << e;
                        ++usage[e];
                        break;
                    }
                }
            }
            if (s) sets.push_back(s);
        }
        if (sets.empty()) continue;
        auto picked = greedy_disjoint_subfamily(sets, m, k);
        const int nn = static_cast<int>(sets.size());
        const int bound = (nn + (1 + (k - 1) * m) - 1) / (1 + (k - 1) * m);
        CHECK(static_cast<int>(picked.size()) >= bound);
        CHECK(static_cast<int>(picked.size()) <= brute_force_max_disjoint(sets));
        std::uint64_t seen = 0;
        for (auto s : picked) {
            CHECK((seen & s) == 0);
            seen |= s;
        }
    }
}
