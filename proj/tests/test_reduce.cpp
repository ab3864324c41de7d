#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <bit>
#include <memory>
#include <set>
#include <vector>

#include "vclab/errors.hpp"
#include "vclab/game.hpp"
#include "vclab/layers.hpp"
#include "vclab/reduce.hpp"
#include "vclab/rng.hpp"
#include "vclab/solve.hpp"

using namespace vclab;
using namespace vclab::reduce;

namespace {

struct Toy {
    game::GameLabeling plant;
    std::shared_ptr<layers::LayeredInstance> inst;
    LongCodeHypergraph h;
};

Toy make_toy(int y, int z, int degree, int ry, int rz, int l, std::uint64_t seed, int k, const Rat& eps,
             EdgeMode mode = EdgeMode::Explicit) {
    auto pg = game::gen_planted(y, z, degree, ry, rz, seed);
    Toy t;
    t.plant = pg.plant;
    t.inst = std::make_shared<layers::LayeredInstance>(layers::build_layered(pg.game, l));
    t.h = build_hypergraph(t.inst, k, bias_from_k_eps(k, eps), {}, mode);
    return t;
}

// Brute-force edge enumeration straight from the definition.
std::set<std::vector<long long>> oracle_edges(const LongCodeHypergraph& h) {
    std::set<std::vector<long long>> out;
    const int s = h.k - 1;
    for (const auto& bp : h.pairs) {
        const int ra = h.blocks[bp.ga].range;
        const int rb = h.blocks[bp.gb].range;
        const long long na = 1LL << ra;
        std::vector<long long> pick(s, 0);
        while (true) {
            setfam::Mask inter = static_cast<setfam::Mask>((1u << ra) - 1);
            bool first = true;
            for (long long v : pick) {
                inter = first ? static_cast<setfam::Mask>(v) : (inter & static_cast<setfam::Mask>(v));
                first = false;
            }
            setfam::Mask projected = 0;
            for (int a = 0; a < ra; ++a)
                if (inter & (1u << a)) projected |= setfam::Mask{1} << bp.proj[a];
            for (long long u = 0; u < (1LL << rb); ++u) {
                if (projected & static_cast<setfam::Mask>(u)) continue;
                std::vector<long long> edge;
                for (long long v : pick) edge.push_back(h.vertex_id(bp.ga, static_cast<setfam::Mask>(v)));
                std::sort(edge.begin(), edge.end());
                edge.push_back(h.vertex_id(bp.gb, static_cast<setfam::Mask>(u)));
                out.insert(edge);
            }
            int pos = s - 1;
            while (pos >= 0 && pick[pos] == na - 1) pick[pos--] = 0;
            if (pos < 0) break;
            ++pick[pos];
        }
    }
    return out;
}

}  // namespace

TEST_CASE("bias_from_k_eps examples") {
    CHECK(bias_from_k_eps(3, Rat(1, 10)) == Rat(9, 19));
    CHECK_THROWS_AS(bias_from_k_eps(3, Rat(1)), DomainError);
    CHECK_THROWS_AS(bias_from_k_eps(2, Rat(1, 10)), DomainError);
    // Approaching eps -> 0 stays under the section-1 boundary 1 - 1/(k-1).
    for (int k : {3, 4, 5}) CHECK(bias_from_k_eps(k, Rat(1, 1000)) < Rat(k - 2, k - 1));
}

TEST_CASE("gap identity holds exactly") {
    for (int k : {3, 4, 5})
        for (Rat eps : {Rat(1, 10), Rat(1, 100)}) {
            Rat p = bias_from_k_eps(k, eps);
            CHECK((Rat(1) - eps) / (Rat(1) - p) == (Rat(1) - eps) * (Rat(k - 1) - eps));
        }
}

TEST_CASE("weight normalization: total 1, per layer 1/l, per block 1/(l|X_i|)") {
    auto toy = make_toy(2, 1, 1, 2, 1, 2, 3, 3, Rat(1, 10));
    const auto& h = toy.h;
    CHECK(h.total_weight() == Rat(1));
    const int l = toy.inst->l;
    for (int layer = 1; layer <= l; ++layer) {
        Rat layer_total(0);
        for (const auto& b : h.blocks) {
            if (b.layer != layer) continue;
            Rat block_total(0);
            for (setfam::Mask m = 0; m < (setfam::Mask{1} << b.range); ++m)
                block_total += h.vertex_weight(h.vertex_id(h.global_var(b.layer, b.var), m));
            CHECK(block_total == Rat(1) / (Rat(l) * Rat(toy.inst->layer_sizes[layer - 1])));
            layer_total += block_total;
        }
        CHECK(layer_total == Rat(Int(1), Int(l)));
    }
}

TEST_CASE("explicit edges match the definitional oracle; empty u always joins") {
    auto toy = make_toy(2, 1, 1, 2, 1, 2, 5, 3, Rat(1, 10));
    const auto& h = toy.h;
    auto want = oracle_edges(h);
    std::set<std::vector<long long>> got(h.edges.begin(), h.edges.end());
    CHECK(got == want);
    CHECK(got.size() == h.edges.size());  // deduplicated

    // u = empty set forms an edge with every (k-1)-tuple from each pair.
    for (const auto& bp : h.pairs) {
        std::vector<long long> edge{h.vertex_id(bp.ga, 0b01), h.vertex_id(bp.ga, 0b10),
                                    h.vertex_id(bp.gb, 0)};
        std::sort(edge.begin(), edge.begin() + 2);
        CHECK(got.count(edge) == 1);
    }
}

TEST_CASE("edge cap triggers a resource error") {
    auto pg = game::gen_planted(2, 1, 1, 2, 1, 7);
    auto inst = std::make_shared<layers::LayeredInstance>(layers::build_layered(pg.game, 2));
    Caps caps;
    caps.max_edges = 3;
    CHECK_THROWS_AS(build_hypergraph(inst, 3, Rat(9, 19), caps, EdgeMode::Explicit), ResourceError);
    caps.max_edges = 2'000'000;
    caps.max_range = 1;
    CHECK_THROWS_AS(build_hypergraph(inst, 3, Rat(9, 19), caps, EdgeMode::Explicit), ResourceError);
}

TEST_CASE("completeness witness: weight p, independent, complement covers") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        auto toy = make_toy(2, 1, 1, 2, 1, 2, seed, 3, Rat(1, 10));
        auto witness = completeness_witness(toy.h, toy.plant);
        CHECK(witness.weight == Rat(9, 19));
        CHECK(is_independent(toy.h, witness).independent);
        auto cover = complement(toy.h, witness);
        CHECK(cover.weight == Rat(10, 19));
        auto generic = to_generic(toy.h);
        std::vector<int> cover_ids(cover.ids.begin(), cover.ids.end());
        CHECK(solve::is_cover(generic, cover_ids));
    }

    auto toy = make_toy(2, 1, 1, 2, 1, 2, 4, 3, Rat(1, 10));
    game::GameLabeling bad = toy.plant;
    bad.y_labels[0] = (bad.y_labels[0] + 1) % toy.inst->base.ry;
    if (game::satisfied_fraction(toy.inst->base, bad) < Rat(1))
        CHECK_THROWS_AS(completeness_witness(toy.h, bad), DomainError);
}

TEST_CASE("no edge among vertices containing the planted values") {
    auto toy = make_toy(2, 1, 1, 2, 1, 2, 9, 3, Rat(1, 10));
    auto lifted = layers::lift_labeling(*toy.inst, toy.plant);
    for (const auto& edge : toy.h.edges) {
        bool all_contain = true;
        for (long long vid : edge) {
            auto [gvar, mask] = toy.h.vertex(vid);
            const auto& b = toy.h.blocks[gvar];
            long long val = toy.inst->value_index(b.layer, lifted.values[b.layer - 1][b.var]);
            if (!(mask & (setfam::Mask{1} << val))) all_contain = false;
        }
        CHECK_FALSE(all_contain);
    }
}

TEST_CASE("is_independent trivial cases and explicit/implicit agreement") {
    auto ex = make_toy(2, 1, 1, 2, 1, 2, 6, 3, Rat(1, 10), EdgeMode::Explicit);
    auto im = make_toy(2, 1, 1, 2, 1, 2, 6, 3, Rat(1, 10), EdgeMode::Implicit);
    CHECK(is_independent(ex.h, make_vertex_set(ex.h, {})).independent);
    std::vector<long long> all_ids(ex.h.vertex_count);
    for (long long v = 0; v < ex.h.vertex_count; ++v) all_ids[v] = v;
    auto full_ex = is_independent(ex.h, make_vertex_set(ex.h, all_ids));
    CHECK_FALSE(full_ex.independent);
    CHECK_FALSE(full_ex.violating_edge.empty());

    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<long long> ids;
        for (long long v = 0; v < ex.h.vertex_count; ++v)
            if (rng.uniform_int(2)) ids.push_back(v);
        auto a = is_independent(ex.h, make_vertex_set(ex.h, ids));
        auto b = is_independent(im.h, make_vertex_set(im.h, ids));
        CHECK(a.independent == b.independent);
        if (!a.independent) {
            // The reported edge is genuinely inside the set in both modes.
            std::set<long long> in(ids.begin(), ids.end());
            for (long long vid : a.violating_edge) CHECK(in.count(vid) == 1);
            for (long long vid : b.violating_edge) CHECK(in.count(vid) == 1);
        }
    }
}

TEST_CASE("decode on the witness: fraction 1 with singleton B(x), bound respected") {
    auto toy = make_toy(2, 1, 1, 2, 1, 2, 12, 3, Rat(1, 10));
    auto witness = completeness_witness(toy.h, toy.plant);
    auto dec = decode_independent_set(toy.h, witness, Rat(1, 10));
    auto lifted = layers::lift_labeling(*toy.inst, toy.plant);
    bool all_singleton = true;
    for (const auto& [gvar, mask] : dec.b_sets) {
        const auto& b = toy.h.blocks[gvar];
        long long val = toy.inst->value_index(b.layer, lifted.values[b.layer - 1][b.var]);
        if (mask != (setfam::Mask{1} << val)) all_singleton = false;
        CHECK(std::popcount(mask) < dec.t);
    }
    CHECK(all_singleton);
    CHECK(dec.expected_fraction == Rat(1));
    CHECK(to_double(dec.expected_fraction) >= dec.analytic_bound);

    CHECK_THROWS_AS(decode_independent_set(toy.h, make_vertex_set(toy.h, {}), Rat(1, 10)), DomainError);
}

TEST_CASE("disjointness_budget examples and monotonicity") {
    CHECK(disjointness_budget(Rat(1, 4), Rat(1, 2), 1) == 4);
    long long prev = 0;
    for (long long t = 1; t <= 20; ++t) {
        long long q = disjointness_budget(Rat(1, 10), Rat(9, 19), t);
        CHECK(q >= prev);
        prev = q;
    }
    CHECK_THROWS_AS(disjointness_budget(Rat(0), Rat(1, 2), 1), DomainError);
    CHECK_THROWS_AS(disjointness_budget(Rat(1, 4), Rat(1, 2), 0), DomainError);

    // Direct check: q disjoint projection sets of size t each cost at least
    // 1 - (1-p)^t weight per set being avoided; the budget is the largest q
    // with (1-(1-p)^t)^... residual >= eps/4, i.e. (1-p)^t decay.
    const Rat eps(1, 4), p(1, 2);
    const long long t = 1;
    long long q = disjointness_budget(eps, p, t);
    CHECK(rat_pow(Rat(1) - rat_pow(Rat(1) - p, static_cast<int>(t)), static_cast<int>(q)) >= eps / 4);
    CHECK(rat_pow(Rat(1) - rat_pow(Rat(1) - p, static_cast<int>(t)), static_cast<int>(q + 1)) < eps / 4);
}

TEST_CASE("soundness_bound is finite, nonnegative, and zero on underflow") {
    double b = soundness_bound(Rat(1, 10), Rat(9, 19), 5);
    CHECK(b >= 0.0);
    CHECK(soundness_bound(Rat(1, 10), Rat(9, 19), 100000) == 0.0);
}

TEST_CASE("to_generic preserves weights and distinct-vertex edges") {
    auto toy = make_toy(2, 1, 1, 2, 1, 2, 18, 3, Rat(1, 10));
    auto g = to_generic(toy.h);
    REQUIRE(g.vertex_count() == toy.h.vertex_count);
    for (long long v = 0; v < toy.h.vertex_count; ++v) CHECK(g.weights[v] == toy.h.vertex_weight(v));
    solve::validate(g);
    CHECK(g.edges.size() <= toy.h.edges.size());
    for (const auto& e : g.edges) {
        std::set<int> distinct(e.begin(), e.end());
        CHECK(distinct.size() == e.size());
    }
}
