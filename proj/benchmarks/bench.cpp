#include <benchmark/benchmark.h>

#include <memory>
#include <set>
#include <vector>

#include "vclab/game.hpp"
#include "vclab/layers.hpp"
#include "vclab/reduce.hpp"
#include "vclab/rng.hpp"
#include "vclab/setfam.hpp"
#include "vclab/solve.hpp"

using namespace vclab;

namespace {

setfam::SetFamily dense_family(int n, std::uint64_t seed, int members) {
    Rng rng(seed);
    std::set<setfam::Mask> out;
    while (static_cast<int>(out.size()) < members) out.insert(static_cast<setfam::Mask>(rng.uniform_below(setfam::Mask{1} << n)));
    return setfam::SetFamily(n, {out.begin(), out.end()});
}

void bm_left_shift_closure(benchmark::State& state) {
    auto fam = dense_family(static_cast<int>(state.range(0)), 1, static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(setfam::left_shift_closure(fam));
}
BENCHMARK(bm_left_shift_closure)->Args({8, 64})->Args({10, 256})->Args({12, 512});

void bm_intersecting_check(benchmark::State& state) {
    auto fam = dense_family(10, 2, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(setfam::is_s_wise_t_intersecting(fam, 3, 2));
}
BENCHMARK(bm_intersecting_check)->Arg(64)->Arg(256);

void bm_build_layered(benchmark::State& state) {
    auto pg = game::gen_planted(3, 2, 2, 3, 2, 5);
    const int l = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(layers::build_layered(pg.game, l));
}
BENCHMARK(bm_build_layered)->Arg(3)->Arg(4)->Arg(5);

void bm_build_hypergraph_explicit(benchmark::State& state) {
    auto pg = game::gen_planted(2, 2, 2, 2, 2, 6);
    auto inst = std::make_shared<layers::LayeredInstance>(layers::build_layered(pg.game, 2));
    const Rat p = reduce::bias_from_k_eps(3, Rat(1, 10));
    for (auto _ : state) benchmark::DoNotOptimize(reduce::build_hypergraph(inst, 3, p, {}, reduce::EdgeMode::Explicit));
}
BENCHMARK(bm_build_hypergraph_explicit);

void bm_independence_implicit(benchmark::State& state) {
    auto pg = game::gen_planted(2, 2, 2, 2, 2, 6);
    auto inst = std::make_shared<layers::LayeredInstance>(layers::build_layered(pg.game, 2));
    auto h = reduce::build_hypergraph(inst, 3, reduce::bias_from_k_eps(3, Rat(1, 10)), {}, reduce::EdgeMode::Implicit);
    auto witness = reduce::completeness_witness(h, pg.plant);
    for (auto _ : state) benchmark::DoNotOptimize(reduce::is_independent(h, witness));
}
BENCHMARK(bm_independence_implicit);

solve::GenericHypergraph random_unit_instance(std::uint64_t seed, int n, int k, int edges) {
    Rng rng(seed);
    solve::GenericHypergraph h;
    h.weights.assign(n, Rat(1));
    std::set<std::vector<int>> seen;
    while (static_cast<int>(h.edges.size()) < edges) {
        std::set<int> verts;
        while (static_cast<int>(verts.size()) < k) verts.insert(rng.uniform_int(n));
        std::vector<int> e(verts.begin(), verts.end());
        if (seen.insert(e).second) h.edges.push_back(e);
    }
    return h;
}

void bm_exact_min_vc(benchmark::State& state) {
    auto h = random_unit_instance(7, static_cast<int>(state.range(0)), 3, static_cast<int>(state.range(0)) * 2);
    for (auto _ : state) benchmark::DoNotOptimize(solve::exact_min_vc(h));
}
BENCHMARK(bm_exact_min_vc)->Arg(16)->Arg(20)->Arg(24);

void bm_greedy_cover(benchmark::State& state) {
    auto h = random_unit_instance(8, 24, 3, 48);
    for (auto _ : state) benchmark::DoNotOptimize(solve::greedy_matching_cover(h));
}
BENCHMARK(bm_greedy_cover);

}  // namespace

BENCHMARK_MAIN();
