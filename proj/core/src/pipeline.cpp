#include "vclab/pipeline.hpp"

#include <algorithm>
#include <memory>

#include "vclab/errors.hpp"
#include "vclab/game.hpp"
#include "vclab/rng.hpp"

namespace vclab::pipeline {

void validate_config(const PipelineConfig& cfg) {
    if (cfg.k < 3) throw DomainError("config: k must be >= 3");
    if (cfg.epsilon <= Rat(0) || cfg.epsilon >= Rat(cfg.k - 2))
        throw DomainError("config: epsilon must satisfy 0 < epsilon < k-2");
    if (cfg.l < 1) throw DomainError("config: l must be >= 1");
    if (cfg.y_count <= 0 || cfg.z_count <= 0 || cfg.degree <= 0)
        throw DomainError("config: counts and degree must be positive");
    if (cfg.rz <= 0 || cfg.rz > cfg.ry) throw DomainError("config: requires 1 <= rz <= ry");
    if ((static_cast<long long>(cfg.y_count) * cfg.degree) % cfg.z_count != 0)
        throw DomainError("config: y_count*degree must be divisible by z_count");
    if (cfg.degree > cfg.z_count) throw DomainError("config: degree must be <= z_count");
    // Conservative: the largest layer/range uses the bigger of the two counts.
    long long worst_size = 1, worst_range = 1;
    for (int k = 1; k <= cfg.l; ++k) {
        worst_size *= std::max(cfg.y_count, cfg.z_count);
        worst_range *= std::max(cfg.ry, cfg.rz);
    }
    if (worst_size > cfg.layer_caps.max_layer_size)
        throw DomainError("config: layer sizes exceed max_layer_size");
    if (worst_range > cfg.reduce_caps.max_range)
        throw DomainError("config: long-code ranges exceed max_range (" + std::to_string(worst_range) + " > " +
                          std::to_string(cfg.reduce_caps.max_range) + ")");
}

io::Json run_pipeline(const PipelineConfig& cfg) {
    validate_config(cfg);
    io::Json report;
    report["scale"] = "desk scale, no hardness claim";
    const std::uint64_t game_seed = split_seed(cfg.seed, 1);
    const std::uint64_t scramble_seed = split_seed(cfg.seed, 2);
    report["config"] = io::Json{{"k", cfg.k},
                                {"epsilon", io::rat_json(cfg.epsilon)},
                                {"l", cfg.l},
                                {"y_count", cfg.y_count},
                                {"z_count", cfg.z_count},
                                {"degree", cfg.degree},
                                {"ry", cfg.ry},
                                {"rz", cfg.rz},
                                {"seed", cfg.seed},
                                {"game_seed", game_seed},
                                {"scramble_seed", scramble_seed},
                                {"mode", cfg.mode == reduce::EdgeMode::Explicit ? "explicit" : "implicit"}};

    const Rat p = reduce::bias_from_k_eps(cfg.k, cfg.epsilon);
    const Rat gap = (Rat(1) - cfg.epsilon) * (Rat(cfg.k - 1) - cfg.epsilon);
    report["bias"] = io::Json{{"p", io::rat_json(p)},
                              {"one_minus_p", io::rat_json(Rat(1) - p)},
                              {"gap_formula", io::rat_json(gap)}};

    auto run_stage = [&](const std::string& stage, auto&& fn) {
        try {
            fn();
        } catch (const ResourceError& e) {
            report[stage]["skipped"] = std::string("resource limit: ") + e.what();
        } catch (const DomainError& e) {
            throw DomainError("stage '" + stage + "': " + e.what());
        }
    };

    auto planted = game::gen_planted(cfg.y_count, cfg.z_count, cfg.degree, cfg.ry, cfg.rz, game_seed);
    auto scrambled = game::gen_scrambled(planted.game, scramble_seed);
    report["game"] = io::Json{
        {"constraints", planted.game.constraints.size()},
        {"planted_valid", game::validate(planted.game).empty()},
        {"scrambled_valid", game::validate(scrambled).empty()},
        {"plant_satisfied_fraction", io::rat_json(game::satisfied_fraction(planted.game, planted.plant))}};

    auto inst = std::make_shared<layers::LayeredInstance>(layers::build_layered(planted.game, cfg.l, cfg.layer_caps));
    auto lifted = layers::lift_labeling(*inst, planted.plant);
    io::Json lifted_fracs = io::Json::array();
    bool all_one = true;
    for (int i = 1; i <= cfg.l; ++i) {
        for (int j = i + 1; j <= cfg.l; ++j) {
            auto fb = layers::satisfied_fraction_between(*inst, lifted, i, j);
            all_one = all_one && fb.value == Rat(1);
            lifted_fracs.push_back(io::Json{{"i", i}, {"j", j}, {"fraction", io::rat_json(fb.value)}, {"empty", fb.empty_pair}});
        }
    }
    report["layers"] = io::Json{{"layer_sizes", inst->layer_sizes},
                                {"lifted_fractions", lifted_fracs},
                                {"completeness_all_one", all_one}};

    auto hg = reduce::build_hypergraph(inst, cfg.k, p, cfg.reduce_caps, cfg.mode);
    report["hypergraph"] = io::Json{{"vertex_count", hg.vertex_count},
                                    {"block_pairs", hg.pairs.size()},
                                    {"total_weight", io::rat_json(hg.total_weight())}};
    if (cfg.mode == reduce::EdgeMode::Explicit) report["hypergraph"]["edge_count"] = hg.edges.size();

    auto witness = reduce::completeness_witness(hg, planted.plant);
    auto indep = reduce::is_independent(hg, witness);
    auto cover = reduce::complement(hg, witness);
    report["witness"] = io::Json{{"weight", io::rat_json(witness.weight)},
                                 {"weight_equals_p", witness.weight == p},
                                 {"independent", indep.independent},
                                 {"complement_cover_weight", io::rat_json(cover.weight)}};

    if (cfg.mode == reduce::EdgeMode::Explicit) {
        auto generic = reduce::to_generic(hg);
        auto greedy = solve::greedy_matching_cover(generic);
        report["solve"] = io::Json{{"greedy_weight", io::rat_json(greedy.weight)},
                                   {"greedy_is_cover", solve::is_cover(generic, greedy.vertices)}};
        run_stage("solve_exact", [&] {
            auto exact = solve::exact_min_vc(generic, cfg.solver_budget);
            report["solve_exact"] = io::Json{{"weight", io::rat_json(exact.cover.weight)},
                                             {"nodes", exact.nodes},
                                             {"optimal", exact.optimal},
                                             {"at_most_one_minus_p", exact.cover.weight <= Rat(1) - p},
                                             {"greedy_over_exact", io::rat_json(greedy.weight / exact.cover.weight)}};
        });
    }

    run_stage("decode", [&] {
        try {
            auto dec = reduce::decode_independent_set(hg, witness, cfg.epsilon);
            report["decode"] = io::Json{{"layer_i", dec.layer_i},
                                        {"layer_j", dec.layer_j},
                                        {"hypotheses_met", dec.hypotheses_met},
                                        {"t", dec.t},
                                        {"density", io::rat_json(dec.density)},
                                        {"expected_fraction", io::rat_json(dec.expected_fraction)},
                                        {"analytic_bound_float", dec.analytic_bound}};
        } catch (const DomainError& e) {
            report["decode"]["skipped"] = std::string("precondition: ") + e.what();
        }
    });

    return report;
}

}  // namespace vclab::pipeline
