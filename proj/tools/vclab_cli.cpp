// vclab: batch CLI over the reduction pipeline. Every subcommand is a thin
// veneer over one library operation; JSON in, JSON out.
//
// Exit codes: 0 success, 1 domain/argument errors, 2 resource errors.

#include <CLI11.hpp>

#include <iostream>
#include <memory>
#include <string>

#include "vclab/errors.hpp"
#include "vclab/json_io.hpp"
#include "vclab/pipeline.hpp"
#include "vclab/rng.hpp"

namespace {

using namespace vclab;

void emit(const io::Json& j, const std::string& out_path) {
    if (out_path.empty())
        std::cout << j.dump(2) << "\n";
    else
        io::save_json_file(out_path, j);
}

layers::LayeredInstance load_instance(const std::string& game_path, int l) {
    auto g = io::game_from_json(io::load_json_file(game_path));
    return layers::build_layered(g, l);
}

reduce::LongCodeHypergraph load_hypergraph(const std::string& game_path, int l, int k, const std::string& eps,
                                           const std::string& p_text, const std::string& mode) {
    auto inst = std::make_shared<layers::LayeredInstance>(load_instance(game_path, l));
    Rat p = p_text.empty() ? reduce::bias_from_k_eps(k, parse_rational(eps)) : parse_rational(p_text);
    auto m = mode == "implicit" ? reduce::EdgeMode::Implicit : reduce::EdgeMode::Explicit;
    return reduce::build_hypergraph(inst, k, p, {}, m);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vclab: projection games, multilayered instances, long-code hypergraphs, vertex-cover solvers"};
    app.require_subcommand(1);

    std::string in, out, game_path, labeling_path, set_path, eps, p_text, mode = "explicit", delta;
    int i = 0, j = 0, s = 2, t = 1, l = 2, k = 3;
    int y_count = 2, z_count = 1, degree = 1, ry = 2, rz = 1;
    std::uint64_t seed = 1;
    long long trials = 10000;
    bool with_constraints = false, scramble = false;
    int max_vertices = 30;
    long long max_nodes = 1'000'000;
    std::vector<int> layer_list;

    // family
    auto* family = app.add_subcommand("family", "set-family operations");
    auto* fam_shift = family->add_subcommand("shift", "left-shift closure of a family");
    fam_shift->add_option("--in", in)->required();
    fam_shift->add_option("--out", out);
    auto* fam_check = family->add_subcommand("check", "s-wise t-intersecting test");
    fam_check->add_option("--in", in)->required();
    fam_check->add_option("--s", s)->required();
    fam_check->add_option("--t", t)->required();
    auto* fam_thresh = family->add_subcommand("threshold", "intersection threshold t(eps,s,p)");
    fam_thresh->add_option("--eps", eps)->required();
    fam_thresh->add_option("--s", s)->required();
    fam_thresh->add_option("--p", p_text)->required();

    // game
    auto* game_cmd = app.add_subcommand("game", "projection game operations");
    auto* game_gen = game_cmd->add_subcommand("gen", "generate a planted (optionally scrambled) game");
    game_gen->add_option("--y", y_count)->required();
    game_gen->add_option("--z", z_count)->required();
    game_gen->add_option("--degree", degree)->required();
    game_gen->add_option("--ry", ry)->required();
    game_gen->add_option("--rz", rz)->required();
    game_gen->add_option("--seed", seed)->required();
    game_gen->add_flag("--scramble", scramble);
    game_gen->add_option("--out", out);
    auto* game_val = game_cmd->add_subcommand("validate", "check game invariants");
    game_val->add_option("--in", in)->required();
    auto* game_eval = game_cmd->add_subcommand("eval", "satisfied fraction of a labeling");
    game_eval->add_option("--game", game_path)->required();
    game_eval->add_option("--labeling", labeling_path)->required();

    // layers
    auto* layers_cmd = app.add_subcommand("layers", "multilayered instance operations");
    auto* layers_build = layers_cmd->add_subcommand("build", "build and summarize a layered instance");
    layers_build->add_option("--game", game_path)->required();
    layers_build->add_option("--l", l)->required();
    layers_build->add_flag("--with-constraints", with_constraints);
    layers_build->add_option("--out", out);
    auto* layers_lift = layers_cmd->add_subcommand("lift", "lift a satisfying base labeling");
    layers_lift->add_option("--game", game_path)->required();
    layers_lift->add_option("--l", l)->required();
    layers_lift->add_option("--labeling", labeling_path)->required();
    layers_lift->add_option("--out", out);
    auto* layers_decode = layers_cmd->add_subcommand("decode", "decode a layered labeling back to the game");
    layers_decode->add_option("--game", game_path)->required();
    layers_decode->add_option("--l", l)->required();
    layers_decode->add_option("--labeling", labeling_path)->required()->description("layered labeling JSON");
    layers_decode->add_option("--i", i)->required();
    layers_decode->add_option("--j", j)->required();
    auto* layers_density = layers_cmd->add_subcommand("density", "weak-density pair search");
    layers_density->add_option("--game", game_path)->required();
    layers_density->add_option("--l", l)->required();
    layers_density->add_option("--query", in)->required()->description("query JSON: delta, layers, sets");
    layers_density->add_option("--walk-trials", trials);
    layers_density->add_option("--walk-seed", seed);

    // reduce
    auto* reduce_cmd = app.add_subcommand("reduce", "long-code hypergraph operations");
    auto* reduce_build = reduce_cmd->add_subcommand("build", "build the hypergraph");
    reduce_build->add_option("--game", game_path)->required();
    reduce_build->add_option("--l", l)->required();
    reduce_build->add_option("--k", k)->required();
    reduce_build->add_option("--eps", eps);
    reduce_build->add_option("--p", p_text);
    reduce_build->add_option("--mode", mode)->check(CLI::IsMember({"explicit", "implicit"}));
    reduce_build->add_option("--out", out);
    auto* reduce_witness = reduce_cmd->add_subcommand("witness", "completeness witness vertex set");
    reduce_witness->add_option("--game", game_path)->required();
    reduce_witness->add_option("--l", l)->required();
    reduce_witness->add_option("--k", k)->required();
    reduce_witness->add_option("--eps", eps);
    reduce_witness->add_option("--p", p_text);
    reduce_witness->add_option("--labeling", labeling_path)->required();
    reduce_witness->add_option("--out", out);
    auto* reduce_check = reduce_cmd->add_subcommand("check", "independence check of a vertex set");
    reduce_check->add_option("--game", game_path)->required();
    reduce_check->add_option("--l", l)->required();
    reduce_check->add_option("--k", k)->required();
    reduce_check->add_option("--eps", eps);
    reduce_check->add_option("--p", p_text);
    reduce_check->add_option("--mode", mode)->check(CLI::IsMember({"explicit", "implicit"}));
    reduce_check->add_option("--set", set_path)->required();

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "vertex-cover solvers");
    auto* solve_greedy = solve_cmd->add_subcommand("greedy", "greedy matching cover");
    solve_greedy->add_option("--in", in)->required();
    solve_greedy->add_option("--out", out);
    auto* solve_exact = solve_cmd->add_subcommand("exact", "exact min-weight cover (branch and bound)");
    solve_exact->add_option("--in", in)->required();
    solve_exact->add_option("--max-vertices", max_vertices);
    solve_exact->add_option("--max-nodes", max_nodes);
    solve_exact->add_option("--out", out);

    // pipeline
    auto* pipe = app.add_subcommand("pipeline", "end-to-end run with a full report");
    pipe->add_option("--seed", seed)->required();
    pipe->add_option("--k", k)->required();
    pipe->add_option("--eps", eps)->required();
    pipe->add_option("--l", l);
    pipe->add_option("--y", y_count);
    pipe->add_option("--z", z_count);
    pipe->add_option("--degree", degree);
    pipe->add_option("--ry", ry);
    pipe->add_option("--rz", rz);
    pipe->add_option("--mode", mode)->check(CLI::IsMember({"explicit", "implicit"}));
    pipe->add_option("--max-vertices", max_vertices);
    pipe->add_option("--max-nodes", max_nodes);
    pipe->add_option("--out", out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (fam_shift->parsed()) {
            auto fam = io::family_from_json(io::load_json_file(in));
            emit(io::family_json(setfam::left_shift_closure(fam)), out);
        } else if (fam_check->parsed()) {
            auto fam = io::family_from_json(io::load_json_file(in));
            auto res = setfam::is_s_wise_t_intersecting(fam, s, t);
            io::Json j{{"intersecting", res.intersecting}};
            if (!res.intersecting) j["witness"] = res.witness;
            emit(j, "");
        } else if (fam_thresh->parsed()) {
            int result = setfam::intersection_threshold({parse_rational(eps), s, parse_rational(p_text)});
            std::cout << result << "\n";
        } else if (game_gen->parsed()) {
            auto planted = game::gen_planted(y_count, z_count, degree, ry, rz, seed);
            io::Json j{{"game", io::game_json(scramble ? game::gen_scrambled(planted.game, split_seed(seed, 2))
                                                       : planted.game)},
                       {"plant", io::labeling_json(planted.plant)}};
            emit(j, out);
        } else if (game_val->parsed()) {
            auto g = io::game_from_json(io::load_json_file(in));
            auto bad = game::validate(g);
            emit(io::Json{{"ok", bad.empty()}, {"violations", bad}}, "");
            return bad.empty() ? 0 : 1;
        } else if (game_eval->parsed()) {
            auto g = io::game_from_json(io::load_json_file(game_path));
            auto lab = io::labeling_from_json(io::load_json_file(labeling_path));
            emit(io::Json{{"satisfied_fraction", io::rat_json(game::satisfied_fraction(g, lab))}}, "");
        } else if (layers_build->parsed()) {
            emit(io::layered_summary_json(load_instance(game_path, l), with_constraints), out);
        } else if (layers_lift->parsed()) {
            auto inst = load_instance(game_path, l);
            auto lab = io::labeling_from_json(io::load_json_file(labeling_path));
            auto lifted = layers::lift_labeling(inst, lab);
            io::Json vals = io::Json::array();
            for (const auto& layer : lifted.values) vals.push_back(layer);
            io::Json fracs = io::Json::array();
            for (int a = 1; a <= inst.l; ++a)
                for (int b = a + 1; b <= inst.l; ++b) {
                    auto fb = layers::satisfied_fraction_between(inst, lifted, a, b);
                    fracs.push_back(io::Json{{"i", a}, {"j", b}, {"fraction", io::rat_json(fb.value)}});
                }
            emit(io::Json{{"layers", vals}, {"fractions", fracs}}, out);
        } else if (layers_decode->parsed()) {
            auto inst = load_instance(game_path, l);
            auto lj = io::load_json_file(labeling_path);
            layers::LayeredLabeling lab;
            lab.values = lj.at("layers").get<std::vector<std::vector<std::vector<int>>>>();
            auto dec = layers::decode_to_game(inst, lab, i, j);
            emit(io::Json{{"labeling", io::labeling_json(dec.labeling)}, {"achieved", io::rat_json(dec.achieved)}}, "");
        } else if (layers_density->parsed()) {
            auto inst = load_instance(game_path, l);
            auto qj = io::load_json_file(in);
            layers::WeakDensityQuery q;
            q.delta = io::rat_from_json(qj.at("delta"), "delta");
            q.layer_indices = qj.at("layers").get<std::vector<int>>();
            for (std::size_t li = 0; li < q.layer_indices.size(); ++li) {
                std::vector<char> flags(inst.layer_sizes[q.layer_indices[li] - 1], 0);
                for (long long v : qj.at("sets")[li].get<std::vector<long long>>()) flags.at(v) = 1;
                q.sets.push_back(std::move(flags));
            }
            auto wd = layers::weak_density_pair(inst, q);
            auto walk = layers::random_walk_estimate(inst, q, seed, trials);
            io::Json densities = io::Json::array();
            for (std::size_t a = 0; a < q.layer_indices.size(); ++a)
                for (std::size_t b = a + 1; b < q.layer_indices.size(); ++b)
                    densities.push_back(io::Json{{"a", q.layer_indices[a]},
                                                 {"b", q.layer_indices[b]},
                                                 {"density", io::rat_json(wd.all[a][b])},
                                                 {"walk_estimate_float", walk[a][b]}});
            emit(io::Json{{"best_a", q.layer_indices[wd.a]},
                          {"best_b", q.layer_indices[wd.b]},
                          {"best_density", io::rat_json(wd.density)},
                          {"densities", densities}},
                 "");
        } else if (reduce_build->parsed()) {
            emit(io::long_code_hypergraph_json(load_hypergraph(game_path, l, k, eps, p_text, mode)), out);
        } else if (reduce_witness->parsed()) {
            auto h = load_hypergraph(game_path, l, k, eps, p_text, "explicit");
            auto lab = io::labeling_from_json(io::load_json_file(labeling_path));
            emit(io::vertex_set_json(reduce::completeness_witness(h, lab)), out);
        } else if (reduce_check->parsed()) {
            auto h = load_hypergraph(game_path, l, k, eps, p_text, mode);
            auto set = reduce::make_vertex_set(h, io::vertex_ids_from_json(io::load_json_file(set_path)));
            auto res = reduce::is_independent(h, set);
            io::Json j{{"independent", res.independent}, {"weight", io::rat_json(set.weight)}};
            if (!res.independent) j["violating_edge"] = res.violating_edge;
            emit(j, "");
        } else if (solve_greedy->parsed()) {
            auto h = io::generic_hypergraph_from_json(io::load_json_file(in));
            auto cover = solve::greedy_matching_cover(h);
            emit(io::solution_json(cover, 0, false), out);
        } else if (solve_exact->parsed()) {
            auto h = io::generic_hypergraph_from_json(io::load_json_file(in));
            auto res = solve::exact_min_vc(h, {max_vertices, max_nodes});
            emit(io::solution_json(res.cover, res.nodes, res.optimal), out);
        } else if (pipe->parsed()) {
            pipeline::PipelineConfig cfg;
            cfg.seed = seed;
            cfg.k = k;
            cfg.epsilon = parse_rational(eps);
            cfg.l = l;
            cfg.y_count = y_count;
            cfg.z_count = z_count;
            cfg.degree = degree;
            cfg.ry = ry;
            cfg.rz = rz;
            cfg.mode = mode == "implicit" ? reduce::EdgeMode::Implicit : reduce::EdgeMode::Explicit;
            cfg.solver_budget = {max_vertices, max_nodes};
            emit(pipeline::run_pipeline(cfg), out);
        }
    } catch (const ResourceError& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 2;
    } catch (const PropertyViolation& e) {
        std::cerr << "property violation: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
