#include "vclab/json_io.hpp"

#include <fstream>

#include "vclab/errors.hpp"

namespace vclab::io {

namespace {

long long to_ll(const Int& v, const char* what) {
    if (v > Int(INT64_MAX) || v < Int(INT64_MIN)) throw DomainError(std::string(what) + ": value out of int64 range");
    return v.convert_to<long long>();
}

const Json& field(const Json& j, const std::string& name) {
    auto it = j.find(name);
    if (it == j.end()) throw DomainError("missing field '" + name + "'");
    return *it;
}

}  // namespace

Json rat_json(const Rat& r) {
    return Json{{"num", to_ll(r.numerator(), "rational numerator")}, {"den", to_ll(r.denominator(), "rational denominator")}};
}

Rat rat_from_json(const Json& j, const std::string& name) {
    if (!j.is_object() || !j.contains("num") || !j.contains("den"))
        throw DomainError("field '" + name + "': expected {\"num\": int, \"den\": int}");
    long long den = j["den"].get<long long>();
    if (den == 0) throw DomainError("field '" + name + "': zero denominator");
    return Rat(Int(j["num"].get<long long>()), Int(den));
}

Json family_json(const setfam::SetFamily& f) {
    return Json{{"n", f.n}, {"members", f.members}};
}

setfam::SetFamily family_from_json(const Json& j) {
    return setfam::SetFamily(field(j, "n").get<int>(), field(j, "members").get<std::vector<setfam::Mask>>());
}

Json game_json(const game::ProjectionGame& g) {
    Json constraints = Json::array();
    for (const auto& c : g.constraints)
        constraints.push_back(Json{{"y", c.y}, {"z", c.z}, {"table", c.table}});
    return Json{{"ry", g.ry}, {"rz", g.rz}, {"y_count", g.y_count}, {"z_count", g.z_count}, {"constraints", constraints}};
}

game::ProjectionGame game_from_json(const Json& j) {
    game::ProjectionGame g;
    g.ry = field(j, "ry").get<int>();
    g.rz = field(j, "rz").get<int>();
    g.y_count = field(j, "y_count").get<int>();
    g.z_count = field(j, "z_count").get<int>();
    for (const auto& cj : field(j, "constraints")) {
        game::ProjectionGame::Constraint c;
        c.y = field(cj, "y").get<int>();
        c.z = field(cj, "z").get<int>();
        c.table = field(cj, "table").get<std::vector<int>>();
        g.constraints.push_back(std::move(c));
    }
    return g;
}

Json labeling_json(const game::GameLabeling& lab) {
    return Json{{"y_labels", lab.y_labels}, {"z_labels", lab.z_labels}};
}

game::GameLabeling labeling_from_json(const Json& j) {
    game::GameLabeling lab;
    lab.y_labels = field(j, "y_labels").get<std::vector<int>>();
    lab.z_labels = field(j, "z_labels").get<std::vector<int>>();
    return lab;
}

Json layered_summary_json(const layers::LayeredInstance& inst, bool with_constraints) {
    Json out;
    out["l"] = inst.l;
    out["layer_sizes"] = inst.layer_sizes;
    Json ranges = Json::array();
    for (int i = 1; i <= inst.l; ++i) ranges.push_back(inst.range_size(i));
    out["range_sizes"] = ranges;
    Json pairs = Json::array();
    for (int i = 1; i <= inst.l; ++i) {
        for (int j = i + 1; j <= inst.l; ++j) {
            const auto& bucket = inst.phi[inst.pair_index(i, j)];
            Json entry{{"i", i}, {"j", j}, {"count", bucket.size()}};
            if (with_constraints) {
                Json list = Json::array();
                for (auto [a, b] : bucket) list.push_back(Json::array({a, b}));
                entry["constraints"] = list;
            }
            pairs.push_back(std::move(entry));
        }
    }
    out["pairs"] = pairs;
    return out;
}

Json generic_hypergraph_json(const solve::GenericHypergraph& h) {
    Json weights = Json::array();
    for (const Rat& w : h.weights) weights.push_back(rat_json(w));
    return Json{{"vertex_count", h.vertex_count()}, {"weights", weights}, {"edges", h.edges}};
}

solve::GenericHypergraph generic_hypergraph_from_json(const Json& j) {
    solve::GenericHypergraph h;
    const auto& weights = field(j, "weights");
    for (std::size_t i = 0; i < weights.size(); ++i) h.weights.push_back(rat_from_json(weights[i], "weights[" + std::to_string(i) + "]"));
    h.edges = field(j, "edges").get<std::vector<std::vector<int>>>();
    if (j.contains("vertex_count") && j["vertex_count"].get<int>() != h.vertex_count())
        throw DomainError("field 'vertex_count': inconsistent with weights length");
    solve::validate(h);
    return h;
}

Json solution_json(const solve::Cover& cover, long long nodes, bool optimal) {
    return Json{{"vertices", cover.vertices}, {"weight", rat_json(cover.weight)}, {"nodes", nodes}, {"optimal", optimal}};
}

Json long_code_hypergraph_json(const reduce::LongCodeHypergraph& h) {
    Json out;
    out["k"] = h.k;
    out["p"] = rat_json(h.p);
    out["mode"] = h.mode == reduce::EdgeMode::Explicit ? "explicit" : "implicit";
    out["vertex_count"] = h.vertex_count;
    Json vertices = Json::array();
    for (long long v = 0; v < h.vertex_count; ++v) {
        auto [g, mask] = h.vertex(v);
        vertices.push_back(Json{{"var", g}, {"mask", mask}, {"weight", rat_json(h.vertex_weight(v))}});
    }
    out["vertices"] = vertices;
    if (h.mode == reduce::EdgeMode::Explicit) {
        out["edges"] = h.edges;
    } else {
        Json pairs = Json::array();
        for (const auto& bp : h.pairs)
            pairs.push_back(Json{{"i", bp.i}, {"j", bp.j}, {"xi", bp.xi}, {"xj", bp.xj}, {"proj", bp.proj}});
        out["predicate"] = Json{{"k", h.k}, {"pairs", pairs}};
    }
    return out;
}

Json vertex_set_json(const reduce::VertexSet& s) {
    return Json{{"ids", s.ids}, {"weight", rat_json(s.weight)}};
}

std::vector<long long> vertex_ids_from_json(const Json& j) {
    return field(j, "ids").get<std::vector<long long>>();
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw DomainError("parse error in '" + path + "': " + e.what());
    }
    return j;
}

void save_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw DomainError("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

}  // namespace vclab::io
