#include "vclab/game.hpp"

#include <algorithm>
#include <set>

#include "vclab/errors.hpp"
#include "vclab/rng.hpp"

namespace vclab::game {

std::vector<std::string> validate(const ProjectionGame& g) {
    std::vector<std::string> bad;
    if (g.y_count <= 0 || g.z_count <= 0) bad.push_back("variable counts must be positive");
    if (g.ry <= 0 || g.rz <= 0) bad.push_back("range sizes must be positive");
    if (g.rz > g.ry) bad.push_back("rz exceeds ry");
    std::vector<int> ydeg(std::max(g.y_count, 0), 0), zdeg(std::max(g.z_count, 0), 0);
    std::set<std::pair<int, int>> seen;
    for (std::size_t ci = 0; ci < g.constraints.size(); ++ci) {
        const auto& c = g.constraints[ci];
        const std::string tag = "constraint " + std::to_string(ci) + ": ";
        if (c.y < 0 || c.y >= g.y_count || c.z < 0 || c.z >= g.z_count) {
            bad.push_back(tag + "variable index out of range");
            continue;
        }
        ++ydeg[c.y];
        ++zdeg[c.z];
        if (!seen.insert({c.y, c.z}).second) bad.push_back(tag + "duplicate (y,z) pair");
        if (static_cast<int>(c.table.size()) != g.ry) bad.push_back(tag + "table length != ry");
        for (int v : c.table)
            if (v < 0 || v >= g.rz) {
                bad.push_back(tag + "table entry out of range");
                break;
            }
    }
    if (!ydeg.empty() && std::set<int>(ydeg.begin(), ydeg.end()).size() > 1)
        bad.push_back("y-side degrees are not all equal");
    if (!zdeg.empty() && std::set<int>(zdeg.begin(), zdeg.end()).size() > 1)
        bad.push_back("z-side degrees are not all equal");
    return bad;
}

Rat satisfied_fraction(const ProjectionGame& g, const GameLabeling& labeling) {
    if (static_cast<int>(labeling.y_labels.size()) != g.y_count ||
        static_cast<int>(labeling.z_labels.size()) != g.z_count)
        throw DomainError("satisfied_fraction: labeling size mismatch");
    for (int v : labeling.y_labels)
        if (v < 0 || v >= g.ry) throw DomainError("satisfied_fraction: y label out of range");
    for (int v : labeling.z_labels)
        if (v < 0 || v >= g.rz) throw DomainError("satisfied_fraction: z label out of range");
    if (g.constraints.empty()) throw DomainError("satisfied_fraction: game has no constraints");
    long long sat = 0;
    for (const auto& c : g.constraints)
        if (c.table[labeling.y_labels[c.y]] == labeling.z_labels[c.z]) ++sat;
    return Rat(sat, static_cast<long long>(g.constraints.size()));
}

namespace {

// Bi-regular simple bipartite edge set. Random slot matchings first; if the
// sample keeps producing parallel edges, fall back to a circulant template
// composed with random label permutations.
std::vector<std::pair<int, int>> gen_edges(int y_count, int z_count, int dy, Rng& rng) {
    const int total = y_count * dy;
    const int dz = total / z_count;
    std::vector<int> zslots(total);
    for (int e = 0; e < total; ++e) zslots[e] = (e / dz);
    for (int attempt = 0; attempt < 200; ++attempt) {
        std::vector<int> perm = zslots;
        rng.shuffle(perm);
        std::set<std::pair<int, int>> seen;
        std::vector<std::pair<int, int>> edges;
        edges.reserve(total);
        bool simple = true;
        for (int e = 0; e < total && simple; ++e) {
            std::pair<int, int> edge{e / dy, perm[e]};
            simple = seen.insert(edge).second;
            edges.push_back(edge);
        }
        if (simple) return edges;
    }
    std::vector<int> yperm(y_count), zperm(z_count);
    for (int i = 0; i < y_count; ++i) yperm[i] = i;
    for (int i = 0; i < z_count; ++i) zperm[i] = i;
    rng.shuffle(yperm);
    rng.shuffle(zperm);
    std::vector<std::pair<int, int>> edges;
    edges.reserve(total);
    for (int a = 0; a < y_count; ++a)
        for (int r = 0; r < dy; ++r) edges.emplace_back(yperm[a], zperm[(a * dy + r) % z_count]);
    return edges;
}

}  // namespace

PlantedGame gen_planted(int y_count, int z_count, int degree, int ry, int rz, std::uint64_t seed) {
    if (y_count <= 0 || z_count <= 0 || degree <= 0) throw DomainError("gen_planted: counts and degree must be positive");
    if (rz <= 0 || rz > ry) throw DomainError("gen_planted: requires 1 <= rz <= ry");
    if ((static_cast<long long>(y_count) * degree) % z_count != 0)
        throw DomainError("gen_planted: y_count*degree must be divisible by z_count");
    if (degree > z_count)
        throw DomainError("gen_planted: degree must be <= z_count for a simple bi-regular graph");

    Rng rng(seed);
    PlantedGame out;
    out.game.y_count = y_count;
    out.game.z_count = z_count;
    out.game.ry = ry;
    out.game.rz = rz;

    out.plant.y_labels.resize(y_count);
    out.plant.z_labels.resize(z_count);
    for (int& v : out.plant.y_labels) v = rng.uniform_int(ry);
    for (int& v : out.plant.z_labels) v = rng.uniform_int(rz);

    auto edges = gen_edges(y_count, z_count, degree, rng);
    std::sort(edges.begin(), edges.end());
    for (auto [y, z] : edges) {
        ProjectionGame::Constraint c;
        c.y = y;
        c.z = z;
        c.table.resize(ry);
        for (int& v : c.table) v = rng.uniform_int(rz);
        c.table[out.plant.y_labels[y]] = out.plant.z_labels[z];
        out.game.constraints.push_back(std::move(c));
    }
    return out;
}

ProjectionGame gen_scrambled(const ProjectionGame& base, std::uint64_t seed) {
    Rng rng(seed);
    ProjectionGame out = base;
    for (auto& c : out.constraints)
        for (int& v : c.table) v = rng.uniform_int(out.rz);
    return out;
}

Rat brute_force_optimum(const ProjectionGame& g, GameLabeling* best) {
    GameLabeling lab;
    lab.y_labels.assign(g.y_count, 0);
    lab.z_labels.assign(g.z_count, 0);
    Rat best_val(-1);
    GameLabeling best_lab = lab;
    auto advance = [&](std::vector<int>& digits, int base) {
        for (auto& d : digits) {
            if (++d < base) return true;
            d = 0;
        }
        return false;
    };
    bool more_y = true;
    while (more_y) {
        lab.z_labels.assign(g.z_count, 0);
        bool more_z = true;
        while (more_z) {
            Rat v = satisfied_fraction(g, lab);
            if (v > best_val) {
                best_val = v;
                best_lab = lab;
            }
            more_z = advance(lab.z_labels, g.rz);
        }
        more_y = advance(lab.y_labels, g.ry);
    }
    if (best) *best = best_lab;
    return best_val;
}

}  // namespace vclab::game
