#include "vclab/solve.hpp"

#include <algorithm>
#include <bit>

#include "vclab/errors.hpp"
#include "vclab/rng.hpp"

namespace vclab::solve {

void validate(const GenericHypergraph& h) {
    for (const Rat& w : h.weights)
        if (w <= Rat(0)) throw DomainError("hypergraph: vertex weights must be positive");
    for (const auto& e : h.edges) {
        if (e.empty()) throw DomainError("hypergraph: empty edge");
        std::vector<int> s = e;
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw DomainError("hypergraph: repeated vertex within an edge");
        if (s.front() < 0 || s.back() >= h.vertex_count()) throw DomainError("hypergraph: vertex id out of range");
    }
}

Cover greedy_matching_cover(const GenericHypergraph& h, std::optional<std::uint64_t> shuffle_seed) {
    validate(h);
    std::vector<int> order(h.edges.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    if (shuffle_seed) {
        Rng rng(*shuffle_seed);
        rng.shuffle(order);
    }
    std::vector<char> taken(h.weights.size(), 0);
    for (int ei : order) {
        const auto& e = h.edges[ei];
        bool disjoint = std::none_of(e.begin(), e.end(), [&](int v) { return taken[v]; });
        if (disjoint)
            for (int v : e) taken[v] = 1;
    }
    Cover c;
    c.weight = Rat(0);
    for (int v = 0; v < h.vertex_count(); ++v) {
        if (taken[v]) {
            c.vertices.push_back(v);
            c.weight += h.weights[v];
        }
    }
    return c;
}

namespace {

struct BnB {
    const GenericHypergraph& h;
    const Budget& budget;
    long long nodes = 0;
    std::uint64_t best_mask = 0;
    Rat best_weight;
    std::vector<int> best_vertices;
    bool have_best = false;

    explicit BnB(const GenericHypergraph& hg, const Budget& b) : h(hg), budget(b) {}

    static std::vector<int> mask_to_vertices(std::uint64_t mask) {
        std::vector<int> out;
        while (mask) {
            out.push_back(std::countr_zero(mask));
            mask &= mask - 1;
        }
        return out;
    }

    int first_uncovered(std::uint64_t cover) const {
        for (std::size_t i = 0; i < h.edges.size(); ++i) {
            bool hit = false;
            for (int v : h.edges[i])
                if (cover >> v & 1) {
                    hit = true;
                    break;
                }
            if (!hit) return static_cast<int>(i);
        }
        return -1;
    }

    // Disjoint uncovered edges each force at least their cheapest vertex.
    Rat lower_bound(std::uint64_t cover) const {
        Rat lb(0);
        std::uint64_t used = 0;
        for (const auto& e : h.edges) {
            bool covered = false, overlaps = false;
            for (int v : e) {
                if (cover >> v & 1) covered = true;
                if (used >> v & 1) overlaps = true;
            }
            if (covered || overlaps) continue;
            Rat cheapest = h.weights[e[0]];
            for (int v : e) {
                cheapest = std::min(cheapest, h.weights[v]);
                used |= std::uint64_t{1} << v;
            }
            lb += cheapest;
        }
        return lb;
    }

    void offer(std::uint64_t cover, const Rat& weight) {
        auto verts = mask_to_vertices(cover);
        if (!have_best || weight < best_weight ||
            (weight == best_weight && std::lexicographical_compare(verts.begin(), verts.end(), best_vertices.begin(),
                                                                   best_vertices.end()))) {
            have_best = true;
            best_mask = cover;
            best_weight = weight;
            best_vertices = std::move(verts);
        }
    }

    void search(std::uint64_t cover, std::uint64_t forbidden, const Rat& weight) {
        if (++nodes > budget.max_nodes) {
            std::string best = have_best ? rat_to_string(best_weight) : "none";
            throw ResourceError("exact_min_vc: node budget exhausted (best-so-far " + best + ", bound " +
                                rat_to_string(weight + lower_bound(cover)) + ")");
        }
        if (have_best && weight + lower_bound(cover) > best_weight) return;
        int ei = first_uncovered(cover);
        if (ei < 0) {
            offer(cover, weight);
            return;
        }
        std::vector<int> branch = h.edges[ei];
        std::sort(branch.begin(), branch.end());
        std::uint64_t local_forbidden = forbidden;
        for (int v : branch) {
            if (local_forbidden >> v & 1) continue;
            search(cover | (std::uint64_t{1} << v), local_forbidden, weight + h.weights[v]);
            // Later branches must cover this edge without v.
            local_forbidden |= std::uint64_t{1} << v;
        }
    }
};

}  // namespace

ExactResult exact_min_vc(const GenericHypergraph& h, const Budget& budget) {
    validate(h);
    if (h.vertex_count() > budget.max_vertices)
        throw ResourceError("exact_min_vc: instance has " + std::to_string(h.vertex_count()) +
                            " vertices, budget allows " + std::to_string(budget.max_vertices));
    BnB bnb(h, budget);
    bnb.search(0, 0, Rat(0));
    ExactResult res;
    res.cover.vertices = bnb.best_vertices;
    res.cover.weight = bnb.best_weight;
    res.nodes = bnb.nodes;
    res.optimal = true;
    return res;
}

ExactResult exact_max_is(const GenericHypergraph& h, const Budget& budget) {
    ExactResult vc = exact_min_vc(h, budget);
    ExactResult is;
    is.nodes = vc.nodes;
    is.optimal = vc.optimal;
    Rat total(0);
    std::vector<char> in_vc(h.weights.size(), 0);
    for (int v : vc.cover.vertices) in_vc[v] = 1;
    is.cover.weight = Rat(0);
    for (int v = 0; v < h.vertex_count(); ++v) {
        total += h.weights[v];
        if (!in_vc[v]) {
            is.cover.vertices.push_back(v);
            is.cover.weight += h.weights[v];
        }
    }
    // Exact duality by construction: weight(IS) = total - weight(VC).
    return is;
}

std::vector<std::uint64_t> greedy_disjoint_subfamily(const std::vector<std::uint64_t>& sets, int m, int k) {
    if (m < 1 || k < 1) throw DomainError("greedy_disjoint_subfamily: requires m >= 1, k >= 1");
    std::vector<int> element_count(64, 0);
    for (std::uint64_t s : sets) {
        if (std::popcount(s) > m) throw DomainError("greedy_disjoint_subfamily: a set exceeds size m");
        for (int e = 0; e < 64; ++e)
            if (s >> e & 1 && ++element_count[e] > k)
                throw DomainError("greedy_disjoint_subfamily: element " + std::to_string(e) +
                                  " appears in more than k sets");
    }
    std::vector<std::uint64_t> chosen;
    std::uint64_t used = 0;
    for (std::uint64_t s : sets) {
        if ((s & used) == 0) {
            chosen.push_back(s);
            used |= s;
        }
    }
    return chosen;
}

bool is_cover(const GenericHypergraph& h, const std::vector<int>& vertices) {
    std::vector<char> in(h.weights.size(), 0);
    for (int v : vertices) in.at(v) = 1;
    for (const auto& e : h.edges)
        if (std::none_of(e.begin(), e.end(), [&](int v) { return in[v]; })) return false;
    return true;
}

}  // namespace vclab::solve
