#include "vclab/reduce.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "vclab/errors.hpp"

namespace vclab::reduce {

std::pair<long long, Mask> LongCodeHypergraph::vertex(long long vid) const {
    if (vid < 0 || vid >= vertex_count) throw DomainError("vertex: id out of range");
    auto it = std::upper_bound(blocks.begin(), blocks.end(), vid,
                               [](long long v, const Block& b) { return v < b.vertex_start; });
    const long long g = static_cast<long long>(it - blocks.begin()) - 1;
    return {g, static_cast<Mask>(vid - blocks[g].vertex_start)};
}

Rat LongCodeHypergraph::vertex_weight(long long vid) const {
    auto [g, mask] = vertex(vid);
    const Block& b = blocks[g];
    const Rat block_share(1, static_cast<long long>(source->l) * source->layer_sizes[b.layer - 1]);
    return block_share * setfam::mu_p({p}, b.range, mask);
}

Rat LongCodeHypergraph::total_weight() const {
    Rat total(0);
    for (long long v = 0; v < vertex_count; ++v) total += vertex_weight(v);
    return total;
}

VertexSet make_vertex_set(const LongCodeHypergraph& h, std::vector<long long> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (!ids.empty() && (ids.front() < 0 || ids.back() >= h.vertex_count))
        throw DomainError("make_vertex_set: vertex id out of range");
    VertexSet s;
    s.weight = Rat(0);
    for (long long v : ids) s.weight += h.vertex_weight(v);
    s.ids = std::move(ids);
    return s;
}

VertexSet complement(const LongCodeHypergraph& h, const VertexSet& s) {
    std::vector<long long> ids;
    ids.reserve(h.vertex_count - s.ids.size());
    std::size_t at = 0;
    for (long long v = 0; v < h.vertex_count; ++v) {
        if (at < s.ids.size() && s.ids[at] == v)
            ++at;
        else
            ids.push_back(v);
    }
    return make_vertex_set(h, std::move(ids));
}

Rat bias_from_k_eps(int k, const Rat& epsilon) {
    if (k < 3) throw DomainError("bias_from_k_eps: k must be >= 3");
    if (epsilon <= Rat(0) || epsilon >= Rat(k - 2)) throw DomainError("bias_from_k_eps: requires 0 < eps < k-2");
    return Rat(1) - Rat(1) / (Rat(k - 1) - epsilon);
}

namespace {

Mask full_mask(int range) { return (Mask{1} << range) - 1; }

Mask project_mask(Mask m, const std::vector<int>& proj) {
    Mask image = 0;
    while (m) {
        image |= Mask{1} << proj[std::countr_zero(m)];
        m &= m - 1;
    }
    return image;
}

// Non-decreasing (k-1)-tuples of subset masks with a visitor on the final
// intersection.
template <typename Fn>
void enumerate_tuples(int arity, Mask universe, Fn&& visit) {
    std::vector<Mask> cur;
    auto rec = [&](auto&& self, Mask start, Mask inter) -> void {
        if (static_cast<int>(cur.size()) == arity) {
            visit(cur, inter);
            return;
        }
        for (Mask m = start; m <= universe; ++m) {
            cur.push_back(m);
            self(self, m, inter & m);
            cur.pop_back();
        }
    };
    rec(rec, 0, ~Mask{0});
}

}  // namespace

LongCodeHypergraph build_hypergraph(std::shared_ptr<const layers::LayeredInstance> inst, int k, const Rat& p,
                                    const Caps& caps, EdgeMode mode) {
    if (!inst) throw DomainError("build_hypergraph: null instance");
    if (k < 3) throw DomainError("build_hypergraph: k must be >= 3");
    if (p <= Rat(0) || p >= Rat(1)) throw DomainError("build_hypergraph: bias must be in (0,1)");

    LongCodeHypergraph h;
    h.k = k;
    h.p = p;
    h.mode = mode;
    h.source = std::move(inst);
    const auto& src = *h.source;

    for (int i = 1; i <= src.l; ++i) {
        const long long range = src.range_size(i);
        if (range > caps.max_range)
            throw ResourceError("build_hypergraph: layer " + std::to_string(i) + " range " + std::to_string(range) +
                                " exceeds max_range " + std::to_string(caps.max_range));
    }

    long long next_vertex = 0;
    for (int i = 1; i <= src.l; ++i) {
        h.layer_block_start.push_back(static_cast<long long>(h.blocks.size()));
        const int range = static_cast<int>(src.range_size(i));
        for (long long x = 0; x < src.layer_sizes[i - 1]; ++x) {
            h.blocks.push_back({i, x, range, next_vertex});
            next_vertex += Mask{1} << range;
        }
    }
    h.vertex_count = next_vertex;

    for (int i = 1; i <= src.l; ++i) {
        for (int j = i + 1; j <= src.l; ++j) {
            for (auto [xi, xj] : src.phi[src.pair_index(i, j)]) {
                LongCodeHypergraph::BlockPair bp;
                bp.i = i;
                bp.j = j;
                bp.xi = xi;
                bp.xj = xj;
                bp.ga = h.global_var(i, xi);
                bp.gb = h.global_var(j, xj);
                const long long ri = src.range_size(i);
                bp.proj.resize(ri);
                for (long long a = 0; a < ri; ++a) {
                    auto b = layers::project_assignment(src, i, xi, j, xj, src.value_tuple(i, a));
                    bp.proj[a] = static_cast<int>(src.value_index(j, b));
                }
                h.pairs.push_back(std::move(bp));
            }
        }
    }

    if (mode == EdgeMode::Explicit) {
        for (const auto& bp : h.pairs) {
            const Mask uni = full_mask(h.blocks[bp.ga].range);
            const Mask full_j = full_mask(h.blocks[bp.gb].range);
            enumerate_tuples(k - 1, uni, [&](const std::vector<Mask>& tuple, Mask inter) {
                const Mask comp = full_j & ~project_mask(inter & uni, bp.proj);
                Mask u = comp;
                while (true) {
                    std::vector<long long> edge;
                    edge.reserve(k);
                    for (Mask m : tuple) edge.push_back(h.vertex_id(bp.ga, m));
                    edge.push_back(h.vertex_id(bp.gb, u));
                    h.edges.push_back(std::move(edge));
                    if (static_cast<long long>(h.edges.size()) > caps.max_edges)
                        throw ResourceError("build_hypergraph: edge count exceeds max_edges " +
                                            std::to_string(caps.max_edges) + " (" +
                                            std::to_string(h.edges.size()) + " so far)");
                    if (u == 0) break;
                    u = (u - 1) & comp;
                }
            });
        }
    }
    return h;
}

VertexSet completeness_witness(const LongCodeHypergraph& h, const game::GameLabeling& a) {
    const auto& src = *h.source;
    auto lifted = layers::lift_labeling(src, a);  // validates that a is fully satisfying
    std::vector<long long> ids;
    for (std::size_t g = 0; g < h.blocks.size(); ++g) {
        const auto& b = h.blocks[g];
        const int target = static_cast<int>(src.value_index(b.layer, lifted.values[b.layer - 1][b.var]));
        const Mask bit = Mask{1} << target;
        const Mask count = Mask{1} << b.range;
        for (Mask m = 0; m < count; ++m)
            if (m & bit) ids.push_back(h.vertex_id(static_cast<long long>(g), m));
    }
    return make_vertex_set(h, std::move(ids));
}

namespace {

// Per-block subset masks of a vertex set, sorted ascending.
std::vector<std::vector<Mask>> block_members(const LongCodeHypergraph& h, const VertexSet& s) {
    std::vector<std::vector<Mask>> members(h.blocks.size());
    for (long long vid : s.ids) {
        auto [g, mask] = h.vertex(vid);
        members[g].push_back(mask);
    }
    return members;
}

}  // namespace

IndependenceCheck is_independent(const LongCodeHypergraph& h, const VertexSet& s) {
    IndependenceCheck out;
    if (h.mode == EdgeMode::Explicit) {
        std::vector<char> in(h.vertex_count, 0);
        for (long long v : s.ids) in[v] = 1;
        for (const auto& e : h.edges) {
            if (std::all_of(e.begin(), e.end(), [&](long long v) { return in[v]; })) {
                out.violating_edge = e;
                return out;
            }
        }
        out.independent = true;
        return out;
    }

    auto members = block_members(h, s);
    for (const auto& bp : h.pairs) {
        const auto& ma = members[bp.ga];
        const auto& mb = members[bp.gb];
        if (ma.empty() || mb.empty()) continue;
        const int rj = h.blocks[bp.gb].range;
        const Mask full_j = full_mask(rj);
        // exists_sub[c]: some member of the partner block is a subset of c.
        std::vector<char> exists_sub(std::size_t{1} << rj, 0);
        for (Mask u : mb) exists_sub[u] = 1;
        for (int bit = 0; bit < rj; ++bit)
            for (Mask c = 0; c <= full_j; ++c)
                if (c & (Mask{1} << bit) && exists_sub[c ^ (Mask{1} << bit)]) exists_sub[c] = 1;

        bool hit = false;
        std::vector<Mask> found_tuple;
        Mask found_comp = 0;
        std::vector<Mask> cur;
        auto rec = [&](auto&& self, std::size_t start, Mask inter) -> void {
            if (hit) return;
            if (static_cast<int>(cur.size()) == h.k - 1) {
                const Mask comp = full_j & ~project_mask(inter, bp.proj);
                if (exists_sub[comp]) {
                    hit = true;
                    found_tuple = cur;
                    found_comp = comp;
                }
                return;
            }
            for (std::size_t mi = start; mi < ma.size() && !hit; ++mi) {
                cur.push_back(ma[mi]);
                self(self, mi, inter & ma[mi]);
                cur.pop_back();
            }
        };
        rec(rec, 0, ~Mask{0});
        if (hit) {
            for (Mask m : found_tuple) out.violating_edge.push_back(h.vertex_id(bp.ga, m));
            for (Mask u : mb)
                if ((u & ~found_comp) == 0) {
                    out.violating_edge.push_back(h.vertex_id(bp.gb, u));
                    break;
                }
            return out;
        }
    }
    out.independent = true;
    return out;
}

double soundness_bound(const Rat& epsilon, const Rat& p, long long t) {
    const double eps = to_double(epsilon);
    const double pd = to_double(p);
    const double q = std::log(eps / 4.0) / std::log1p(-std::pow(1.0 - pd, static_cast<double>(t)));
    const double bound = 1.0 / (static_cast<double>(t) * static_cast<double>(t) * q);
    return std::isfinite(bound) ? bound : 0.0;
}

long long disjointness_budget(const Rat& epsilon, const Rat& p, long long t) {
    if (epsilon <= Rat(0) || epsilon >= Rat(1) || p <= Rat(0) || p >= Rat(1) || t < 1)
        throw DomainError("disjointness_budget: requires 0 < eps < 1, 0 < p < 1, t >= 1");
    const double q =
        std::log(to_double(epsilon) / 4.0) / std::log1p(-std::pow(1.0 - to_double(p), static_cast<double>(t)));
    if (!std::isfinite(q) || q > 4e18) throw DomainError("disjointness_budget: degenerate parameters");
    // Small guard so exactly-representable ratios do not floor down.
    return static_cast<long long>(std::floor(q + 1e-9));
}

DecodeResult decode_independent_set(const LongCodeHypergraph& h, const VertexSet& independent, const Rat& epsilon) {
    if (epsilon <= Rat(0) || epsilon >= Rat(1)) throw DomainError("decode: epsilon must be in (0,1)");
    if (independent.weight < epsilon)
        throw DomainError("decode: set weight " + rat_to_string(independent.weight) + " is below epsilon " +
                          rat_to_string(epsilon));
    const auto& src = *h.source;
    auto members = block_members(h, independent);

    // Dense blocks: mu_p weight of the trace inside the block at least eps/2.
    const Rat half_eps = epsilon / Rat(2);
    std::vector<char> dense(h.blocks.size(), 0);
    for (std::size_t g = 0; g < h.blocks.size(); ++g) {
        if (members[g].empty()) continue;
        setfam::SetFamily fam(h.blocks[g].range, members[g]);
        if (setfam::mu_p({h.p}, fam) >= half_eps) dense[g] = 1;
    }

    // Layers where dense blocks make up at least an eps/4 fraction.
    const Rat quarter_eps = epsilon / Rat(4);
    std::vector<int> qualifying;
    for (int i = 1; i <= src.l; ++i) {
        long long count = 0;
        for (long long x = 0; x < src.layer_sizes[i - 1]; ++x)
            if (dense[h.global_var(i, x)]) ++count;
        if (Rat(count) >= quarter_eps * Rat(src.layer_sizes[i - 1])) qualifying.push_back(i);
    }

    DecodeResult res;
    const Rat two_over_delta = Rat(2) / quarter_eps;  // ceil(8/eps) layers needed
    const long long m_req =
        Int((two_over_delta.numerator() + two_over_delta.denominator() - 1) / two_over_delta.denominator())
            .convert_to<long long>();

    auto dense_flags = [&](int layer) {
        std::vector<char> flags(src.layer_sizes[layer - 1], 0);
        for (long long x = 0; x < src.layer_sizes[layer - 1]; ++x)
            if (dense[h.global_var(layer, x)]) flags[x] = 1;
        return flags;
    };

    if (static_cast<long long>(qualifying.size()) >= m_req) {
        layers::WeakDensityQuery q;
        q.delta = quarter_eps;
        q.layer_indices.assign(qualifying.begin(), qualifying.begin() + m_req);
        for (int layer : q.layer_indices) q.sets.push_back(dense_flags(layer));
        auto wd = layers::weak_density_pair(src, q);
        res.layer_i = q.layer_indices[wd.a];
        res.layer_j = q.layer_indices[wd.b];
        res.density = wd.density;
        res.hypotheses_met = true;
    } else {
        // Desk-scale fallback: too few layers for the averaging argument.
        // Use the densest available pair and say so.
        Rat best(-1);
        for (int i = 1; i <= src.l; ++i) {
            for (int j = i + 1; j <= src.l; ++j) {
                if (src.phi[src.pair_index(i, j)].empty()) continue;
                Rat d = layers::pair_density(src, i, dense_flags(i), j, dense_flags(j));
                if (d > best) {
                    best = d;
                    res.layer_i = i;
                    res.layer_j = j;
                    res.density = d;
                }
            }
        }
        if (best <= Rat(0)) throw DomainError("decode: no constraints between dense blocks");
        res.hypotheses_met = false;
    }

    res.t = setfam::intersection_threshold({half_eps, h.k - 1, h.p});

    // Small-intersection tuples inside every dense block of the chosen layers.
    for (long long x = 0; x < src.layer_sizes[res.layer_i - 1]; ++x) {
        const long long g = h.global_var(res.layer_i, x);
        if (!dense[g]) continue;
        setfam::SetFamily fam(h.blocks[g].range, members[g]);
        auto tuple = setfam::find_small_intersection_tuple(fam, h.k - 1, res.t);
        if (!tuple)
            throw PropertyViolation("decode: dense block with no small-intersection tuple (contradicts the "
                                    "mu_p threshold guarantee)");
        Mask inter = ~Mask{0};
        for (Mask m : *tuple) inter &= m;
        res.b_sets[g] = inter;
    }

    // Projection map lookup for the chosen layer pair.
    std::map<std::pair<long long, long long>, const LongCodeHypergraph::BlockPair*> pair_of;
    for (const auto& bp : h.pairs)
        if (bp.i == res.layer_i && bp.j == res.layer_j) pair_of[{bp.xi, bp.xj}] = &bp;

    // maxvar: the value contained in the most projected B(x) sets.
    const int rj = static_cast<int>(src.range_size(res.layer_j));
    std::map<long long, std::vector<long long>> y_counts;  // xj -> per-value count
    for (const auto& [key, bp] : pair_of) {
        const long long gx = h.global_var(res.layer_i, bp->xi);
        const long long gy = h.global_var(res.layer_j, bp->xj);
        if (!dense[gx] || !dense[gy]) continue;
        auto& counts = y_counts.try_emplace(bp->xj, std::vector<long long>(rj, 0)).first->second;
        const Mask image = project_mask(res.b_sets.at(gx), bp->proj);
        for (int a = 0; a < rj; ++a)
            if (image >> a & 1) ++counts[a];
    }
    if (y_counts.empty()) throw DomainError("decode: no constraints between the dense parts of the chosen layers");
    for (const auto& [xj, counts] : y_counts) {
        int best_a = 0;
        for (int a = 1; a < rj; ++a)
            if (counts[a] > counts[best_a]) best_a = a;
        res.y_assignment[h.global_var(res.layer_j, xj)] = best_a;
    }

    // Exact expectation over independent uniform choices a_x in B(x).
    Rat total(0);
    long long n_constraints = 0;
    for (const auto& [key, bp] : pair_of) {
        const long long gx = h.global_var(res.layer_i, bp->xi);
        const long long gy = h.global_var(res.layer_j, bp->xj);
        if (!dense[gx] || !dense[gy]) continue;
        const Mask bx = res.b_sets.at(gx);
        const int target = res.y_assignment.at(gy);
        // Empty B(x) means sampling a_x is degenerate; it satisfies nothing.
        if (bx != 0) {
            long long hits = 0;
            for (Mask m = bx; m;) {
                const int a = std::countr_zero(m);
                if (bp->proj[a] == target) ++hits;
                m &= m - 1;
            }
            total += Rat(hits, std::popcount(bx));
        }
        ++n_constraints;
    }
    res.expected_fraction = total / Rat(n_constraints);
    res.analytic_bound = soundness_bound(epsilon, h.p, res.t);
    return res;
}

solve::GenericHypergraph to_generic(const LongCodeHypergraph& h) {
    if (h.mode != EdgeMode::Explicit) throw DomainError("to_generic: requires explicit edges");
    if (h.vertex_count > INT32_MAX) throw DomainError("to_generic: too many vertices");
    solve::GenericHypergraph g;
    g.weights.reserve(h.vertex_count);
    for (long long v = 0; v < h.vertex_count; ++v) g.weights.push_back(h.vertex_weight(v));
    g.edges.reserve(h.edges.size());
    for (const auto& e : h.edges) {
        std::vector<int> distinct(e.begin(), e.end());
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        g.edges.push_back(std::move(distinct));
    }
    return g;
}

}  // namespace vclab::reduce
