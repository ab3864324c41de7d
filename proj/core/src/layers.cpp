#include "vclab/layers.hpp"

#include <algorithm>
#include <set>

#include "vclab/errors.hpp"
#include "vclab/rng.hpp"

namespace vclab::layers {

namespace {

long long ceil_div(const Int& num, const Int& den) {
    Int q = (num + den - 1) / den;
    return q.convert_to<long long>();
}

}  // namespace

int LayeredInstance::pair_index(int i, int j) const {
    if (i < 1 || i >= j || j > l) throw DomainError("pair_index: requires 1 <= i < j <= l");
    // Row-major over the strict upper triangle of an l x l grid.
    int idx = 0;
    for (int a = 1; a < i; ++a) idx += l - a;
    return idx + (j - i - 1);
}

std::vector<int> LayeredInstance::var_tuple(int layer, long long index) const {
    std::vector<int> t(l);
    for (int k = l; k >= 1; --k) {
        long long b = digit_base(layer, k);
        t[k - 1] = static_cast<int>(index % b);
        index /= b;
    }
    return t;
}

long long LayeredInstance::var_index(int layer, const std::vector<int>& tuple) const {
    long long idx = 0;
    for (int k = 1; k <= l; ++k) idx = idx * digit_base(layer, k) + tuple[k - 1];
    return idx;
}

long long LayeredInstance::range_size(int layer) const {
    long long s = 1;
    for (int k = 1; k <= l; ++k) s *= value_base(layer, k);
    return s;
}

std::vector<int> LayeredInstance::value_tuple(int layer, long long index) const {
    std::vector<int> t(l);
    for (int k = l; k >= 1; --k) {
        long long b = value_base(layer, k);
        t[k - 1] = static_cast<int>(index % b);
        index /= b;
    }
    return t;
}

long long LayeredInstance::value_index(int layer, const std::vector<int>& tuple) const {
    long long idx = 0;
    for (int k = 1; k <= l; ++k) idx = idx * value_base(layer, k) + tuple[k - 1];
    return idx;
}

bool LayeredInstance::constrained(int i, long long xi, int j, long long xj) const {
    if (i < 1 || i >= j || j > l) return false;
    const auto ti = var_tuple(i, xi);
    const auto tj = var_tuple(j, xj);
    for (int k = 1; k <= l; ++k) {
        if (k <= i || k > j) {
            if (ti[k - 1] != tj[k - 1]) return false;
        } else {
            if (table_of[ti[k - 1]][tj[k - 1]] < 0) return false;
        }
    }
    return true;
}

std::vector<long long> LayeredInstance::successors(int layer, long long var) const {
    if (layer < 1 || layer >= l) throw DomainError("successors: layer must be in [1, l)");
    auto t = var_tuple(layer, var);
    const int y = t[layer];  // coordinate layer+1, a Y variable
    std::vector<long long> out;
    out.reserve(y_neighbors[y].size());
    for (int z : y_neighbors[y]) {
        t[layer] = z;
        out.push_back(var_index(layer + 1, t));
    }
    t[layer] = y;
    return out;
}

LayeredInstance build_layered(const game::ProjectionGame& g, int l, const Caps& caps) {
    if (l < 1) throw DomainError("build_layered: l must be >= 1");
    auto bad = game::validate(g);
    if (!bad.empty()) throw DomainError("build_layered: invalid base game: " + bad.front());

    LayeredInstance inst;
    inst.l = l;
    inst.base = g;

    inst.layer_sizes.resize(l);
    for (int i = 1; i <= l; ++i) {
        long long s = 1;
        for (int k = 1; k <= l; ++k) {
            s *= (k <= i) ? g.z_count : g.y_count;
            if (s > caps.max_layer_size)
                throw ResourceError("build_layered: layer " + std::to_string(i) + " exceeds max_layer_size (" +
                                    std::to_string(caps.max_layer_size) + ")");
        }
        inst.layer_sizes[i - 1] = s;
    }

    inst.y_neighbors.assign(g.y_count, {});
    inst.table_of.assign(g.y_count, std::vector<int>(g.z_count, -1));
    for (std::size_t ci = 0; ci < g.constraints.size(); ++ci) {
        const auto& c = g.constraints[ci];
        inst.table_of[c.y][c.z] = static_cast<int>(ci);
        inst.y_neighbors[c.y].push_back(c.z);
    }
    for (auto& nb : inst.y_neighbors) std::sort(nb.begin(), nb.end());

    inst.phi.resize(static_cast<std::size_t>(l) * (l - 1) / 2);
    for (int i = 1; i <= l; ++i) {
        for (int j = i + 1; j <= l; ++j) {
            auto& bucket = inst.phi[inst.pair_index(i, j)];
            for (long long xi = 0; xi < inst.layer_sizes[i - 1]; ++xi) {
                auto t = inst.var_tuple(i, xi);
                // Enumerate all z-choices on coordinates i+1..j.
                std::vector<int> saved(t.begin() + i, t.begin() + j);
                std::vector<int> choice(j - i, 0);
                bool more = true;
                while (more) {
                    bool ok = true;
                    for (int k = 0; k < j - i && ok; ++k) {
                        const auto& nb = inst.y_neighbors[saved[k]];
                        if (choice[k] >= static_cast<int>(nb.size()))
                            ok = false;
                        else
                            t[i + k] = nb[choice[k]];
                    }
                    if (ok) bucket.emplace_back(xi, inst.var_index(j, t));
                    // mixed-radix advance over neighbor lists
                    more = false;
                    for (int k = j - i - 1; k >= 0; --k) {
                        if (++choice[k] < static_cast<int>(inst.y_neighbors[saved[k]].size())) {
                            more = true;
                            break;
                        }
                        choice[k] = 0;
                    }
                }
                std::copy(saved.begin(), saved.end(), t.begin() + i);
            }
            std::sort(bucket.begin(), bucket.end());
        }
    }
    return inst;
}

std::vector<int> project_assignment(const LayeredInstance& inst, int i, long long xi, int j, long long xj,
                                    const std::vector<int>& a) {
    if (!inst.constrained(i, xi, j, xj)) throw DomainError("project_assignment: no constraint between the pair");
    if (static_cast<int>(a.size()) != inst.l) throw DomainError("project_assignment: value tuple has wrong length");
    for (int k = 1; k <= inst.l; ++k)
        if (a[k - 1] < 0 || a[k - 1] >= inst.value_base(i, k))
            throw DomainError("project_assignment: value coordinate out of range");
    const auto ti = inst.var_tuple(i, xi);
    const auto tj = inst.var_tuple(j, xj);
    std::vector<int> b = a;
    for (int k = i + 1; k <= j; ++k) {
        const auto& table = inst.base.constraints[inst.table_of[ti[k - 1]][tj[k - 1]]].table;
        b[k - 1] = table[a[k - 1]];
    }
    return b;
}

LayeredLabeling lift_labeling(const LayeredInstance& inst, const game::GameLabeling& a) {
    if (game::satisfied_fraction(inst.base, a) != Rat(1))
        throw DomainError("lift_labeling: base labeling does not satisfy all constraints");
    LayeredLabeling b;
    b.values.resize(inst.l);
    for (int i = 1; i <= inst.l; ++i) {
        b.values[i - 1].resize(inst.layer_sizes[i - 1]);
        for (long long x = 0; x < inst.layer_sizes[i - 1]; ++x) {
            auto t = inst.var_tuple(i, x);
            std::vector<int> val(inst.l);
            for (int k = 1; k <= inst.l; ++k)
                val[k - 1] = (k <= i) ? a.z_labels[t[k - 1]] : a.y_labels[t[k - 1]];
            b.values[i - 1][x] = std::move(val);
        }
    }
    return b;
}

FractionBetween satisfied_fraction_between(const LayeredInstance& inst, const LayeredLabeling& b, int i, int j) {
    const auto& bucket = inst.phi[inst.pair_index(i, j)];
    if (bucket.empty()) return {Rat(1), true};
    long long sat = 0;
    for (auto [xi, xj] : bucket) {
        auto projected = project_assignment(inst, i, xi, j, xj, b.values[i - 1][xi]);
        if (projected == b.values[j - 1][xj]) ++sat;
    }
    return {Rat(sat, static_cast<long long>(bucket.size())), false};
}

DecodedLabeling decode_to_game(const LayeredInstance& inst, const LayeredLabeling& b, int i, int j) {
    const auto& bucket = inst.phi[inst.pair_index(i, j)];
    if (bucket.empty()) throw DomainError("decode_to_game: no class pair with constraints");

    // Class keys: the variable with coordinate j zeroed out (all other
    // coordinates identify the class).
    std::set<std::pair<long long, long long>> class_pairs;
    for (auto [xi, xj] : bucket) {
        auto ti = inst.var_tuple(i, xi);
        auto tj = inst.var_tuple(j, xj);
        ti[j - 1] = 0;
        tj[j - 1] = 0;
        class_pairs.insert({inst.var_index(i, ti), inst.var_index(j, tj)});
    }

    DecodedLabeling best;
    best.achieved = Rat(-1);
    for (auto [ci, cj] : class_pairs) {
        auto ti = inst.var_tuple(i, ci);
        auto tj = inst.var_tuple(j, cj);
        game::GameLabeling lab;
        lab.y_labels.resize(inst.base.y_count);
        lab.z_labels.resize(inst.base.z_count);
        // Coordinate j of X_i variables is a Y slot; of X_j variables a Z slot.
        for (int y = 0; y < inst.base.y_count; ++y) {
            ti[j - 1] = y;
            lab.y_labels[y] = b.values[i - 1][inst.var_index(i, ti)][j - 1];
        }
        for (int z = 0; z < inst.base.z_count; ++z) {
            tj[j - 1] = z;
            lab.z_labels[z] = b.values[j - 1][inst.var_index(j, tj)][j - 1];
        }
        Rat frac = game::satisfied_fraction(inst.base, lab);
        if (frac > best.achieved) {
            best.achieved = frac;
            best.labeling = std::move(lab);
        }
    }
    return best;
}

Rat pair_density(const LayeredInstance& inst, int layer_a, const std::vector<char>& set_a, int layer_b,
                 const std::vector<char>& set_b) {
    const auto& bucket = inst.phi[inst.pair_index(layer_a, layer_b)];
    if (bucket.empty()) throw DomainError("pair_density: no constraints between the layers");
    if (static_cast<long long>(set_a.size()) != inst.layer_sizes[layer_a - 1] ||
        static_cast<long long>(set_b.size()) != inst.layer_sizes[layer_b - 1])
        throw DomainError("pair_density: set size mismatch");
    long long hit = 0;
    for (auto [xa, xb] : bucket)
        if (set_a[xa] && set_b[xb]) ++hit;
    return Rat(hit, static_cast<long long>(bucket.size()));
}

namespace {

void validate_query(const LayeredInstance& inst, const WeakDensityQuery& q) {
    if (q.delta <= Rat(0) || q.delta > Rat(1)) throw DomainError("weak density: delta must be in (0,1]");
    const int m = static_cast<int>(q.layer_indices.size());
    if (q.sets.size() != q.layer_indices.size()) throw DomainError("weak density: sets/layers size mismatch");
    Rat two_over_delta = Rat(2) / q.delta;
    if (m < ceil_div(two_over_delta.numerator(), two_over_delta.denominator()))
        throw DomainError("weak density: fewer than ceil(2/delta) layers");
    for (int j = 0; j < m; ++j) {
        int layer = q.layer_indices[j];
        if (layer < 1 || layer > inst.l) throw DomainError("weak density: layer index out of range");
        if (j > 0 && q.layer_indices[j - 1] >= layer) throw DomainError("weak density: layers must be increasing");
        if (static_cast<long long>(q.sets[j].size()) != inst.layer_sizes[layer - 1])
            throw DomainError("weak density: set size mismatch");
        long long count = std::count(q.sets[j].begin(), q.sets[j].end(), char(1));
        if (Rat(count) < q.delta * Rat(inst.layer_sizes[layer - 1]))
            throw DomainError("weak density: set smaller than delta * layer size");
    }
}

}  // namespace

DensityPair weak_density_pair(const LayeredInstance& inst, const WeakDensityQuery& q) {
    validate_query(inst, q);
    const int m = static_cast<int>(q.layer_indices.size());
    DensityPair out;
    out.all.assign(m, std::vector<Rat>(m, Rat(0)));
    const Rat target = q.delta * q.delta / Rat(4);
    bool found = false;
    for (int a = 0; a < m; ++a) {
        for (int b = a + 1; b < m; ++b) {
            Rat d = pair_density(inst, q.layer_indices[a], q.sets[a], q.layer_indices[b], q.sets[b]);
            out.all[a][b] = d;
            if (!found && d >= target) {
                out.a = a;
                out.b = b;
                out.density = d;
                found = true;
            }
        }
    }
    if (!found)
        throw PropertyViolation("weak_density_pair: no pair reaches delta^2/4 = " + rat_to_string(target));
    return out;
}

std::vector<std::vector<double>> random_walk_estimate(const LayeredInstance& inst, const WeakDensityQuery& q,
                                                      std::uint64_t seed, long long trials) {
    if (trials < 1) throw DomainError("random_walk_estimate: trials must be >= 1");
    validate_query(inst, q);
    const int m = static_cast<int>(q.layer_indices.size());
    std::vector<std::vector<long long>> joint(m, std::vector<long long>(m, 0));

    // Trials run in fixed-size blocks with independently derived seeds, so
    // the estimate does not depend on how blocks are scheduled.
    constexpr long long kBlock = 1024;
    for (long long start = 0, block = 0; start < trials; start += kBlock, ++block) {
        Rng rng(split_seed(seed, static_cast<std::uint64_t>(block)));
        const long long end = std::min(trials, start + kBlock);
        for (long long tr = start; tr < end; ++tr) {
            long long x = static_cast<long long>(rng.uniform_below(static_cast<std::uint64_t>(inst.layer_sizes[0])));
            std::vector<char> hit(m, 0);
            for (int layer = 1; layer <= inst.l; ++layer) {
                for (int j = 0; j < m; ++j)
                    if (q.layer_indices[j] == layer && q.sets[j][x]) hit[j] = 1;
                if (layer < inst.l) {
                    auto next = inst.successors(layer, x);
                    if (next.empty()) throw DomainError("random_walk_estimate: walk stuck (isolated variable)");
                    x = next[rng.uniform_below(next.size())];
                }
            }
            for (int a = 0; a < m; ++a)
                for (int b = a + 1; b < m; ++b)
                    if (hit[a] && hit[b]) ++joint[a][b];
        }
    }

    std::vector<std::vector<double>> est(m, std::vector<double>(m, 0.0));
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) est[a][b] = static_cast<double>(joint[a][b]) / static_cast<double>(trials);
    return est;
}

}  // namespace vclab::layers
