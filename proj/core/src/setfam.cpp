#include "vclab/setfam.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "vclab/errors.hpp"

namespace vclab::setfam {

namespace {
int popcount(Mask m) { return std::popcount(m); }
}  // namespace

SetFamily::SetFamily(int ground, std::vector<Mask> sets) : n(ground), members(std::move(sets)) {
    if (n < 0 || n > kMaxGroundSet)
        throw DomainError("SetFamily: ground set size must be in [0," + std::to_string(kMaxGroundSet) + "]");
    const Mask limit = (n == 32) ? ~Mask{0} : ((Mask{1} << n) - 1);
    for (Mask m : members)
        if (m & ~limit) throw DomainError("SetFamily: member outside ground set");
    std::sort(members.begin(), members.end());
    if (std::adjacent_find(members.begin(), members.end()) != members.end())
        throw DomainError("SetFamily: duplicate members");
}

Rat mu_p(const BiasParams& bias, int n, Mask subset) {
    if (bias.p <= Rat(0) || bias.p >= Rat(1)) throw DomainError("mu_p: bias must be in (0,1)");
    const int k = popcount(subset);
    return rat_pow(bias.p, k) * rat_pow(Rat(1) - bias.p, n - k);
}

Rat mu_p(const BiasParams& bias, const SetFamily& family) {
    Rat total(0);
    for (Mask m : family.members) total += mu_p(bias, family.n, m);
    return total;
}

SetFamily ij_shift(const SetFamily& family, int i, int j) {
    if (i < 0 || i >= j || j >= family.n) throw DomainError("ij_shift: requires 0 <= i < j < n");
    const Mask bi = Mask{1} << i;
    const Mask bj = Mask{1} << j;
    // Membership tests are against the original family, per the definition.
    std::unordered_set<Mask> present(family.members.begin(), family.members.end());
    std::vector<Mask> out;
    out.reserve(family.members.size());
    for (Mask f : family.members) {
        if ((f & bj) && !(f & bi)) {
            Mask shifted = (f & ~bj) | bi;
            if (!present.count(shifted)) {
                out.push_back(shifted);
                continue;
            }
        }
        out.push_back(f);
    }
    return SetFamily(family.n, std::move(out));
}

SetFamily left_shift_closure(const SetFamily& family) {
    SetFamily cur = family;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < cur.n; ++i) {
            for (int j = i + 1; j < cur.n; ++j) {
                SetFamily next = ij_shift(cur, i, j);
                if (next.members != cur.members) {
                    cur = std::move(next);
                    changed = true;
                }
            }
        }
    }
    return cur;
}

namespace {

// Reachable intersection masks after choosing d members, with back-pointers
// for witness reconstruction. Collapsing tuples to their intersection keeps
// the scan polynomial in 2^n instead of |family|^s.
struct Layer {
    // mask -> (previous mask, member index added)
    std::unordered_map<Mask, std::pair<Mask, int>> reach;
};

std::vector<Mask> reconstruct(const std::vector<Layer>& layers, const SetFamily& fam, int depth, Mask mask, int s) {
    std::vector<int> idx;
    Mask cur = mask;
    for (int d = depth; d >= 1; --d) {
        auto it = layers[d].reach.find(cur);
        idx.push_back(it->second.second);
        cur = it->second.first;
    }
    std::reverse(idx.begin(), idx.end());
    // Pad with the last chosen member; repetition keeps the intersection.
    while (static_cast<int>(idx.size()) < s) idx.push_back(idx.back());
    std::vector<Mask> tuple;
    tuple.reserve(s);
    for (int i : idx) tuple.push_back(fam.members[i]);
    return tuple;
}

}  // namespace

IntersectingCheck is_s_wise_t_intersecting(const SetFamily& family, int s, int t) {
    if (s < 1 || t < 0) throw DomainError("is_s_wise_t_intersecting: requires s >= 1, t >= 0");
    IntersectingCheck res;
    if (t == 0 || family.members.empty()) {
        res.intersecting = true;
        return res;
    }
    std::vector<Layer> layers(s + 1);
    layers[0].reach[~Mask{0}] = {0, -1};
    for (int d = 1; d <= s; ++d) {
        for (const auto& [prev, _] : layers[d - 1].reach) {
            for (int mi = 0; mi < static_cast<int>(family.members.size()); ++mi) {
                Mask next = prev & family.members[mi];
                if (popcount(next) < t) {
                    layers[d].reach[next] = {prev, mi};
                    res.intersecting = false;
                    res.witness = reconstruct(layers, family, d, next, s);
                    return res;
                }
                layers[d].reach.try_emplace(next, prev, mi);
            }
        }
    }
    res.intersecting = true;
    return res;
}

int intersection_threshold(const ThresholdQuery& q) {
    if (q.epsilon <= Rat(0) || q.epsilon >= Rat(1)) throw DomainError("intersection_threshold: epsilon must be in (0,1)");
    if (q.s < 2) throw DomainError("intersection_threshold: s must be >= 2");
    if (q.delta_gap() <= Rat(0)) throw DomainError("intersection_threshold: requires p < (s-1)/s");
    const double d = to_double(q.delta_gap());
    const double eps = to_double(q.epsilon);
    const double denom = 1.0 - std::exp(-2.0 * q.s * d * d);
    auto bound = [&](long long t) { return std::exp(-2.0 * t * d * d) / denom; };
    // Closed-form start, then settle by local scan.
    long long t = std::max<long long>(1, static_cast<long long>(std::ceil(std::log(1.0 / (eps * denom)) / (2.0 * d * d))));
    while (bound(t) >= eps) ++t;
    while (t > 1 && bound(t - 1) < eps) --t;
    // Guard band against float round-off deciding the boundary case.
    if (eps - bound(t) < 1e-12) ++t;
    if (t > INT32_MAX) throw DomainError("intersection_threshold: t out of range");
    return static_cast<int>(t);
}

std::optional<int> prefix_witness(Mask f, int n, int s, int t) {
    if (s < 1 || t < 0 || n < 0) throw DomainError("prefix_witness: requires s >= 1, t >= 0");
    for (int j = 0; t + s * j <= n; ++j) {
        const int len = t + s * j;
        const Mask prefix = (len == 0) ? 0 : ((Mask{1} << len) - 1);
        if (popcount(f & prefix) >= t + (s - 1) * j) return j;
    }
    return std::nullopt;
}

namespace {

bool tuple_dfs(const SetFamily& fam, int s, int t, std::vector<int>& idx, Mask mask) {
    const int depth = static_cast<int>(idx.size());
    if (popcount(mask) < t) {
        // Any completion keeps the intersection inside mask; pad with the
        // smallest allowed index for the lexicographically first tuple.
        while (static_cast<int>(idx.size()) < s) idx.push_back(idx.empty() ? 0 : idx.back());
        return true;
    }
    if (depth == s) return false;
    const int start = depth == 0 ? 0 : idx.back();
    for (int mi = start; mi < static_cast<int>(fam.members.size()); ++mi) {
        idx.push_back(mi);
        if (tuple_dfs(fam, s, t, idx, mask & fam.members[mi])) return true;
        idx.pop_back();
    }
    return false;
}

}  // namespace

std::optional<std::vector<Mask>> find_small_intersection_tuple(const SetFamily& family, int s, int t) {
    if (s < 2) throw DomainError("find_small_intersection_tuple: requires s >= 2");
    if (family.members.empty()) return std::nullopt;
    // Cheap decision first so the lexicographic search only runs when a
    // violating tuple is known to exist.
    if (is_s_wise_t_intersecting(family, s, t).intersecting) return std::nullopt;
    std::vector<int> idx;
    if (!tuple_dfs(family, s, t, idx, ~Mask{0})) return std::nullopt;  // unreachable
    std::vector<Mask> tuple;
    tuple.reserve(s);
    for (int i : idx) tuple.push_back(family.members[i]);
    return tuple;
}

}  // namespace vclab::setfam
