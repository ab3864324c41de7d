#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "vclab/rational.hpp"

namespace vclab::setfam {

// Subsets of a small ground set [n] = {0,..,n-1} as bitmasks.
using Mask = std::uint32_t;

inline constexpr int kMaxGroundSet = 24;

// A finite family of distinct subsets of [n]. Members are kept sorted by
// mask value; that order is the canonical member order used by every
// deterministic search below.
struct SetFamily {
    int n = 0;
    std::vector<Mask> members;

    SetFamily() = default;
    SetFamily(int ground, std::vector<Mask> sets);

    bool operator==(const SetFamily&) const = default;
};

struct BiasParams {
    Rat p;  // 0 < p < 1
};

struct ThresholdQuery {
    Rat epsilon;   // in (0,1)
    int s = 2;     // >= 2
    Rat p;
    // delta_gap = (s-1)/s - p, must be > 0. Named to avoid clashing with the
    // layered PCP's density parameter delta.
    Rat delta_gap() const { return Rat(s - 1, s) - p; }
};

// mu_p of a single subset: p^|F| (1-p)^(n-|F|), exact.
Rat mu_p(const BiasParams& bias, int n, Mask subset);
// mu_p of a family: sum over members.
Rat mu_p(const BiasParams& bias, const SetFamily& family);

// Replaces element j by i in every member where the replacement keeps the
// family duplicate-free. Requires 0 <= i < j < n.
SetFamily ij_shift(const SetFamily& family, int i, int j);

// Iterates (i,j)-shifts in ascending lexicographic sweeps until a fixpoint.
// Terminates because each applied shift strictly decreases the sum of element
// values over all members.
SetFamily left_shift_closure(const SetFamily& family);

struct IntersectingCheck {
    bool intersecting = false;
    // A violating s-tuple of members when the answer is false.
    std::vector<Mask> witness;
};

// Every s-tuple of members (repetition allowed; see find_small_intersection_tuple
// for why the conventions coincide with the searches used here) intersects in
// >= t elements.
IntersectingCheck is_s_wise_t_intersecting(const SetFamily& family, int s, int t);

// Smallest t >= 1 with e^{-2 t d^2} / (1 - e^{-2 s d^2}) < eps, d = (s-1)/s - p.
// Floating point with a guard band: when the strict inequality holds by less
// than 1e-12, t is bumped by one.
int intersection_threshold(const ThresholdQuery& q);

// Smallest j >= 0 with |F cap [t+sj]| >= t+(s-1)j, searched over the finite
// range t+sj <= n (larger prefixes do not exist on a finite ground set).
std::optional<int> prefix_witness(Mask f, int n, int s, int t);

// First s-tuple of members, in lexicographic order over non-decreasing member
// index tuples (repetition allowed), whose intersection has size < t.
// nullopt iff the family is s-wise t-intersecting.
std::optional<std::vector<Mask>> find_small_intersection_tuple(const SetFamily& family, int s, int t);

}  // namespace vclab::setfam
