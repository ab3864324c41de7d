#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace vclab {

// Exact arithmetic everywhere weights and fractions appear; floating point is
// confined to threshold/bound computations whose outputs are integers or
// diagnostics.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::rational<Int>;

inline double to_double(const Rat& r) { return boost::rational_cast<double>(r); }

inline Rat rat_pow(const Rat& base, int exp) {
    if (exp < 0) throw std::invalid_argument("rat_pow: negative exponent");
    Rat acc(1);
    for (int i = 0; i < exp; ++i) acc *= base;
    return acc;
}

// Parses "a/b", "a", or a plain decimal like "0.25" into an exact rational.
Rat parse_rational(const std::string& text);

std::string rat_to_string(const Rat& r);

// Exact binomial coefficient, used by tail probabilities and test oracles.
Int binom(int n, int k);

}  // namespace vclab
