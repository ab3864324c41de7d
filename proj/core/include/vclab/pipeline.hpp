#pragma once

#include <cstdint>

#include "vclab/json_io.hpp"
#include "vclab/layers.hpp"
#include "vclab/rational.hpp"
#include "vclab/reduce.hpp"
#include "vclab/solve.hpp"

namespace vclab::pipeline {

struct PipelineConfig {
    int k = 3;
    Rat epsilon = Rat(1, 10);
    int l = 2;

    int y_count = 2;
    int z_count = 1;
    int degree = 1;
    int ry = 2;
    int rz = 1;

    std::uint64_t seed = 1;

    layers::Caps layer_caps;
    reduce::Caps reduce_caps;
    solve::Budget solver_budget;
    reduce::EdgeMode mode = reduce::EdgeMode::Explicit;
};

// Checks every downstream precondition up front so a bad configuration fails
// before any work starts.
void validate_config(const PipelineConfig& cfg);

// Planted and scrambled games -> layered instance -> long-code hypergraph ->
// witness, solvers, decoder. Returns the full report; identical config+seed
// gives a byte-identical report. All figures are desk scale.
io::Json run_pipeline(const PipelineConfig& cfg);

}  // namespace vclab::pipeline
