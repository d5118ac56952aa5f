#pragma once

#include <cstdint>

#include "mlspec/graph.hpp"
#include "mlspec/metrics.hpp"

namespace mlspec {

// Seeded multi-layer stochastic-block-model generator. Instances are a pure
// function of their configuration: layer i draws from an independent stream
// derived as derive_seed(seed, i), pairs are visited in row-major (i, j) i<j
// order, and exactly one uniform is consumed per pair whether or not the edge
// appears (weight draws consume extra variates only on realized edges).

enum class WeightMode { Unit, Poisson };

struct MsbmLayerParams {
    double p_in = 0.0;
    double p_out = 0.0;
    bool informative = true;  // false → p_in used for every pair (no block signal)
};

struct MsbmConfig {
    int n = 0;
    int k = 0;
    std::vector<int> block_sizes;  // empty → near-equal split
    std::vector<MsbmLayerParams> layers;
    WeightMode weight_mode = WeightMode::Unit;
    double poisson_mean = 1.0;  // edge weight = 1 + Poisson(mean) in Poisson mode
    std::uint64_t seed = 0;
};

struct SbmInstance {
    MultiLayerGraph graph;
    GroundTruth truth;
};

// n into k contiguous blocks; the first n mod k blocks get the extra vertex.
std::vector<int> near_equal_blocks(int n, int k);

SbmInstance generate(const MsbmConfig& cfg);

// Two half-informative layers over k blocks (k even): each layer strongly
// separates one pairing of the blocks into k/2 groups but nearly merges the
// two blocks inside every group; the pairings differ, so only the pair of
// layers resolves all k blocks. Block b belongs to group b/2 in layer 1 and
// group b mod (k/2) in layer 2.
SbmInstance complementary_pair(int n, int k, std::uint64_t seed);

}  // namespace mlspec
