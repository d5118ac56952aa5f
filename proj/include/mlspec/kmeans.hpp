#pragma once

#include <cstdint>

#include "mlspec/graph.hpp"

namespace mlspec {

// Cluster assignment; labels are canonicalized by first occurrence (vertex 0's
// cluster is 0, the next previously-unseen cluster is 1, ...), so two runs that
// find the same partition produce byte-identical label vectors.
struct Clustering {
    std::vector<int> labels;
    int k = 0;
};

struct KMeansConfig {
    int restarts = 20;
    int max_iters = 300;
    std::uint64_t seed = 0;
    double tol = 1e-9;  // centroid-movement stopping tolerance
};

// Lloyd's algorithm with distance-weighted (k-means++ style) seeding.
// Determinism contract: restart r draws from an RNG seeded with
// derive_seed(cfg.seed, r), so results do not depend on execution order; the
// best restart is chosen by lowest within-cluster sum of squares with ties
// broken by lowest restart index. Assignment ties go to the lowest cluster
// index; empty clusters are repaired by reseeding from the farthest point.
// The default entry point runs restarts in parallel (OpenMP); the _serial
// variant is the reference implementation and must produce identical output.
Clustering kmeans(const Matrix& points, int k, const KMeansConfig& cfg);
Clustering kmeans_serial(const Matrix& points, int k, const KMeansConfig& cfg);

// Sum of squared distances of each row of points to its cluster's centroid.
double kmeans_cost(const Matrix& points, const Clustering& c);

// First-occurrence relabeling (exposed because every public clustering API
// funnels its labels through this).
void canonicalize_labels(std::vector<int>& labels, int k);

}  // namespace mlspec
