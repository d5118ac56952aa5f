#pragma once

#include "mlspec/spectral.hpp"

namespace mlspec {

// The three layer-combination baselines: adjacency summation, spectral-kernel
// summation with kernel k-means, and Laplacian averaging. Every one of them
// reduces exactly to single-layer spectral clustering when M = 1.

enum class BaselineKind { ScSum, ScSumNormalized, KernelKMeans, ScAl };

// ΣW^(i), or Σ D^{-1/2} W^(i) D^{-1/2} when normalized (isolated vertices
// contribute zero rows, matching the pseudo-inverse convention elsewhere).
Matrix summed_adjacency(const MultiLayerGraph& mlg, bool normalized);

// Spectral clustering of the summed adjacency.
Clustering sc_sum(const MultiLayerGraph& mlg, int k, bool normalized, const KMeansConfig& km);

// K = Σ_i Σ_{j=1}^{d} u_j^(i) u_j^(i)ᵀ over each layer's Symmetric-Laplacian
// eigenvectors (the constant-direction u_1 included). Symmetric PSD with
// eigenvalues in [0, M]; d = n makes every layer's term the identity.
Matrix spectral_kernel_sum(const MultiLayerGraph& mlg, int d);

// Kernel k-means on an explicit kernel matrix. Distances are evaluated from
// kernel entries only; seeding, restarts, tie-breaking and empty-cluster
// repair mirror the kmeans contract (restart r draws from
// derive_seed(cfg.seed, r); ties go to the lowest index; repair moves the
// point farthest from its own centroid). The per-restart objective is checked
// to be non-increasing across iterations, excluding repair events.
Clustering kernel_kmeans(const Matrix& kernel, int k, const KMeansConfig& cfg);

// Kernel k-means on spectral_kernel_sum(mlg, d); d defaults to k at call sites.
Clustering kernel_kmeans_sum(const MultiLayerGraph& mlg, int k, int d, const KMeansConfig& km);

// (1/M) Σ L_rw^(i).
Matrix averaged_rw_laplacian(const MultiLayerGraph& mlg);

// Spectral clustering on the averaged RandomWalk Laplacian. The average of
// the layers' L_rw matrices is nonsymmetric and (unlike a single L_rw) has no
// symmetric similarity, so its eigenpairs come from a general real solver;
// when the computed spectrum is not real to within 1e-8 the matrix is
// symmetrized to ½(A+Aᵀ) instead, with a warning on stderr. M = 1 bypasses
// all of that and is exactly spectral_cluster.
Clustering sc_al(const MultiLayerGraph& mlg, int k, const KMeansConfig& km);

}  // namespace mlspec
