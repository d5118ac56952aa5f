#pragma once

#include "mlspec/spectral.hpp"

namespace mlspec {

// Clustering by spectral regularization: take the spectral embedding of one
// layer and smooth each nontrivial column over another layer's Symmetric
// Laplacian, trading fidelity to the original column against smoothness on the
// regularizing layer. The pairwise step generalizes to M layers greedily.

struct SrConfig {
    // one λ per combination step; missing entries fall back to the rule
    // λ_t = max(0.25, 2·NMI(current clustering, chosen layer's clustering))
    std::vector<double> lambda_schedule;
    int k = 2;               // target cluster count (cluster_sr's k argument wins)
    std::vector<int> order;  // optional explicit ordering prefix; order[0] is the start layer
    KMeansConfig km;
};

struct SmoothedSpectrum {
    Matrix columns;            // n×k: column 0 is u_1 of the source layer, 1..k-1 smoothed
    int source_layer = -1;     // argument position that supplied the spectrum (0 = g1)
    int structure_layer = -1;  // argument position that supplied the smoothing Laplacian (1 = g2)
};

// Everything cluster_sr decided along the way, for reporting and testing.
struct SrRun {
    Clustering clustering;
    std::vector<int> order;       // all M layers in combination order
    std::vector<double> lambdas;  // λ used at each of the M-1 combination steps
};

// Dirichlet-type smoothness functional Φ(f) = fᵀ L_sym f; equals the edge sum
// ½ Σ_ij w_ij (f_i/√d_i − f_j/√d_j)².
double smoothness(const Vector& f, const Matrix& l_sym);

// Closed-form smoother f* = μ (L_sym2 + μI)^{-1} u with μ = 1/λ, solved via a
// Cholesky factorization (the shifted Laplacian is SPD for every λ > 0).
Vector regularize_vector(const Vector& u, const Matrix& l_sym2, double lambda);

// Same smoother applied to columns 1..k-1 of U (column 0 passes through
// untouched: it is the constant eigenvector). One factorization is shared by
// all columns; the per-column solves are independent, so the parallel and
// serial paths produce bit-identical results.
Matrix regularize_columns(const Matrix& u_cols, const Matrix& l_sym2, double lambda,
                          bool parallel = true);

// Fixed-point iteration equivalent of regularize_vector: with α = λ/(1+λ),
// iterate f ← α(I − L_sym2)f + (1−α)u from f = u until the ∞-norm step falls
// under tol. Throws NoConvergence (carrying the last iterate) past max_iters.
Vector propagate(const Vector& u, const Matrix& l_sym2, double lambda, int max_iters = 10000,
                 double tol = 1e-10);

// One combination step: spectrum of g1's RandomWalk Laplacian, first k
// columns, columns 2..k smoothed over g2's Symmetric Laplacian. The km
// parameter mirrors the clustering entry points for interface consistency;
// the combination itself is deterministic and does not run k-means.
SmoothedSpectrum combine_pair(const LayerGraph& g1, const LayerGraph& g2, int k, double lambda,
                              const KMeansConfig& km = {});

// M×M matrix of pairwise NMI between the layers' individual spectral
// clusterings; symmetric with unit diagonal. Requires M >= 2.
Matrix layer_nmi(const MultiLayerGraph& mlg, int k, const KMeansConfig& km);

// Greedy multi-layer combination: start from cfg.order[0] (or the
// most-connected layer when no order is given), repeatedly pick the unused
// layer whose individual clustering shares the most information with the
// current combination's clustering, smooth the current columns over it, and
// finish with k-means on the final columns. cluster_sr_run exposes the chosen
// order and λ values; cluster_sr returns just the clustering.
SrRun cluster_sr_run(const MultiLayerGraph& mlg, int k, const SrConfig& cfg);
Clustering cluster_sr(const MultiLayerGraph& mlg, int k, const SrConfig& cfg);

}  // namespace mlspec
