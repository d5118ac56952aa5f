#pragma once

#include "mlspec/graph.hpp"
#include "mlspec/kmeans.hpp"

namespace mlspec {

// Full spectrum of a graph Laplacian, eigenvalues ascending. Eigenvector
// columns have unit Euclidean norm and are sign-canonicalized: the
// largest-magnitude entry of each column is positive (ties broken by lowest
// index). Within a degenerate eigenspace the basis is whatever the solver
// returns; downstream comparisons must be made on clusterings, not on raw
// eigenvectors.
struct SpectralDecomposition {
    Vector eigenvalues;   // length n, non-decreasing
    Matrix eigenvectors;  // n×n, column j pairs with eigenvalue j
    LaplacianKind kind;
};

struct Embedding {
    Matrix coords;  // n×k, row i is the spectral representation of vertex i
    int k = 0;
};

// The RandomWalk spectrum is computed through the symmetric similarity
// transform (eigenvalues of the Symmetric Laplacian, eigenvectors D^{-1/2} v)
// rather than a general nonsymmetric solver, which guarantees a real spectrum.
// Isolated vertices are handled by decomposing the induced subgraph on the
// positive-degree vertices and appending an (eigenvalue 1, standard basis
// vector) pair per isolated vertex.
SpectralDecomposition decompose(const LayerGraph& g, LaplacianKind kind);

// Spectrum of an explicit symmetric matrix (used by combiners that assemble
// their own Laplacian-like operators). Same ordering/normalization rules.
SpectralDecomposition decompose_symmetric_matrix(const Matrix& sym, LaplacianKind tag);

// First k eigenvector columns. Throws RangeError unless 1 <= k <= n.
Embedding embed(const SpectralDecomposition& dec, int k);

// Normalized spectral clustering of a single graph:
// RandomWalk decomposition -> first-k embedding -> k-means on the rows.
Clustering spectral_cluster(const LayerGraph& g, int k, const KMeansConfig& cfg);

// In-place sign canonicalization of every column (exposed for reuse).
void canonicalize_signs(Matrix& columns);

// Connectivity proxy used by the multi-layer methods when asked to pick a
// starting layer automatically: the layer whose Symmetric Laplacian has the
// largest second-smallest eigenvalue (ties broken by lowest index).
int most_connected_layer(const MultiLayerGraph& mlg);

}  // namespace mlspec
