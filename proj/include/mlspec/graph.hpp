#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "mlspec/errors.hpp"

namespace mlspec {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// One layer of a multi-layer graph: a weighted undirected graph stored as a
// dense symmetric weight matrix with zero diagonal. Dense is deliberate: the
// problem sizes this library targets (a few hundred vertices) are decomposed
// with dense eigensolvers anyway.
struct LayerGraph {
    int n = 0;
    Matrix weights;  // n×n, symmetric, non-negative, zero diagonal
    std::string name;
};

// Validating constructor; throws InvalidGraph on any invariant violation.
LayerGraph make_layer(Matrix weights, std::string name = "");

// Several layers over one shared vertex set.
struct MultiLayerGraph {
    int n = 0;
    std::vector<LayerGraph> layers;
    int M() const { return int(layers.size()); }
};

struct DegreeVector {
    Vector degrees;  // degrees[i] = sum of row i of weights
};

enum class LaplacianKind { Combinatorial, Symmetric, RandomWalk };

DegreeVector degree_vector(const LayerGraph& g);

// Combinatorial: D - W.  Symmetric: D^{-1/2} (D - W) D^{-1/2}.
// RandomWalk: I - D^{-1} W.
// Vertices of degree zero use the pseudo-inverse convention: the corresponding
// entries of D^{-1/2} and D^{-1} are taken as 0, so an isolated vertex yields a
// zero row in the Symmetric Laplacian and a standard-basis row (eigenvalue 1)
// in the RandomWalk Laplacian.
Matrix laplacian(const LayerGraph& g, LaplacianKind kind);

// Edge-list file: UTF-8 text, one edge per line as "src dst weight", 0-based
// ids, '#' starts a comment line. Duplicate (i,j) entries have their weights
// summed. Self-loops are rejected.
LayerGraph load_layer(const std::string& path, int n);
void save_layer(const LayerGraph& g, const std::string& path);

MultiLayerGraph assemble_multilayer(std::vector<LayerGraph> layers);

// Labels file: one integer per line, line index = vertex id.
std::vector<int> load_labels(const std::string& path);
void save_labels(const std::vector<int>& labels, const std::string& path);

}  // namespace mlspec
