#include "mlspec/graph.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace mlspec {

LayerGraph make_layer(Matrix weights, std::string name) {
    const auto rows = weights.rows();
    if (rows <= 0 || weights.cols() != rows) {
        throw InvalidGraph("weight matrix must be square and non-empty");
    }
    for (Eigen::Index i = 0; i < rows; ++i) {
        if (weights(i, i) != 0.0) {
            throw InvalidGraph("self-loop at vertex " + std::to_string(i) +
                               " (diagonal must be zero)");
        }
        for (Eigen::Index j = i + 1; j < rows; ++j) {
            if (weights(i, j) != weights(j, i)) {
                throw InvalidGraph("asymmetric weights at (" + std::to_string(i) + "," +
                                   std::to_string(j) + ")");
            }
            if (weights(i, j) < 0.0) {
                throw InvalidGraph("negative weight at (" + std::to_string(i) + "," +
                                   std::to_string(j) + ")");
            }
        }
    }
    LayerGraph g;
    g.n = int(rows);
    g.weights = std::move(weights);
    g.name = std::move(name);
    return g;
}

DegreeVector degree_vector(const LayerGraph& g) {
    return DegreeVector{g.weights.rowwise().sum()};
}

Matrix laplacian(const LayerGraph& g, LaplacianKind kind) {
    // revalidate: this operation's contract rejects invalid graphs even if the
    // caller assembled the struct by hand
    for (int i = 0; i < g.n; ++i) {
        for (int j = i; j < g.n; ++j) {
            if (g.weights(i, j) != g.weights(j, i) || g.weights(i, j) < 0.0 ||
                (i == j && g.weights(i, i) != 0.0)) {
                throw InvalidGraph("invalid weight matrix passed to laplacian()");
            }
        }
    }
    const Vector d = g.weights.rowwise().sum();
    const int n = g.n;
    switch (kind) {
        case LaplacianKind::Combinatorial: {
            Matrix L = -g.weights;
            L.diagonal() += d;
            return L;
        }
        case LaplacianKind::Symmetric: {
            Vector inv_sqrt(n);
            for (int i = 0; i < n; ++i) inv_sqrt(i) = d(i) > 0.0 ? 1.0 / std::sqrt(d(i)) : 0.0;
            Matrix L = -(inv_sqrt.asDiagonal() * g.weights * inv_sqrt.asDiagonal());
            for (int i = 0; i < n; ++i) L(i, i) = d(i) > 0.0 ? 1.0 : 0.0;
            return L;
        }
        case LaplacianKind::RandomWalk: {
            Vector inv(n);
            for (int i = 0; i < n; ++i) inv(i) = d(i) > 0.0 ? 1.0 / d(i) : 0.0;
            Matrix L = -(inv.asDiagonal() * g.weights);
            L.diagonal().array() += 1.0;  // isolated vertices keep a full identity row
            return L;
        }
    }
    throw RangeError("unknown LaplacianKind");
}

LayerGraph load_layer(const std::string& path, int n) {
    if (n <= 0) throw InvalidGraph("vertex count must be positive");
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open edge-list file: " + path);
    Matrix W = Matrix::Zero(n, n);
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        // strip leading whitespace; skip blanks and comments
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        long src, dst;
        double w;
        if (!(ls >> src >> dst >> w)) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": malformed edge line");
        }
        std::string trailing;
        if (ls >> trailing) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": trailing tokens");
        }
        if (src < 0 || src >= n || dst < 0 || dst >= n) {
            throw IndexError(path + ":" + std::to_string(lineno) + ": vertex id out of range [0," +
                             std::to_string(n) + ")");
        }
        if (w < 0.0) {
            throw ValueError(path + ":" + std::to_string(lineno) + ": negative edge weight");
        }
        if (src == dst) {
            throw InvalidGraph(path + ":" + std::to_string(lineno) + ": self-loop rejected");
        }
        W(src, dst) += w;
        W(dst, src) += w;
    }
    return make_layer(std::move(W), path);
}

void save_layer(const LayerGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open file for writing: " + path);
    out << "# " << g.n << " vertices, undirected edge list: src dst weight\n";
    char buf[80];
    for (int i = 0; i < g.n; ++i) {
        for (int j = i + 1; j < g.n; ++j) {
            if (g.weights(i, j) != 0.0) {
                std::snprintf(buf, sizeof buf, "%d %d %.17g\n", i, j, g.weights(i, j));
                out << buf;
            }
        }
    }
    if (!out) throw ParseError("write failed: " + path);
}

MultiLayerGraph assemble_multilayer(std::vector<LayerGraph> layers) {
    if (layers.empty()) throw DimensionMismatch("need at least one layer");
    const int n = layers.front().n;
    for (const auto& l : layers) {
        if (l.n != n) {
            throw DimensionMismatch("layer vertex counts differ: " + std::to_string(n) + " vs " +
                                    std::to_string(l.n));
        }
    }
    return MultiLayerGraph{n, std::move(layers)};
}

std::vector<int> load_labels(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open labels file: " + path);
    std::vector<int> labels;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        std::istringstream ls(line);
        long v;
        if (!(ls >> v)) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": malformed label line");
        }
        if (v < 0) {
            throw ValueError(path + ":" + std::to_string(lineno) + ": negative label");
        }
        labels.push_back(int(v));
    }
    return labels;
}

void save_labels(const std::vector<int>& labels, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open file for writing: " + path);
    for (int v : labels) out << v << "\n";
    if (!out) throw ParseError("write failed: " + path);
}

}  // namespace mlspec
