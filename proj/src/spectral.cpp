#include "mlspec/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <numeric>

namespace mlspec {

void canonicalize_signs(Matrix& columns) {
    for (Eigen::Index j = 0; j < columns.cols(); ++j) {
        Eigen::Index pivot = 0;
        double best = -1.0;
        for (Eigen::Index i = 0; i < columns.rows(); ++i) {
            const double mag = std::abs(columns(i, j));
            if (mag > best) {  // strict: ties keep the lowest index
                best = mag;
                pivot = i;
            }
        }
        if (columns(pivot, j) < 0.0) columns.col(j) = -columns.col(j);
    }
}

namespace {

SpectralDecomposition finalize(Vector vals, Matrix vecs, LaplacianKind kind) {
    for (Eigen::Index j = 0; j < vecs.cols(); ++j) {
        const double nrm = vecs.col(j).norm();
        if (nrm > 0.0) vecs.col(j) /= nrm;
    }
    canonicalize_signs(vecs);
    return SpectralDecomposition{std::move(vals), std::move(vecs), kind};
}

SpectralDecomposition solve_symmetric(const Matrix& sym, LaplacianKind kind) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw EigenFailure("symmetric eigensolver did not converge");
    }
    return finalize(solver.eigenvalues(), solver.eigenvectors(), kind);
}

// RandomWalk spectrum through the similarity transform. On an isolated-vertex-
// free graph: L_rw = D^{-1/2} L_sym D^{1/2}, so eigenvalues are those of L_sym
// and eigenvectors are D^{-1/2} v. With isolated vertices the similarity
// breaks down (and a degenerate L_sym eigenspace may mix isolated directions
// into connected components), so the positive-degree subgraph is decomposed on
// its own and each isolated vertex contributes the exact eigenpair
// (1, standard basis vector).
SpectralDecomposition decompose_random_walk(const LayerGraph& g) {
    const int n = g.n;
    const Vector d = g.weights.rowwise().sum();
    std::vector<int> live;  // positive-degree vertices
    live.reserve(n);
    for (int i = 0; i < n; ++i) {
        if (d(i) > 0.0) live.push_back(i);
    }
    const int m = int(live.size());

    Vector vals(n);
    Matrix vecs = Matrix::Zero(n, n);

    if (m == n) {
        Eigen::SelfAdjointEigenSolver<Matrix> solver(laplacian(g, LaplacianKind::Symmetric));
        if (solver.info() != Eigen::Success) {
            throw EigenFailure("symmetric eigensolver did not converge");
        }
        vals = solver.eigenvalues();
        vecs = solver.eigenvectors();
        for (int i = 0; i < n; ++i) vecs.row(i) /= std::sqrt(d(i));
        return finalize(std::move(vals), std::move(vecs), LaplacianKind::RandomWalk);
    }

    // subgraph decomposition for the live part
    if (m > 0) {
        Matrix Wsub(m, m);
        for (int a = 0; a < m; ++a) {
            for (int b = 0; b < m; ++b) Wsub(a, b) = g.weights(live[a], live[b]);
        }
        // degrees are unchanged by removing isolated vertices (they carry no edges)
        Vector dsub(m);
        for (int a = 0; a < m; ++a) dsub(a) = d(live[a]);
        Vector inv_sqrt = dsub.array().sqrt().inverse();
        Matrix Lsym = -(inv_sqrt.asDiagonal() * Wsub * inv_sqrt.asDiagonal());
        Lsym.diagonal().array() += 1.0;
        Eigen::SelfAdjointEigenSolver<Matrix> solver(Lsym);
        if (solver.info() != Eigen::Success) {
            throw EigenFailure("symmetric eigensolver did not converge");
        }
        // merge subgraph pairs with the isolated (1, e_i) pairs, ascending;
        // stable order: subgraph pairs first at equal eigenvalues
        struct Pair {
            double val;
            int src;  // 0 = subgraph column, 1 = isolated vertex; then index
            int idx;
        };
        std::vector<Pair> pairs;
        pairs.reserve(n);
        for (int a = 0; a < m; ++a) pairs.push_back({solver.eigenvalues()(a), 0, a});
        for (int i = 0; i < n; ++i) {
            if (d(i) == 0.0) pairs.push_back({1.0, 1, i});
        }
        std::stable_sort(pairs.begin(), pairs.end(),
                         [](const Pair& x, const Pair& y) { return x.val < y.val; });
        for (int j = 0; j < n; ++j) {
            vals(j) = pairs[j].val;
            if (pairs[j].src == 0) {
                const int a = pairs[j].idx;
                for (int b = 0; b < m; ++b) {
                    vecs(live[b], j) = solver.eigenvectors()(b, a) * inv_sqrt(b);
                }
            } else {
                vecs(pairs[j].idx, j) = 1.0;
            }
        }
    } else {
        // every vertex isolated: L_rw is the identity
        vals.setConstant(1.0);
        vecs.setIdentity();
    }
    return finalize(std::move(vals), std::move(vecs), LaplacianKind::RandomWalk);
}

}  // namespace

SpectralDecomposition decompose(const LayerGraph& g, LaplacianKind kind) {
    if (kind == LaplacianKind::RandomWalk) return decompose_random_walk(g);
    return solve_symmetric(laplacian(g, kind), kind);
}

SpectralDecomposition decompose_symmetric_matrix(const Matrix& sym, LaplacianKind tag) {
    if (sym.rows() != sym.cols()) throw DimensionMismatch("matrix must be square");
    return solve_symmetric(sym, tag);
}

Embedding embed(const SpectralDecomposition& dec, int k) {
    const auto n = dec.eigenvectors.rows();
    if (k < 1 || k > n) {
        throw RangeError("embed: k must be in [1, n], got " + std::to_string(k));
    }
    return Embedding{dec.eigenvectors.leftCols(k), k};
}

Clustering spectral_cluster(const LayerGraph& g, int k, const KMeansConfig& cfg) {
    if (k < 1 || k > g.n) throw RangeError("spectral_cluster: k must be in [1, n]");
    const auto dec = decompose(g, LaplacianKind::RandomWalk);
    return kmeans(embed(dec, k).coords, k, cfg);
}

int most_connected_layer(const MultiLayerGraph& mlg) {
    if (mlg.M() < 1) throw ConfigError("most_connected_layer: no layers");
    int best = 0;
    double best_l2 = -1.0;
    for (int i = 0; i < mlg.M(); ++i) {
        const auto dec = decompose(mlg.layers[i], LaplacianKind::Symmetric);
        const double l2 = mlg.n > 1 ? dec.eigenvalues(1) : 0.0;
        if (l2 > best_l2) {  // strict: ties keep the lowest index
            best_l2 = l2;
            best = i;
        }
    }
    return best;
}

}  // namespace mlspec
