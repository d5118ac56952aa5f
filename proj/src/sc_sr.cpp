#include "mlspec/sc_sr.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>

#include "mlspec/metrics.hpp"

namespace mlspec {

namespace {

void check_square_match(const Matrix& l, Eigen::Index n, const char* what) {
    if (l.rows() != l.cols()) throw DimensionMismatch(std::string(what) + ": matrix must be square");
    if (l.rows() != n) {
        throw DimensionMismatch(std::string(what) + ": matrix order " + std::to_string(l.rows()) +
                                " does not match vector length " + std::to_string(n));
    }
}

}  // namespace

double smoothness(const Vector& f, const Matrix& l_sym) {
    check_square_match(l_sym, f.size(), "smoothness");
    return f.dot(l_sym * f);
}

Vector regularize_vector(const Vector& u, const Matrix& l_sym2, double lambda) {
    check_square_match(l_sym2, u.size(), "regularize_vector");
    if (!(lambda > 0.0)) throw ValueError("regularize_vector: lambda must be positive");
    const double mu = 1.0 / lambda;
    Matrix shifted = l_sym2;
    shifted.diagonal().array() += mu;
    Eigen::LLT<Matrix> llt(shifted);
    if (llt.info() != Eigen::Success) {
        throw EigenFailure("regularize_vector: Cholesky factorization failed");
    }
    return mu * llt.solve(u);
}

Matrix regularize_columns(const Matrix& u_cols, const Matrix& l_sym2, double lambda,
                          bool parallel) {
    check_square_match(l_sym2, u_cols.rows(), "regularize_columns");
    if (!(lambda > 0.0)) throw ValueError("regularize_columns: lambda must be positive");
    const double mu = 1.0 / lambda;
    Matrix shifted = l_sym2;
    shifted.diagonal().array() += mu;
    Eigen::LLT<Matrix> llt(shifted);
    if (llt.info() != Eigen::Success) {
        throw EigenFailure("regularize_columns: Cholesky factorization failed");
    }
    Matrix out = u_cols;
    const int k = int(u_cols.cols());
    // column 0 is the constant eigenvector and passes through unsmoothed
#pragma omp parallel for schedule(static) if (parallel)
    for (int j = 1; j < k; ++j) {
        out.col(j) = mu * llt.solve(u_cols.col(j));
    }
    return out;
}

Vector propagate(const Vector& u, const Matrix& l_sym2, double lambda, int max_iters, double tol) {
    check_square_match(l_sym2, u.size(), "propagate");
    if (!(lambda > 0.0)) throw ValueError("propagate: lambda must be positive");
    const double alpha = lambda / (1.0 + lambda);
    // iteration matrix α(I - L_sym2); formed once, applied per step
    Matrix walk = -alpha * l_sym2;
    walk.diagonal().array() += alpha;
    const Vector teleport = (1.0 - alpha) * u;
    Vector f = u;
    for (int t = 0; t < max_iters; ++t) {
        Vector next = walk * f + teleport;
        const double step = (next - f).cwiseAbs().maxCoeff();
        f = std::move(next);
        if (step < tol) return f;
    }
    throw NoConvergence("propagate: no fixed point within " + std::to_string(max_iters) +
                            " iterations",
                        std::vector<double>(f.data(), f.data() + f.size()));
}

SmoothedSpectrum combine_pair(const LayerGraph& g1, const LayerGraph& g2, int k, double lambda,
                              const KMeansConfig& /*km*/) {
    if (g1.n != g2.n) {
        throw DimensionMismatch("combine_pair: layer sizes differ (" + std::to_string(g1.n) +
                                " vs " + std::to_string(g2.n) + ")");
    }
    if (k < 1 || k > g1.n) throw RangeError("combine_pair: k must be in [1, n]");
    const auto dec = decompose(g1, LaplacianKind::RandomWalk);
    const Matrix u_cols = embed(dec, k).coords;
    const Matrix l2 = laplacian(g2, LaplacianKind::Symmetric);
    SmoothedSpectrum out;
    out.columns = regularize_columns(u_cols, l2, lambda);
    out.source_layer = 0;
    out.structure_layer = 1;
    return out;
}

Matrix layer_nmi(const MultiLayerGraph& mlg, int k, const KMeansConfig& km) {
    const int m = mlg.M();
    if (m < 2) throw ConfigError("layer_nmi: need at least two layers");
    std::vector<Clustering> per_layer;
    per_layer.reserve(m);
    for (int i = 0; i < m; ++i) per_layer.push_back(spectral_cluster(mlg.layers[i], k, km));
    Matrix out(m, m);
    for (int i = 0; i < m; ++i) {
        out(i, i) = 1.0;
        for (int j = i + 1; j < m; ++j) {
            const double v = nmi(per_layer[i].labels, per_layer[j].labels);
            out(i, j) = v;
            out(j, i) = v;
        }
    }
    return out;
}

namespace {

double default_lambda(double info) { return std::max(0.25, 2.0 * info); }

}  // namespace

SrRun cluster_sr_run(const MultiLayerGraph& mlg, int k, const SrConfig& cfg) {
    const int m = mlg.M();
    if (m < 1) throw ConfigError("cluster_sr: no layers");
    if (k < 1 || k > mlg.n) throw RangeError("cluster_sr: k must be in [1, n]");
    for (double l : cfg.lambda_schedule) {
        if (!(l > 0.0)) throw ConfigError("cluster_sr: every lambda must be positive");
    }
    if (int(cfg.order.size()) > m) throw ConfigError("cluster_sr: order longer than layer count");
    {
        std::vector<bool> seen(m, false);
        for (int idx : cfg.order) {
            if (idx < 0 || idx >= m) throw ConfigError("cluster_sr: order entry out of range");
            if (seen[idx]) throw ConfigError("cluster_sr: order repeats layer " + std::to_string(idx));
            seen[idx] = true;
        }
    }

    SrRun run;
    if (m == 1) {
        run.clustering = spectral_cluster(mlg.layers[0], k, cfg.km);
        run.order = {0};
        return run;
    }

    // individual layer clusterings drive both greedy selection and the λ rule
    std::vector<Clustering> per_layer(m);
    std::vector<bool> have_layer(m, false);
    auto layer_clustering = [&](int i) -> const Clustering& {
        if (!have_layer[i]) {
            per_layer[i] = spectral_cluster(mlg.layers[i], k, cfg.km);
            have_layer[i] = true;
        }
        return per_layer[i];
    };

    const int start = cfg.order.empty() ? most_connected_layer(mlg) : cfg.order[0];
    Matrix columns = embed(decompose(mlg.layers[start], LaplacianKind::RandomWalk), k).coords;
    Clustering current = layer_clustering(start);
    run.order.push_back(start);

    std::vector<bool> used(m, false);
    used[start] = true;
    for (int step = 0; step + 1 < m; ++step) {
        int next = -1;
        if (step + 1 < int(cfg.order.size())) {
            next = cfg.order[step + 1];
        } else {
            double best = -1.0;
            for (int j = 0; j < m; ++j) {
                if (used[j]) continue;
                const double v = nmi(current.labels, layer_clustering(j).labels);
                if (v > best) {  // strict: ties keep the lowest index
                    best = v;
                    next = j;
                }
            }
        }
        const double lam = step < int(cfg.lambda_schedule.size())
                               ? cfg.lambda_schedule[step]
                               : default_lambda(nmi(current.labels, layer_clustering(next).labels));
        columns = regularize_columns(columns, laplacian(mlg.layers[next], LaplacianKind::Symmetric),
                                     lam);
        current = kmeans(columns, k, cfg.km);
        used[next] = true;
        run.order.push_back(next);
        run.lambdas.push_back(lam);
    }
    run.clustering = std::move(current);
    return run;
}

Clustering cluster_sr(const MultiLayerGraph& mlg, int k, const SrConfig& cfg) {
    return cluster_sr_run(mlg, k, cfg).clustering;
}

}  // namespace mlspec
