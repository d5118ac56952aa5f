#include "mlspec/baselines.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>

#include "mlspec/rng.hpp"

namespace mlspec {

Matrix summed_adjacency(const MultiLayerGraph& mlg, bool normalized) {
    if (mlg.M() < 1) throw ConfigError("summed_adjacency: no layers");
    const int n = mlg.n;
    Matrix sum = Matrix::Zero(n, n);
    for (const auto& layer : mlg.layers) {
        if (!normalized) {
            sum += layer.weights;
            continue;
        }
        const Vector d = degree_vector(layer).degrees;
        Vector inv_sqrt(n);
        for (int i = 0; i < n; ++i) inv_sqrt(i) = d(i) > 0.0 ? 1.0 / std::sqrt(d(i)) : 0.0;
        sum += inv_sqrt.asDiagonal() * layer.weights * inv_sqrt.asDiagonal();
    }
    return sum;
}

Clustering sc_sum(const MultiLayerGraph& mlg, int k, bool normalized, const KMeansConfig& km) {
    const auto combined = make_layer(summed_adjacency(mlg, normalized), "sum");
    return spectral_cluster(combined, k, km);
}

Matrix spectral_kernel_sum(const MultiLayerGraph& mlg, int d) {
    if (mlg.M() < 1) throw ConfigError("spectral_kernel_sum: no layers");
    if (d < 1 || d > mlg.n) throw RangeError("spectral_kernel_sum: d must be in [1, n]");
    const int n = mlg.n;
    Matrix kernel = Matrix::Zero(n, n);
    for (const auto& layer : mlg.layers) {
        const auto dec = decompose(layer, LaplacianKind::Symmetric);
        const auto u = dec.eigenvectors.leftCols(d);
        kernel.noalias() += u * u.transpose();
    }
    return kernel;
}

namespace {

struct KernelRestart {
    std::vector<int> labels;
    double cost = 0.0;
};

// squared feature-space distance between two points, from kernel entries
inline double point_dist2(const Matrix& kk, int x, int y) {
    return std::max(0.0, kk(x, x) - 2.0 * kk(x, y) + kk(y, y));
}

std::vector<int> seed_kernel_centers(const Matrix& kk, int k, Rng& rng) {
    const int n = int(kk.rows());
    std::vector<int> centers;
    centers.reserve(k);
    std::vector<bool> chosen(n, false);
    auto take = [&](int idx) {
        centers.push_back(idx);
        chosen[idx] = true;
    };
    take(rng.uniform_int(n));
    std::vector<double> d2(n);
    for (int t = 1; t < k; ++t) {
        double total = 0.0;
        for (int x = 0; x < n; ++x) {
            double best = point_dist2(kk, x, centers[0]);
            for (std::size_t c = 1; c < centers.size(); ++c) {
                best = std::min(best, point_dist2(kk, x, centers[c]));
            }
            d2[x] = best;
            total += best;
        }
        if (total > 0.0) {
            double pick = rng.uniform() * total;
            int idx = n - 1;
            for (int x = 0; x < n; ++x) {
                pick -= d2[x];
                if (pick < 0.0) {
                    idx = x;
                    break;
                }
            }
            take(idx);
        } else {
            // all mass at chosen points (duplicates): lowest unchosen index
            for (int x = 0; x < n; ++x) {
                if (!chosen[x]) {
                    take(x);
                    break;
                }
            }
        }
    }
    return centers;
}

// per-cluster statistics for the kernel distance
// d(x, c) = K_xx - 2/|c| Σ_{j∈c} K_xj + 1/|c|² Σ_{j,l∈c} K_jl
struct ClusterStats {
    std::vector<long> size;
    Matrix rowsum;              // rowsum(x, c) = Σ_{j∈c} K_xj
    std::vector<double> intra;  // intra[c] = Σ_{j,l∈c} K_jl
};

ClusterStats compute_stats(const Matrix& kk, const std::vector<int>& labels, int k) {
    const int n = int(kk.rows());
    ClusterStats st;
    st.size.assign(k, 0);
    st.rowsum = Matrix::Zero(n, k);
    st.intra.assign(k, 0.0);
    for (int j = 0; j < n; ++j) {
        ++st.size[labels[j]];
        st.rowsum.col(labels[j]) += kk.col(j);
    }
    for (int j = 0; j < n; ++j) st.intra[labels[j]] += st.rowsum(j, labels[j]);
    return st;
}

inline double cluster_dist(const Matrix& kk, const ClusterStats& st, int x, int c) {
    const double m = double(st.size[c]);
    return kk(x, x) - 2.0 * st.rowsum(x, c) / m + st.intra[c] / (m * m);
}

KernelRestart run_kernel_restart(const Matrix& kk, int k, int max_iters, std::uint64_t seed) {
    const int n = int(kk.rows());
    Rng rng(seed);
    const auto centers = seed_kernel_centers(kk, k, rng);

    // initial assignment: nearest seed point, ties to the lowest center index
    std::vector<int> labels(n);
    for (int x = 0; x < n; ++x) {
        int best = 0;
        double bd = point_dist2(kk, x, centers[0]);
        for (int c = 1; c < k; ++c) {
            const double d = point_dist2(kk, x, centers[c]);
            if (d < bd) {
                bd = d;
                best = c;
            }
        }
        labels[x] = best;
    }

    double prev_obj = std::numeric_limits<double>::infinity();
    bool repaired_last = true;  // initial assignment counts as a reset point
    for (int iter = 0; iter < max_iters; ++iter) {
        auto st = compute_stats(kk, labels, k);

        // deterministic empty-cluster repair: move the point with the largest
        // self-distance to its own centroid (never emptying a singleton)
        bool repaired = false;
        for (int c = 0; c < k; ++c) {
            if (st.size[c] != 0) continue;
            int far = -1;
            double far_d = -1.0;
            for (int x = 0; x < n; ++x) {
                if (st.size[labels[x]] <= 1) continue;
                const double d = cluster_dist(kk, st, x, labels[x]);
                if (d > far_d) {
                    far_d = d;
                    far = x;
                }
            }
            if (far < 0) break;  // nothing movable
            labels[far] = c;
            st = compute_stats(kk, labels, k);
            repaired = true;
        }

        // assignment sweep against the current memberships
        bool changed = false;
        std::vector<int> next(n);
        for (int x = 0; x < n; ++x) {
            int best = 0;
            double bd = cluster_dist(kk, st, x, 0);
            for (int c = 1; c < k; ++c) {
                const double d = cluster_dist(kk, st, x, c);
                if (d < bd) {
                    bd = d;
                    best = c;
                }
            }
            next[x] = best;
            changed = changed || best != labels[x];
        }
        labels = std::move(next);

        // objective under the new memberships; non-increasing between
        // consecutive plain iterations (repairs may reset it upward)
        auto st2 = compute_stats(kk, labels, k);
        double obj = 0.0;
        bool any_empty = false;
        for (int c = 0; c < k; ++c) any_empty = any_empty || st2.size[c] == 0;
        if (!any_empty) {
            for (int x = 0; x < n; ++x) obj += cluster_dist(kk, st2, x, labels[x]);
            if (!repaired && !repaired_last &&
                obj > prev_obj + 1e-9 * std::max(1.0, std::abs(prev_obj))) {
                throw Error("kernel k-means objective increased between iterations");
            }
            prev_obj = obj;
            repaired_last = repaired;
        } else {
            repaired_last = true;
        }

        if (!changed && !any_empty) break;
    }

    auto st = compute_stats(kk, labels, k);
    KernelRestart out;
    out.labels = labels;
    for (int x = 0; x < n; ++x) out.cost += cluster_dist(kk, st, x, labels[x]);
    return out;
}

}  // namespace

Clustering kernel_kmeans(const Matrix& kernel, int k, const KMeansConfig& cfg) {
    const int n = int(kernel.rows());
    if (kernel.cols() != n) throw DimensionMismatch("kernel_kmeans: kernel must be square");
    if (k < 1 || k > n) throw RangeError("kernel_kmeans: k must be in [1, n]");
    const int restarts = std::max(1, cfg.restarts);
    std::vector<KernelRestart> slots(restarts);
    for (int r = 0; r < restarts; ++r) {
        slots[r] = run_kernel_restart(kernel, k, cfg.max_iters, derive_seed(cfg.seed, r));
    }
    int best = 0;
    for (int r = 1; r < restarts; ++r) {
        if (slots[r].cost < slots[best].cost) best = r;  // ties keep the lowest index
    }
    Clustering out;
    out.labels = std::move(slots[best].labels);
    out.k = k;
    canonicalize_labels(out.labels, k);
    return out;
}

Clustering kernel_kmeans_sum(const MultiLayerGraph& mlg, int k, int d, const KMeansConfig& km) {
    if (k < 1 || k > mlg.n) throw RangeError("kernel_kmeans_sum: k must be in [1, n]");
    return kernel_kmeans(spectral_kernel_sum(mlg, d), k, km);
}

Matrix averaged_rw_laplacian(const MultiLayerGraph& mlg) {
    if (mlg.M() < 1) throw ConfigError("averaged_rw_laplacian: no layers");
    Matrix avg = Matrix::Zero(mlg.n, mlg.n);
    for (const auto& layer : mlg.layers) avg += laplacian(layer, LaplacianKind::RandomWalk);
    return avg / double(mlg.M());
}

Clustering sc_al(const MultiLayerGraph& mlg, int k, const KMeansConfig& km) {
    if (mlg.M() < 1) throw ConfigError("sc_al: no layers");
    if (k < 1 || k > mlg.n) throw RangeError("sc_al: k must be in [1, n]");
    // a single layer's average is that layer; use the similarity-based path,
    // which also guarantees the M = 1 reduction is label-identical
    if (mlg.M() == 1) return spectral_cluster(mlg.layers[0], k, km);

    const Matrix avg = averaged_rw_laplacian(mlg);
    const int n = mlg.n;
    Matrix coords;

    Eigen::EigenSolver<Matrix> solver(avg);
    bool usable = solver.info() == Eigen::Success;
    if (usable && solver.eigenvalues().imag().cwiseAbs().maxCoeff() > 1e-8) usable = false;
    if (usable) {
        const Vector vals = solver.eigenvalues().real();
        std::vector<int> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return vals(a) < vals(b); });
        coords.resize(n, k);
        for (int j = 0; j < k; ++j) coords.col(j) = solver.eigenvectors().col(idx[j]).real();
        for (int j = 0; j < k; ++j) {
            const double norm = coords.col(j).norm();
            if (norm > 0.0) coords.col(j) /= norm;
        }
        canonicalize_signs(coords);
    } else {
        std::cerr << "sc_al: averaged Laplacian has a non-real spectrum; "
                     "falling back to the symmetrized matrix\n";
        const Matrix sym = 0.5 * (avg + avg.transpose());
        const auto dec = decompose_symmetric_matrix(sym, LaplacianKind::RandomWalk);
        coords = embed(dec, k).coords;
    }
    return kmeans(coords, k, km);
}

}  // namespace mlspec
