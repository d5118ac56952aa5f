#include "mlspec/kmeans.hpp"

#include <algorithm>
#include <limits>

#include "mlspec/rng.hpp"

namespace mlspec {
namespace {

struct RestartResult {
    std::vector<int> labels;
    double cost = std::numeric_limits<double>::infinity();
};

// squared euclidean distance between row i of points and a centroid row
inline double sqdist(const Matrix& points, int i, const Matrix& centroids, int c) {
    return (points.row(i) - centroids.row(c)).squaredNorm();
}

// k-means++ seeding: first centroid uniform, then each next centroid chosen
// with probability proportional to squared distance to the nearest chosen one.
// If all candidate distances are zero (duplicate points), fall back to the
// lowest-index point not already chosen, keeping seeding deterministic.
Matrix seed_centroids(const Matrix& points, int k, Rng& rng) {
    const int n = int(points.rows());
    Matrix centroids(k, points.cols());
    std::vector<char> chosen(n, 0);
    std::vector<double> d2(n, std::numeric_limits<double>::infinity());

    int first = rng.uniform_int(n);
    centroids.row(0) = points.row(first);
    chosen[first] = 1;
    for (int c = 1; c < k; ++c) {
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            d2[i] = std::min(d2[i], sqdist(points, i, centroids, c - 1));
            total += d2[i];
        }
        int pick = -1;
        if (total > 0.0) {
            const double target = rng.uniform() * total;
            double acc = 0.0;
            for (int i = 0; i < n; ++i) {
                acc += d2[i];
                if (acc >= target) {
                    pick = i;
                    break;
                }
            }
            if (pick < 0) pick = n - 1;  // guard against fp underrun of the cumulative sum
        } else {
            for (int i = 0; i < n; ++i) {
                if (!chosen[i]) {
                    pick = i;
                    break;
                }
            }
            if (pick < 0) pick = 0;
        }
        centroids.row(c) = points.row(pick);
        chosen[pick] = 1;
    }
    return centroids;
}

// nearest centroid with ties to the lowest cluster index
inline int assign_one(const Matrix& points, int i, const Matrix& centroids) {
    int best = 0;
    double bestd = sqdist(points, i, centroids, 0);
    for (int c = 1; c < int(centroids.rows()); ++c) {
        const double d = sqdist(points, i, centroids, c);
        if (d < bestd) {
            bestd = d;
            best = c;
        }
    }
    return best;
}

RestartResult run_restart(const Matrix& points, int k, const KMeansConfig& cfg,
                          std::uint64_t restart_seed) {
    const int n = int(points.rows());
    Rng rng(restart_seed);
    Matrix centroids = seed_centroids(points, k, rng);
    std::vector<int> labels(n, 0);
    std::vector<int> counts(k, 0);

    for (int iter = 0; iter < cfg.max_iters; ++iter) {
        std::fill(counts.begin(), counts.end(), 0);
        for (int i = 0; i < n; ++i) {
            labels[i] = assign_one(points, i, centroids);
            ++counts[labels[i]];
        }
        // repair empty clusters in index order: move the globally farthest
        // point (from its assigned centroid, never emptying a singleton),
        // ties to the lowest vertex index
        for (int c = 0; c < k; ++c) {
            if (counts[c] > 0) continue;
            int far = -1;
            double fard = -1.0;
            for (int i = 0; i < n; ++i) {
                if (counts[labels[i]] <= 1) continue;
                const double d = sqdist(points, i, centroids, labels[i]);
                if (d > fard) {
                    fard = d;
                    far = i;
                }
            }
            if (far < 0) break;  // fewer distinct points than clusters
            --counts[labels[far]];
            labels[far] = c;
            ++counts[c];
            centroids.row(c) = points.row(far);
        }
        Matrix next = Matrix::Zero(k, points.cols());
        for (int i = 0; i < n; ++i) next.row(labels[i]) += points.row(i);
        double moved = 0.0;
        for (int c = 0; c < k; ++c) {
            if (counts[c] > 0) next.row(c) /= double(counts[c]);
            else next.row(c) = centroids.row(c);
            moved = std::max(moved, (next.row(c) - centroids.row(c)).norm());
        }
        centroids = std::move(next);
        if (moved < cfg.tol) break;
    }

    RestartResult out;
    out.labels = labels;
    out.cost = 0.0;
    for (int i = 0; i < n; ++i) out.cost += sqdist(points, i, centroids, labels[i]);
    return out;
}

Clustering pick_best(std::vector<RestartResult>& results, int k) {
    int best = 0;
    for (int r = 1; r < int(results.size()); ++r) {
        if (results[r].cost < results[best].cost) best = r;  // ties keep the lower index
    }
    Clustering c{std::move(results[best].labels), k};
    canonicalize_labels(c.labels, k);
    return c;
}

void check_args(const Matrix& points, int k) {
    if (k < 1 || k > points.rows()) {
        throw RangeError("kmeans: k must be in [1, n]");
    }
}

}  // namespace

void canonicalize_labels(std::vector<int>& labels, int k) {
    std::vector<int> remap(k, -1);
    int next = 0;
    for (int& l : labels) {
        if (remap[l] < 0) remap[l] = next++;
        l = remap[l];
    }
}

Clustering kmeans(const Matrix& points, int k, const KMeansConfig& cfg) {
    check_args(points, k);
    std::vector<RestartResult> results(cfg.restarts);
#pragma omp parallel for schedule(static)
    for (int r = 0; r < cfg.restarts; ++r) {
        results[r] = run_restart(points, k, cfg, derive_seed(cfg.seed, std::uint64_t(r)));
    }
    return pick_best(results, k);
}

Clustering kmeans_serial(const Matrix& points, int k, const KMeansConfig& cfg) {
    check_args(points, k);
    std::vector<RestartResult> results(cfg.restarts);
    for (int r = 0; r < cfg.restarts; ++r) {
        results[r] = run_restart(points, k, cfg, derive_seed(cfg.seed, std::uint64_t(r)));
    }
    return pick_best(results, k);
}

double kmeans_cost(const Matrix& points, const Clustering& c) {
    Matrix centroids = Matrix::Zero(c.k, points.cols());
    std::vector<int> counts(c.k, 0);
    for (int i = 0; i < int(points.rows()); ++i) {
        centroids.row(c.labels[i]) += points.row(i);
        ++counts[c.labels[i]];
    }
    for (int cl = 0; cl < c.k; ++cl) {
        if (counts[cl] > 0) centroids.row(cl) /= double(counts[cl]);
    }
    double cost = 0.0;
    for (int i = 0; i < int(points.rows()); ++i) {
        cost += (points.row(i) - centroids.row(c.labels[i])).squaredNorm();
    }
    return cost;
}

}  // namespace mlspec
