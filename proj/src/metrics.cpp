#include "mlspec/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mlspec/errors.hpp"

namespace mlspec {
namespace {

void check_lengths(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) {
        throw LengthMismatch("label vectors differ in length: " + std::to_string(a.size()) +
                             " vs " + std::to_string(b.size()));
    }
    if (a.empty()) throw LengthMismatch("label vectors are empty");
}

int width(const std::vector<int>& v) {
    int w = 0;
    for (int x : v) w = std::max(w, x + 1);
    return w;
}

// joint counts: rows indexed by pred, cols by truth
std::vector<std::vector<long>> joint_counts(const std::vector<int>& pred,
                                            const std::vector<int>& truth, int kp, int kt) {
    std::vector<std::vector<long>> m(kp, std::vector<long>(kt, 0));
    for (std::size_t i = 0; i < pred.size(); ++i) ++m[pred[i]][truth[i]];
    return m;
}

inline double pairs2(double x) { return x * (x - 1.0) / 2.0; }

}  // namespace

double purity(const std::vector<int>& pred, const std::vector<int>& truth) {
    check_lengths(pred, truth);
    const int kp = width(pred), kt = width(truth);
    const auto m = joint_counts(pred, truth, kp, kt);
    long correct = 0;
    for (int i = 0; i < kp; ++i) correct += *std::max_element(m[i].begin(), m[i].end());
    return double(correct) / double(pred.size());
}

double nmi(const std::vector<int>& pred, const std::vector<int>& truth) {
    check_lengths(pred, truth);
    const int kp = width(pred), kt = width(truth);
    const auto m = joint_counts(pred, truth, kp, kt);
    const double N = double(pred.size());

    // identical partitions up to relabeling (one nonzero per row and column):
    // mutual information equals both entropies, so the score is exactly 1
    bool bijective = true;
    for (int i = 0; i < kp && bijective; ++i) {
        int nz = 0;
        for (int j = 0; j < kt; ++j) nz += m[i][j] > 0;
        bijective = nz == 1;
    }
    for (int j = 0; j < kt && bijective; ++j) {
        int nz = 0;
        for (int i = 0; i < kp; ++i) nz += m[i][j] > 0;
        bijective = nz == 1;
    }
    if (bijective) return 1.0;
    std::vector<double> a(kp, 0.0), b(kt, 0.0);
    for (int i = 0; i < kp; ++i) {
        for (int j = 0; j < kt; ++j) {
            a[i] += double(m[i][j]);
            b[j] += double(m[i][j]);
        }
    }
    double ha = 0.0, hb = 0.0, mi = 0.0;
    for (int i = 0; i < kp; ++i) {
        if (a[i] > 0.0) ha -= a[i] / N * std::log(a[i] / N);
    }
    for (int j = 0; j < kt; ++j) {
        if (b[j] > 0.0) hb -= b[j] / N * std::log(b[j] / N);
    }
    for (int i = 0; i < kp; ++i) {
        for (int j = 0; j < kt; ++j) {
            if (m[i][j] > 0) {
                const double p = double(m[i][j]) / N;
                mi += p * std::log(N * double(m[i][j]) / (a[i] * b[j]));
            }
        }
    }
    if (ha == 0.0 && hb == 0.0) return 1.0;  // single cluster vs single class
    if (ha == 0.0 || hb == 0.0) return 0.0;  // one side carries no information
    return std::clamp(mi / ((ha + hb) / 2.0), 0.0, 1.0);
}

double rand_index(const std::vector<int>& pred, const std::vector<int>& truth) {
    check_lengths(pred, truth);
    const std::size_t n = pred.size();
    if (n < 2) throw LengthMismatch("rand_index needs at least 2 elements");
    const int kp = width(pred), kt = width(truth);
    const auto m = joint_counts(pred, truth, kp, kt);
    double tp = 0.0, same_pred = 0.0, same_truth = 0.0;
    std::vector<double> a(kp, 0.0), b(kt, 0.0);
    for (int i = 0; i < kp; ++i) {
        for (int j = 0; j < kt; ++j) {
            tp += pairs2(double(m[i][j]));
            a[i] += double(m[i][j]);
            b[j] += double(m[i][j]);
        }
    }
    for (int i = 0; i < kp; ++i) same_pred += pairs2(a[i]);
    for (int j = 0; j < kt; ++j) same_truth += pairs2(b[j]);
    const double total = pairs2(double(n));
    const double fp = same_pred - tp;
    const double fn = same_truth - tp;
    const double tn = total - tp - fp - fn;
    return (tp + tn) / total;
}

double purity(const Clustering& c, const GroundTruth& t) { return purity(c.labels, t.labels); }
double nmi(const Clustering& c, const GroundTruth& t) { return nmi(c.labels, t.labels); }
double rand_index(const Clustering& c, const GroundTruth& t) {
    return rand_index(c.labels, t.labels);
}

MetricReport evaluate(const Clustering& c, const GroundTruth& t) {
    return MetricReport{purity(c, t), nmi(c, t), rand_index(c, t)};
}

// Hungarian algorithm (potentials / shortest augmenting path form) on the
// minimization problem obtained by negating counts. O(k^3).
std::vector<int> max_assignment(const std::vector<std::vector<long>>& m) {
    const int n = int(m.size());
    if (n == 0) return {};
    const double INF = std::numeric_limits<double>::infinity();
    // cost[i][j] = -count so that min-cost == max-weight
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);  // p[j] = row matched to column j (1-based)
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, INF);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            double delta = INF;
            int j1 = 0;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = -double(m[i0 - 1][j - 1]) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    // row r is matched to column c where p[c] == r; we want, for each row slot
    // (class index), which original column (cluster) sits on the diagonal
    std::vector<int> perm(n, 0);
    for (int j = 1; j <= n; ++j) perm[p[j] - 1] = j - 1;
    return perm;
}

std::vector<std::vector<long>> confusion_matrix(const Clustering& c, const GroundTruth& t,
                                                bool matched) {
    check_lengths(c.labels, t.labels);
    const int k = std::max(width(c.labels), width(t.labels));
    // row = class, column = predicted cluster
    std::vector<std::vector<long>> m(k, std::vector<long>(k, 0));
    for (std::size_t i = 0; i < c.labels.size(); ++i) ++m[t.labels[i]][c.labels[i]];
    if (!matched) return m;
    const auto perm = max_assignment(m);
    std::vector<std::vector<long>> out(k, std::vector<long>(k, 0));
    for (int r = 0; r < k; ++r) {
        for (int slot = 0; slot < k; ++slot) out[r][slot] = m[r][perm[slot]];
    }
    return out;
}

}  // namespace mlspec
