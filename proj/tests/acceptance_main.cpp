// Acceptance gate: one check per release criterion, each timed against its
// runtime budget, one [PASS]/[FAIL] line each. Exit code = number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mlspec/baselines.hpp"
#include "mlspec/metrics.hpp"
#include "mlspec/rng.hpp"
#include "mlspec/sbm.hpp"
#include "mlspec/sc_ged.hpp"
#include "mlspec/sc_sr.hpp"
#include "mlspec/spectral.hpp"

using namespace mlspec;

namespace {

// ---------------------------------------------------------------- utilities

Matrix random_weights(int n, double density, Rng& rng) {
    Matrix w = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (rng.uniform() < density) {
                const double v = rng.uniform(0.5, 2.0);
                w(i, j) = v;
                w(j, i) = v;
            }
        }
    }
    for (int i = 0; i + 1 < n; ++i) {  // spanning path: no isolated vertices
        if (w(i, i + 1) == 0.0) {
            w(i, i + 1) = 1.0;
            w(i + 1, i) = 1.0;
        }
    }
    return w;
}

Matrix random_gaussian(int n, Rng& rng) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m(i, j) = rng.normal();
    }
    return m;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

bool is_connected(const LayerGraph& g) {
    std::vector<int> stack{0};
    std::vector<bool> seen(g.n, false);
    seen[0] = true;
    int reached = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int u = 0; u < g.n; ++u) {
            if (!seen[u] && g.weights(v, u) != 0.0) {
                seen[u] = true;
                ++reached;
                stack.push_back(u);
            }
        }
    }
    return reached == g.n;
}

// instance families shared between the solver criteria and the sanity sweep
MsbmConfig descent_family(std::uint64_t seed) {
    MsbmConfig cfg;
    cfg.n = 30;
    cfg.k = 3;
    cfg.layers = {{0.5, 0.1, true}, {0.4, 0.1, true}, {0.45, 0.05, true}};
    cfg.seed = seed;
    return cfg;
}

MsbmConfig reduction_family(std::uint64_t seed, int layers) {
    MsbmConfig cfg;
    cfg.n = 100;
    cfg.k = 4;
    cfg.layers.assign(std::size_t(layers), {0.3, 0.05, true});
    cfg.seed = seed;
    return cfg;
}

MsbmConfig ordering_family(std::uint64_t seed) {
    // A and B: independent draws of the same block structure; C: block-free noise
    MsbmConfig cfg;
    cfg.n = 150;
    cfg.k = 3;
    cfg.layers = {{0.25, 0.05, true}, {0.25, 0.05, true}, {0.12, 0.12, false}};
    cfg.seed = seed;
    return cfg;
}

// ---------------------------------------------------------------- criteria

bool criterion_ged_gradients(std::string& detail) {
    const double choices[4] = {0.0, 0.5, 10.0, 100.0};
    double worst = 0.0;
    for (std::uint64_t t = 0; t < 50; ++t) {
        const int n = 4 + int(t % 5);
        const int m = 1 + int(t % 3);
        const double alpha = choices[t % 4];
        const double beta = choices[(t / 4) % 4];
        Rng rng(derive_seed(1000, t));
        MultiLayerGraph mlg;
        mlg.n = n;
        for (int l = 0; l < m; ++l) mlg.layers.push_back(make_layer(random_weights(n, 0.5, rng)));
        const auto prob = make_ged_problem(mlg, alpha, beta);
        const Matrix p = random_gaussian(n, rng);
        const Matrix q = random_gaussian(n, rng);
        const Matrix gp = ged_grad_P(p, q, prob);
        const Matrix gq = ged_grad_Q(p, q, prob);

        const double h = 1e-6;
        Matrix fdp(n, n), fdq(n, n);
        Matrix pp = p, qq = q;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                pp(i, j) = p(i, j) + h;
                const double up = ged_objective(pp, q, prob);
                pp(i, j) = p(i, j) - h;
                const double dn = ged_objective(pp, q, prob);
                pp(i, j) = p(i, j);
                fdp(i, j) = (up - dn) / (2.0 * h);

                qq(i, j) = q(i, j) + h;
                const double uq = ged_objective(p, qq, prob);
                qq(i, j) = q(i, j) - h;
                const double dq = ged_objective(p, qq, prob);
                qq(i, j) = q(i, j);
                fdq(i, j) = (uq - dq) / (2.0 * h);
            }
        }
        worst = std::max(worst, (gp - fdp).norm() / std::max(1.0, fdp.norm()));
        worst = std::max(worst, (gq - fdq).norm() / std::max(1.0, fdq.norm()));
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "worst relative error %.2e over 50 instances", worst);
    detail = buf;
    return worst < 1e-5;
}

bool criterion_closed_form_vs_propagation(std::string& detail) {
    double worst = 0.0;
    for (std::uint64_t t = 0; t < 100; ++t) {
        Rng rng(derive_seed(2000, t));
        const int n = 5 + int(rng.uniform_int(46));  // 5..50
        const auto g = make_layer(random_weights(n, 0.25, rng));
        const auto l = laplacian(g, LaplacianKind::Symmetric);
        Vector u(n);
        for (int i = 0; i < n; ++i) u(i) = rng.normal();
        const double lambda = std::exp(rng.uniform(std::log(0.05), std::log(4.0)));
        const Vector closed = regularize_vector(u, l, lambda);
        const Vector iterated = propagate(u, l, lambda, 100000, 1e-11);
        worst = std::max(worst, (closed - iterated).cwiseAbs().maxCoeff());
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "worst max-norm gap %.2e over 100 triples", worst);
    detail = buf;
    return worst < 1e-8;
}

bool criterion_ged_descent(std::string& detail) {
    double worst_rise = -1e300;
    int runs = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto inst = generate(descent_family(derive_seed(3000, seed)));
        const auto prob = make_ged_problem(inst.graph, 10.0, 100.0);
        const auto sol = solve_ged(prob, GedSolverConfig{});
        ++runs;
        for (std::size_t t = 0; t + 1 < sol.objective_trace.size(); ++t) {
            worst_rise = std::max(worst_rise,
                                  sol.objective_trace[t + 1] - sol.objective_trace[t]);
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "largest objective rise %.2e across %d traces", worst_rise,
                  runs);
    detail = buf;
    return worst_rise <= 1e-10;
}

bool criterion_lambda_zero_reduction(std::string& detail) {
    int matches = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto inst = generate(reduction_family(derive_seed(4000, seed), 2));
        KMeansConfig km;
        km.seed = seed;
        SrConfig cfg;
        cfg.km = km;
        cfg.order = {0, 1};
        cfg.lambda_schedule = {1e-8};
        const auto smoothed = cluster_sr(inst.graph, 4, cfg);
        const auto plain = spectral_cluster(inst.graph.layers[0], 4, km);
        if (smoothed.labels == plain.labels) ++matches;
    }
    detail = std::to_string(matches) + "/20 seeds reproduce the first layer's labels exactly";
    return matches == 20;
}

bool criterion_multilayer_gain(std::string& detail) {
    std::vector<double> l1, l2, sr, ged, sum, al;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto inst = complementary_pair(200, 4, derive_seed(5000, seed));
        const auto& truth = inst.truth.labels;
        KMeansConfig km;
        km.seed = seed;

        l1.push_back(nmi(spectral_cluster(inst.graph.layers[0], 4, km).labels, truth));
        l2.push_back(nmi(spectral_cluster(inst.graph.layers[1], 4, km).labels, truth));

        SrConfig sr_cfg;
        sr_cfg.km = km;
        sr.push_back(nmi(cluster_sr(inst.graph, 4, sr_cfg).labels, truth));

        GedSolverConfig ged_cfg;
        ged_cfg.max_outer = 150;
        ged_cfg.lbfgs_max_iters = 8;
        ged.push_back(nmi(cluster_ged(inst.graph, 4, ged_cfg, km, 10.0, 100.0).labels, truth));

        sum.push_back(nmi(sc_sum(inst.graph, 4, false, km).labels, truth));
        al.push_back(nmi(sc_al(inst.graph, 4, km).labels, truth));
    }
    const double best_single = std::max(median(l1), median(l2));
    const double med_sr = median(sr), med_ged = median(ged);
    const double med_sum = median(sum), med_al = median(al);
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "median NMI: layers %.3f/%.3f (best %.3f) | sr %.3f ged %.3f sum %.3f al %.3f",
                  median(l1), median(l2), best_single, med_sr, med_ged, med_sum, med_al);
    detail = buf;
    return med_sr > best_single && med_ged > best_single && med_sum > best_single &&
           med_al > best_single;
}

// independent definitional oracles, deliberately written against different
// counting structures (maps + log2) than the library implementations
double oracle_purity(const std::vector<int>& pred, const std::vector<int>& truth) {
    std::map<int, std::map<int, int>> clusters;
    for (std::size_t i = 0; i < pred.size(); ++i) ++clusters[pred[i]][truth[i]];
    long total = 0;
    for (const auto& [c, classes] : clusters) {
        int best = 0;
        for (const auto& [t, count] : classes) best = std::max(best, count);
        total += best;
    }
    return double(total) / double(pred.size());
}

double oracle_nmi(const std::vector<int>& pred, const std::vector<int>& truth) {
    const double n = double(pred.size());
    std::map<int, int> ca, cb;
    std::map<std::pair<int, int>, int> joint;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        ++ca[pred[i]];
        ++cb[truth[i]];
        ++joint[{pred[i], truth[i]}];
    }
    double ha = 0.0, hb = 0.0, mi = 0.0;
    for (const auto& [k, c] : ca) ha -= c / n * std::log2(c / n);
    for (const auto& [k, c] : cb) hb -= c / n * std::log2(c / n);
    for (const auto& [key, c] : joint) {
        mi += c / n * std::log2((c / n) / ((ca[key.first] / n) * (cb[key.second] / n)));
    }
    if (ha == 0.0 && hb == 0.0) return 1.0;
    if (ha == 0.0 || hb == 0.0) return 0.0;
    return mi / ((ha + hb) / 2.0);
}

double oracle_rand_index(const std::vector<int>& pred, const std::vector<int>& truth) {
    const std::size_t n = pred.size();
    long agree = 0, total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            ++total;
            const bool same_p = pred[i] == pred[j];
            const bool same_t = truth[i] == truth[j];
            if (same_p == same_t) ++agree;
        }
    }
    return double(agree) / double(total);
}

bool criterion_metric_oracles(std::string& detail) {
    double worst = 0.0;
    for (std::uint64_t t = 0; t < 1000; ++t) {
        Rng rng(derive_seed(6000, t));
        const int n = 2 + int(rng.uniform_int(11));  // 2..12
        const int kp = 1 + int(rng.uniform_int(n));
        const int kt = 1 + int(rng.uniform_int(n));
        std::vector<int> pred(n), truth(n);
        for (int i = 0; i < n; ++i) {
            pred[i] = int(rng.uniform_int(kp));
            truth[i] = int(rng.uniform_int(kt));
        }
        if (t % 7 == 0) truth = pred;  // exercise the perfect-match paths
        worst = std::max(worst, std::abs(purity(pred, truth) - oracle_purity(pred, truth)));
        worst = std::max(worst, std::abs(nmi(pred, truth) - oracle_nmi(pred, truth)));
        worst = std::max(worst,
                         std::abs(rand_index(pred, truth) - oracle_rand_index(pred, truth)));
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "worst |library - oracle| %.2e over 1000 pairs x 3 metrics",
                  worst);
    detail = buf;
    return worst <= 1e-12;
}

bool criterion_single_layer_reduction(std::string& detail) {
    int identical = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto inst = generate(reduction_family(derive_seed(7000, seed), 1));
        KMeansConfig km;
        km.seed = seed;
        const auto reference = spectral_cluster(inst.graph.layers[0], 4, km);

        SrConfig sr_cfg;
        sr_cfg.km = km;
        const bool ok = sc_sum(inst.graph, 4, false, km).labels == reference.labels &&
                        sc_al(inst.graph, 4, km).labels == reference.labels &&
                        kernel_kmeans_sum(inst.graph, 4, 4, km).labels == reference.labels &&
                        cluster_ged(inst.graph, 4, GedSolverConfig{}, km).labels ==
                            reference.labels &&
                        cluster_sr(inst.graph, 4, sr_cfg).labels == reference.labels;
        if (ok) ++identical;
    }
    detail = std::to_string(identical) + "/10 instances: all six methods label-identical";
    return identical == 10;
}

bool criterion_spectral_sanity(std::string& detail) {
    // every connected layer in the generated suites, regenerated here
    std::vector<LayerGraph> graphs;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        for (auto& l : generate(descent_family(derive_seed(3000, seed))).graph.layers)
            graphs.push_back(std::move(l));
        for (auto& l : generate(reduction_family(derive_seed(4000, seed), 2)).graph.layers)
            graphs.push_back(std::move(l));
        for (auto& l : complementary_pair(200, 4, derive_seed(5000, seed)).graph.layers)
            graphs.push_back(std::move(l));
        for (auto& l : generate(ordering_family(derive_seed(9000, seed))).graph.layers)
            graphs.push_back(std::move(l));
    }
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        for (auto& l : generate(reduction_family(derive_seed(7000, seed), 1)).graph.layers)
            graphs.push_back(std::move(l));
    }

    int connected = 0;
    double worst_l1 = 0.0, worst_dev = 0.0, worst_margin = 1e300;
    Rng rng(8000);
    for (const auto& g : graphs) {
        if (!is_connected(g)) continue;
        ++connected;
        const auto rw = decompose(g, LaplacianKind::RandomWalk);
        worst_l1 = std::max(worst_l1, std::abs(rw.eigenvalues(0)));
        const Vector first = rw.eigenvectors.col(0);
        worst_dev = std::max(worst_dev,
                             (first.array() - first.mean()).abs().maxCoeff());

        // variational bound: no unit vector orthogonal to 1 can beat the
        // second-smallest eigenvalue's Rayleigh quotient
        const Matrix l = laplacian(g, LaplacianKind::Combinatorial);
        const double l2 = decompose(g, LaplacianKind::Combinatorial).eigenvalues(1);
        for (int draw = 0; draw < 1000; ++draw) {
            Vector v(g.n);
            for (int i = 0; i < g.n; ++i) v(i) = rng.normal();
            v.array() -= v.mean();
            const double nrm = v.norm();
            if (nrm < 1e-12) continue;
            v /= nrm;
            worst_margin = std::min(worst_margin, v.dot(l * v) - l2);
        }
    }
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "%d connected graphs; worst lambda1 %.1e, first-vector dev %.1e, "
                  "Rayleigh margin %.1e",
                  connected, worst_l1, worst_dev, worst_margin);
    detail = buf;
    return connected > 0 && worst_l1 < 1e-10 && worst_dev < 1e-8 && worst_margin >= -1e-9;
}

bool criterion_greedy_ordering(std::string& detail) {
    int picked_twin = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto inst = generate(ordering_family(derive_seed(9000, seed)));
        SrConfig cfg;
        cfg.km.seed = seed;
        cfg.order = {0};  // start from A; the greedy chooses the rest
        const auto run = cluster_sr_run(inst.graph, 3, cfg);
        if (run.order.size() >= 2 && run.order[1] == 1) ++picked_twin;
    }
    detail = std::to_string(picked_twin) + "/20 seeds pick the twin layer before the noise layer";
    return picked_twin >= 18;
}

// ---------------------------------------------------------------- driver

struct Criterion {
    int id;
    const char* name;
    double budget_s;  // 0 = no budget to enforce
    std::function<bool(std::string&)> fn;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "joint-decomposition gradients match finite differences", 10.0,
         criterion_ged_gradients},
        {2, "regularizer closed form matches the propagation fixed point", 10.0,
         criterion_closed_form_vs_propagation},
        {3, "joint-decomposition objective trace never increases", 60.0, criterion_ged_descent},
        {4, "near-zero smoothing reproduces single-layer clustering", 30.0,
         criterion_lambda_zero_reduction},
        {5, "layer combination beats the best single layer", 300.0, criterion_multilayer_gain},
        {6, "clustering metrics match definitional oracles", 5.0, criterion_metric_oracles},
        {7, "every method reduces to plain spectral clustering at one layer", 60.0,
         criterion_single_layer_reduction},
        {8, "generated suites satisfy the spectral invariants", 0.0, criterion_spectral_sanity},
        {9, "greedy layer selection prefers the informative twin", 120.0,
         criterion_greedy_ordering},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        std::string detail;
        bool ok = false;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            ok = c.fn(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
            ok = false;
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::string budget_note;
        if (c.budget_s > 0.0) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.1fs of %.0fs budget", elapsed, c.budget_s);
            budget_note = buf;
            if (elapsed >= c.budget_s) ok = false;
        } else {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.1fs", elapsed);
            budget_note = buf;
        }
        if (!ok) ++failures;
        std::printf("[%s] criterion %d: %s (%s; %s)\n", ok ? "PASS" : "FAIL", c.id, c.name,
                    detail.c_str(), budget_note.c_str());
        std::fflush(stdout);
    }
    if (failures == 0) {
        std::printf("all %zu criteria passed\n", criteria.size());
    } else {
        std::printf("%d criteria FAILED\n", failures);
    }
    return failures;
}
