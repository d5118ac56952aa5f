// Compares the OpenMP-parallel kernels against their serial reference
// implementations: same inputs, wall-clock for each, and a bitwise identity
// check (the parallel paths are required to produce identical output).

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "mlspec/kmeans.hpp"
#include "mlspec/sbm.hpp"
#include "mlspec/sc_ged.hpp"
#include "mlspec/sc_sr.hpp"
#include "mlspec/spectral.hpp"

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double time_ms(int reps, F&& fn) {
    const auto t0 = Clock::now();
    for (int r = 0; r < reps; ++r) fn();
    const auto t1 = Clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void report(const char* name, double serial_ms, double parallel_ms, bool identical) {
    std::printf("%-28s %10.2f %12.2f %8.2fx   %s\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, identical ? "yes" : "NO");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs parallel kernel benchmark"};
    int n = 200;
    int k = 4;
    int reps = 5;
    std::uint64_t seed = 7;
    app.add_option("--n", n, "vertex count");
    app.add_option("--k", k, "cluster count");
    app.add_option("--reps", reps, "repetitions per timing");
    app.add_option("--seed", seed, "instance seed");
    CLI11_PARSE(app, argc, argv);

    std::printf("n = %d, k = %d, reps = %d, omp threads = %d\n\n", n, k, reps,
                omp_get_max_threads());
    std::printf("%-28s %10s %12s %9s   %s\n", "kernel", "serial ms", "parallel ms", "speedup",
                "identical");

    const auto inst = mlspec::complementary_pair(n, k, seed);
    const auto& mlg = inst.graph;

    // k-means restarts over the first layer's spectral embedding
    {
        const auto dec = mlspec::decompose(mlg.layers[0], mlspec::LaplacianKind::RandomWalk);
        const auto coords = mlspec::embed(dec, k).coords;
        mlspec::KMeansConfig cfg;
        cfg.seed = seed;
        mlspec::Clustering serial, parallel;
        const double ts = time_ms(reps, [&] { serial = mlspec::kmeans_serial(coords, k, cfg); });
        const double tp = time_ms(reps, [&] { parallel = mlspec::kmeans(coords, k, cfg); });
        report("kmeans (20 restarts)", ts, tp, serial.labels == parallel.labels);
    }

    // fused objective+gradient evaluation for the joint-decomposition solver
    {
        const auto prob = mlspec::make_ged_problem(mlg, 10.0, 100.0);
        const mlspec::Matrix p0 = prob.eigenvector_mats[0];
        const mlspec::Matrix q0 = p0.inverse();
        mlspec::Matrix gs, gp;
        double fs = 0.0, fp = 0.0;
        const double ts =
            time_ms(reps, [&] { fs = mlspec::ged_eval_p(p0, q0, prob, gs, false); });
        const double tp = time_ms(reps, [&] { fp = mlspec::ged_eval_p(p0, q0, prob, gp, true); });
        report("ged eval (obj+grad)", ts, tp, fs == fp && (gs.array() == gp.array()).all());
    }

    // per-column regularization solves sharing one factorization
    {
        const auto dec = mlspec::decompose(mlg.layers[0], mlspec::LaplacianKind::RandomWalk);
        const auto cols = mlspec::embed(dec, std::min(n, 32)).coords;
        const auto l2 = mlspec::laplacian(mlg.layers[1], mlspec::LaplacianKind::Symmetric);
        mlspec::Matrix serial, parallel;
        const double ts =
            time_ms(reps, [&] { serial = mlspec::regularize_columns(cols, l2, 0.8, false); });
        const double tp =
            time_ms(reps, [&] { parallel = mlspec::regularize_columns(cols, l2, 0.8, true); });
        report("regularize (32 columns)", ts, tp, (serial.array() == parallel.array()).all());
    }

    return 0;
}
