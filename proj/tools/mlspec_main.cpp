// mlspec: generate synthetic multi-layer graphs, cluster them with any of the
// implemented methods, evaluate label files, and inspect Laplacian spectra.
// Exit codes: 0 success, 1 data/computation error, 2 usage error.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mlspec/baselines.hpp"
#include "mlspec/graph.hpp"
#include "mlspec/metrics.hpp"
#include "mlspec/sbm.hpp"
#include "mlspec/sc_ged.hpp"
#include "mlspec/sc_sr.hpp"
#include "mlspec/spectral.hpp"

namespace {

using nlohmann::json;

// semantic command-line problems CLI11 cannot catch (bad tokens, bad combos)
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_csv_doubles(const std::string& text, const char* flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError(std::string(flag) + ": cannot parse '" + item + "' as a number");
        }
    }
    if (out.empty()) throw UsageError(std::string(flag) + ": empty list");
    return out;
}

std::vector<int> parse_csv_ints(const std::string& text, const char* flag) {
    std::vector<int> out;
    for (double v : parse_csv_doubles(text, flag)) {
        const int i = int(v);
        if (double(i) != v) throw UsageError(std::string(flag) + ": expected integers");
        out.push_back(i);
    }
    return out;
}

void emit(const json& doc, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << doc.dump(2) << "\n";
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw mlspec::ParseError("cannot open output file: " + out_path);
    f << doc.dump(2) << "\n";
}

double ms_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

struct GenOptions {
    std::string family = "sbm";
    int n = 100;
    int k = 4;
    int layers = 2;
    double p_in = 0.3;
    double p_out = 0.05;
    std::string weights = "unit";
    double poisson_mean = 1.0;
    std::uint64_t seed = 0;
    std::string out_prefix;
};

int run_gen(const GenOptions& opt) {
    mlspec::SbmInstance inst;
    if (opt.family == "sbm") {
        mlspec::MsbmConfig cfg;
        cfg.n = opt.n;
        cfg.k = opt.k;
        cfg.layers.assign(std::size_t(opt.layers), {opt.p_in, opt.p_out, true});
        if (opt.weights == "unit") {
            cfg.weight_mode = mlspec::WeightMode::Unit;
        } else if (opt.weights == "poisson") {
            cfg.weight_mode = mlspec::WeightMode::Poisson;
            cfg.poisson_mean = opt.poisson_mean;
        } else {
            throw UsageError("--weights must be 'unit' or 'poisson'");
        }
        cfg.seed = opt.seed;
        inst = mlspec::generate(cfg);
    } else if (opt.family == "complementary") {
        inst = mlspec::complementary_pair(opt.n, opt.k, opt.seed);
    } else {
        throw UsageError("--family must be 'sbm' or 'complementary'");
    }

    json files = json::array();
    for (int i = 0; i < inst.graph.M(); ++i) {
        const std::string path = opt.out_prefix + ".layer" + std::to_string(i) + ".edges";
        mlspec::save_layer(inst.graph.layers[i], path);
        files.push_back(path);
    }
    const std::string labels_path = opt.out_prefix + ".labels";
    mlspec::save_labels(inst.truth.labels, labels_path);
    files.push_back(labels_path);

    json doc = {{"family", opt.family}, {"n", inst.graph.n},     {"k", inst.truth.num_classes},
                {"layers", inst.graph.M()}, {"seed", opt.seed}, {"files", files}};
    std::cout << doc.dump(2) << "\n";
    return 0;
}

struct ClusterOptions {
    std::string method;
    int k = 2;
    int n = 0;
    std::vector<std::string> layer_paths;
    double alpha = 10.0;
    double beta = 100.0;
    std::string lambda_csv;
    std::string order_csv;
    int d = 0;  // 0 → defaults to k
    std::string init_layer = "0";
    int max_outer = 50;
    std::uint64_t seed = 0;
    int restarts = 20;
    std::string out_path;
};

int run_cluster(const ClusterOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();

    std::vector<mlspec::LayerGraph> layers;
    layers.reserve(opt.layer_paths.size());
    for (const auto& path : opt.layer_paths) {
        layers.push_back(mlspec::load_layer(path, opt.n));
    }
    const auto mlg = mlspec::assemble_multilayer(std::move(layers));
    const double load_ms = ms_since(t0);

    mlspec::KMeansConfig km;
    km.seed = opt.seed;
    km.restarts = opt.restarts;

    json params = json::object();
    mlspec::Clustering result;
    const auto t1 = std::chrono::steady_clock::now();
    if (opt.method == "sc") {
        if (mlg.M() != 1) throw UsageError("method 'sc' takes exactly one layer");
        result = mlspec::spectral_cluster(mlg.layers[0], opt.k, km);
    } else if (opt.method == "sc-sum" || opt.method == "sc-sum-norm") {
        const bool normalized = opt.method == "sc-sum-norm";
        result = mlspec::sc_sum(mlg, opt.k, normalized, km);
        params["normalized"] = normalized;
    } else if (opt.method == "sc-al") {
        result = mlspec::sc_al(mlg, opt.k, km);
    } else if (opt.method == "k-kmeans") {
        const int d = opt.d > 0 ? opt.d : opt.k;
        result = mlspec::kernel_kmeans_sum(mlg, opt.k, d, km);
        params["d"] = d;
    } else if (opt.method == "sc-ged") {
        mlspec::GedSolverConfig cfg;
        cfg.max_outer = opt.max_outer;
        if (opt.init_layer == "auto") {
            cfg.init_layer = mlspec::most_connected_layer(mlg);
        } else {
            try {
                std::size_t used = 0;
                cfg.init_layer = std::stoi(opt.init_layer, &used);
                if (used != opt.init_layer.size()) throw std::invalid_argument(opt.init_layer);
            } catch (const std::exception&) {
                throw UsageError("--init-layer must be a layer index or 'auto'");
            }
        }
        result = mlspec::cluster_ged(mlg, opt.k, cfg, km, opt.alpha, opt.beta);
        params["alpha"] = opt.alpha;
        params["beta"] = opt.beta;
        params["init_layer"] = cfg.init_layer;
        params["max_outer"] = cfg.max_outer;
    } else if (opt.method == "sc-sr") {
        mlspec::SrConfig cfg;
        cfg.k = opt.k;
        cfg.km = km;
        if (!opt.lambda_csv.empty()) {
            cfg.lambda_schedule = parse_csv_doubles(opt.lambda_csv, "--lambda");
        }
        if (!opt.order_csv.empty()) {
            cfg.order = parse_csv_ints(opt.order_csv, "--order");
        }
        auto run = mlspec::cluster_sr_run(mlg, opt.k, cfg);
        result = std::move(run.clustering);
        params["lambda"] = run.lambdas;
        params["order"] = run.order;
    } else {
        throw UsageError("unknown method '" + opt.method + "'");
    }
    const double solve_ms = ms_since(t1);

    json doc = {{"method", opt.method},
                {"k", opt.k},
                {"n", mlg.n},
                {"params", params},
                {"labels", result.labels},
                {"timings_ms", {{"load", load_ms}, {"solve", solve_ms}, {"total", ms_since(t0)}}},
                {"seed", opt.seed}};
    emit(doc, opt.out_path);
    return 0;
}

struct EvalOptions {
    std::string pred_path;
    std::string truth_path;
    std::string out_path;
};

int run_eval(const EvalOptions& opt) {
    mlspec::Clustering pred;
    pred.labels = mlspec::load_labels(opt.pred_path);
    mlspec::GroundTruth truth;
    truth.labels = mlspec::load_labels(opt.truth_path);
    for (int v : pred.labels) pred.k = std::max(pred.k, v + 1);
    for (int v : truth.labels) truth.num_classes = std::max(truth.num_classes, v + 1);
    const auto report = mlspec::evaluate(pred, truth);
    const auto raw = mlspec::confusion_matrix(pred, truth, false);
    const auto matched = mlspec::confusion_matrix(pred, truth, true);
    json doc = {{"purity", report.purity},
                {"nmi", report.nmi},
                {"rand_index", report.rand_index},
                {"confusion", {{"raw", raw}, {"matched", matched}}},
                {"n", pred.labels.size()}};
    emit(doc, opt.out_path);
    return 0;
}

struct SpectrumOptions {
    std::string layer_path;
    int n = 0;
    std::string kind = "random-walk";
    int count = 0;  // 0 → all n
    std::string out_path;
};

int run_spectrum(const SpectrumOptions& opt) {
    mlspec::LaplacianKind kind;
    if (opt.kind == "combinatorial") {
        kind = mlspec::LaplacianKind::Combinatorial;
    } else if (opt.kind == "symmetric") {
        kind = mlspec::LaplacianKind::Symmetric;
    } else if (opt.kind == "random-walk") {
        kind = mlspec::LaplacianKind::RandomWalk;
    } else {
        throw UsageError("--kind must be combinatorial, symmetric, or random-walk");
    }
    const int count = opt.count == 0 ? opt.n : opt.count;
    if (count < 1 || count > opt.n) {
        throw UsageError("--count must lie in [1, n]");
    }
    const auto g = mlspec::load_layer(opt.layer_path, opt.n);
    const auto dec = mlspec::decompose(g, kind);
    json values = json::array();
    json vectors = json::array();
    for (int j = 0; j < count; ++j) {
        values.push_back(dec.eigenvalues(j));
        json col = json::array();
        for (int i = 0; i < opt.n; ++i) col.push_back(dec.eigenvectors(i, j));
        vectors.push_back(col);
    }
    json doc = {{"kind", opt.kind},
                {"n", opt.n},
                {"count", count},
                {"eigenvalues", values},
                {"eigenvectors", vectors}};
    emit(doc, opt.out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-layer graph spectral clustering"};
    app.require_subcommand(1);

    GenOptions gen;
    auto* cmd_gen = app.add_subcommand("gen", "generate a synthetic multi-layer instance");
    cmd_gen->add_option("--family", gen.family, "sbm | complementary");
    cmd_gen->add_option("--n", gen.n, "vertex count");
    cmd_gen->add_option("--k", gen.k, "block count");
    cmd_gen->add_option("--layers", gen.layers, "layer count (sbm family)");
    cmd_gen->add_option("--p-in", gen.p_in, "within-block edge probability");
    cmd_gen->add_option("--p-out", gen.p_out, "between-block edge probability");
    cmd_gen->add_option("--weights", gen.weights, "unit | poisson");
    cmd_gen->add_option("--poisson-mean", gen.poisson_mean, "mean of the Poisson weight surplus");
    cmd_gen->add_option("--seed", gen.seed, "generator seed");
    cmd_gen->add_option("--out", gen.out_prefix, "output file prefix")->required();

    ClusterOptions cl;
    auto* cmd_cluster = app.add_subcommand("cluster", "cluster a (multi-layer) graph");
    cmd_cluster->add_option("--method", cl.method,
                            "sc | sc-ged | sc-sr | sc-sum | sc-sum-norm | k-kmeans | sc-al")
        ->required();
    cmd_cluster->add_option("--k", cl.k, "cluster count")->required();
    cmd_cluster->add_option("--n", cl.n, "vertex count")->required();
    cmd_cluster->add_option("--layers,--layer", cl.layer_paths, "layer edge-list files")
        ->required();
    cmd_cluster->add_option("--alpha", cl.alpha, "sc-ged regularization weight");
    cmd_cluster->add_option("--beta", cl.beta, "sc-ged inverse-coupling weight");
    cmd_cluster->add_option("--lambda", cl.lambda_csv, "sc-sr lambda schedule, comma-separated");
    cmd_cluster->add_option("--order", cl.order_csv, "sc-sr explicit layer order, comma-separated");
    cmd_cluster->add_option("--d", cl.d, "k-kmeans kernel eigenvector count (default k)");
    cmd_cluster->add_option("--init-layer", cl.init_layer, "sc-ged start layer index or 'auto'");
    cmd_cluster->add_option("--max-outer", cl.max_outer, "sc-ged outer iteration cap");
    cmd_cluster->add_option("--seed", cl.seed, "seed for every randomized stage");
    cmd_cluster->add_option("--restarts", cl.restarts, "k-means restarts");
    cmd_cluster->add_option("--out", cl.out_path, "write JSON here instead of stdout");

    EvalOptions ev;
    auto* cmd_eval = app.add_subcommand("eval", "score predicted labels against ground truth");
    cmd_eval->add_option("--pred", ev.pred_path, "predicted labels file")->required();
    cmd_eval->add_option("--truth", ev.truth_path, "ground-truth labels file")->required();
    cmd_eval->add_option("--out", ev.out_path, "write JSON here instead of stdout");

    SpectrumOptions sp;
    auto* cmd_spectrum = app.add_subcommand("spectrum", "Laplacian eigenvalues and eigenvectors");
    cmd_spectrum->add_option("--layer", sp.layer_path, "layer edge-list file")->required();
    cmd_spectrum->add_option("--n", sp.n, "vertex count")->required();
    cmd_spectrum->add_option("--kind", sp.kind, "combinatorial | symmetric | random-walk");
    cmd_spectrum->add_option("--count", sp.count, "how many eigenpairs (default all)");
    cmd_spectrum->add_option("--out", sp.out_path, "write JSON here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);  // --help and friends
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(cmd_gen)) return run_gen(gen);
        if (app.got_subcommand(cmd_cluster)) return run_cluster(cl);
        if (app.got_subcommand(cmd_eval)) return run_eval(ev);
        return run_spectrum(sp);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const mlspec::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
