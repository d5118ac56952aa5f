#include "mlspec/sbm.hpp"

#include <numeric>
#include <string>

#include "mlspec/rng.hpp"

namespace mlspec {

std::vector<int> near_equal_blocks(int n, int k) {
    if (n < 1 || k < 1 || k > n) throw ConfigError("block split needs 1 <= k <= n");
    std::vector<int> sizes(k, n / k);
    for (int b = 0; b < n % k; ++b) ++sizes[b];
    return sizes;
}

namespace {

std::vector<int> block_labels(int n, const std::vector<int>& sizes) {
    std::vector<int> labels;
    labels.reserve(n);
    for (int b = 0; b < int(sizes.size()); ++b) {
        labels.insert(labels.end(), sizes[b], b);
    }
    return labels;
}

// one layer from a full k×k block-probability matrix
LayerGraph sample_layer(int n, const std::vector<int>& labels, const Matrix& probs,
                        WeightMode mode, double poisson_mean, Rng& rng, const std::string& name) {
    Matrix w = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double u = rng.uniform();  // always consumed, edge or not
            if (u < probs(labels[i], labels[j])) {
                const double weight =
                    mode == WeightMode::Unit ? 1.0 : 1.0 + double(rng.poisson(poisson_mean));
                w(i, j) = weight;
                w(j, i) = weight;
            }
        }
    }
    return make_layer(std::move(w), name);
}

void check_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ConfigError(std::string(what) + " must lie in [0, 1], got " + std::to_string(p));
    }
}

}  // namespace

SbmInstance generate(const MsbmConfig& cfg) {
    if (cfg.n < 1) throw ConfigError("generate: n must be positive");
    if (cfg.k < 1 || cfg.k > cfg.n) throw ConfigError("generate: need 1 <= k <= n");
    if (cfg.layers.empty()) throw ConfigError("generate: need at least one layer");
    if (cfg.weight_mode == WeightMode::Poisson && !(cfg.poisson_mean >= 0.0)) {
        throw ConfigError("generate: poisson_mean must be non-negative");
    }
    std::vector<int> sizes = cfg.block_sizes.empty() ? near_equal_blocks(cfg.n, cfg.k)
                                                     : cfg.block_sizes;
    if (int(sizes.size()) != cfg.k) throw ConfigError("generate: block_sizes must have k entries");
    for (int s : sizes) {
        if (s < 1) throw ConfigError("generate: every block needs at least one vertex");
    }
    if (std::accumulate(sizes.begin(), sizes.end(), 0) != cfg.n) {
        throw ConfigError("generate: block sizes must sum to n");
    }
    for (const auto& lp : cfg.layers) {
        check_probability(lp.p_in, "p_in");
        check_probability(lp.p_out, "p_out");
        if (lp.informative && lp.p_out > lp.p_in) {
            throw ConfigError("generate: informative layer needs p_out <= p_in");
        }
    }

    const auto labels = block_labels(cfg.n, sizes);
    SbmInstance out;
    out.graph.n = cfg.n;
    for (int i = 0; i < int(cfg.layers.size()); ++i) {
        const auto& lp = cfg.layers[i];
        const double p_off = lp.informative ? lp.p_out : lp.p_in;
        Matrix probs = Matrix::Constant(cfg.k, cfg.k, p_off);
        probs.diagonal().setConstant(lp.p_in);
        Rng rng(derive_seed(cfg.seed, std::uint64_t(i)));
        out.graph.layers.push_back(sample_layer(cfg.n, labels, probs, cfg.weight_mode,
                                                cfg.poisson_mean, rng,
                                                "layer" + std::to_string(i)));
    }
    out.truth.labels = labels;
    out.truth.num_classes = cfg.k;
    return out;
}

SbmInstance complementary_pair(int n, int k, std::uint64_t seed) {
    if (k < 2 || k % 2 != 0) throw ConfigError("complementary_pair: k must be even and >= 2");
    if (n < k) throw ConfigError("complementary_pair: need n >= k");
    // fixed three-level densities: dense within a block, nearly as dense
    // between paired blocks (so the pair looks like one community), sparse
    // across groups
    constexpr double p_block = 0.30;
    constexpr double p_pair = 0.18;
    constexpr double p_cross = 0.02;

    const auto sizes = near_equal_blocks(n, k);
    const auto labels = block_labels(n, sizes);
    const int half = k / 2;

    SbmInstance out;
    out.graph.n = n;
    for (int layer = 0; layer < 2; ++layer) {
        Matrix probs(k, k);
        for (int a = 0; a < k; ++a) {
            for (int b = 0; b < k; ++b) {
                const int ga = layer == 0 ? a / 2 : a % half;
                const int gb = layer == 0 ? b / 2 : b % half;
                probs(a, b) = a == b ? p_block : (ga == gb ? p_pair : p_cross);
            }
        }
        Rng rng(derive_seed(seed, std::uint64_t(layer)));
        out.graph.layers.push_back(sample_layer(n, labels, probs, WeightMode::Unit, 0.0, rng,
                                                "layer" + std::to_string(layer)));
    }
    out.truth.labels = labels;
    out.truth.num_classes = k;
    return out;
}

}  // namespace mlspec
