#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "mlspec/graph.hpp"
#include "mlspec/rng.hpp"

using namespace mlspec;

namespace {

LayerGraph path3() {
    Matrix W = Matrix::Zero(3, 3);
    W(0, 1) = W(1, 0) = 1.0;
    W(1, 2) = W(2, 1) = 1.0;
    return make_layer(W);
}

LayerGraph random_graph(int n, std::uint64_t seed, double density = 0.4) {
    Rng rng(seed);
    Matrix W = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (rng.uniform() < density) W(i, j) = W(j, i) = rng.uniform(0.1, 2.0);
        }
    }
    return make_layer(W);
}

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = std::string("/tmp/mlspec_test_") + name;
    std::ofstream out(path);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("degree_vector basics") {
    Matrix W = Matrix::Zero(2, 2);
    W(0, 1) = W(1, 0) = 1.0;
    auto d = degree_vector(make_layer(W));
    CHECK(d.degrees(0) == doctest::Approx(1.0));
    CHECK(d.degrees(1) == doctest::Approx(1.0));

    auto dp = degree_vector(path3());
    CHECK(dp.degrees(0) == doctest::Approx(1.0));
    CHECK(dp.degrees(1) == doctest::Approx(2.0));
    CHECK(dp.degrees(2) == doctest::Approx(1.0));

    // appended isolated vertex has degree zero
    Matrix W4 = Matrix::Zero(4, 4);
    W4.topLeftCorner(3, 3) = path3().weights;
    auto d4 = degree_vector(make_layer(W4));
    CHECK(d4.degrees(3) == 0.0);
}

TEST_CASE("laplacian closed forms") {
    Matrix W = Matrix::Zero(2, 2);
    W(0, 1) = W(1, 0) = 1.0;
    Matrix Lrw = laplacian(make_layer(W), LaplacianKind::RandomWalk);
    CHECK(Lrw(0, 0) == doctest::Approx(1.0));
    CHECK(Lrw(0, 1) == doctest::Approx(-1.0));
    CHECK(Lrw(1, 0) == doctest::Approx(-1.0));
    CHECK(Lrw(1, 1) == doctest::Approx(1.0));

    // uniform weights cancel in the symmetric normalization
    Matrix W2 = Matrix::Zero(2, 2);
    W2(0, 1) = W2(1, 0) = 2.0;
    Matrix Lsym = laplacian(make_layer(W2), LaplacianKind::Symmetric);
    CHECK(Lsym(0, 0) == doctest::Approx(1.0));
    CHECK(Lsym(0, 1) == doctest::Approx(-1.0));

    Matrix Lp = laplacian(path3(), LaplacianKind::RandomWalk);
    CHECK(Lp(0, 0) == doctest::Approx(1.0));
    CHECK(Lp(0, 1) == doctest::Approx(-1.0));
    CHECK(Lp(0, 2) == doctest::Approx(0.0));
    CHECK(Lp(1, 0) == doctest::Approx(-0.5));
    CHECK(Lp(1, 1) == doctest::Approx(1.0));
    CHECK(Lp(1, 2) == doctest::Approx(-0.5));
    CHECK(Lp(2, 1) == doctest::Approx(-1.0));
}

TEST_CASE("graph validation errors") {
    Matrix bad = Matrix::Zero(2, 2);
    bad(0, 1) = 1.0;  // asymmetric
    CHECK_THROWS_AS(make_layer(bad), InvalidGraph);

    Matrix neg = Matrix::Zero(2, 2);
    neg(0, 1) = neg(1, 0) = -1.0;
    CHECK_THROWS_AS(make_layer(neg), InvalidGraph);

    Matrix loop = Matrix::Zero(2, 2);
    loop(0, 0) = 1.0;
    CHECK_THROWS_AS(make_layer(loop), InvalidGraph);

    LayerGraph g;  // hand-assembled invalid struct still rejected by laplacian
    g.n = 2;
    g.weights = bad;
    CHECK_THROWS_AS(laplacian(g, LaplacianKind::Combinatorial), InvalidGraph);
}

TEST_CASE("laplacian invariants on random graphs") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto g = random_graph(8, seed);
        Matrix L = laplacian(g, LaplacianKind::Combinatorial);
        CHECK((L * Vector::Ones(8)).cwiseAbs().maxCoeff() < 1e-12);

        // uniform scaling: normalized kinds invariant, combinatorial scales
        LayerGraph scaled = make_layer(3.7 * g.weights);
        CHECK((laplacian(scaled, LaplacianKind::Symmetric) -
               laplacian(g, LaplacianKind::Symmetric))
                  .cwiseAbs()
                  .maxCoeff() < 1e-12);
        CHECK((laplacian(scaled, LaplacianKind::RandomWalk) -
               laplacian(g, LaplacianKind::RandomWalk))
                  .cwiseAbs()
                  .maxCoeff() < 1e-12);
        CHECK((laplacian(scaled, LaplacianKind::Combinatorial) - 3.7 * L).cwiseAbs().maxCoeff() <
              1e-10);

        // similarity between the two normalized kinds (no isolated vertices here)
        Vector d = degree_vector(g).degrees;
        Matrix Lrw = laplacian(g, LaplacianKind::RandomWalk);
        Matrix Lsym = laplacian(g, LaplacianKind::Symmetric);
        Matrix sim = d.array().sqrt().matrix().asDiagonal() * Lrw *
                     d.array().rsqrt().matrix().asDiagonal();
        CHECK((sim - Lsym).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("load_layer parses the documented format") {
    auto p1 = write_temp("single.edges", "0 1 2.5\n");
    auto g1 = load_layer(p1, 3);
    CHECK(g1.weights(0, 1) == doctest::Approx(2.5));
    CHECK(g1.weights(1, 0) == doctest::Approx(2.5));
    CHECK(g1.weights.cwiseAbs().sum() == doctest::Approx(5.0));

    auto p2 = write_temp("empty.edges", "");
    auto g2 = load_layer(p2, 4);
    CHECK(g2.weights.cwiseAbs().maxCoeff() == 0.0);

    auto p3 = write_temp("dup.edges", "0 1 1\n1 0 1\n");
    auto g3 = load_layer(p3, 2);
    CHECK(g3.weights(0, 1) == doctest::Approx(2.0));

    auto p4 = write_temp("comment.edges", "# header\n  # indented comment\n\n0 1 1.5\n");
    auto g4 = load_layer(p4, 2);
    CHECK(g4.weights(0, 1) == doctest::Approx(1.5));
}

TEST_CASE("load_layer error paths") {
    CHECK_THROWS_AS(load_layer("/tmp/mlspec_does_not_exist.edges", 3), ParseError);
    auto bad = write_temp("bad.edges", "0 one 1.0\n");
    CHECK_THROWS_AS(load_layer(bad, 3), ParseError);
    auto trail = write_temp("trail.edges", "0 1 1.0 extra\n");
    CHECK_THROWS_AS(load_layer(trail, 3), ParseError);
    auto oob = write_temp("oob.edges", "0 7 1.0\n");
    CHECK_THROWS_AS(load_layer(oob, 3), IndexError);
    auto neg = write_temp("neg.edges", "0 1 -1.0\n");
    CHECK_THROWS_AS(load_layer(neg, 3), ValueError);
    auto loop = write_temp("loop.edges", "1 1 1.0\n");
    CHECK_THROWS_AS(load_layer(loop, 3), InvalidGraph);
    CHECK_THROWS_AS(load_layer(write_temp("n.edges", "0 1 1\n"), 0), InvalidGraph);
}

TEST_CASE("save_layer round trip") {
    auto g = random_graph(6, 42);
    auto path = write_temp("roundtrip.edges", "");
    save_layer(g, path);
    auto back = load_layer(path, 6);
    CHECK((back.weights - g.weights).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("assemble_multilayer") {
    auto a = random_graph(5, 1);
    auto b = random_graph(5, 2);
    auto mlg = assemble_multilayer({a, b});
    CHECK(mlg.M() == 2);
    CHECK(mlg.n == 5);

    auto single = assemble_multilayer({a});
    CHECK(single.M() == 1);

    auto c = random_graph(6, 3);
    CHECK_THROWS_AS(assemble_multilayer({a, c}), DimensionMismatch);
    CHECK_THROWS_AS(assemble_multilayer({}), DimensionMismatch);
}

TEST_CASE("labels file round trip") {
    std::vector<int> labels{0, 2, 1, 1, 0};
    auto path = write_temp("labels.txt", "");
    save_labels(labels, path);
    CHECK(load_labels(path) == labels);

    auto bad = write_temp("badlabels.txt", "0\nx\n");
    CHECK_THROWS_AS(load_labels(bad), ParseError);
    auto neg = write_temp("neglabels.txt", "-3\n");
    CHECK_THROWS_AS(load_labels(neg), ValueError);
}

TEST_CASE("rng layer is stable and documented") {
    // regression pin: splitmix64 of 0 is the published reference value
    CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
    Rng a(123), b(123);
    for (int i = 0; i < 100; ++i) CHECK(a.uniform() == b.uniform());
    // uniform() is (x >> 11) * 2^-53 of the raw mt19937_64 stream
    std::mt19937_64 eng(7);
    Rng r(7);
    for (int i = 0; i < 10; ++i) {
        CHECK(r.uniform() == double(eng() >> 11) * 0x1.0p-53);
    }
    // derived streams differ from each other and from the base
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    // poisson mean sanity
    Rng pr(99);
    double acc = 0.0;
    for (int i = 0; i < 20000; ++i) acc += pr.poisson(3.0);
    CHECK(acc / 20000.0 == doctest::Approx(3.0).epsilon(0.05));
    // normal moments sanity
    Rng nr(5);
    double mean = 0.0, var = 0.0;
    const int N = 20000;
    std::vector<double> xs(N);
    for (int i = 0; i < N; ++i) {
        xs[i] = nr.normal();
        mean += xs[i];
    }
    mean /= N;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= N;
    CHECK(mean == doctest::Approx(0.0).epsilon(0.05));
    CHECK(std::abs(mean) < 0.05);
    CHECK(var == doctest::Approx(1.0).epsilon(0.05));
}
