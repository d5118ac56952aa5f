#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mlspec/lbfgs.hpp"
#include "mlspec/rng.hpp"

using namespace mlspec;

TEST_CASE("quadratic bowl: exact minimum found") {
    // f(x) = 1/2 (x - c)ᵀ diag(w) (x - c)
    const int n = 6;
    Vector c(n), w(n);
    c << 1, -2, 0.5, 3, -1, 2;
    w << 1, 2, 5, 0.5, 10, 1;
    ObjectiveFn fn = [&](const Vector& x, Vector& grad) {
        grad = w.cwiseProduct(x - c);
        return 0.5 * (x - c).dot(grad);
    };
    LbfgsConfig cfg;
    cfg.grad_tol = 1e-10;
    auto r = lbfgs_minimize(fn, Vector::Zero(n), cfg);
    CHECK(r.converged);
    CHECK((r.x - c).norm() < 1e-8);
    CHECK(r.f < 1e-16);
}

TEST_CASE("rosenbrock: reaches the global minimum (1, 1)") {
    ObjectiveFn fn = [](const Vector& x, Vector& grad) {
        const double a = 1.0 - x(0);
        const double b = x(1) - x(0) * x(0);
        grad.resize(2);
        grad(0) = -2.0 * a - 400.0 * x(0) * b;
        grad(1) = 200.0 * b;
        return a * a + 100.0 * b * b;
    };
    LbfgsConfig cfg;
    cfg.max_iters = 500;
    cfg.grad_tol = 1e-9;
    Vector x0(2);
    x0 << -1.2, 1.0;
    auto r = lbfgs_minimize(fn, x0, cfg);
    CHECK(r.converged);
    CHECK(std::abs(r.x(0) - 1.0) < 1e-6);
    CHECK(std::abs(r.x(1) - 1.0) < 1e-6);
}

TEST_CASE("every accepted step decreases f; final f never above initial") {
    // nonconvex but smooth: sum of cosines plus a quadratic anchor
    ObjectiveFn fn = [](const Vector& x, Vector& grad) {
        grad.resize(x.size());
        double f = 0.0;
        for (int i = 0; i < x.size(); ++i) {
            f += std::cos(3.0 * x(i)) + 0.1 * x(i) * x(i);
            grad(i) = -3.0 * std::sin(3.0 * x(i)) + 0.2 * x(i);
        }
        return f;
    };
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        Vector x0(5);
        for (int i = 0; i < 5; ++i) x0(i) = rng.uniform(-4.0, 4.0);
        Vector g0(5);
        const double f0 = fn(x0, g0);
        auto r = lbfgs_minimize(fn, x0, LbfgsConfig{});
        CHECK(r.f <= f0 + 1e-12);
    }
}

TEST_CASE("max_evals caps objective evaluations") {
    int calls = 0;
    ObjectiveFn fn = [&](const Vector& x, Vector& grad) {
        ++calls;
        grad = 2.0 * x;
        return x.squaredNorm();
    };
    LbfgsConfig cfg;
    cfg.max_evals = 7;
    cfg.grad_tol = 0.0;  // never converge on gradient
    Vector x0 = Vector::Constant(3, 5.0);
    auto r = lbfgs_minimize(fn, x0, cfg);
    CHECK(calls <= 7);
    CHECK(r.evals == calls);
    CHECK(r.f <= 75.0);  // no worse than the start
}

TEST_CASE("already at the optimum: zero iterations needed") {
    ObjectiveFn fn = [](const Vector& x, Vector& grad) {
        grad = x;
        return 0.5 * x.squaredNorm();
    };
    auto r = lbfgs_minimize(fn, Vector::Zero(4), LbfgsConfig{});
    CHECK(r.converged);
    CHECK(r.f == 0.0);
    CHECK(r.x.norm() == 0.0);
}

TEST_CASE("ill-conditioned quadratic still converges") {
    const int n = 10;
    Vector w(n);
    for (int i = 0; i < n; ++i) w(i) = std::pow(10.0, -3.0 + 6.0 * i / (n - 1));
    ObjectiveFn fn = [&](const Vector& x, Vector& grad) {
        grad = w.cwiseProduct(x);
        return 0.5 * x.dot(grad);
    };
    LbfgsConfig cfg;
    cfg.max_iters = 2000;
    cfg.grad_tol = 1e-12;
    auto r = lbfgs_minimize(fn, Vector::Constant(n, 1.0), cfg);
    CHECK(r.converged);
    CHECK(r.f < 1e-18);
}
