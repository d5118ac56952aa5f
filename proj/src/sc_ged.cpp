#include "mlspec/sc_ged.hpp"

#include <Eigen/LU>
#include <cmath>

#include "mlspec/lbfgs.hpp"

namespace mlspec {

GedProblem make_ged_problem(const MultiLayerGraph& mlg, double alpha, double beta) {
    if (alpha < 0.0 || beta < 0.0) throw ConfigError("alpha and beta must be non-negative");
    if (mlg.M() < 1) throw ConfigError("need at least one layer");
    GedProblem prob;
    prob.alpha = alpha;
    prob.beta = beta;
    prob.n = mlg.n;
    for (const auto& layer : mlg.layers) {
        prob.laplacians.push_back(laplacian(layer, LaplacianKind::RandomWalk));
        auto dec = decompose(layer, LaplacianKind::RandomWalk);
        prob.eigenvalue_mats.push_back(std::move(dec.eigenvalues));
        prob.eigenvector_mats.push_back(std::move(dec.eigenvectors));
    }
    return prob;
}

double ged_objective(const Matrix& P, const Matrix& Q, const GedProblem& prob) {
    double s = 0.0;
    for (int i = 0; i < prob.M(); ++i) {
        const Matrix R = prob.laplacians[i] - P * prob.eigenvalue_mats[i].asDiagonal() * Q;
        s += 0.5 * R.squaredNorm();
    }
    s += 0.5 * prob.alpha * (P.squaredNorm() + Q.squaredNorm());
    const Matrix E = P * Q - Matrix::Identity(prob.n, prob.n);
    s += 0.5 * prob.beta * E.squaredNorm();
    return s;
}

Matrix ged_grad_P(const Matrix& P, const Matrix& Q, const GedProblem& prob) {
    Matrix g = prob.alpha * P;
    for (int i = 0; i < prob.M(); ++i) {
        const auto lam = prob.eigenvalue_mats[i].asDiagonal();
        const Matrix R = prob.laplacians[i] - P * lam * Q;
        g.noalias() -= R * Q.transpose() * lam;
    }
    const Matrix E = P * Q - Matrix::Identity(prob.n, prob.n);
    g.noalias() += prob.beta * E * Q.transpose();
    return g;
}

Matrix ged_grad_Q(const Matrix& P, const Matrix& Q, const GedProblem& prob) {
    Matrix g = prob.alpha * Q;
    for (int i = 0; i < prob.M(); ++i) {
        const auto lam = prob.eigenvalue_mats[i].asDiagonal();
        const Matrix R = prob.laplacians[i] - P * lam * Q;
        g.noalias() -= lam * P.transpose() * R;
    }
    const Matrix E = P * Q - Matrix::Identity(prob.n, prob.n);
    g.noalias() += prob.beta * P.transpose() * E;
    return g;
}

namespace {

// shared shell for the fused kernels: per-layer objective and gradient pieces
// land in per-layer slots (filled concurrently when asked to), then reduce in
// fixed layer order so thread count never changes the result
template <typename LayerEval>
double fused_eval(const GedProblem& prob, double reg_obj, Matrix grad, const Matrix& coupling_grad,
                  double coupling_obj, bool parallel, Matrix& grad_out, LayerEval&& layer_eval) {
    const int m = prob.M();
    std::vector<double> obj_slot(m, 0.0);
    std::vector<Matrix> grad_slot(m);
#pragma omp parallel for schedule(static) if (parallel)
    for (int i = 0; i < m; ++i) {
        layer_eval(i, obj_slot[i], grad_slot[i]);
    }
    double obj = reg_obj + coupling_obj;
    for (int i = 0; i < m; ++i) {
        obj += obj_slot[i];
        grad += grad_slot[i];
    }
    grad += coupling_grad;
    grad_out = std::move(grad);
    return obj;
}

}  // namespace

double ged_eval_p(const Matrix& P, const Matrix& Q, const GedProblem& prob, Matrix& grad_p,
                  bool parallel) {
    Matrix E = P * Q;
    E.diagonal().array() -= 1.0;
    const Matrix coupling = prob.beta * E * Q.transpose();
    const double reg = 0.5 * prob.alpha * (P.squaredNorm() + Q.squaredNorm());
    return fused_eval(prob, reg, prob.alpha * P, coupling, 0.5 * prob.beta * E.squaredNorm(),
                      parallel, grad_p, [&](int i, double& obj, Matrix& g) {
                          // A = Λ^(i) Q; R = L^(i) - P A; data gradient -R Aᵀ
                          const Matrix A = prob.eigenvalue_mats[i].asDiagonal() * Q;
                          Matrix R = prob.laplacians[i];
                          R.noalias() -= P * A;
                          obj = 0.5 * R.squaredNorm();
                          g.noalias() = -(R * A.transpose());
                      });
}

double ged_eval_q(const Matrix& P, const Matrix& Q, const GedProblem& prob, Matrix& grad_q,
                  bool parallel) {
    Matrix E = P * Q;
    E.diagonal().array() -= 1.0;
    const Matrix coupling = prob.beta * P.transpose() * E;
    const double reg = 0.5 * prob.alpha * (P.squaredNorm() + Q.squaredNorm());
    return fused_eval(prob, reg, prob.alpha * Q, coupling, 0.5 * prob.beta * E.squaredNorm(),
                      parallel, grad_q, [&](int i, double& obj, Matrix& g) {
                          // B = P Λ^(i); R = L^(i) - B Q; data gradient -Bᵀ R
                          const Matrix B = P * prob.eigenvalue_mats[i].asDiagonal();
                          Matrix R = prob.laplacians[i];
                          R.noalias() -= B * Q;
                          obj = 0.5 * R.squaredNorm();
                          g.noalias() = -(B.transpose() * R);
                      });
}

GedSolution solve_ged(const GedProblem& prob, const GedSolverConfig& cfg) {
    const int n = prob.n;
    if (prob.M() < 1) throw ConfigError("need at least one layer");
    if (cfg.init_layer < 0 || cfg.init_layer >= prob.M()) {
        throw ConfigError("init_layer " + std::to_string(cfg.init_layer) + " out of range for " +
                          std::to_string(prob.M()) + " layers");
    }
    if (int(prob.eigenvector_mats.size()) != prob.M()) {
        throw ConfigError("problem is missing eigenvector matrices; build it with make_ged_problem");
    }

    Matrix P = prob.eigenvector_mats[cfg.init_layer];
    Eigen::PartialPivLU<Matrix> lu(P);
    const double rcond = lu.rcond();
    if (!(rcond > 1e-12)) {
        throw SingularInit("initial eigenvector matrix is numerically singular (rcond = " +
                           std::to_string(rcond) + ")");
    }
    Matrix Q = lu.inverse();

    LbfgsConfig inner;
    inner.memory = cfg.lbfgs_memory;
    inner.max_iters = cfg.lbfgs_max_iters;
    inner.grad_tol = cfg.lbfgs_grad_tol;

    GedSolution sol;
    double prev = ged_objective(P, Q, prob);
    sol.objective_trace.push_back(prev);

    using ConstMapM = Eigen::Map<const Matrix>;
    using ConstMapV = Eigen::Map<const Vector>;
    for (int outer = 0; outer < cfg.max_outer; ++outer) {
        // P-solve with Q held fixed
        {
            ObjectiveFn fn = [&](const Vector& x, Vector& grad) {
                Matrix g;
                const double f = ged_eval_p(ConstMapM(x.data(), n, n), Q, prob, g, true);
                grad = ConstMapV(g.data(), n * n);
                return f;
            };
            auto r = lbfgs_minimize(fn, ConstMapV(P.data(), n * n), inner);
            P = ConstMapM(r.x.data(), n, n);
        }
        // Q-solve with P held fixed
        double cur;
        {
            ObjectiveFn fn = [&](const Vector& x, Vector& grad) {
                Matrix g;
                const double f = ged_eval_q(P, ConstMapM(x.data(), n, n), prob, g, true);
                grad = ConstMapV(g.data(), n * n);
                return f;
            };
            auto r = lbfgs_minimize(fn, ConstMapV(Q.data(), n * n), inner);
            Q = ConstMapM(r.x.data(), n, n);
            cur = r.f;
        }
        sol.objective_trace.push_back(cur);
        if (prev - cur < cfg.outer_tol * std::max(std::abs(prev), 1.0)) break;
        prev = cur;
    }
    sol.P = std::move(P);
    sol.Q = std::move(Q);
    return sol;
}

Clustering cluster_ged(const MultiLayerGraph& mlg, int k, const GedSolverConfig& cfg,
                       const KMeansConfig& km, double alpha, double beta) {
    if (k < 1 || k > mlg.n) throw RangeError("cluster_ged: k must be in [1, n]");
    const auto prob = make_ged_problem(mlg, alpha, beta);
    const auto sol = solve_ged(prob, cfg);
    const Matrix coords = sol.P.leftCols(k);
    return kmeans(coords, k, km);
}

}  // namespace mlspec
