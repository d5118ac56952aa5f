#pragma once

#include "mlspec/spectral.hpp"

namespace mlspec {

// Joint approximate eigendecomposition of the layers' random-walk Laplacians:
// find P (joint eigenvectors) and Q ≈ P^{-1} minimizing
//   S(P, Q) = 1/2 Σ_i ||L^(i) - P Λ^(i) Q||_F²
//           + α/2 (||P||_F² + ||Q||_F²) + β/2 ||P Q - I||_F²
// where Λ^(i) holds layer i's own ascending eigenvalues (fixed inputs, never
// optimized). Clustering then runs k-means on the rows of P's first k columns.

struct GedProblem {
    std::vector<Matrix> laplacians;        // M random-walk Laplacians, n×n
    std::vector<Vector> eigenvalue_mats;   // M ascending eigenvalue vectors (diag of Λ^(i))
    std::vector<Matrix> eigenvector_mats;  // matching eigenvector matrices (solver init bases)
    double alpha = 10.0;
    double beta = 100.0;
    int n = 0;
    int M() const { return int(laplacians.size()); }
};

GedProblem make_ged_problem(const MultiLayerGraph& mlg, double alpha, double beta);

struct GedSolverConfig {
    int init_layer = 0;
    int max_outer = 50;
    double outer_tol = 1e-6;  // relative objective decrease
    int lbfgs_memory = 10;
    int lbfgs_max_iters = 200;
    double lbfgs_grad_tol = 1e-6;
};

struct GedSolution {
    Matrix P;
    Matrix Q;
    std::vector<double> objective_trace;  // objective after init and after each outer iteration
};

// Plain-formula implementations (reference semantics, validated against
// central finite differences of ged_objective in the tests).
double ged_objective(const Matrix& P, const Matrix& Q, const GedProblem& prob);
Matrix ged_grad_P(const Matrix& P, const Matrix& Q, const GedProblem& prob);
Matrix ged_grad_Q(const Matrix& P, const Matrix& Q, const GedProblem& prob);

// Fused objective+gradient kernels used by the solver's inner loops. The
// per-layer residual terms are accumulated into per-layer slots (concurrently
// when parallel = true) and reduced in fixed layer order, so parallel and
// serial execution produce bit-identical results.
double ged_eval_p(const Matrix& P, const Matrix& Q, const GedProblem& prob, Matrix& grad_p,
                  bool parallel = true);
double ged_eval_q(const Matrix& P, const Matrix& Q, const GedProblem& prob, Matrix& grad_q,
                  bool parallel = true);

// Alternating minimization: P from the init layer's random-walk eigenvectors
// (SingularInit if its condition number exceeds 1e12), Q = P^{-1}; then L-BFGS
// over P with Q fixed, then over Q with P fixed, until the relative objective
// decrease falls under outer_tol or max_outer rounds run. The recorded trace
// is non-increasing because inner solves only ever accept descent steps.
GedSolution solve_ged(const GedProblem& prob, const GedSolverConfig& cfg);

Clustering cluster_ged(const MultiLayerGraph& mlg, int k, const GedSolverConfig& cfg,
                       const KMeansConfig& km, double alpha = 10.0, double beta = 100.0);

}  // namespace mlspec
