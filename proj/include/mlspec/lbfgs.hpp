#pragma once

#include <functional>

#include "mlspec/graph.hpp"

namespace mlspec {

// Minimal limited-memory BFGS for smooth unconstrained problems, written for
// the alternating joint-decomposition solver: descent-only steps (Armijo
// backtracking), bounded memory, and an optional hard cap on objective
// evaluations so outer loops can budget work. Every accepted step strictly
// decreases the objective, which the caller relies on for monotone traces.

// Evaluates f(x) and writes the gradient into grad (same size as x).
using ObjectiveFn = std::function<double(const Vector& x, Vector& grad)>;

struct LbfgsConfig {
    int memory = 10;
    int max_iters = 200;
    double grad_tol = 1e-6;    // stop when the gradient max-norm drops below this
    int max_evals = 0;         // 0 = no cap
    double armijo_c1 = 1e-4;
    double backtrack = 0.5;
    int max_backtracks = 40;
};

struct LbfgsResult {
    Vector x;
    double f = 0.0;
    int iters = 0;
    int evals = 0;
    bool converged = false;  // gradient tolerance reached
};

LbfgsResult lbfgs_minimize(const ObjectiveFn& fn, const Vector& x0, const LbfgsConfig& cfg);

}  // namespace mlspec
