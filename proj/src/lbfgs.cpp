#include "mlspec/lbfgs.hpp"

#include <deque>

namespace mlspec {

LbfgsResult lbfgs_minimize(const ObjectiveFn& fn, const Vector& x0, const LbfgsConfig& cfg) {
    const auto dim = x0.size();
    LbfgsResult res;
    res.x = x0;
    Vector grad(dim);
    res.f = fn(res.x, grad);
    res.evals = 1;

    struct Pair {
        Vector s, y;
        double rho;
    };
    std::deque<Pair> history;
    Vector q(dim), direction(dim), x_new(dim), grad_new(dim);

    for (int iter = 0; iter < cfg.max_iters; ++iter) {
        if (grad.cwiseAbs().maxCoeff() < cfg.grad_tol) {
            res.converged = true;
            break;
        }
        if (cfg.max_evals > 0 && res.evals >= cfg.max_evals) break;

        // two-loop recursion for the search direction
        q = grad;
        std::vector<double> alpha(history.size());
        for (int i = int(history.size()) - 1; i >= 0; --i) {
            alpha[i] = history[i].rho * history[i].s.dot(q);
            q -= alpha[i] * history[i].y;
        }
        if (!history.empty()) {
            const auto& last = history.back();
            q *= last.s.dot(last.y) / last.y.squaredNorm();  // standard H0 scaling
        }
        for (std::size_t i = 0; i < history.size(); ++i) {
            const double beta = history[i].rho * history[i].y.dot(q);
            q += (alpha[i] - beta) * history[i].s;
        }
        direction = -q;

        double dir_deriv = grad.dot(direction);
        if (dir_deriv >= 0.0) {  // not a descent direction; fall back to steepest descent
            direction = -grad;
            dir_deriv = -grad.squaredNorm();
        }

        // Armijo backtracking from unit step
        double step = 1.0;
        bool accepted = false;
        double f_new = res.f;
        for (int bt = 0; bt < cfg.max_backtracks; ++bt) {
            x_new = res.x + step * direction;
            f_new = fn(x_new, grad_new);
            ++res.evals;
            if (f_new <= res.f + cfg.armijo_c1 * step * dir_deriv) {
                accepted = true;
                break;
            }
            step *= cfg.backtrack;
            if (cfg.max_evals > 0 && res.evals >= cfg.max_evals) break;
        }
        if (!accepted) break;  // cannot make progress at machine precision

        const Vector s = x_new - res.x;
        const Vector y = grad_new - grad;
        const double sy = s.dot(y);
        // curvature safeguard: skip update when s'y is not safely positive
        if (sy > 1e-10 * s.norm() * y.norm()) {
            history.push_back({s, y, 1.0 / sy});
            if (int(history.size()) > cfg.memory) history.pop_front();
        }
        res.x = std::move(x_new);
        x_new.resize(dim);
        res.f = f_new;
        grad = grad_new;
        res.iters = iter + 1;
    }
    return res;
}

}  // namespace mlspec
