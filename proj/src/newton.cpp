#include "bsq/newton.hpp"

#include <cmath>

namespace bsq {

namespace {
double max_norm(const Eigen::VectorXd& v) {
    return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}
}  // namespace

Eigen::VectorXd newton(const ResidualFn& residual, const JacobianFn& jacobian,
                       Eigen::VectorXd y, const NewtonOptions& opts,
                       NewtonHistory* history_out) {
    NewtonHistory history;
    Eigen::VectorXd r = residual(y);
    double rnorm = max_norm(r);
    history.residual_norms.push_back(rnorm);

    const auto done = [&](Eigen::VectorXd& out) -> Eigen::VectorXd {
        if (history_out) *history_out = std::move(history);
        return std::move(out);
    };

    for (int iter = 0; iter < opts.max_iter; ++iter) {
        if (!std::isfinite(rnorm)) break;
        if (rnorm <= opts.residual_tol) return done(y);

        Eigen::MatrixXd J = jacobian(y);
        const Eigen::VectorXd dy = J.partialPivLu().solve(-r);
        const double unorm = max_norm(dy);
        if (!std::isfinite(unorm)) break;

        // Backtracking damping: halve the step until the residual decreases.
        double lambda = 1.0;
        bool accepted = false;
        Eigen::VectorXd y_trial, r_trial;
        double rt = rnorm;
        for (int bt = 0; bt < opts.max_backtracks; ++bt) {
            y_trial = y + lambda * dy;
            r_trial = residual(y_trial);
            rt = max_norm(r_trial);
            if (std::isfinite(rt) && (rt < rnorm || rt <= opts.residual_tol)) {
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!accepted)
            throw ConvergenceError("newton: line search found no descent (residual " +
                                       std::to_string(rnorm) + ")",
                                   std::move(y), std::move(history));

        y = std::move(y_trial);
        r = std::move(r_trial);
        rnorm = rt;
        history.residual_norms.push_back(rnorm);
        history.update_norms.push_back(lambda * unorm);

        if (rnorm <= opts.residual_tol) return done(y);
        if (lambda * unorm <= opts.update_tol) break;  // stalled
    }
    if (rnorm <= opts.residual_tol) return done(y);
    throw ConvergenceError("newton: no convergence after " +
                               std::to_string(history.update_norms.size()) +
                               " iterations (residual " + std::to_string(rnorm) + ")",
                           std::move(y), std::move(history));
}

Eigen::VectorXd continuation(const ContinuationSolve& solve_at, double theta_start,
                             double theta_target, Eigen::VectorXd y,
                             double min_step_fraction) {
    const double span = theta_target - theta_start;
    if (span == 0.0) return solve_at(theta_target, y);
    double theta = theta_start;
    double step = span;
    while (theta != theta_target) {
        double trial = theta + step;
        if ((span > 0 && trial > theta_target) || (span < 0 && trial < theta_target))
            trial = theta_target;
        try {
            y = solve_at(trial, y);
            theta = trial;
            step *= 2.0;
        } catch (const ConvergenceError& e) {
            step *= 0.5;
            if (std::abs(step) < min_step_fraction * std::abs(span))
                throw ConvergenceError("continuation stalled at theta = " + std::to_string(theta),
                                       e.last_iterate, e.history);
        }
    }
    return y;
}

}  // namespace bsq
