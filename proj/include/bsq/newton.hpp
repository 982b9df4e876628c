#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "bsq/types.hpp"

namespace bsq {

struct NewtonOptions {
    double residual_tol = 1e-12;  // max-norm of the residual
    double update_tol = 1e-12;    // max-norm of the Newton update
    int max_iter = 50;
    int max_backtracks = 10;      // step halvings per iteration
};

struct NewtonHistory {
    std::vector<double> residual_norms;
    std::vector<double> update_norms;
};

/// Thrown when Newton fails to converge; carries the last iterate for inspection.
struct ConvergenceError : Error {
    ConvergenceError(const std::string& what, Eigen::VectorXd iterate, NewtonHistory hist)
        : Error(what), last_iterate(std::move(iterate)), history(std::move(hist)) {}
    Eigen::VectorXd last_iterate;
    NewtonHistory history;
};

using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using JacobianFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

/// Dense Newton iteration with backtracking damping. Converged when the
/// residual max-norm drops below residual_tol or the update max-norm below
/// update_tol. An initial guess that already satisfies the residual tolerance
/// is returned after zero iterations.
Eigen::VectorXd newton(const ResidualFn& residual, const JacobianFn& jacobian,
                       Eigen::VectorXd init, const NewtonOptions& opts = {},
                       NewtonHistory* history_out = nullptr);

/// Solves a one-parameter family at theta, given an initial guess.
/// Throws ConvergenceError on failure.
using ContinuationSolve = std::function<Eigen::VectorXd(double theta, const Eigen::VectorXd& init)>;

/// Parameter continuation: walks theta from start to target, reusing each
/// converged solution as the next initial guess and halving the step on
/// failure. Gives up (rethrowing the last failure) once the step falls below
/// min_step_fraction of the total span.
Eigen::VectorXd continuation(const ContinuationSolve& solve_at, double theta_start,
                             double theta_target, Eigen::VectorXd start_solution,
                             double min_step_fraction = 1e-4);

}  // namespace bsq
