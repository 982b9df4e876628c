#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace bsq {

/// A real-valued field sampled on a periodic grid.
using Field = Eigen::ArrayXd;

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid input values (bad parameters, malformed documents, nonzero means, ...).
struct DomainError : Error {
    using Error::Error;
};

/// Coefficients fail the structural conditions required by an operation.
struct StructureError : Error {
    explicit StructureError(const std::string& what, std::string violated = {})
        : Error(what), violated_condition(std::move(violated)) {}
    std::string violated_condition;
};

/// The traveling-wave reduction degenerates (b*d*cs^2 - a^2 vanishes).
struct DegenerateError : Error {
    using Error::Error;
};

/// An operation was invoked outside its validity regime
/// (wrong solver for the eigenvalue class, subcritical speed, b or d negative, ...).
struct RegimeError : Error {
    using Error::Error;
};

/// A time integration produced non-finite values.
struct BlowUpError : Error {
    BlowUpError(const std::string& what, double time, Field eta, Field u)
        : Error(what), t(time), last_eta(std::move(eta)), last_u(std::move(u)) {}
    double t;
    Field last_eta;  // last finite state
    Field last_u;
};

}  // namespace bsq
