#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bsq/coeffs.hpp"
#include "bsq/grid.hpp"

namespace bsq {

/// Time-dependent PDE state (eta, u) on a periodic grid.
struct FieldState {
    FieldState(const PeriodicGrid& g) : grid(g), eta(Field::Zero(g.size())), u(Field::Zero(g.size())) {}
    FieldState(const PeriodicGrid& g, Field eta_, Field u_, double t_ = 0.0)
        : grid(g), eta(std::move(eta_)), u(std::move(u_)), t(t_) {}
    PeriodicGrid grid;
    Field eta;
    Field u;
    double t = 0;
};

struct ConservedDiagnostics {
    double mass_eta = 0;
    double mass_u = 0;
    double l2 = 0;
    std::optional<double> hamiltonian;  // defined iff b = d within tolerance
    std::optional<double> impulse;      // defined iff b = d within tolerance
};

/// Semidiscrete tendency of the family: pseudo-spectral in space with
/// 2/3-rule dealiasing of the quadratic products. Requires b >= 0 and d >= 0
/// so the BBM symbols never vanish.
std::pair<Field, Field> rhs(const SystemCoefficients& s, const FieldState& state);

/// Conserved-quantity evaluation by periodic trapezoidal quadrature.
ConservedDiagnostics diagnostics(const SystemCoefficients& s, const FieldState& state,
                                 double tol = 1e-12);

using Observer = std::function<void(const FieldState&, const ConservedDiagnostics&)>;

/// Classical four-stage Runge-Kutta integration to t + T in fixed steps (the
/// final step may be partial). The observer runs at t = 0, every
/// observe_every steps, and at the final time. Non-finite values raise
/// BlowUpError carrying the last finite state.
FieldState integrate(const SystemCoefficients& s, FieldState state, double T, double dt,
                     const Observer& observer = {}, int observe_every = 1);

std::string snapshot_to_csv(const FieldState& state);
std::string diagnostics_csv_header();
std::string diagnostics_csv_row(double t, const ConservedDiagnostics& d);

}  // namespace bsq
