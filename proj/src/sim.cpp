#include "bsq/sim.hpp"

#include <cmath>
#include <sstream>

#include "bsq/spectral.hpp"

namespace bsq {

std::pair<Field, Field> rhs(const SystemCoefficients& s, const FieldState& state) {
    if (s.disp.b < 0.0 || s.disp.d < 0.0)
        throw RegimeError("rhs: b < 0 or d < 0 is outside the supported regime "
                          "(the BBM symbol 1 + b k^2 would vanish)");
    const PeriodicGrid& grid = state.grid;
    const int n = grid.size();

    const Field etaf = twothirds(grid, state.eta);
    const Field uf = twothirds(grid, state.u);
    const Field A = twothirds(grid, Field(s.nl.alpha11 * etaf * etaf + s.nl.alpha12 * etaf * uf +
                                          s.nl.alpha22 * uf * uf));
    const Field B = twothirds(grid, Field(s.nl.beta11 * etaf * etaf + s.nl.beta12 * etaf * uf +
                                          s.nl.beta22 * uf * uf));

    Spectrum eta_hat = to_spectrum(state.eta);
    Spectrum u_hat = to_spectrum(state.u);
    Spectrum A_hat = to_spectrum(A);
    Spectrum B_hat = to_spectrum(B);

    const std::complex<double> I(0.0, 1.0);
    Spectrum deta(n / 2 + 1), du(n / 2 + 1);
    for (int m = 0; m <= n / 2; ++m) {
        const double k = grid.wavenumber(m);
        const double k2 = k * k;
        deta[m] = -I * k * (u_hat[m] + A_hat[m] - s.disp.a * k2 * u_hat[m]) / (1.0 + s.disp.b * k2);
        du[m] = -I * k * (eta_hat[m] + B_hat[m] - s.disp.c * k2 * eta_hat[m]) / (1.0 + s.disp.d * k2);
    }
    deta[n / 2] = 0.0;  // odd operator: no Nyquist tendency
    du[n / 2] = 0.0;
    return {to_field(deta, n), to_field(du, n)};
}

ConservedDiagnostics diagnostics(const SystemCoefficients& s, const FieldState& state, double tol) {
    const PeriodicGrid& grid = state.grid;
    const Field& eta = state.eta;
    const Field& u = state.u;
    ConservedDiagnostics d;
    d.mass_eta = grid.integrate(eta);
    d.mass_u = grid.integrate(u);
    d.l2 = grid.integrate(Field(eta * eta + u * u));
    if (std::abs(s.disp.b - s.disp.d) <= tol) {
        const Field ex = diff(grid, eta);
        const Field ux = diff(grid, u);
        const Field G = s.nl.beta11 / 3.0 * eta * eta * eta + s.nl.beta12 / 2.0 * eta * eta * u +
                        s.nl.beta22 * eta * u * u + s.nl.alpha22 / 3.0 * u * u * u;
        d.hamiltonian = 0.5 * grid.integrate(Field(eta * eta + u * u - s.disp.c * ex * ex -
                                                   s.disp.a * ux * ux + 2.0 * G));
        d.impulse = grid.integrate(Field(eta * u + s.disp.b * ex * ux));
    }
    return d;
}

namespace {

void rk4_step(const SystemCoefficients& s, FieldState& state, double dt) {
    const auto [k1e, k1u] = rhs(s, state);
    FieldState tmp(state.grid, state.eta + 0.5 * dt * k1e, state.u + 0.5 * dt * k1u, state.t + 0.5 * dt);
    const auto [k2e, k2u] = rhs(s, tmp);
    tmp.eta = state.eta + 0.5 * dt * k2e;
    tmp.u = state.u + 0.5 * dt * k2u;
    const auto [k3e, k3u] = rhs(s, tmp);
    tmp.eta = state.eta + dt * k3e;
    tmp.u = state.u + dt * k3u;
    tmp.t = state.t + dt;
    const auto [k4e, k4u] = rhs(s, tmp);
    state.eta += dt / 6.0 * (k1e + 2.0 * k2e + 2.0 * k3e + k4e);
    state.u += dt / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    state.t += dt;
}

}  // namespace

FieldState integrate(const SystemCoefficients& s, FieldState state, double T, double dt,
                     const Observer& observer, int observe_every) {
    if (!(dt > 0.0)) throw DomainError("integrate: dt must be positive");
    if (T < 0.0) throw DomainError("integrate: T must be nonnegative");
    if (observe_every < 1) observe_every = 1;

    if (observer) observer(state, diagnostics(s, state));
    if (T == 0.0) return state;

    const double t_end = state.t + T;
    long step = 0;
    while (state.t < t_end - 1e-14 * (1.0 + std::abs(t_end))) {
        const double h = std::min(dt, t_end - state.t);
        FieldState prev = state;
        rk4_step(s, state, h);
        if (!state.eta.isFinite().all() || !state.u.isFinite().all())
            throw BlowUpError("integrate: non-finite values at t = " + std::to_string(state.t),
                              prev.t, std::move(prev.eta), std::move(prev.u));
        ++step;
        const bool last = state.t >= t_end - 1e-14 * (1.0 + std::abs(t_end));
        if (observer && (step % observe_every == 0 || last))
            observer(state, diagnostics(s, state));
    }
    return state;
}

std::string snapshot_to_csv(const FieldState& state) {
    std::ostringstream os;
    os.precision(17);
    os << "x,eta,u\n";
    for (int j = 0; j < state.grid.size(); ++j)
        os << state.grid.node(j) << "," << state.eta[j] << "," << state.u[j] << "\n";
    return os.str();
}

std::string diagnostics_csv_header() { return "t,mass_eta,mass_u,l2,hamiltonian,impulse\n"; }

std::string diagnostics_csv_row(double t, const ConservedDiagnostics& d) {
    std::ostringstream os;
    os.precision(17);
    os << t << "," << d.mass_eta << "," << d.mass_u << "," << d.l2 << ",";
    if (d.hamiltonian) os << *d.hamiltonian;
    os << ",";
    if (d.impulse) os << *d.impulse;
    os << "\n";
    return os.str();
}

}  // namespace bsq
