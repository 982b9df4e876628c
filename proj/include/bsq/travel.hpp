#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bsq/coeffs.hpp"
#include "bsq/grid.hpp"
#include "bsq/newton.hpp"

namespace bsq {

/// Traveling-wave problem for profiles (zeta, u)(x - cs t).
struct TravelingWaveSetup {
    TravelingWaveSetup(const SystemCoefficients& coeffs_, double speed_)
        : coeffs(coeffs_), speed(speed_) {
        if (!(speed > 0.0)) throw DomainError("TravelingWaveSetup: speed must be positive");
    }
    SystemCoefficients coeffs;  // with a = c
    double speed;               // cs

    double mu_speed() const { return speed - 1.0; }
    /// b d cs^2 - a^2; the first-order reduction requires it nonzero.
    double dfrak() const {
        return coeffs.disp.b * coeffs.disp.d * speed * speed - coeffs.disp.a * coeffs.disp.a;
    }
};

/// Linearization L(cs) of the first-order system for U = (zeta, zeta', u, u').
/// Throws DegenerateError when |dfrak| <= tol.
Eigen::Matrix4d build_linearization(const TravelingWaveSetup& setup, double tol = 1e-12);

/// Quadratic part R(U, cs) of the first-order system.
Eigen::Vector4d nonlinear_term(const TravelingWaveSetup& setup, const Eigen::Vector4d& U,
                               double tol = 1e-12);

/// Full vector field T(U, cs) = L(cs) U + R(U, cs).
Eigen::Vector4d traveling_rhs(const TravelingWaveSetup& setup, const Eigen::Vector4d& U);

enum class WaveClass { Class, Gen, Degenerate, NoWave };
enum class Table1Label { Class, Gen, Unlisted };

const char* to_string(WaveClass c);
const char* to_string(Table1Label c);

struct EigenReport {
    std::array<std::complex<double>, 4> eigenvalues;  // in +/- pairs
    WaveClass classification = WaveClass::Degenerate;
    Table1Label table1_prediction = Table1Label::Unlisted;
};

/// Classifies the spectrum of L(cs): Class for two distinct real +/- pairs,
/// Gen for one real and one imaginary pair, NoWave for cs <= 1 (no
/// bifurcation), Degenerate otherwise. The Table-1 prediction is evaluated
/// symbolically from the signs of (a, b, d, b d - a^2).
EigenReport eigen_classify(const TravelingWaveSetup& setup);

std::string eigen_report_to_json(const EigenReport& r);

struct NormalFormConstants {
    double sigma = 0;                   // sum of the six nonlinearity coefficients
    std::optional<double> c10;          // 1/a, defined for a > 0
    std::optional<double> c20;          // -sigma/(2a), defined for a > 0

    /// Height 3(cs-1)/sigma of the homoclinic orbit of the reduced equation
    /// v'' = (mu/b) v - (sigma/(2b)) v^2 (independent of b); the leading-order
    /// crest height of both profiles. Requires sigma > 0.
    double leading_amplitude(double cs) const;
};

NormalFormConstants normal_form_constants(const SystemCoefficients& s, double a);
std::string normal_form_to_json(const NormalFormConstants& c);

/// A computed traveling-wave profile pair on a periodic grid.
struct ProfilePair {
    ProfilePair(const PeriodicGrid& g) : grid(g), zeta(Field::Zero(g.size())), u(Field::Zero(g.size())) {}
    PeriodicGrid grid;
    Field zeta;
    Field u;
    double speed = 0;
    double residual_norm = 0;
    double tail_amplitude = 0;  // generalized waves only
};

/// Discrete residual of the profile ODE system on the given grid.
std::pair<Field, Field> profile_residual(const SystemCoefficients& s, double cs,
                                         const PeriodicGrid& grid, const Field& zeta,
                                         const Field& u);

/// Default half-length 50/sqrt(cs-1) used when callers have no better choice.
double default_half_length(double cs);

/// Newton solve for a classical (decaying) solitary wave: even-symmetric
/// Fourier collocation with sech^2 initial guess and cs-continuation
/// fallback. Success requires residual <= 1e-10 and tails below 1e-8.
ProfilePair solve_classical(const TravelingWaveSetup& setup, const PeriodicGrid& grid,
                            const ProfilePair* init = nullptr);

/// Best-effort Newton solve for a generalized solitary wave (homoclinic to a
/// periodic ripple). On success reports the residual and the tail amplitude
/// max |zeta| over the outer 10% of the domain.
ProfilePair solve_generalized(const TravelingWaveSetup& setup, const PeriodicGrid& grid,
                              const ProfilePair* init = nullptr);

/// Rayleigh-quotient estimate of the ripple wavenumber over the outer part of
/// the domain (detrended).
double tail_wavenumber(const ProfilePair& profile, double outer_fraction = 0.25);

struct CurveRow {
    double speed = 0;
    double amp_zeta = 0;
    double amp_u = 0;
    double residual = 0;
    std::string status;  // "ok" or the error message
};

/// One classical solve per speed with continuation from the previous row.
/// Failed speeds yield a marked row instead of aborting the table.
std::vector<CurveRow> speed_amplitude_curve(const SystemCoefficients& s,
                                            const std::vector<double>& speeds,
                                            const PeriodicGrid& grid);

std::string profile_to_csv(const ProfilePair& p);
std::string curve_to_csv(const std::vector<CurveRow>& rows);

}  // namespace bsq
