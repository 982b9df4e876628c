#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bsq/types.hpp"

namespace bsq {

/// (theta, nu, mu) parametrization of the dispersion coefficients.
/// mu_disp is the dispersion parameter, distinct from the traveling-wave
/// speed offset mu = c_s - 1 used elsewhere.
struct ThetaNuMu {
    ThetaNuMu(double theta, double nu, double mu_disp);
    double theta;
    double nu;
    double mu_disp;
};

struct DispersionCoefficients {
    double a = 0, b = 0, c = 0, d = 0;
};

/// Coefficients of the homogeneous quadratic nonlinearities
///   A(eta, u) = alpha11 eta^2 + alpha12 eta u + alpha22 u^2
///   B(eta, u) = beta11  eta^2 + beta12  eta u + beta22  u^2
struct NonlinearCoefficients {
    double alpha11 = 0, alpha12 = 0, alpha22 = 0;
    double beta11 = 0, beta12 = 0, beta22 = 0;

    double A(double eta, double u) const {
        return alpha11 * eta * eta + alpha12 * eta * u + alpha22 * u * u;
    }
    double B(double eta, double u) const {
        return beta11 * eta * eta + beta12 * eta * u + beta22 * u * u;
    }
    /// Sum of all six coefficients (controls the leading wave amplitude).
    double sigma() const { return alpha11 + alpha12 + alpha22 + beta11 + beta12 + beta22; }
};

/// One member of the two-equation Boussinesq-type family.
struct SystemCoefficients {
    DispersionCoefficients disp;
    NonlinearCoefficients nl;
};

/// Maps (theta, nu, mu) to (a, b, c, d); a + b + c + d = 1/3 always.
DispersionCoefficients abcd_from_theta(const ThetaNuMu& p);

struct StructureReport {
    bool is_multisymplectic = false;
    bool is_symplectic = false;
    bool is_both = false;
    std::vector<std::string> violated_conditions;
    double tolerance_used = 0;
};

/// Checks the multi-symplectic conditions (a=c, alpha12=2*beta11,
/// beta12=2*alpha22) and the symplectic conditions (b=d, beta12=2*alpha11,
/// alpha12=2*beta22) with an absolute tolerance.
StructureReport classify_structure(const SystemCoefficients& s, double tol = 1e-12);

enum class LinearCase { L1, L2, None };
enum class NonlinearCase { N1, N2, N3, N4, Unknown };

struct WellPosednessReport {
    LinearCase linear_case = LinearCase::None;
    std::optional<int> symbol_order_ell;
    std::optional<std::pair<int, int>> sobolev_shifts;  // (m1, m2)
    NonlinearCase nonlinear_case = NonlinearCase::Unknown;
};

/// Linear (L1/L2) and nonlinear (N1-N4) well-posedness cases for systems with
/// a = c. When a != c within tol the report is None/Unknown.
WellPosednessReport classify_wellposedness(const SystemCoefficients& s, double tol = 1e-12);

const char* to_string(LinearCase c);
const char* to_string(NonlinearCase c);

/// Parses a coefficient document: either the ten keys a..d, alpha11..beta22
/// (all required) or the theta-form {theta, nu, mu} with optional nonlinearity
/// keys (all six default to the classic alpha12=1, beta22=1/2 when none are given).
SystemCoefficients coefficients_from_json(const std::string& text);
std::string coefficients_to_json(const SystemCoefficients& s);

std::string structure_report_to_json(const StructureReport& r);
std::string wellposedness_report_to_json(const WellPosednessReport& r);

/// Built-in model presets: abcd-classic, symmetric, ms-modified, figure2, kdvkdv.
SystemCoefficients preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace bsq
