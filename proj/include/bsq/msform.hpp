#pragma once

#include <functional>
#include <string>

#include <Eigen/Dense>

#include "bsq/coeffs.hpp"
#include "bsq/grid.hpp"
#include "bsq/spectral.hpp"

namespace bsq {

/// Explicit multi-symplectic formulation K z_t + M z_x = grad S(z).
///
/// dim = 10 for the Boussinesq family with phase vector
///   z = (eta, phi1, v1, w1, p1, u, phi2, v2, w2, p2),
/// dim = 5 for the KdV-BBM equation with z = (u, phi, v, w, p).
/// K and M are skew-symmetric by construction; gradient is the analytic
/// gradient of potential.
struct MSSystem {
    int dim = 0;
    Eigen::MatrixXd K;
    Eigen::MatrixXd M;
    std::function<double(const Eigen::VectorXd&)> potential;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
    std::vector<std::string> component_names;
};

/// Component indices of the dimension-10 phase vector.
namespace phase {
enum : int { eta = 0, phi1 = 1, v1 = 2, w1 = 3, p1 = 4, u = 5, phi2 = 6, v2 = 7, w2 = 8, p2 = 9 };
}

/// Builds the dimension-10 formulation for a multi-symplectic coefficient set
/// (the entries printed with c use the common value a = c). Throws
/// StructureError naming the violated condition otherwise.
MSSystem build_boussinesq_ms(const SystemCoefficients& s, double tol = 1e-12);

/// Builds the dimension-5 formulation of the KdV-BBM equation
/// u_t + u u_x + alpha u_xxx - beta u_xxt = 0.
MSSystem build_kdvbbm_ms(double alpha_kb, double beta_kb);

/// Right-hand side of the first-order relations of the lifted Boussinesq
/// system, before any structure condition is imposed. Equals the gradient of
/// the potential exactly when a = c and the nonlinearity conditions hold;
/// its Jacobian asymmetry measures the structure defect otherwise.
Eigen::VectorXd ms_right_side(const SystemCoefficients& s, const Eigen::VectorXd& z);

/// Central finite-difference Jacobian of a vector field at z.
Eigen::MatrixXd fd_jacobian(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
                            const Eigen::VectorXd& z, double step = 1e-5);

/// max |J - J^T| of the finite-difference Jacobian.
double fd_jacobian_asymmetry(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& z, double step = 1e-5);

/// Phase-space fields sampled on a periodic grid: columns are grid nodes,
/// rows are phase-vector components.
struct PhaseField {
    PhaseField(const PeriodicGrid& g, int dim_)
        : grid(g), dim(dim_),
          z(Eigen::MatrixXd::Zero(dim_, g.size())),
          z_t(Eigen::MatrixXd::Zero(dim_, g.size())),
          z_x(Eigen::MatrixXd::Zero(dim_, g.size())) {}
    PeriodicGrid grid;
    int dim;
    Eigen::MatrixXd z;
    Eigen::MatrixXd z_t;
    Eigen::MatrixXd z_x;
};

/// Lifts (eta, u) and their time derivatives to the dimension-10 phase field.
///
/// eta and u may carry nonzero mean: their potentials are split into an
/// affine part m*x plus a zero-mean periodic part; the stored phi rows hold
/// the periodic part while z_x[phi] carries the exact derivative (eta or u).
/// eta_t and u_t must have zero mean (divergence-form evolution), otherwise a
/// domain error is thrown. The z_t rows of w1, p1, w2, p2 would require second
/// time derivatives and are left zero; K annihilates them, so ms_residual is
/// unaffected.
PhaseField lift_state(const SystemCoefficients& s, const PeriodicGrid& grid,
                      const Field& eta, const Field& u,
                      const Field& eta_t, const Field& u_t, double mean_tol = 1e-9);

/// Lift of a traveling state (eta, u)(x - cs t): all time derivatives follow
/// from z_t = -cs z_x, which fills every row of z_t exactly.
PhaseField lift_traveling(const SystemCoefficients& s, const PeriodicGrid& grid,
                          const Field& eta, const Field& u, double cs);

/// Per-node residual K z_t + M z_x - grad S(z); dim x n.
Eigen::MatrixXd ms_residual(const MSSystem& ms, const PhaseField& pf);

/// Max-norm of the residual over all components and nodes.
double ms_residual_norm(const MSSystem& ms, const PhaseField& pf);

/// Generalized energy/momentum densities and fluxes of the conservation laws
/// E_t + F_x = 0 and I_t + Mflux_x = 0.
struct ConservationDensities {
    Field energy;          // E = S(z) - 1/2 <z, M z_x>
    Field energy_flux;     // F = 1/2 <z, M z_t>
    Field momentum;        // I = 1/2 <z, K z_x>
    Field momentum_flux;   // Mflux = S(z) - 1/2 <z, K z_t>
};
ConservationDensities conservation_densities(const MSSystem& ms, const PhaseField& pf);

/// CSV export: x, the z components, then the z_t and z_x blocks.
std::string phase_field_to_csv(const MSSystem& ms, const PhaseField& pf);

}  // namespace bsq
