#include "bsq/msform.hpp"

#include <cmath>
#include <sstream>

namespace bsq {

namespace {

void set_skew(Eigen::MatrixXd& A, int i, int j, double v) {
    A(i, j) = v;
    A(j, i) = -v;
}

const std::vector<std::string> kNames10 = {"eta", "phi1", "v1", "w1", "p1",
                                           "u",   "phi2", "v2", "w2", "p2"};
const std::vector<std::string> kNames5 = {"u", "phi", "v", "w", "p"};

}  // namespace

MSSystem build_boussinesq_ms(const SystemCoefficients& s, double tol) {
    const StructureReport rep = classify_structure(s, tol);
    if (!rep.is_multisymplectic) {
        std::string cond;
        for (const auto& v : rep.violated_conditions) {
            if (v == "a=c" || v == "alpha12=2*beta11" || v == "beta12=2*alpha22") {
                cond = v;
                break;
            }
        }
        throw StructureError("coefficients are not multi-symplectic (violated: " + cond + ")", cond);
    }

    using namespace phase;
    const double a = s.disp.a;  // common value of a = c
    const double b = s.disp.b;
    const double d = s.disp.d;
    const NonlinearCoefficients nl = s.nl;

    MSSystem ms;
    ms.dim = 10;
    ms.component_names = kNames10;
    ms.K = Eigen::MatrixXd::Zero(10, 10);
    set_skew(ms.K, eta, phi1, 0.5);
    set_skew(ms.K, eta, v1, -0.5 * b);
    set_skew(ms.K, u, phi2, 0.5);
    set_skew(ms.K, u, v2, -0.5 * d);

    ms.M = Eigen::MatrixXd::Zero(10, 10);
    set_skew(ms.M, eta, w1, -0.5 * b);
    set_skew(ms.M, eta, v2, a);
    set_skew(ms.M, phi1, p1, -1.0);
    set_skew(ms.M, v1, u, -a);
    set_skew(ms.M, u, w2, -0.5 * d);
    set_skew(ms.M, phi2, p2, -1.0);

    ms.potential = [a, b, d, nl](const Eigen::VectorXd& z) {
        const double e = z[eta], U = z[u];
        return z[p1] * e - e * U - nl.alpha11 / 3.0 * e * e * e - nl.beta11 * e * e * U -
               0.5 * nl.beta12 * e * U * U + 0.5 * b * z[v1] * z[w1] -
               nl.beta22 / 3.0 * U * U * U + 0.5 * d * z[v2] * z[w2] - a * z[v1] * z[v2] +
               z[p2] * U;
    };
    ms.gradient = [a, b, d, nl](const Eigen::VectorXd& z) {
        const double e = z[eta], U = z[u];
        Eigen::VectorXd g = Eigen::VectorXd::Zero(10);
        g[eta] = z[p1] - U - nl.alpha11 * e * e - 2.0 * nl.beta11 * e * U - 0.5 * nl.beta12 * U * U;
        g[v1] = 0.5 * b * z[w1] - a * z[v2];
        g[w1] = 0.5 * b * z[v1];
        g[p1] = e;
        g[u] = z[p2] - e - nl.beta11 * e * e - nl.beta12 * e * U - nl.beta22 * U * U;
        g[v2] = 0.5 * d * z[w2] - a * z[v1];
        g[w2] = 0.5 * d * z[v2];
        g[p2] = U;
        return g;
    };
    return ms;
}

MSSystem build_kdvbbm_ms(double alpha_kb, double beta_kb) {
    if (!std::isfinite(alpha_kb) || !std::isfinite(beta_kb))
        throw DomainError("build_kdvbbm_ms: coefficients must be finite");
    enum : int { u = 0, phi = 1, v = 2, w = 3, p = 4 };
    MSSystem ms;
    ms.dim = 5;
    ms.component_names = kNames5;
    ms.K = Eigen::MatrixXd::Zero(5, 5);
    set_skew(ms.K, u, phi, 0.5);
    set_skew(ms.K, u, v, -0.5 * beta_kb);

    ms.M = Eigen::MatrixXd::Zero(5, 5);
    set_skew(ms.M, u, v, alpha_kb);
    set_skew(ms.M, u, w, -0.5 * beta_kb);
    set_skew(ms.M, phi, p, -1.0);

    ms.potential = [alpha_kb, beta_kb](const Eigen::VectorXd& z) {
        return z[p] * z[u] - z[u] * z[u] * z[u] / 6.0 - 0.5 * alpha_kb * z[v] * z[v] +
               0.5 * beta_kb * z[v] * z[w];
    };
    ms.gradient = [alpha_kb, beta_kb](const Eigen::VectorXd& z) {
        Eigen::VectorXd g = Eigen::VectorXd::Zero(5);
        g[u] = z[p] - 0.5 * z[u] * z[u];
        g[v] = -alpha_kb * z[v] + 0.5 * beta_kb * z[w];
        g[w] = 0.5 * beta_kb * z[v];
        g[p] = z[u];
        return g;
    };
    return ms;
}

Eigen::VectorXd ms_right_side(const SystemCoefficients& s, const Eigen::VectorXd& z) {
    using namespace phase;
    if (z.size() != 10) throw DomainError("ms_right_side: expected a 10-vector");
    const double a = s.disp.a, b = s.disp.b, d = s.disp.d;
    const double e = z[eta], U = z[u];
    Eigen::VectorXd r = Eigen::VectorXd::Zero(10);
    r[eta] = z[p1] - U - s.nl.A(e, U);
    r[v1] = 0.5 * b * z[w1] - a * z[v2];
    r[w1] = 0.5 * b * z[v1];
    r[p1] = e;
    r[u] = z[p2] - e - s.nl.B(e, U);
    r[v2] = 0.5 * d * z[w2] - a * z[v1];
    r[w2] = 0.5 * d * z[v2];
    r[p2] = U;
    return r;
}

Eigen::MatrixXd fd_jacobian(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
                            const Eigen::VectorXd& z, double step) {
    const int n = static_cast<int>(z.size());
    Eigen::MatrixXd J(n, n);
    Eigen::VectorXd zp = z, zm = z;
    for (int j = 0; j < n; ++j) {
        zp[j] = z[j] + step;
        zm[j] = z[j] - step;
        J.col(j) = (f(zp) - f(zm)) / (2.0 * step);
        zp[j] = z[j];
        zm[j] = z[j];
    }
    return J;
}

double fd_jacobian_asymmetry(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& z, double step) {
    const Eigen::MatrixXd J = fd_jacobian(f, z, step);
    return (J - J.transpose()).cwiseAbs().maxCoeff();
}

PhaseField lift_state(const SystemCoefficients& s, const PeriodicGrid& grid,
                      const Field& eta, const Field& u,
                      const Field& eta_t, const Field& u_t, double mean_tol) {
    namespace ph = phase;
    const int n = grid.size();
    if (eta.size() != n || u.size() != n || eta_t.size() != n || u_t.size() != n)
        throw DomainError("lift_state: field lengths do not match the grid");

    const double m_eta = mean(grid, eta);
    const double m_u = mean(grid, u);

    PhaseField pf(grid, 10);
    pf.z.row(ph::eta) = eta.transpose();
    pf.z.row(ph::phi1) = antideriv(grid, Field(eta - m_eta)).transpose();
    pf.z.row(ph::v1) = diff(grid, eta).transpose();
    pf.z.row(ph::w1) = eta_t.transpose();
    pf.z.row(ph::u) = u.transpose();
    pf.z.row(ph::phi2) = antideriv(grid, Field(u - m_u)).transpose();
    pf.z.row(ph::v2) = diff(grid, u).transpose();
    pf.z.row(ph::w2) = u_t.transpose();

    // antideriv rejects eta_t/u_t with nonzero mean: those have no periodic
    // potential rate (the evolution is in divergence form).
    const Field phi1_t = antideriv(grid, eta_t, mean_tol);
    const Field phi2_t = antideriv(grid, u_t, mean_tol);

    // Fluxes: p1 = u + A + 1/2 phi1_t + a v2_x - 1/2 b (v1_t + w1_x),
    //         p2 = eta + B + 1/2 phi2_t + c v1_x - 1/2 d (v2_t + w2_x),
    // where v1_t = w1_x = d/dx eta_t and v2_t = w2_x = d/dx u_t.
    const Field A = s.nl.alpha11 * eta * eta + s.nl.alpha12 * eta * u + s.nl.alpha22 * u * u;
    const Field B = s.nl.beta11 * eta * eta + s.nl.beta12 * eta * u + s.nl.beta22 * u * u;
    const Field p1f = u + A + 0.5 * phi1_t + s.disp.a * diff(grid, u, 2) - s.disp.b * diff(grid, eta_t);
    const Field p2f = eta + B + 0.5 * phi2_t + s.disp.c * diff(grid, eta, 2) - s.disp.d * diff(grid, u_t);
    pf.z.row(ph::p1) = p1f.transpose();
    pf.z.row(ph::p2) = p2f.transpose();

    for (int i = 0; i < 10; ++i)
        pf.z_x.row(i) = diff(grid, Field(pf.z.row(i).transpose())).transpose();
    // the stored phi rows miss the affine part m*x; their exact derivatives
    // are the fields themselves
    pf.z_x.row(ph::phi1) = eta.transpose();
    pf.z_x.row(ph::phi2) = u.transpose();

    pf.z_t.row(ph::eta) = eta_t.transpose();
    pf.z_t.row(ph::phi1) = phi1_t.transpose();
    pf.z_t.row(ph::v1) = diff(grid, eta_t).transpose();
    pf.z_t.row(ph::u) = u_t.transpose();
    pf.z_t.row(ph::phi2) = phi2_t.transpose();
    pf.z_t.row(ph::v2) = diff(grid, u_t).transpose();
    // w1, p1, w2, p2 rows of z_t stay zero (second time derivatives unknown;
    // the corresponding columns of K vanish)
    return pf;
}

PhaseField lift_traveling(const SystemCoefficients& s, const PeriodicGrid& grid,
                          const Field& eta, const Field& u, double cs) {
    const Field eta_t = -cs * diff(grid, eta);
    const Field u_t = -cs * diff(grid, u);
    PhaseField pf = lift_state(s, grid, eta, u, eta_t, u_t);
    // The traveling potential rates are phi1_t = -cs eta and phi2_t = -cs u
    // including the mean, while lift_state used the zero-mean gauge; shift the
    // fluxes p1, p2 by the induced constants to stay consistent.
    pf.z.row(phase::p1).array() -= 0.5 * cs * mean(grid, eta);
    pf.z.row(phase::p2).array() -= 0.5 * cs * mean(grid, u);
    pf.z_t = -cs * pf.z_x;
    return pf;
}

Eigen::MatrixXd ms_residual(const MSSystem& ms, const PhaseField& pf) {
    if (pf.dim != ms.dim) throw DomainError("ms_residual: phase field dimension mismatch");
    const int n = pf.grid.size();
    Eigen::MatrixXd r = ms.K * pf.z_t + ms.M * pf.z_x;
    for (int j = 0; j < n; ++j) r.col(j) -= ms.gradient(pf.z.col(j));
    return r;
}

double ms_residual_norm(const MSSystem& ms, const PhaseField& pf) {
    return ms_residual(ms, pf).cwiseAbs().maxCoeff();
}

ConservationDensities conservation_densities(const MSSystem& ms, const PhaseField& pf) {
    if (pf.dim != ms.dim) throw DomainError("conservation_densities: phase field dimension mismatch");
    const int n = pf.grid.size();
    ConservationDensities out{Field(n), Field(n), Field(n), Field(n)};
    const Eigen::MatrixXd Mzx = ms.M * pf.z_x;
    const Eigen::MatrixXd Mzt = ms.M * pf.z_t;
    const Eigen::MatrixXd Kzx = ms.K * pf.z_x;
    const Eigen::MatrixXd Kzt = ms.K * pf.z_t;
    for (int j = 0; j < n; ++j) {
        const auto z = pf.z.col(j);
        const double S = ms.potential(z);
        out.energy[j] = S - 0.5 * z.dot(Mzx.col(j));
        out.energy_flux[j] = 0.5 * z.dot(Mzt.col(j));
        out.momentum[j] = 0.5 * z.dot(Kzx.col(j));
        out.momentum_flux[j] = S - 0.5 * z.dot(Kzt.col(j));
    }
    return out;
}

std::string phase_field_to_csv(const MSSystem& ms, const PhaseField& pf) {
    std::ostringstream os;
    os.precision(17);
    os << "x";
    for (const auto& nm : ms.component_names) os << "," << nm;
    for (const auto& nm : ms.component_names) os << "," << nm << "_t";
    for (const auto& nm : ms.component_names) os << "," << nm << "_x";
    os << "\n";
    for (int j = 0; j < pf.grid.size(); ++j) {
        os << pf.grid.node(j);
        for (int i = 0; i < pf.dim; ++i) os << "," << pf.z(i, j);
        for (int i = 0; i < pf.dim; ++i) os << "," << pf.z_t(i, j);
        for (int i = 0; i < pf.dim; ++i) os << "," << pf.z_x(i, j);
        os << "\n";
    }
    return os.str();
}

}  // namespace bsq
