#include "bsq/travel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "bsq/spectral.hpp"
#include "json.hpp"

namespace bsq {

namespace {

constexpr double kEigenTol = 1e-9;  // real/imaginary decision threshold scale

double check_dfrak(const TravelingWaveSetup& setup, double tol) {
    const double D = setup.dfrak();
    if (std::abs(D) <= tol)
        throw DegenerateError("traveling-wave reduction degenerate: b*d*cs^2 - a^2 = " +
                              std::to_string(D));
    return D;
}

}  // namespace

Eigen::Matrix4d build_linearization(const TravelingWaveSetup& setup, double tol) {
    const double D = check_dfrak(setup, tol);
    const double a = setup.coeffs.disp.a, b = setup.coeffs.disp.b, d = setup.coeffs.disp.d;
    const double cs = setup.speed;
    Eigen::Matrix4d L = Eigen::Matrix4d::Zero();
    L(0, 1) = 1.0;
    L(1, 0) = (d * cs * cs + a) / D;
    L(1, 2) = -cs * (a + d) / D;
    L(2, 3) = 1.0;
    L(3, 0) = -cs * (a + b) / D;
    L(3, 2) = (b * cs * cs + a) / D;
    return L;
}

Eigen::Vector4d nonlinear_term(const TravelingWaveSetup& setup, const Eigen::Vector4d& U,
                               double tol) {
    const double D = check_dfrak(setup, tol);
    const double a = setup.coeffs.disp.a, b = setup.coeffs.disp.b, d = setup.coeffs.disp.d;
    const double cs = setup.speed;
    const double A = setup.coeffs.nl.A(U[0], U[2]);
    const double B = setup.coeffs.nl.B(U[0], U[2]);
    Eigen::Vector4d R = Eigen::Vector4d::Zero();
    R[1] = (-d * cs * A + a * B) / D;
    R[3] = (-b * cs * B + a * A) / D;
    return R;
}

Eigen::Vector4d traveling_rhs(const TravelingWaveSetup& setup, const Eigen::Vector4d& U) {
    return build_linearization(setup) * U + nonlinear_term(setup, U);
}

const char* to_string(WaveClass c) {
    switch (c) {
        case WaveClass::Class: return "Class";
        case WaveClass::Gen: return "Gen";
        case WaveClass::Degenerate: return "Degenerate";
        default: return "NoWave";
    }
}

const char* to_string(Table1Label c) {
    switch (c) {
        case Table1Label::Class: return "Class";
        case Table1Label::Gen: return "Gen";
        default: return "Unlisted";
    }
}

namespace {

Table1Label table1_prediction(const DispersionCoefficients& disp, double tol = 1e-12) {
    const double a = disp.a, b = disp.b, d = disp.d;
    const bool a0 = std::abs(a) <= tol, b0 = std::abs(b) <= tol, d0 = std::abs(d) <= tol;
    const double det = b * d - a * a;
    if (a > tol && b0 && d0) return Table1Label::Gen;
    if (a < -tol && b0 && d > tol) return Table1Label::Gen;
    if (a > tol && d0 && b > tol) return Table1Label::Gen;
    if (a < -tol && b > tol && d > tol) {
        if (det > tol) return Table1Label::Class;
        if (det < -tol) return Table1Label::Gen;
        return Table1Label::Unlisted;
    }
    if (a > tol && b > tol && d > tol) {
        if (det > tol) return Table1Label::Class;
        if (det < -tol) return Table1Label::Gen;
        return Table1Label::Unlisted;
    }
    if (a > tol && std::abs(b - d) <= tol && b < -tol) return Table1Label::Gen;
    if (a0 && b > tol && d > tol) return Table1Label::Class;
    return Table1Label::Unlisted;
}

}  // namespace

EigenReport eigen_classify(const TravelingWaveSetup& setup) {
    const Eigen::Matrix4d L = build_linearization(setup);
    Eigen::EigenSolver<Eigen::Matrix4d> solver(L);
    std::vector<std::complex<double>> ev(4);
    for (int i = 0; i < 4; ++i) ev[i] = solver.eigenvalues()[i];

    // Reversibility forces +/- pairs; group them largest first.
    std::vector<std::complex<double>> paired;
    std::vector<bool> used(4, false);
    for (int round = 0; round < 2; ++round) {
        int imax = -1;
        double best = -1.0;
        for (int i = 0; i < 4; ++i)
            if (!used[i] && std::abs(ev[i]) > best) {
                best = std::abs(ev[i]);
                imax = i;
            }
        used[imax] = true;
        int jmatch = -1;
        double dist = std::numeric_limits<double>::max();
        for (int j = 0; j < 4; ++j)
            if (!used[j] && std::abs(ev[j] + ev[imax]) < dist) {
                dist = std::abs(ev[j] + ev[imax]);
                jmatch = j;
            }
        used[jmatch] = true;
        std::complex<double> lam = ev[imax];
        if (lam.real() < 0 || (lam.real() == 0 && lam.imag() < 0)) lam = ev[jmatch];
        paired.push_back(lam);
        paired.push_back(-lam);
    }

    EigenReport rep;
    for (int i = 0; i < 4; ++i) rep.eigenvalues[i] = paired[i];
    rep.table1_prediction = table1_prediction(setup.coeffs.disp);

    const auto is_real = [](std::complex<double> l) {
        return std::abs(l.imag()) <= kEigenTol * (1.0 + std::abs(l));
    };
    const auto is_imag = [](std::complex<double> l) {
        return std::abs(l.real()) <= kEigenTol * (1.0 + std::abs(l));
    };
    const auto nonzero = [](std::complex<double> l) { return std::abs(l) > kEigenTol; };

    const std::complex<double> l1 = paired[0], l2 = paired[2];
    if (setup.speed <= 1.0) {
        rep.classification = WaveClass::NoWave;
    } else if (is_real(l1) && is_real(l2) && nonzero(l1) && nonzero(l2) &&
               std::abs(std::abs(l1) - std::abs(l2)) > kEigenTol * (1.0 + std::abs(l1))) {
        rep.classification = WaveClass::Class;
    } else if ((is_real(l1) && nonzero(l1) && is_imag(l2) && nonzero(l2)) ||
               (is_imag(l1) && nonzero(l1) && is_real(l2) && nonzero(l2))) {
        rep.classification = WaveClass::Gen;
    } else {
        rep.classification = WaveClass::Degenerate;
    }
    return rep;
}

std::string eigen_report_to_json(const EigenReport& r) {
    nlohmann::json j;
    auto evs = nlohmann::json::array();
    for (const auto& l : r.eigenvalues) evs.push_back({l.real(), l.imag()});
    j["eigenvalues"] = evs;
    j["classification"] = to_string(r.classification);
    j["table1_prediction"] = to_string(r.table1_prediction);
    return j.dump(2);
}

double NormalFormConstants::leading_amplitude(double cs) const {
    if (!(sigma > 0))
        throw RegimeError("leading amplitude requires a positive nonlinearity sum sigma");
    // Homoclinic maximum of v'' = c10 mu v + c20 v^2 (with |c20| = sigma/(2a)):
    // 3 c10 mu / (2 |c20|) = 3 mu / sigma. Equivalently, zeta = u =
    // A sech^2(x sqrt(mu/(b cs))/2) solves the summed profile equations to
    // leading order exactly when A = 3 mu / sigma.
    return 3.0 * (cs - 1.0) / sigma;
}

NormalFormConstants normal_form_constants(const SystemCoefficients& s, double a) {
    NormalFormConstants c;
    c.sigma = s.nl.sigma();
    if (a > 0) {
        c.c10 = 1.0 / a;
        c.c20 = -c.sigma / (2.0 * a);
    }
    return c;
}

std::string normal_form_to_json(const NormalFormConstants& c) {
    nlohmann::json j;
    j["sigma"] = c.sigma;
    if (c.c10) j["c10"] = *c.c10; else j["c10"] = nullptr;
    if (c.c20) j["c20"] = *c.c20; else j["c20"] = nullptr;
    return j.dump(2);
}

std::pair<Field, Field> profile_residual(const SystemCoefficients& s, double cs,
                                         const PeriodicGrid& grid, const Field& zeta,
                                         const Field& u) {
    const Field A = s.nl.alpha11 * zeta * zeta + s.nl.alpha12 * zeta * u + s.nl.alpha22 * u * u;
    const Field B = s.nl.beta11 * zeta * zeta + s.nl.beta12 * zeta * u + s.nl.beta22 * u * u;
    Field r1 = -cs * zeta + u + A + s.disp.a * diff(grid, u, 2) + s.disp.b * cs * diff(grid, zeta, 2);
    Field r2 = -cs * u + zeta + B + s.disp.c * diff(grid, zeta, 2) + s.disp.d * cs * diff(grid, u, 2);
    return {std::move(r1), std::move(r2)};
}

double default_half_length(double cs) {
    if (!(cs > 1.0)) throw DomainError("default_half_length: requires cs > 1");
    return 50.0 / std::sqrt(cs - 1.0);
}

namespace {

// Collocation restricted to fields even about x = 0: nodes j = 0..n/2 are
// independent, j > n/2 mirrors n - j.
struct EvenCollocation {
    explicit EvenCollocation(const PeriodicGrid& g) : grid(g), m(g.size() / 2 + 1) {
        d2.resize(m, m);
        Eigen::VectorXd unit = Eigen::VectorXd::Zero(m);
        for (int k = 0; k < m; ++k) {
            unit[k] = 1.0;
            d2.col(k) = restrict_half(diff(grid, extend(unit), 2));
            unit[k] = 0.0;
        }
    }

    Field extend(const Eigen::Ref<const Eigen::VectorXd>& half) const {
        const int n = grid.size();
        Field full(n);
        for (int j = 0; j <= n / 2; ++j) full[j] = half[j];
        for (int j = n / 2 + 1; j < n; ++j) full[j] = half[n - j];
        return full;
    }

    Eigen::VectorXd restrict_half(const Field& full) const {
        Eigen::VectorXd half(m);
        for (int j = 0; j < m; ++j) half[j] = full[j];
        return half;
    }

    PeriodicGrid grid;
    int m;
    Eigen::MatrixXd d2;
};

struct AttemptOptions {
    double residual_tol = 1e-11;
    double update_tol = 1e-12;
    int max_iter = 50;
    // amplitude floor per speed; converging below it counts as a collapse
    std::function<double(double)> min_amplitude_at;
};

// One Newton solve of the even-restricted collocation system at fixed speed.
ProfilePair attempt_solve(const TravelingWaveSetup& setup, const EvenCollocation& ecol,
                          const Field& zeta0, const Field& u0, const AttemptOptions& opts) {
    const SystemCoefficients& s = setup.coeffs;
    const double cs = setup.speed;
    const PeriodicGrid& grid = ecol.grid;
    const int m = ecol.m;

    const ResidualFn residual = [&](const Eigen::VectorXd& y) {
        const Field zf = ecol.extend(y.head(m));
        const Field uf = ecol.extend(y.tail(m));
        const auto [r1, r2] = profile_residual(s, cs, grid, zf, uf);
        Eigen::VectorXd r(2 * m);
        r.head(m) = ecol.restrict_half(r1);
        r.tail(m) = ecol.restrict_half(r2);
        return r;
    };
    const JacobianFn jacobian = [&](const Eigen::VectorXd& y) {
        const auto zh = y.head(m).array();
        const auto uh = y.tail(m).array();
        Eigen::MatrixXd J(2 * m, 2 * m);
        J.topLeftCorner(m, m) = s.disp.b * cs * ecol.d2;
        J.topLeftCorner(m, m).diagonal() +=
            (-cs + 2.0 * s.nl.alpha11 * zh + s.nl.alpha12 * uh).matrix();
        J.topRightCorner(m, m) = s.disp.a * ecol.d2;
        J.topRightCorner(m, m).diagonal() +=
            (1.0 + s.nl.alpha12 * zh + 2.0 * s.nl.alpha22 * uh).matrix();
        J.bottomLeftCorner(m, m) = s.disp.c * ecol.d2;
        J.bottomLeftCorner(m, m).diagonal() +=
            (1.0 + 2.0 * s.nl.beta11 * zh + s.nl.beta12 * uh).matrix();
        J.bottomRightCorner(m, m) = s.disp.d * cs * ecol.d2;
        J.bottomRightCorner(m, m).diagonal() +=
            (-cs + s.nl.beta12 * zh + 2.0 * s.nl.beta22 * uh).matrix();
        return J;
    };

    Eigen::VectorXd y0(2 * m);
    y0.head(m) = ecol.restrict_half(zeta0);
    y0.tail(m) = ecol.restrict_half(u0);

    NewtonOptions nopts;
    nopts.residual_tol = opts.residual_tol;
    nopts.update_tol = opts.update_tol;
    nopts.max_iter = opts.max_iter;
    const Eigen::VectorXd y = newton(residual, jacobian, y0, nopts);

    ProfilePair p(grid);
    p.zeta = ecol.extend(y.head(m));
    p.u = ecol.extend(y.tail(m));
    p.speed = cs;
    const auto [r1, r2] = profile_residual(s, cs, grid, p.zeta, p.u);
    p.residual_norm = std::max(r1.abs().maxCoeff(), r2.abs().maxCoeff());
    if (opts.min_amplitude_at && p.zeta.abs().maxCoeff() < opts.min_amplitude_at(cs))
        throw ConvergenceError("newton collapsed to the trivial solution at cs = " +
                                   std::to_string(cs),
                               y, NewtonHistory{});
    return p;
}

// Slowest departing rate of the origin: the smallest |Re lambda| over the
// eigenvalues with a real part (sets the pulse width).
double slow_rate(const EigenReport& rep) {
    double rate = std::numeric_limits<double>::max();
    for (const auto& l : rep.eigenvalues) {
        const double re = std::abs(l.real());
        if (re > kEigenTol * (1.0 + std::abs(l))) rate = std::min(rate, re);
    }
    if (!(rate < std::numeric_limits<double>::max()))
        throw RegimeError("no hyperbolic direction at the origin");
    return rate;
}

Field sech2_pulse(const PeriodicGrid& grid, double amplitude, double rate) {
    Field f(grid.size());
    for (int j = 0; j < grid.size(); ++j) {
        const double c = std::cosh(0.5 * rate * grid.node(j));
        f[j] = amplitude / (c * c);
    }
    return f;
}

// Speed continuation: find a convergent starting speed near cs = 1, then walk
// mu = cs - 1 up to the target with the generic continuation driver.
ProfilePair continue_in_speed(const SystemCoefficients& s, double cs_target,
                              const EvenCollocation& ecol, const AttemptOptions& opts,
                              const std::function<std::pair<Field, Field>(double)>& fresh_guess) {
    const double mu_target = cs_target - 1.0;
    double mu = mu_target / 4.0;
    std::optional<ProfilePair> start;
    for (int tries = 0; tries < 6 && !start; ++tries, mu *= 0.5) {
        try {
            const auto [z0, u0] = fresh_guess(1.0 + mu);
            start = attempt_solve(TravelingWaveSetup(s, 1.0 + mu), ecol, z0, u0, opts);
        } catch (const ConvergenceError&) {
        }
    }
    if (!start)
        throw ConvergenceError("continuation could not start near cs = 1", Eigen::VectorXd(),
                               NewtonHistory{});

    const int m = ecol.m;
    const auto pack = [&](const ProfilePair& p) {
        Eigen::VectorXd y(2 * m);
        y.head(m) = ecol.restrict_half(p.zeta);
        y.tail(m) = ecol.restrict_half(p.u);
        return y;
    };
    const ContinuationSolve solve_at = [&](double mu_trial, const Eigen::VectorXd& y) {
        return pack(attempt_solve(TravelingWaveSetup(s, 1.0 + mu_trial), ecol,
                                  ecol.extend(y.head(m)), ecol.extend(y.tail(m)), opts));
    };
    const Eigen::VectorXd y =
        continuation(solve_at, start->speed - 1.0, mu_target, pack(*start));
    return attempt_solve(TravelingWaveSetup(s, cs_target), ecol, ecol.extend(y.head(m)),
                         ecol.extend(y.tail(m)), opts);
}

}  // namespace

ProfilePair solve_classical(const TravelingWaveSetup& setup, const PeriodicGrid& grid,
                            const ProfilePair* init) {
    if (!(setup.speed > 1.0))
        throw RegimeError("solve_classical: no solitary-wave bifurcation for cs <= 1");
    const NormalFormConstants nf = normal_form_constants(setup.coeffs, setup.coeffs.disp.a);
    if (!(nf.sigma > 0))
        throw RegimeError("solve_classical: nonlinearity sum sigma must be positive");
    const EigenReport rep = eigen_classify(setup);
    if (rep.classification == WaveClass::Gen)
        throw RegimeError("solve_classical: generalized regime, use solve_generalized");
    if (rep.classification != WaveClass::Class)
        throw RegimeError(std::string("solve_classical: spectrum class ") +
                          to_string(rep.classification) + " admits no classical wave");

    const EvenCollocation ecol(grid);
    AttemptOptions opts;
    opts.min_amplitude_at = [nf](double cs) { return 0.05 * nf.leading_amplitude(cs); };
    const auto guess_at = [&](double cs) {
        const TravelingWaveSetup at(setup.coeffs, cs);
        const double amp = nf.leading_amplitude(cs);
        const double rate = slow_rate(eigen_classify(at));
        const Field g = sech2_pulse(grid, amp, rate);
        return std::make_pair(g, g);
    };

    ProfilePair result(grid);
    try {
        Field z0, u0;
        if (init) {
            if (init->grid.same_as(grid)) {
                z0 = init->zeta;
                u0 = init->u;
            } else if (init->grid.half_length() == grid.half_length()) {
                z0 = resample(init->grid, init->zeta, grid);
                u0 = resample(init->grid, init->u, grid);
            } else {
                throw DomainError("solve_classical: initial profile lives on an incompatible grid");
            }
        } else {
            std::tie(z0, u0) = guess_at(setup.speed);
        }
        result = attempt_solve(setup, ecol, z0, u0, opts);
    } catch (const ConvergenceError&) {
        result = continue_in_speed(setup.coeffs, setup.speed, ecol, opts, guess_at);
    }

    if (result.residual_norm > 1e-10)
        throw ConvergenceError("solve_classical: residual " + std::to_string(result.residual_norm) +
                                   " above 1e-10",
                               Eigen::VectorXd(), NewtonHistory{});
    const double tail = std::max(std::abs(result.zeta[0]), std::abs(result.u[0]));
    if (tail > 1e-8)
        throw DomainError("solve_classical: tail amplitude " + std::to_string(tail) +
                          " at |x| = L exceeds 1e-8; enlarge the domain");
    return result;
}

ProfilePair solve_generalized(const TravelingWaveSetup& setup, const PeriodicGrid& grid,
                              const ProfilePair* init) {
    if (!(setup.speed > 1.0))
        throw RegimeError("solve_generalized: no solitary-wave bifurcation for cs <= 1");
    const EigenReport rep = eigen_classify(setup);
    if (rep.classification == WaveClass::Class)
        throw RegimeError("solve_generalized: classical regime, use solve_classical");
    if (rep.classification != WaveClass::Gen)
        throw RegimeError(std::string("solve_generalized: spectrum class ") +
                          to_string(rep.classification) + " admits no generalized wave");

    const double sigma = setup.coeffs.nl.sigma();
    const EvenCollocation ecol(grid);
    AttemptOptions opts;
    opts.residual_tol = 1e-11;
    opts.min_amplitude_at = [sigma](double cs) {
        return sigma > 0 ? 0.05 * 1.5 * (cs - 1.0) / sigma : 1e-8;
    };
    const auto guess_at = [&](double cs) {
        const TravelingWaveSetup at(setup.coeffs, cs);
        const double amp = sigma > 0 ? 1.5 * (cs - 1.0) / sigma : 0.1;
        const double rate = slow_rate(eigen_classify(at));
        const Field g = sech2_pulse(grid, amp, rate);
        return std::make_pair(g, g);
    };

    ProfilePair result(grid);
    try {
        Field z0, u0;
        if (init && init->grid.same_as(grid)) {
            z0 = init->zeta;
            u0 = init->u;
        } else {
            std::tie(z0, u0) = guess_at(setup.speed);
        }
        result = attempt_solve(setup, ecol, z0, u0, opts);
    } catch (const ConvergenceError&) {
        result = continue_in_speed(setup.coeffs, setup.speed, ecol, opts, guess_at);
    }

    const int outer = std::max(1, grid.size() / 20);  // |x| >= 0.9 L on both ends
    double tail = 0.0;
    for (int j = 0; j < outer; ++j) tail = std::max(tail, std::abs(result.zeta[j]));
    for (int j = grid.size() - outer; j < grid.size(); ++j)
        tail = std::max(tail, std::abs(result.zeta[j]));
    result.tail_amplitude = tail;
    return result;
}

double tail_wavenumber(const ProfilePair& profile, double outer_fraction) {
    const PeriodicGrid& grid = profile.grid;
    const int n = grid.size();
    const int J = std::max(4, static_cast<int>(outer_fraction * n / 2));
    const Field zxx = diff(grid, profile.zeta, 2);
    double zmean = 0.0;
    for (int j = 0; j < J; ++j) zmean += profile.zeta[j];
    zmean /= J;
    double num = 0.0, den = 0.0;
    for (int j = 0; j < J; ++j) {
        const double zt = profile.zeta[j] - zmean;
        num -= zxx[j] * zt;
        den += zt * zt;
    }
    if (den <= 0.0) return 0.0;
    return std::sqrt(std::max(0.0, num / den));
}

std::vector<CurveRow> speed_amplitude_curve(const SystemCoefficients& s,
                                            const std::vector<double>& speeds,
                                            const PeriodicGrid& grid) {
    std::vector<CurveRow> rows;
    std::optional<ProfilePair> last;
    for (const double cs : speeds) {
        CurveRow row;
        row.speed = cs;
        try {
            const TravelingWaveSetup setup(s, cs);
            const ProfilePair p = solve_classical(setup, grid, last ? &*last : nullptr);
            row.amp_zeta = p.zeta.maxCoeff();
            row.amp_u = p.u.maxCoeff();
            row.residual = p.residual_norm;
            row.status = "ok";
            last = p;
        } catch (const Error& e) {
            row.amp_zeta = row.amp_u = row.residual = std::numeric_limits<double>::quiet_NaN();
            row.status = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string profile_to_csv(const ProfilePair& p) {
    std::ostringstream os;
    os.precision(17);
    os << "x,zeta,u\n";
    for (int j = 0; j < p.grid.size(); ++j)
        os << p.grid.node(j) << "," << p.zeta[j] << "," << p.u[j] << "\n";
    return os.str();
}

std::string curve_to_csv(const std::vector<CurveRow>& rows) {
    std::ostringstream os;
    os.precision(17);
    os << "cs,amp_zeta,amp_u,residual,status\n";
    for (const auto& r : rows) {
        std::string status = r.status;
        std::replace(status.begin(), status.end(), ',', ';');
        os << r.speed << "," << r.amp_zeta << "," << r.amp_u << "," << r.residual << ","
           << status << "\n";
    }
    return os.str();
}

}  // namespace bsq
