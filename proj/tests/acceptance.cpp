// Acceptance suite: one pass/fail line per criterion.
// Exit status is nonzero if any criterion fails; the best-effort
// generalized-wave criterion reports FRAGILE instead of failing when the
// Newton iteration does not converge.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "bsq/coeffs.hpp"
#include "bsq/msform.hpp"
#include "bsq/newton.hpp"
#include "bsq/sim.hpp"
#include "bsq/spectral.hpp"
#include "bsq/travel.hpp"

using namespace bsq;

namespace {

int failures = 0;

void criterion(int number, const std::string& label, double time_budget_s,
               const std::function<void()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string verdict = "PASS";
    std::string detail;
    try {
        body();
    } catch (const std::exception& e) {
        verdict = "FAIL";
        detail = e.what();
        ++failures;
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (verdict == "PASS" && time_budget_s > 0 && elapsed > time_budget_s) {
        verdict = "FAIL";
        detail = "time budget " + std::to_string(time_budget_s) + " s exceeded";
        ++failures;
    }
    std::printf("[%s] criterion %2d: %s (%.2f s)%s%s\n", verdict.c_str(), number, label.c_str(),
                elapsed, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
}

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::runtime_error(msg);
}

SystemCoefficients random_ms_system(std::mt19937& rng) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    SystemCoefficients s;
    s.disp.a = s.disp.c = unif(rng);
    s.disp.b = unif(rng);
    s.disp.d = unif(rng);
    s.nl.beta11 = unif(rng);
    s.nl.alpha12 = 2.0 * s.nl.beta11;
    s.nl.alpha22 = unif(rng);
    s.nl.beta12 = 2.0 * s.nl.alpha22;
    s.nl.alpha11 = unif(rng);
    s.nl.beta22 = unif(rng);
    return s;
}

Eigen::VectorXd random_vec(int dim, std::mt19937& rng) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    Eigen::VectorXd z(dim);
    for (int i = 0; i < dim; ++i) z[i] = unif(rng);
    return z;
}

Field gaussian(const PeriodicGrid& grid, double amp, double width) {
    Field f(grid.size());
    for (int j = 0; j < grid.size(); ++j) {
        const double x = grid.node(j) / width;
        f[j] = amp * std::exp(-x * x);
    }
    return f;
}

double rel_drift(const std::vector<double>& series) {
    const double q0 = series.front();
    double worst = 0.0;
    for (double q : series) worst = std::max(worst, std::abs(q - q0));
    return worst / std::max(std::abs(q0), 1e-30);
}

// ------------------------------------------------------------------------

void criterion1_structure() {
    struct Expect {
        const char* name;
        bool ms, sympl;
    };
    const std::vector<Expect> table = {
        {"abcd-classic", false, true}, {"symmetric", true, false}, {"ms-modified", true, true},
        {"figure2", true, false},      {"kdvkdv", true, false},
    };
    for (const auto& e : table) {
        const StructureReport r = classify_structure(preset(e.name), 1e-12);
        require(r.is_multisymplectic == e.ms,
                std::string(e.name) + ": multi-symplectic flag is wrong");
        require(r.is_symplectic == e.sympl, std::string(e.name) + ": symplectic flag is wrong");
        require(r.is_both == (e.ms && e.sympl), std::string(e.name) + ": is_both inconsistent");
    }
}

void criterion2_gradient_symmetry() {
    std::mt19937 rng(101);
    for (int set = 0; set < 20; ++set) {
        const SystemCoefficients s = random_ms_system(rng);
        const MSSystem ms = build_boussinesq_ms(s);
        double worst = 0.0;
        for (int k = 0; k < 20; ++k)
            worst = std::max(worst, fd_jacobian_asymmetry(ms.gradient, random_vec(10, rng)));
        require(worst <= 1e-6, "gradient Jacobian asymmetry " + std::to_string(worst));
    }
    for (int set = 0; set < 20; ++set) {
        SystemCoefficients s = random_ms_system(rng);
        s.nl.alpha12 = 2.0 * s.nl.beta11 + 0.1;
        const auto field = [&s](const Eigen::VectorXd& z) { return ms_right_side(s, z); };
        double worst = 0.0;
        for (int k = 0; k < 20; ++k)
            worst = std::max(worst, fd_jacobian_asymmetry(field, random_vec(10, rng)));
        require(worst >= 1e-3,
                "violated set " + std::to_string(set) + " asymmetry only " + std::to_string(worst));
    }
}

void criterion3_eigen_closed_forms() {
    {
        const EigenReport rep = eigen_classify(TravelingWaveSetup(preset("figure2"), 1.2));
        std::vector<double> mags;
        for (const auto& l : rep.eigenvalues) {
            require(std::abs(l.imag()) <= 1e-12 * (1.0 + std::abs(l)), "eigenvalue not real");
            mags.push_back(std::abs(l));
        }
        std::sort(mags.begin(), mags.end());
        require(std::abs(mags[0] - 1.0) <= 1e-12 && std::abs(mags[1] - 1.0) <= 1e-12,
                "slow pair differs from +/-1");
        const double s11 = std::sqrt(11.0);
        require(std::abs(mags[2] - s11) <= 1e-12 && std::abs(mags[3] - s11) <= 1e-12,
                "fast pair differs from +/-sqrt(11)");
    }
    {
        const EigenReport rep = eigen_classify(TravelingWaveSetup(preset("kdvkdv"), 1.0));
        double err = 1e9;
        for (const auto& l : rep.eigenvalues)
            if (std::abs(l) > 1.0)
                err = std::min(err, std::abs(std::abs(l.imag()) - std::sqrt(12.0)) +
                                        std::abs(l.real()));
        require(err <= 1e-12, "imaginary pair differs from +/- i sqrt(12) by " +
                                  std::to_string(err));
    }
}

void criterion4_table1() {
    const SystemCoefficients nl = preset("figure2");
    struct Row {
        double a, b, d;
        Table1Label expect;
    };
    const std::vector<Row> rows = {
        {1.0 / 6.0, 0.0, 0.0, Table1Label::Gen},
        {-1.0 / 6.0, 0.0, 1.0 / 6.0, Table1Label::Gen},
        {1.0 / 6.0, 1.0 / 6.0, 0.0, Table1Label::Gen},
        {-1.0 / 6.0, 0.5, 0.5, Table1Label::Class},
        {-0.6, 0.5, 0.5, Table1Label::Gen},
        {1.0 / 6.0, 0.5, 0.5, Table1Label::Class},
        {1.0, 0.5, 0.5, Table1Label::Gen},
        {0.5, -1.0 / 3.0, -1.0 / 3.0, Table1Label::Gen},
        {0.0, 1.0 / 6.0, 1.0 / 6.0, Table1Label::Class},
    };
    int agree = 0;
    for (const auto& row : rows) {
        SystemCoefficients s = nl;
        s.disp = {row.a, row.b, row.a, row.d};
        const EigenReport rep = eigen_classify(TravelingWaveSetup(s, 1.01));
        const bool match =
            rep.table1_prediction == row.expect &&
            ((row.expect == Table1Label::Class && rep.classification == WaveClass::Class) ||
             (row.expect == Table1Label::Gen && rep.classification == WaveClass::Gen));
        if (match) ++agree;
    }
    require(agree == 9, "only " + std::to_string(agree) + "/9 rows agree");
}

void criterion5_solitary_asymptotics() {
    const SystemCoefficients s = preset("figure2");
    const double sigma = 1.42;
    const double limit = 3.0 / sigma;
    std::vector<double> ratios;
    for (double cs : {1.04, 1.02, 1.01}) {
        PeriodicGrid grid(default_half_length(cs), 2048);
        const ProfilePair p = solve_classical(TravelingWaveSetup(s, cs), grid);
        require(p.residual_norm <= 1e-10,
                "residual " + std::to_string(p.residual_norm) + " at cs " + std::to_string(cs));
        ratios.push_back(p.zeta.maxCoeff() / (cs - 1.0));
    }
    for (size_t i = 0; i + 1 < ratios.size(); ++i)
        require(std::abs(ratios[i + 1] - limit) <= std::abs(ratios[i] - limit),
                "amplitude/(cs-1) does not approach the limit monotonically");
    const double dev = std::abs(ratios.back() - limit) / limit;
    require(dev <= 0.05, "final deviation " + std::to_string(dev) + " above 5%");
}

void criterion6_advection() {
    const SystemCoefficients s = preset("figure2");
    const double cs = 1.1;
    PeriodicGrid grid(default_half_length(cs), 1024);
    const ProfilePair p = solve_classical(TravelingWaveSetup(s, cs), grid);
    const double T = 10.0;
    const Field expect = shift(grid, p.zeta, cs * T);

    const FieldState out = integrate(s, FieldState(grid, p.zeta, p.u), T, 1e-3);
    const double err = (out.eta - expect).abs().maxCoeff();
    require(err <= 1e-6, "advection error " + std::to_string(err));

    // fourth-order convergence, measured where the dt^4 term dominates the
    // spatial floor
    std::vector<double> errs;
    for (double dt : {0.05, 0.025}) {
        const FieldState o = integrate(s, FieldState(grid, p.zeta, p.u), T, dt);
        errs.push_back((o.eta - shift(grid, p.zeta, cs * T)).abs().maxCoeff());
    }
    const double ratio = errs[0] / errs[1];
    require(ratio > 10.0 && ratio < 24.0,
            "dt-halving ratio " + std::to_string(ratio) + " not ~16");
}

void criterion7_conservation() {
    PeriodicGrid grid(100.0, 512);
    const Field eta0 = gaussian(grid, 0.25, 7.0);
    const Field u0 = gaussian(grid, 0.1, 9.0);
    const double T = 10.0, dt = 1e-3;

    std::vector<double> l2, m1, m2;
    integrate(preset("symmetric"), FieldState(grid, eta0, u0), T, dt,
              [&](const FieldState&, const ConservedDiagnostics& d) {
                  l2.push_back(d.l2);
                  m1.push_back(d.mass_eta);
                  m2.push_back(d.mass_u);
              },
              200);
    require(rel_drift(l2) <= 1e-8, "symmetric l2 drift " + std::to_string(rel_drift(l2)));
    require(rel_drift(m1) <= 1e-12 && rel_drift(m2) <= 1e-12, "symmetric mass drift");

    std::vector<double> ham, imp, hm1, hm2;
    integrate(preset("ms-modified"), FieldState(grid, eta0, u0), T, dt,
              [&](const FieldState&, const ConservedDiagnostics& d) {
                  ham.push_back(*d.hamiltonian);
                  imp.push_back(*d.impulse);
                  hm1.push_back(d.mass_eta);
                  hm2.push_back(d.mass_u);
              },
              200);
    require(rel_drift(ham) <= 1e-8, "hamiltonian drift " + std::to_string(rel_drift(ham)));
    require(rel_drift(imp) <= 1e-8, "impulse drift " + std::to_string(rel_drift(imp)));
    require(rel_drift(hm1) <= 1e-12 && rel_drift(hm2) <= 1e-12, "ms-modified mass drift");

    // control: b = d but the symplectic nonlinearity identities fail
    std::vector<double> ham_ctl;
    integrate(preset("figure2"), FieldState(grid, eta0, u0), T, dt,
              [&](const FieldState&, const ConservedDiagnostics& d) {
                  ham_ctl.push_back(*d.hamiltonian);
              },
              200);
    require(rel_drift(ham_ctl) >= 1e-4,
            "control hamiltonian drift only " + std::to_string(rel_drift(ham_ctl)));
}

void criterion8_ms_residual_decay() {
    const SystemCoefficients s = preset("figure2");
    const MSSystem ms = build_boussinesq_ms(s);
    const double cs = 1.1;
    const double L = default_half_length(cs);
    PeriodicGrid ref(L, 2048);
    const ProfilePair p = solve_classical(TravelingWaveSetup(s, cs), ref);

    std::vector<double> norms;
    for (int n : {512, 1024}) {
        PeriodicGrid grid(L, n);
        const PhaseField pf = lift_traveling(s, grid, resample(ref, p.zeta, grid),
                                             resample(ref, p.u, grid), cs);
        norms.push_back(ms_residual_norm(ms, pf));
    }
    require(norms[1] <= norms[0] / 100.0,
            "residual " + std::to_string(norms[0]) + " -> " + std::to_string(norms[1]) +
                " is not a 100x drop");
}

bool criterion9_generalized() {
    const SystemCoefficients s = preset("kdvkdv");
    const double cs = 1.5;
    PeriodicGrid grid(default_half_length(cs), 2048);
    try {
        const ProfilePair p = solve_generalized(TravelingWaveSetup(s, cs), grid);
        require(p.residual_norm <= 1e-8, "residual " + std::to_string(p.residual_norm));
        require(p.tail_amplitude > 0.0, "tail ripple vanished");
        const EigenReport rep = eigen_classify(TravelingWaveSetup(s, cs));
        double kimag = 0.0;
        for (const auto& l : rep.eigenvalues) kimag = std::max(kimag, std::abs(l.imag()));
        const double kest = tail_wavenumber(p);
        require(std::abs(kest - kimag) / kimag <= 0.05,
                "tail wavenumber " + std::to_string(kest) + " vs " + std::to_string(kimag));
        return true;
    } catch (const ConvergenceError&) {
        return false;  // expected-fragile
    }
}

void criterion10_normal_form() {
    std::mt19937 rng(404);
    std::uniform_real_distribution<double> apos(0.05, 2.0), nlc(0.0, 1.0);
    for (int k = 0; k < 10; ++k) {
        SystemCoefficients s;
        s.nl.alpha11 = nlc(rng);
        s.nl.alpha12 = nlc(rng);
        s.nl.alpha22 = nlc(rng);
        s.nl.beta11 = nlc(rng);
        s.nl.beta12 = nlc(rng);
        s.nl.beta22 = nlc(rng);
        const double a = apos(rng);
        const NormalFormConstants c = normal_form_constants(s, a);
        const double sigma = s.nl.alpha11 + s.nl.alpha12 + s.nl.alpha22 + s.nl.beta11 +
                             s.nl.beta12 + s.nl.beta22;
        require(c.sigma == sigma, "sigma is not the literal six-term sum");
        require(std::abs(*c.c10 - 1.0 / a) <= 1e-14 * (1.0 + std::abs(*c.c10)), "c10 != 1/a");
        require(std::abs(*c.c20 + sigma / (2.0 * a)) <= 1e-14 * (1.0 + std::abs(*c.c20)),
                "c20 != -sigma/(2a)");
    }
}

}  // namespace

int main() {
    criterion(1, "structure classification of the five presets", 1.0, criterion1_structure);
    criterion(2, "gradient-field symmetry and its controlled violation", 5.0,
              criterion2_gradient_symmetry);
    criterion(3, "eigenvalue closed forms", 1.0, criterion3_eigen_closed_forms);
    criterion(4, "solitary-wave classification table, 9/9 rows", 1.0, criterion4_table1);
    criterion(5, "solitary-wave residual and amplitude asymptotics", 30.0,
              criterion5_solitary_asymptotics);
    criterion(6, "traveling-wave/simulator cross-check", 120.0, criterion6_advection);
    criterion(7, "conservation drift (l2, hamiltonian, impulse, mass, control)", 180.0,
              criterion7_conservation);
    criterion(8, "MS residual convergence of the lifted traveling solution", 30.0,
              criterion8_ms_residual_decay);

    {  // criterion 9 is best effort: a convergence failure is fragile, not fatal
        const auto t0 = std::chrono::steady_clock::now();
        std::string verdict = "PASS", detail;
        try {
            if (!criterion9_generalized()) {
                verdict = "FRAGILE";
                detail = "generalized Newton did not converge (expected-fragile)";
            }
        } catch (const std::exception& e) {
            verdict = "FAIL";
            detail = e.what();
            ++failures;
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] criterion  9: generalized-wave regime, best effort (%.2f s)%s%s\n",
                    verdict.c_str(), elapsed, detail.empty() ? "" : " -- ", detail.c_str());
    }

    criterion(10, "normal-form constants c10 and c20", 5.0, criterion10_normal_form);

    if (failures == 0) {
        std::printf("acceptance: all criteria satisfied\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", failures);
    return 1;
}
