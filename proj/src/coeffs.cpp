#include "bsq/coeffs.hpp"

#include <cmath>

#include "json.hpp"

namespace bsq {

namespace {

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) throw DomainError(std::string("non-finite coefficient ") + name);
}

void validate(const SystemCoefficients& s) {
    require_finite(s.disp.a, "a");
    require_finite(s.disp.b, "b");
    require_finite(s.disp.c, "c");
    require_finite(s.disp.d, "d");
    require_finite(s.nl.alpha11, "alpha11");
    require_finite(s.nl.alpha12, "alpha12");
    require_finite(s.nl.alpha22, "alpha22");
    require_finite(s.nl.beta11, "beta11");
    require_finite(s.nl.beta12, "beta12");
    require_finite(s.nl.beta22, "beta22");
}

}  // namespace

ThetaNuMu::ThetaNuMu(double theta_, double nu_, double mu_) : theta(theta_), nu(nu_), mu_disp(mu_) {
    if (!(theta >= 0.0 && theta <= 1.0))
        throw DomainError("ThetaNuMu: theta must lie in [0, 1]");
    require_finite(nu, "nu");
    require_finite(mu_disp, "mu");
}

DispersionCoefficients abcd_from_theta(const ThetaNuMu& p) {
    const double s = 0.5 * (p.theta * p.theta - 1.0 / 3.0);
    const double t = 0.5 * (1.0 - p.theta * p.theta);
    DispersionCoefficients d;
    d.a = s * p.nu;
    d.b = s * (1.0 - p.nu);
    d.c = t * p.mu_disp;
    d.d = t * (1.0 - p.mu_disp);
    return d;
}

StructureReport classify_structure(const SystemCoefficients& s, double tol) {
    if (tol < 0) throw DomainError("classify_structure: tolerance must be nonnegative");
    validate(s);
    StructureReport r;
    r.tolerance_used = tol;

    const auto check = [&](double lhs, double rhs, const char* name, bool& ok) {
        if (std::abs(lhs - rhs) > tol) {
            ok = false;
            r.violated_conditions.push_back(name);
        }
    };

    bool ms = true;
    check(s.disp.a, s.disp.c, "a=c", ms);
    check(s.nl.alpha12, 2.0 * s.nl.beta11, "alpha12=2*beta11", ms);
    check(s.nl.beta12, 2.0 * s.nl.alpha22, "beta12=2*alpha22", ms);

    bool sym = true;
    check(s.disp.b, s.disp.d, "b=d", sym);
    check(s.nl.beta12, 2.0 * s.nl.alpha11, "beta12=2*alpha11", sym);
    check(s.nl.alpha12, 2.0 * s.nl.beta22, "alpha12=2*beta22", sym);

    r.is_multisymplectic = ms;
    r.is_symplectic = sym;
    r.is_both = ms && sym;
    return r;
}

WellPosednessReport classify_wellposedness(const SystemCoefficients& s, double tol) {
    validate(s);
    WellPosednessReport r;
    const double a = s.disp.a, b = s.disp.b, c = s.disp.c, d = s.disp.d;
    if (std::abs(a - c) > tol) return r;  // classification targets the MS family

    // Linear cases, with a = c understood.
    if (b >= -tol && d >= -tol) {
        r.linear_case = LinearCase::L1;
    } else if (std::abs(b - d) <= tol && b < 0.0 && a > tol) {
        r.linear_case = LinearCase::L2;
    }

    if (r.linear_case != LinearCase::None) {
        // With a = c the (1 - a k^2) factor cancels in omega1/omega2, so the
        // symbol is g(k) = sqrt((1 + d k^2)/(1 + b k^2)); its order at infinity
        // counts the quadratic degrees.
        const int deg_b = std::abs(b) > tol ? 1 : 0;
        const int deg_d = std::abs(d) > tol ? 1 : 0;
        const int ell = deg_d - deg_b;
        r.symbol_order_ell = ell;
        r.sobolev_shifts = std::make_pair(std::max(0, -ell), std::max(0, ell));
    }

    // Nonlinear cases, matched in the order N2, N1, N3, N4.
    const bool b0 = std::abs(b) <= tol;
    const bool d0 = std::abs(d) <= tol;
    if (a > tol && b0 && d0) {
        r.nonlinear_case = NonlinearCase::N2;
    } else if (b > tol && d > tol) {
        r.nonlinear_case = NonlinearCase::N1;
    } else if (b0 && d > tol) {
        r.nonlinear_case = NonlinearCase::N3;
    } else if (a >= -tol && b > tol && d0) {
        r.nonlinear_case = NonlinearCase::N4;
    }
    return r;
}

const char* to_string(LinearCase c) {
    switch (c) {
        case LinearCase::L1: return "L1";
        case LinearCase::L2: return "L2";
        default: return "None";
    }
}

const char* to_string(NonlinearCase c) {
    switch (c) {
        case NonlinearCase::N1: return "N1";
        case NonlinearCase::N2: return "N2";
        case NonlinearCase::N3: return "N3";
        case NonlinearCase::N4: return "N4";
        default: return "Unknown";
    }
}

SystemCoefficients coefficients_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("invalid coefficient JSON: ") + e.what());
    }
    if (!j.is_object()) throw DomainError("coefficient document must be a JSON object");

    const auto num = [&](const char* key) -> double {
        if (!j.contains(key)) throw DomainError(std::string("missing key \"") + key + "\"");
        if (!j[key].is_number()) throw DomainError(std::string("key \"") + key + "\" must be a number");
        return j[key].get<double>();
    };
    const auto opt = [&](const char* key, double fallback) -> double {
        if (!j.contains(key)) return fallback;
        if (!j[key].is_number()) throw DomainError(std::string("key \"") + key + "\" must be a number");
        return j[key].get<double>();
    };

    SystemCoefficients s;
    if (j.contains("theta")) {
        ThetaNuMu p(num("theta"), num("nu"), num("mu"));
        s.disp = abcd_from_theta(p);
        const bool any_nl = j.contains("alpha11") || j.contains("alpha12") || j.contains("alpha22") ||
                            j.contains("beta11") || j.contains("beta12") || j.contains("beta22");
        if (any_nl) {
            s.nl.alpha11 = opt("alpha11", 0);
            s.nl.alpha12 = opt("alpha12", 0);
            s.nl.alpha22 = opt("alpha22", 0);
            s.nl.beta11 = opt("beta11", 0);
            s.nl.beta12 = opt("beta12", 0);
            s.nl.beta22 = opt("beta22", 0);
        } else {
            s.nl.alpha12 = 1.0;  // classic (a,b,c,d)-family nonlinearity
            s.nl.beta22 = 0.5;
        }
    } else {
        s.disp.a = num("a");
        s.disp.b = num("b");
        s.disp.c = num("c");
        s.disp.d = num("d");
        s.nl.alpha11 = num("alpha11");
        s.nl.alpha12 = num("alpha12");
        s.nl.alpha22 = num("alpha22");
        s.nl.beta11 = num("beta11");
        s.nl.beta12 = num("beta12");
        s.nl.beta22 = num("beta22");
    }
    validate(s);
    return s;
}

std::string coefficients_to_json(const SystemCoefficients& s) {
    nlohmann::json j;
    j["a"] = s.disp.a;
    j["b"] = s.disp.b;
    j["c"] = s.disp.c;
    j["d"] = s.disp.d;
    j["alpha11"] = s.nl.alpha11;
    j["alpha12"] = s.nl.alpha12;
    j["alpha22"] = s.nl.alpha22;
    j["beta11"] = s.nl.beta11;
    j["beta12"] = s.nl.beta12;
    j["beta22"] = s.nl.beta22;
    return j.dump(2);
}

std::string structure_report_to_json(const StructureReport& r) {
    nlohmann::json j;
    j["is_multisymplectic"] = r.is_multisymplectic;
    j["is_symplectic"] = r.is_symplectic;
    j["is_both"] = r.is_both;
    j["violated_conditions"] = r.violated_conditions;
    j["tolerance_used"] = r.tolerance_used;
    return j.dump(2);
}

std::string wellposedness_report_to_json(const WellPosednessReport& r) {
    nlohmann::json j;
    j["linear_case"] = to_string(r.linear_case);
    if (r.symbol_order_ell)
        j["symbol_order_ell"] = *r.symbol_order_ell;
    else
        j["symbol_order_ell"] = nullptr;
    if (r.sobolev_shifts)
        j["sobolev_shifts"] = {r.sobolev_shifts->first, r.sobolev_shifts->second};
    else
        j["sobolev_shifts"] = nullptr;
    j["nonlinear_case"] = to_string(r.nonlinear_case);
    return j.dump(2);
}

SystemCoefficients preset(const std::string& name) {
    SystemCoefficients s;
    const DispersionCoefficients bbm_bbm{0.0, 1.0 / 6.0, 0.0, 1.0 / 6.0};
    const DispersionCoefficients kdv_kdv{1.0 / 6.0, 0.0, 1.0 / 6.0, 0.0};
    if (name == "abcd-classic") {
        s.disp = bbm_bbm;
        s.nl.alpha12 = 1.0;
        s.nl.beta22 = 0.5;
    } else if (name == "symmetric") {
        s.disp = kdv_kdv;
        s.nl.alpha12 = 0.5;
        s.nl.beta11 = 0.25;
        s.nl.beta22 = 0.75;
    } else if (name == "ms-modified") {
        s.disp = bbm_bbm;
        s.nl.alpha12 = 1.0;
        s.nl.beta11 = 0.5;
        s.nl.beta22 = 0.5;
    } else if (name == "figure2") {
        s.disp = bbm_bbm;
        s.nl.alpha12 = 0.46;
        s.nl.beta11 = 0.23;
        s.nl.beta22 = 0.73;
    } else if (name == "kdvkdv") {
        s.disp = kdv_kdv;
        s.nl.alpha12 = 0.46;
        s.nl.beta11 = 0.23;
        s.nl.beta22 = 0.73;
    } else {
        throw DomainError("unknown preset \"" + name + "\"");
    }
    return s;
}

std::vector<std::string> preset_names() {
    return {"abcd-classic", "symmetric", "ms-modified", "figure2", "kdvkdv"};
}

}  // namespace bsq
