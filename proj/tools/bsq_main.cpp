// bsq: classification, multi-symplectic structure, solitary waves and
// time integration for Boussinesq-type systems.
//
// Subcommands: classify, ms-matrices, travel, spectrum, simulate.
// Exit codes: 0 success, 1 numerical non-convergence, 2 input error,
// 3 runtime blow-up.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "CLI11.hpp"
#include "json.hpp"

#include "bsq/coeffs.hpp"
#include "bsq/msform.hpp"
#include "bsq/sim.hpp"
#include "bsq/spectral.hpp"
#include "bsq/travel.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliError : bsq::DomainError {
    using DomainError::DomainError;
};

bsq::SystemCoefficients load_model(const std::string& source) {
    for (const auto& name : bsq::preset_names())
        if (source == name) return bsq::preset(name);
    std::ifstream in(source);
    if (!in) throw CliError("cannot open model file \"" + source + "\"");
    std::stringstream ss;
    ss << in.rdbuf();
    return bsq::coefficients_from_json(ss.str());
}

std::vector<double> parse_speeds(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {  // a:b:n range
        double lo, hi;
        int count;
        char c1, c2;
        std::istringstream ss(text);
        if (!(ss >> lo >> c1 >> hi >> c2 >> count) || c1 != ':' || c2 != ':' || count < 1)
            throw CliError("bad speed range \"" + text + "\" (expected lo:hi:count)");
        for (int i = 0; i < count; ++i)
            out.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
        return out;
    }
    std::istringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    if (out.empty()) throw CliError("no speeds given");
    return out;
}

bsq::PeriodicGrid parse_grid(const std::string& text) {
    double L;
    int n;
    char comma;
    std::istringstream ss(text);
    if (!(ss >> L >> comma >> n) || comma != ',')
        throw CliError("bad grid \"" + text + "\" (expected L,N)");
    return bsq::PeriodicGrid(L, n);
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw CliError("cannot write " + path.string());
    out << content;
}

std::string format_speed(double cs) {
    std::ostringstream ss;
    ss << cs;
    std::string s = ss.str();
    for (auto& ch : s)
        if (ch == '.') ch = 'p';
    return s;
}

// ---------------------------------------------------------------- classify

int cmd_classify(const std::string& model, double tol, const std::string& out_dir) {
    const bsq::SystemCoefficients s = load_model(model);
    json doc;
    doc["coefficients"] = json::parse(bsq::coefficients_to_json(s));
    doc["structure"] = json::parse(bsq::structure_report_to_json(bsq::classify_structure(s, tol)));
    doc["wellposedness"] =
        json::parse(bsq::wellposedness_report_to_json(bsq::classify_wellposedness(s, tol)));
    const std::string text = doc.dump(2);
    std::cout << text << "\n";
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        write_file(fs::path(out_dir) / "classify.json", text + "\n");
    }
    return 0;
}

// ------------------------------------------------------------- ms-matrices

std::string matrix_csv(const Eigen::MatrixXd& A) {
    std::ostringstream os;
    os.precision(17);
    for (int i = 0; i < A.rows(); ++i) {
        for (int j = 0; j < A.cols(); ++j) os << (j ? "," : "") << A(i, j);
        os << "\n";
    }
    return os.str();
}

int cmd_ms_matrices(const std::string& model, const std::string& kdvbbm,
                    const std::string& out_dir, const std::string& format) {
    bsq::MSSystem ms;
    if (!kdvbbm.empty()) {
        double alpha, beta;
        char comma;
        std::istringstream ss(kdvbbm);
        if (!(ss >> alpha >> comma >> beta) || comma != ',')
            throw CliError("bad --kdvbbm \"" + kdvbbm + "\" (expected alpha,beta)");
        ms = bsq::build_kdvbbm_ms(alpha, beta);
    } else {
        ms = bsq::build_boussinesq_ms(load_model(model));
    }

    // gradient symmetry check at random phase points
    std::srand(12345);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::VectorXd z(ms.dim);
        for (int i = 0; i < ms.dim; ++i) z[i] = 2.0 * std::rand() / RAND_MAX - 1.0;
        worst = std::max(worst, bsq::fd_jacobian_asymmetry(ms.gradient, z));
    }
    json check;
    check["dim"] = ms.dim;
    check["gradient_jacobian_asymmetry"] = worst;
    check["symmetric"] = worst < 1e-6;

    std::cout << "dim " << ms.dim << ", gradient Jacobian asymmetry " << worst << "\n";
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        if (format == "csv") {
            write_file(fs::path(out_dir) / "K.csv", matrix_csv(ms.K));
            write_file(fs::path(out_dir) / "M.csv", matrix_csv(ms.M));
        } else {
            json jm;
            for (int i = 0; i < ms.dim; ++i) {
                json krow = json::array(), mrow = json::array();
                for (int j = 0; j < ms.dim; ++j) {
                    krow.push_back(ms.K(i, j));
                    mrow.push_back(ms.M(i, j));
                }
                jm["K"].push_back(krow);
                jm["M"].push_back(mrow);
            }
            jm["components"] = ms.component_names;
            write_file(fs::path(out_dir) / "matrices.json", jm.dump(2) + "\n");
        }
        write_file(fs::path(out_dir) / "gradient_check.json", check.dump(2) + "\n");
    }
    return 0;
}

// ----------------------------------------------------------------- travel

int cmd_travel(const std::string& model, const std::string& cs_text,
               const std::string& grid_text, const std::string& curve_text,
               const std::string& out_dir) {
    const bsq::SystemCoefficients s = load_model(model);
    const std::vector<double> speeds = cs_text.empty() ? std::vector<double>{}
                                                       : parse_speeds(cs_text);
    if (speeds.empty() && curve_text.empty())
        throw CliError("travel: provide --cs and/or --curve");

    std::optional<bsq::PeriodicGrid> grid;
    if (!grid_text.empty()) {
        grid = parse_grid(grid_text);
    } else {
        double cs_min = 2.0;
        for (double c : speeds) cs_min = std::min(cs_min, c);
        if (!curve_text.empty())
            cs_min = std::min(cs_min, parse_speeds(curve_text).front());
        grid = bsq::PeriodicGrid(bsq::default_half_length(std::max(1.0001, cs_min)), 1024);
    }
    if (!out_dir.empty()) fs::create_directories(out_dir);

    bool all_ok = true;
    for (double cs : speeds) {
        const bsq::TravelingWaveSetup setup(s, cs);
        std::string status = "ok";
        try {
            const bsq::EigenReport rep = bsq::eigen_classify(setup);
            if (!out_dir.empty())
                write_file(fs::path(out_dir) / ("eigen_cs" + format_speed(cs) + ".json"),
                           bsq::eigen_report_to_json(rep) + "\n");
            const bsq::ProfilePair p = rep.classification == bsq::WaveClass::Gen
                                           ? bsq::solve_generalized(setup, *grid)
                                           : bsq::solve_classical(setup, *grid);
            if (!out_dir.empty())
                write_file(fs::path(out_dir) / ("profile_cs" + format_speed(cs) + ".csv"),
                           bsq::profile_to_csv(p));
            std::cout << "cs " << cs << ": " << bsq::to_string(rep.classification)
                      << ", residual " << p.residual_norm << ", max zeta " << p.zeta.maxCoeff()
                      << "\n";
        } catch (const bsq::Error& e) {
            status = e.what();
            std::cout << "cs " << cs << ": FAILED: " << status << "\n";
            all_ok = false;
        }
    }

    if (!curve_text.empty()) {
        const auto rows = bsq::speed_amplitude_curve(s, parse_speeds(curve_text), *grid);
        const std::string csv = bsq::curve_to_csv(rows);
        if (!out_dir.empty())
            write_file(fs::path(out_dir) / "curve.csv", csv);
        else
            std::cout << csv;
        for (const auto& row : rows)
            if (row.status != "ok") all_ok = false;
    }
    return all_ok ? 0 : 1;
}

// ---------------------------------------------------------------- spectrum

int cmd_spectrum(const std::string& model, const std::string& cs_text,
                 const std::string& out_dir) {
    const bsq::SystemCoefficients s = load_model(model);
    if (!out_dir.empty()) fs::create_directories(out_dir);
    for (double cs : parse_speeds(cs_text)) {
        const bsq::EigenReport rep = bsq::eigen_classify(bsq::TravelingWaveSetup(s, cs));
        const std::string text = bsq::eigen_report_to_json(rep);
        std::cout << text << "\n";
        if (!out_dir.empty())
            write_file(fs::path(out_dir) / ("eigen_cs" + format_speed(cs) + ".json"), text + "\n");
    }
    const std::string nf = bsq::normal_form_to_json(bsq::normal_form_constants(s, s.disp.a));
    std::cout << nf << "\n";
    if (!out_dir.empty()) write_file(fs::path(out_dir) / "normal_form.json", nf + "\n");
    return 0;
}

// ---------------------------------------------------------------- simulate

std::pair<bsq::Field, bsq::Field> initial_data(const std::string& init,
                                               const bsq::SystemCoefficients& s,
                                               const bsq::PeriodicGrid& grid) {
    const auto colon = init.find(':');
    const std::string kind = init.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : init.substr(colon + 1);
    if (kind == "gaussian") {
        double amp = 0.1, width = 5.0;
        if (!args.empty()) {
            char comma;
            std::istringstream ss(args);
            if (!(ss >> amp >> comma >> width) || comma != ',')
                throw CliError("bad --init gaussian args (expected amp,width)");
        }
        bsq::Field eta(grid.size());
        for (int j = 0; j < grid.size(); ++j) {
            const double x = grid.node(j) / width;
            eta[j] = amp * std::exp(-x * x);
        }
        return {eta, bsq::Field::Zero(grid.size())};
    }
    if (kind == "solitary") {
        const double cs = std::stod(args);
        const bsq::ProfilePair p = bsq::solve_classical(bsq::TravelingWaveSetup(s, cs), grid);
        return {p.zeta, p.u};
    }
    if (kind == "file") {
        std::ifstream in(args);
        if (!in) throw CliError("cannot open initial-data file \"" + args + "\"");
        std::string line;
        std::getline(in, line);  // header
        std::vector<double> eta, u;
        while (std::getline(in, line)) {
            double x, e, v;
            char c1, c2;
            std::istringstream ss(line);
            if (!(ss >> x >> c1 >> e >> c2 >> v)) continue;
            eta.push_back(e);
            u.push_back(v);
        }
        if (static_cast<int>(eta.size()) != grid.size())
            throw CliError("initial-data file has " + std::to_string(eta.size()) +
                           " rows, grid has " + std::to_string(grid.size()));
        bsq::Field fe(grid.size()), fu(grid.size());
        for (int j = 0; j < grid.size(); ++j) {
            fe[j] = eta[j];
            fu[j] = u[j];
        }
        return {fe, fu};
    }
    throw CliError("unknown --init kind \"" + kind + "\"");
}

int cmd_simulate(const std::string& model, const std::string& grid_text, double dt, double T,
                 int observe_every, const std::string& init, const std::string& out_dir) {
    const bsq::SystemCoefficients s = load_model(model);
    if (s.disp.b < 0.0 || s.disp.d < 0.0)
        throw CliError("simulate: b < 0 or d < 0 is outside the supported regime");
    const bsq::PeriodicGrid grid = grid_text.empty() ? bsq::PeriodicGrid(100.0, 512)
                                                     : parse_grid(grid_text);
    auto [eta0, u0] = initial_data(init, s, grid);

    if (!out_dir.empty()) fs::create_directories(out_dir);
    json config;
    config["coeffs"] = json::parse(bsq::coefficients_to_json(s));
    config["grid"] = {{"L", grid.half_length()}, {"N", grid.size()}};
    config["dt"] = dt;
    config["T"] = T;
    config["observe_every"] = observe_every;
    if (!out_dir.empty())
        write_file(fs::path(out_dir) / "config.json", config.dump(2) + "\n");

    std::ostringstream diag;
    diag << bsq::diagnostics_csv_header();
    const bsq::Observer observer = [&](const bsq::FieldState& st,
                                       const bsq::ConservedDiagnostics& d) {
        diag << bsq::diagnostics_csv_row(st.t, d);
    };

    bsq::FieldState state(grid, eta0, u0);
    try {
        state = bsq::integrate(s, std::move(state), T, dt, observer, observe_every);
    } catch (const bsq::BlowUpError& e) {
        std::cerr << "blow-up: " << e.what() << "\n";
        if (!out_dir.empty()) {
            write_file(fs::path(out_dir) / "diagnostics.csv", diag.str());
            write_file(fs::path(out_dir) / "snapshot.csv",
                       bsq::snapshot_to_csv(bsq::FieldState(grid, e.last_eta, e.last_u, e.t)));
        }
        return 3;
    }
    if (!out_dir.empty()) {
        write_file(fs::path(out_dir) / "diagnostics.csv", diag.str());
        write_file(fs::path(out_dir) / "snapshot.csv", bsq::snapshot_to_csv(state));
    } else {
        std::cout << diag.str();
    }
    std::cout << "integrated to t = " << state.t << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* threads = std::getenv("BMS_THREADS")) {
        const int n = std::atoi(threads);
        if (n > 0) Eigen::setNbThreads(n);
    }

    CLI::App app{"Boussinesq-type systems: structure classification, solitary waves, simulation"};
    app.require_subcommand(1);

    std::string model, out_dir, format = "json", cs_text, grid_text, curve_text, kdvbbm;
    std::string init = "gaussian:0.1,5";
    double tol = 1e-12, dt = 1e-3, T = 10.0;
    int observe_every = 10;

    auto* classify = app.add_subcommand("classify", "structure and well-posedness reports");
    classify->add_option("--model", model, "model file or preset")->required();
    classify->add_option("--tol", tol, "comparison tolerance");
    classify->add_option("--out", out_dir, "output directory");

    auto* msm = app.add_subcommand("ms-matrices", "dump K, M and the gradient symmetry check");
    msm->add_option("--model", model, "model file or preset");
    msm->add_option("--kdvbbm", kdvbbm, "alpha,beta for the scalar KdV-BBM system");
    msm->add_option("--out", out_dir, "output directory");
    msm->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    auto* travel = app.add_subcommand("travel", "solve traveling-wave profiles");
    travel->add_option("--model", model, "model file or preset")->required();
    travel->add_option("--cs", cs_text, "speeds: list v1,v2,... or range lo:hi:count");
    travel->add_option("--curve", curve_text, "speed-amplitude sweep range lo:hi:count");
    travel->add_option("--grid", grid_text, "collocation grid L,N");
    travel->add_option("--out", out_dir, "output directory");

    auto* spectrum = app.add_subcommand("spectrum", "eigenvalue classification per speed");
    spectrum->add_option("--model", model, "model file or preset")->required();
    spectrum->add_option("--cs", cs_text, "speeds")->required();
    spectrum->add_option("--out", out_dir, "output directory");

    auto* simulate = app.add_subcommand("simulate", "time integration with diagnostics");
    simulate->add_option("--model", model, "model file or preset")->required();
    simulate->add_option("--grid", grid_text, "grid L,N (default 100,512)");
    simulate->add_option("--dt", dt, "time step");
    simulate->add_option("--T", T, "integration time");
    simulate->add_option("--observe-every", observe_every, "diagnostics cadence in steps");
    simulate->add_option("--init", init, "gaussian:amp,width | solitary:cs | file:path");
    simulate->add_option("--out", out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(classify)) return cmd_classify(model, tol, out_dir);
        if (app.got_subcommand(msm)) {
            if (model.empty() && kdvbbm.empty())
                throw CliError("ms-matrices: provide --model or --kdvbbm");
            return cmd_ms_matrices(model, kdvbbm, out_dir, format);
        }
        if (app.got_subcommand(travel))
            return cmd_travel(model, cs_text, grid_text, curve_text, out_dir);
        if (app.got_subcommand(spectrum)) return cmd_spectrum(model, cs_text, out_dir);
        if (app.got_subcommand(simulate))
            return cmd_simulate(model, grid_text, dt, T, observe_every, init, out_dir);
    } catch (const bsq::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const bsq::BlowUpError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const bsq::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
