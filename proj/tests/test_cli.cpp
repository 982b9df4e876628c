#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "bsq/coeffs.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
    std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
    const fs::path out = fs::temp_directory_path() / "bsq_cli_stdout.txt";
    const std::string cmd = std::string(BSQ_CLI_PATH) + " " + args + " > " + out.string() + " 2>&1";
    const int rc = std::system(cmd.c_str());
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    return {WEXITSTATUS(rc), ss.str()};
}

fs::path temp_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("classify emits the figure-2 structure report") {
    const auto r = run_cli("classify --model figure2");
    CHECK(r.exit_code == 0);
    const json doc = json::parse(r.stdout_text);
    CHECK(doc["structure"]["is_multisymplectic"] == true);
    CHECK(doc["structure"]["is_symplectic"] == false);
    CHECK(doc["wellposedness"]["linear_case"] == "L1");
    CHECK(doc["wellposedness"]["nonlinear_case"] == "N1");
}

TEST_CASE("classify flags a != c from a model file") {
    const fs::path dir = temp_dir("bsq_cli_anec");
    const fs::path model = dir / "model.json";
    std::ofstream(model) << R"({"a":0.1,"b":0.2,"c":0.3,"d":0.2,
        "alpha11":0,"alpha12":1,"alpha22":0,"beta11":0.5,"beta12":0,"beta22":0.5})";
    const auto r = run_cli("classify --model " + model.string());
    CHECK(r.exit_code == 0);
    const json doc = json::parse(r.stdout_text);
    CHECK(doc["structure"]["is_multisymplectic"] == false);
    const auto& v = doc["structure"]["violated_conditions"];
    CHECK(std::find(v.begin(), v.end(), "a=c") != v.end());
}

TEST_CASE("classify exits 2 on a missing key") {
    const fs::path dir = temp_dir("bsq_cli_missing");
    const fs::path model = dir / "model.json";
    std::ofstream(model) << R"({"a":0.1,"b":0.2,"c":0.3})";
    CHECK(run_cli("classify --model " + model.string()).exit_code == 2);
}

TEST_CASE("classify round-trips the written report") {
    const fs::path dir = temp_dir("bsq_cli_roundtrip");
    const auto r = run_cli("classify --model kdvkdv --out " + dir.string());
    CHECK(r.exit_code == 0);
    std::ifstream in(dir / "classify.json");
    const json doc = json::parse(in);
    const bsq::SystemCoefficients expect = bsq::preset("kdvkdv");
    const bsq::SystemCoefficients got =
        bsq::coefficients_from_json(doc["coefficients"].dump());
    CHECK(got.disp.a == expect.disp.a);
    CHECK(got.disp.b == expect.disp.b);
    CHECK(got.nl.alpha12 == expect.nl.alpha12);
    CHECK(got.nl.beta22 == expect.nl.beta22);
}

TEST_CASE("ms-matrices writes skew matrices and the gradient check") {
    const fs::path dir = temp_dir("bsq_cli_msm");
    const auto r = run_cli("ms-matrices --model figure2 --format csv --out " + dir.string());
    CHECK(r.exit_code == 0);
    const auto K = read_csv(dir / "K.csv");
    REQUIRE(K.size() == 10);
    REQUIRE(K[0].size() == 10);
    CHECK(std::stod(K[0][1]) == 0.5);
    CHECK(std::stod(K[1][0]) == -0.5);
    std::ifstream in(dir / "gradient_check.json");
    const json check = json::parse(in);
    CHECK(check["symmetric"] == true);

    // non-MS model is rejected as an input error
    CHECK(run_cli("ms-matrices --model abcd-classic").exit_code == 2);
}

TEST_CASE("travel writes an even positive profile for the figure-2 model") {
    const fs::path dir = temp_dir("bsq_cli_travel");
    const auto r =
        run_cli("travel --model figure2 --cs 1.1 --grid 80,512 --out " + dir.string());
    CHECK(r.exit_code == 0);
    const auto rows = read_csv(dir / "profile_cs1p1.csv");
    REQUIRE(rows.size() == 513);  // header + N
    CHECK(rows[0] == std::vector<std::string>{"x", "zeta", "u"});
    std::vector<double> zeta;
    for (size_t i = 1; i < rows.size(); ++i) zeta.push_back(std::stod(rows[i][1]));
    double maxz = 0.0;
    for (double z : zeta) {
        CHECK(z > -1e-10);
        maxz = std::max(maxz, z);
    }
    CHECK(maxz > 0.1);
    for (size_t j = 1; j < zeta.size() / 2; ++j)
        CHECK(zeta[j] == doctest::Approx(zeta[zeta.size() - j]).epsilon(1e-8));

    std::ifstream in(dir / "eigen_cs1p1.json");
    const json eig = json::parse(in);
    CHECK(eig["classification"] == "Class");
}

TEST_CASE("travel exits 1 for a subcritical speed") {
    const auto r = run_cli("travel --model figure2 --cs 0.9 --grid 50,256");
    CHECK(r.exit_code == 1);
    CHECK(r.stdout_text.find("bifurcation") != std::string::npos);
}

TEST_CASE("travel curve emits one row per requested speed") {
    const fs::path dir = temp_dir("bsq_cli_curve");
    const auto r = run_cli("travel --model figure2 --curve 1.02:1.2:10 --grid 120,512 --out " +
                           dir.string());
    CHECK(r.exit_code == 0);
    const auto rows = read_csv(dir / "curve.csv");
    REQUIRE(rows.size() == 11);  // header + 10 rows
    CHECK(rows[0][0] == "cs");
    double prev = 0.0;
    for (size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i][4] == "ok");
        const double amp = std::stod(rows[i][1]);
        CHECK(amp > prev);  // monotone speed-amplitude relation
        prev = amp;
    }
}

TEST_CASE("spectrum reports the eigenvalue classification") {
    const auto r = run_cli("spectrum --model kdvkdv --cs 1.5");
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.find("\"Gen\"") != std::string::npos);
    CHECK(r.stdout_text.find("\"sigma\"") != std::string::npos);
}

TEST_CASE("simulate writes diagnostics whose l2 column is conserved") {
    const fs::path dir = temp_dir("bsq_cli_sim");
    const auto r = run_cli(
        "simulate --model symmetric --grid 100,256 --dt 1e-3 --T 1 --observe-every 100 --out " +
        dir.string());
    CHECK(r.exit_code == 0);
    const auto rows = read_csv(dir / "diagnostics.csv");
    REQUIRE(rows.size() >= 3);
    CHECK(rows[0] ==
          std::vector<std::string>{"t", "mass_eta", "mass_u", "l2", "hamiltonian", "impulse"});
    const double l2_first = std::stod(rows[1][3]);
    const double l2_last = std::stod(rows.back()[3]);
    CHECK(std::abs(l2_last - l2_first) / l2_first < 1e-8);
    CHECK(fs::exists(dir / "snapshot.csv"));
    CHECK(fs::exists(dir / "config.json"));
}

TEST_CASE("simulate with T = 0 emits a single diagnostics row") {
    const fs::path dir = temp_dir("bsq_cli_t0");
    const auto r = run_cli("simulate --model figure2 --grid 50,128 --T 0 --out " + dir.string());
    CHECK(r.exit_code == 0);
    CHECK(read_csv(dir / "diagnostics.csv").size() == 2);  // header + one row
}

TEST_CASE("simulate rejects b < 0 with exit 2") {
    const fs::path dir = temp_dir("bsq_cli_b_neg");
    const fs::path model = dir / "model.json";
    std::ofstream(model) << R"({"a":1,"b":-1,"c":1,"d":-1,
        "alpha11":0,"alpha12":1,"alpha22":0,"beta11":0,"beta12":0,"beta22":0.5})";
    CHECK(run_cli("simulate --model " + model.string()).exit_code == 2);
}
