#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

using nlohmann::json;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(SOLIBOUND_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult res;
    std::array<char, 4096> buf{};
    size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), got);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty()) out.push_back(line);
    return out;
}

std::vector<double> csv_row(const std::string& line) {
    std::vector<double> vals;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
    return vals;
}

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/* cosh(tau) = 0 for p = 0.5+0.5i, y0 = 0 at this (x, T) pair */
constexpr double kPoleX = -1.0048104499561859;
constexpr double kPoleT = 0.67569202011807938;

}  // namespace

TEST_CASE("eval writes the documented csv layout") {
    const CliResult r =
        run_cli("eval --model kp --stage seed --grid x:0:1:2 --grid Y:1:1:1 --grid T:1:1:1");
    CHECK(r.exit_code == 0);
    const auto rows = lines_of(r.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == "x,Y,T,u_re,u_im,w_re,w_im");
    const auto first = csv_row(rows[1]);
    REQUIRE(first.size() == 7);
    CHECK(first[3] == doctest::Approx(1.0 / 18.0).epsilon(1e-15));
    CHECK(first[5] == doctest::Approx(-5.0 / 648.0).epsilon(1e-15));
}

TEST_CASE("eval dressed json carries the phase columns") {
    const CliResult r = run_cli(
        "eval --model kp --stage dressed --format json "
        "--grid x:-1:1:3 --grid Y:0:1:2 --grid T:1:1:1");
    CHECK(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc.at("model") == "kp");
    CHECK(doc.at("columns").back() == "tau_im");
    CHECK(doc.at("rows").size() == 6);
    CHECK(doc.at("poles").empty());
}

TEST_CASE("eval reports solution poles in a sidecar and exits nonzero") {
    const std::string out = "/tmp/solibound_cli_pole.csv";
    std::remove(out.c_str());
    std::remove((out + ".poles.json").c_str());
    const std::string args = "eval --model kp --stage dressed --param p=0.5+0.5i --param y0=0"
                             " --grid x:" + g17(kPoleX) + ":0:2 --grid Y:0:0:1 --grid T:"
                             + g17(kPoleT) + ":1:2 --out " + out;
    const CliResult r = run_cli(args);
    CHECK(r.exit_code == 1);
    std::ifstream side(out + ".poles.json");
    REQUIRE(side.good());
    const json poles = json::parse(side);
    REQUIRE(poles.size() == 1);
    CHECK(poles[0].at("code") == "solution-pole");
    // the csv still holds every regular point
    std::ifstream data(out);
    std::stringstream ss;
    ss << data.rdbuf();
    CHECK(lines_of(ss.str()).size() == 4);  // header + 3 regular points
}

TEST_CASE("eval samples lattice solutions over the window") {
    const CliResult r = run_cli(
        "eval --model toda --example ex3 --stage dressed --grid X:1:2:3 --grid Y:4:4:1 "
        "--n 0:2");
    CHECK(r.exit_code == 0);
    const auto rows = lines_of(r.out);
    REQUIRE(rows.size() == 10);  // header + 3*1*3
    CHECK(rows[0] == "X,Y,n,u_re,u_im");
    CHECK(csv_row(rows[1]).size() == 5);
}

TEST_CASE("verify emits machine-readable reports and re-runs from them") {
    const std::string rep = "/tmp/solibound_cli_report.json";
    const CliResult r =
        run_cli("verify --suite kp-reduction --suite kp-boundary --format json --out " + rep);
    CHECK(r.exit_code == 0);
    std::ifstream in(rep);
    const json doc = json::parse(in);
    CHECK(doc.at("pass") == true);
    REQUIRE(doc.at("suites").size() == 2);
    CHECK(doc.at("suites")[0].at("checks").size() == 2);
    const CliResult again = run_cli("verify --config " + rep);
    CHECK(again.exit_code == 0);
    CHECK(again.out.find("kp-boundary") != std::string::npos);
}

TEST_CASE("verify rejects unknown suites") {
    CHECK(run_cli("verify --suite no-such-suite").exit_code == 2);
}

TEST_CASE("contour rows stay within the boundary tolerance") {
    const CliResult r = run_cli("contour --model kp --stage dressed --points 20");
    CHECK(r.exit_code == 0);
    const auto rows = lines_of(r.out);
    REQUIRE(rows.size() == 21);
    CHECK(rows[0] == "t,x,Y,T,res_re,res_im");
    for (size_t i = 1; i < rows.size(); ++i) {
        const auto v = csv_row(rows[i]);
        REQUIRE(v.size() == 6);
        CHECK(std::abs(v[4]) < 1e-9);
        CHECK(std::abs(v[5]) < 1e-9);
    }
}

TEST_CASE("contour covers the lattice families") {
    const CliResult r =
        run_cli("contour --model toda --example ex1 --stage seed --points 5 --n -2:2");
    CHECK(r.exit_code == 0);
    const auto rows = lines_of(r.out);
    REQUIRE(rows.size() == 26);  // header + 5*5
    for (size_t i = 1; i < rows.size(); ++i) {
        const auto v = csv_row(rows[i]);
        CHECK(std::abs(v[4]) < 1e-12);  // analytic seed partials
    }
}

TEST_CASE("usage errors exit with the dedicated code") {
    CHECK(run_cli("eval --model kp --badflag").exit_code == 2);
    CHECK(run_cli("eval --model kp --param bogus=1").exit_code == 2);
    CHECK(run_cli("eval --model kp --param p=nonsense").exit_code == 2);
    CHECK(run_cli("--help").exit_code == 0);
}
