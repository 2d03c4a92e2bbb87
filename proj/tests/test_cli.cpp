#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "bohmcl/cli.hpp"
#include "bohmcl/closed_form.hpp"
#include "bohmcl/io.hpp"
#include "bohmcl/measures.hpp"

using namespace bohmcl;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
    std::stringstream out, err;
    RunResult r;
    r.code = cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / ("bohmcl_test_" + name);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t count_lines(const std::string& text) {
    std::size_t n = 0;
    for (char c : text)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("eta subcommand emits the sampled measure") {
    const RunResult r =
        run_cli({"eta", "--scenario", "sch", "--mu", "0.5", "--t-end", "6", "--dt", "0.01"});
    CHECK(r.code == 0);
    CHECK(count_lines(r.out) == 602);  // header + 601 rows
    CHECK(r.out.rfind("t,eta\n", 0) == 0);
    // the row at t = 1 carries eta = 0.3
    CHECK(r.out.find("\n1,0.3\n") != std::string::npos);
}

TEST_CASE("eta for a separable pair under distinct baths is identically zero") {
    const RunResult r = run_cli({"eta", "--scenario", "distinct", "--mu", "1", "--t-end", "3"});
    CHECK(r.code == 0);
    std::stringstream in(r.out);
    const io::NumericTable table = io::read_numeric_csv(in);
    for (double v : table.columns[1]) CHECK(v == 0.0);
}

TEST_CASE("missing required --mu is a usage error") {
    const RunResult r = run_cli({"eta", "--scenario", "sch"});
    CHECK(r.code == 2);
    CHECK(!r.err.empty());
    CHECK(r.err.find("--mu") != std::string::npos);
}

TEST_CASE("out-of-domain parameters exit with code 2") {
    CHECK(run_cli({"eta", "--scenario", "sch", "--mu", "1.5"}).code == 2);
    CHECK(run_cli({"eta", "--scenario", "sch", "--mu", "0.5", "--gamma", "0.3"}).code == 2);
    CHECK(run_cli({"eta", "--scenario", "bogus", "--mu", "0.5"}).code == 2);
}

TEST_CASE("traj subcommand writes one coordinate pair per initial point") {
    const RunResult r = run_cli({"traj", "--scenario", "sch", "--mu", "0.4", "--t-end", "1",
                                 "--dt", "0.01", "--x10", "1.5", "--x10", "-0.5", "--x20", "0"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("t,x1_1,x2_1,x1_2,x2_2\n", 0) == 0);
    CHECK(count_lines(r.out) == 102);  // header + 101 rows

    std::stringstream in(r.out);
    const io::NumericTable table = io::read_numeric_csv(in);
    const PositionPair exact = closed_form::traj_sch(1.0, 1.5, 0.0, 0.4);
    CHECK(table.columns[1].back() == doctest::Approx(exact.x1).epsilon(1e-6));
    CHECK(table.columns[2].back() == doctest::Approx(exact.x2).epsilon(1e-6));
}

TEST_CASE("traj can draw its initial points from the Born distribution") {
    const RunResult r = run_cli({"traj", "--scenario", "sch", "--mu", "0.4", "--t-end", "0.5",
                                 "--dt", "0.1", "--n", "3", "--seed", "17"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("t,x1_1,x2_1,x1_2,x2_2,x1_3,x2_3\n", 0) == 0);
    const RunResult again = run_cli({"traj", "--scenario", "sch", "--mu", "0.4", "--t-end", "0.5",
                                     "--dt", "0.1", "--n", "3", "--seed", "17"});
    CHECK(r.out == again.out);

    // neither explicit points nor an ensemble size: usage error
    CHECK(run_cli({"traj", "--scenario", "sch", "--mu", "0.4"}).code == 2);
}

TEST_CASE("traj with t-end 0 emits a single row of initial conditions") {
    const RunResult r = run_cli(
        {"traj", "--scenario", "sch", "--mu", "0.4", "--t-end", "0", "--x10", "1.25"});
    CHECK(r.code == 0);
    CHECK(count_lines(r.out) == 2);
    CHECK(r.out.find("\n0,1.25,0\n") != std::string::npos);
}

TEST_CASE("traj under distinct baths at mu = 1: x2 columns coincide") {
    const RunResult r = run_cli({"traj", "--scenario", "distinct", "--mu", "1", "--t-end", "2",
                                 "--dt", "0.05", "--x10", "-1", "--x10", "0.5", "--x10", "1.5"});
    CHECK(r.code == 0);
    std::stringstream in(r.out);
    const io::NumericTable table = io::read_numeric_csv(in);
    for (std::size_t row = 0; row < table.row_count(); ++row) {
        CHECK(table.columns[2][row] == table.columns[4][row]);
        CHECK(table.columns[2][row] == table.columns[6][row]);
    }
}

TEST_CASE("fwhm subcommand reproduces the reference temperature sweep") {
    const RunResult r = run_cli({"fwhm", "--scenario", "distinct", "--mu", "0.5", "--temp-list",
                                 "10", "--temp-list", "15", "--temp-list", "20", "--t-end", "6",
                                 "--dt", "0.002"});
    CHECK(r.code == 0);
    std::stringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "scenario,gamma,temp,mu,t_peak,peak,fwhm,revivals");
    const double expected[] = {0.6737, 0.6072, 0.5612};
    for (double want : expected) {
        REQUIRE(std::getline(in, line));
        std::stringstream cells(line);
        std::string cell;
        for (int c = 0; c <= 6; ++c) std::getline(cells, cell, ',');
        CHECK(std::stod(cell) == doctest::Approx(want).epsilon(4e-3));
    }
}

TEST_CASE("fwhm flags a peakless curve but still exits cleanly") {
    const RunResult r = run_cli({"fwhm", "--scenario", "sch", "--mu", "1", "--t-end", "3"});
    CHECK(r.code == 0);
    CHECK(r.err.find("no-peak") != std::string::npos);
    CHECK(r.out.find("nan") != std::string::npos);
}

TEST_CASE("an unbracketed half-max crossing exits with the numerical code") {
    // peak near t = 0.38 but the window ends before the curve falls back
    // below half maximum on the right
    const RunResult r =
        run_cli({"fwhm", "--scenario", "distinct", "--mu", "0.5", "--t-end", "0.4"});
    CHECK(r.code == 3);
    CHECK(r.err.find("right") != std::string::npos);
}

TEST_CASE("sweep records per-point failures in the error column") {
    const RunResult r = run_cli({"sweep", "--scenario", "sch", "--mu", "0.5", "--mu-list", "1",
                                 "--mu-list", "0.5", "--t-end", "3", "--dt", "0.01"});
    CHECK(r.code == 0);
    std::stringstream in(r.out);
    std::string header, first, second;
    std::getline(in, header);
    std::getline(in, first);
    std::getline(in, second);
    CHECK(first.find("no-peak") != std::string::npos);   // mu = 1: flat zero curve
    CHECK(second.find("no-peak") == std::string::npos);  // mu = 0.5 succeeds
}

TEST_CASE("sweep emits one ordered row per grid point and dedupes") {
    const RunResult r = run_cli({"sweep", "--scenario", "distinct", "--mu", "0.5", "--temp-list",
                                 "10", "--temp-list", "15", "--temp-list", "10", "--t-end", "4",
                                 "--dt", "0.01"});
    CHECK(r.code == 0);
    CHECK(r.err.find("duplicate") != std::string::npos);
    std::stringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "scenario,gamma,temp,mu,t_peak,peak,fwhm,revivals,error");
    std::getline(in, line);
    CHECK(line.rfind("distinct,0.1,10,", 0) == 0);
    std::getline(in, line);
    CHECK(line.rfind("distinct,0.1,15,", 0) == 0);
    CHECK(!std::getline(in, line));
}

TEST_CASE("identical configurations produce byte-identical outputs") {
    const std::vector<std::string> args{"eta",   "--scenario", "common", "--mu", "0.5",
                                        "--t-end", "4",        "--dt",   "0.01"};
    const RunResult a = run_cli(args);
    const RunResult b = run_cli(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);

    const fs::path svg1 = temp_file("det1.svg");
    const fs::path svg2 = temp_file("det2.svg");
    const fs::path csv = temp_file("det.csv");
    CHECK(run_cli({"eta", "--scenario", "common", "--mu", "0.5", "--t-end", "4", "--dt", "0.01",
                   "--out", csv.string(), "--svg", svg1.string()})
              .code == 0);
    CHECK(run_cli({"plot", csv.string(), "--svg", svg2.string()}).code == 0);
    CHECK(slurp(svg1) == slurp(svg2));
    fs::remove(svg1);
    fs::remove(svg2);
    fs::remove(csv);
}

TEST_CASE("eta CSV re-read through fwhm-style analytics matches in-process values") {
    const fs::path csv = temp_file("roundtrip.csv");
    const PhysParams p = make_params(0.1, 10.0, 0.5);
    CHECK(run_cli({"eta", "--scenario", "distinct", "--mu", "0.5", "--t-end", "6", "--dt", "0.002",
                   "--out", csv.string()})
              .code == 0);

    std::ifstream in(csv);
    const io::NumericTable table = io::read_numeric_csv(in);
    measures::EtaCurve reread;
    reread.times = table.columns[0];
    reread.values = table.columns[1];
    reread.eval = measures::eta_callable(Scenario::DistinctBaths, p);

    const measures::EtaCurve direct =
        measures::sample_eta_curve(measures::eta_callable(Scenario::DistinctBaths, p), 6.0, 0.002);
    CHECK(measures::fwhm(reread).width == measures::fwhm(direct).width);
    CHECK(measures::find_peak(reread).value == measures::find_peak(direct).value);
    fs::remove(csv);
}

TEST_CASE("config file fills defaults and command-line flags win") {
    const fs::path cfg = temp_file("run.cfg");
    {
        std::ofstream out(cfg);
        out << "# sample configuration\n";
        out << "scenario=sch\n";
        out << "mu=0.5\n";
        out << "t-end=2\n";
        out << "dt=0.5\n";
    }
    const RunResult from_config = run_cli({"eta", "--config", cfg.string()});
    CHECK(from_config.code == 0);
    CHECK(count_lines(from_config.out) == 6);  // header + 5 rows

    const RunResult overridden = run_cli({"eta", "--config", cfg.string(), "--t-end", "1"});
    CHECK(overridden.code == 0);
    CHECK(count_lines(overridden.out) == 4);  // header + 3 rows
    fs::remove(cfg);
}

TEST_CASE("plot rejects malformed input") {
    const fs::path bad = temp_file("bad.csv");
    {
        std::ofstream out(bad);
        out << "t,eta\n";  // header only
    }
    const fs::path svg = temp_file("bad.svg");
    CHECK(run_cli({"plot", bad.string(), "--svg", svg.string()}).code == 2);
    CHECK(run_cli({"plot", "/nonexistent/file.csv", "--svg", svg.string()}).code == 2);
    fs::remove(bad);
}

TEST_CASE("plot draws one polyline per trajectory coordinate") {
    const fs::path csv = temp_file("traj.csv");
    const fs::path svg = temp_file("traj.svg");
    CHECK(run_cli({"traj", "--scenario", "sch", "--mu", "0.4", "--t-end", "1", "--dt", "0.1",
                   "--x10", "1", "--x10", "-1", "--out", csv.string()})
              .code == 0);
    CHECK(run_cli({"plot", csv.string(), "--svg", svg.string()}).code == 0);
    const std::string text = slurp(svg);
    std::size_t count = 0;
    for (std::size_t pos = text.find("<polyline"); pos != std::string::npos;
         pos = text.find("<polyline", pos + 1))
        ++count;
    CHECK(count == 4);  // x1 and x2 for each of the two initial points
    fs::remove(csv);
    fs::remove(svg);
}

TEST_CASE("the installed binary maps errors to exit codes") {
    const std::string exe = BOHMCL_CLI_PATH;
    const auto shell = [&](const std::string& cmd) {
        return std::system((cmd + " > /dev/null 2>&1").c_str());
    };
    int status = shell(exe + " eta --scenario sch --mu 0.5 --t-end 1");
    CHECK(WEXITSTATUS(status) == 0);
    status = shell(exe + " eta --scenario sch");
    CHECK(WEXITSTATUS(status) == 2);
    status = shell(exe + " nonsense");
    CHECK(WEXITSTATUS(status) == 2);
}

TEST_CASE("results do not depend on environment variables") {
    const std::string exe = BOHMCL_CLI_PATH;
    const fs::path with_env = temp_file("env1.csv");
    const fs::path without_env = temp_file("env2.csv");
    const std::string args = " eta --scenario common --mu 0.5 --t-end 2 --dt 0.01 --out ";
    CHECK(std::system((exe + args + with_env.string() + " > /dev/null 2>&1").c_str()) == 0);
    CHECK(std::system(("env -i " + exe + args + without_env.string() + " > /dev/null 2>&1").c_str()) ==
          0);
    CHECK(slurp(with_env) == slurp(without_env));
    fs::remove(with_env);
    fs::remove(without_env);
}
