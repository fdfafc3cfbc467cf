#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct CmdResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const char* cli_path() {
    const char* p = std::getenv("SPPM_CLI");
    REQUIRE_MESSAGE(p != nullptr, "SPPM_CLI must point at the CLI binary");
    return p;
}

fs::path work_dir() {
    fs::path dir = fs::temp_directory_path() / "sppm_cli_tests";
    fs::create_directories(dir);
    return dir;
}

CmdResult run_cli(const std::string& args) {
    fs::path dir = work_dir();
    fs::path out = dir / "stdout.txt";
    fs::path err = dir / "stderr.txt";
    std::string cmd = std::string(cli_path()) + " " + args + " >" + out.string() + " 2>" +
                      err.string();
    int raw = std::system(cmd.c_str());
    CmdResult r;
    r.exit_code = WEXITSTATUS(raw);
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        std::vector<std::string> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) row.push_back(cell);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

TEST_CASE("list-problems prints the catalog") {
    CmdResult r = run_cli("list-problems");
    CHECK(r.exit_code == 0);
    for (const char* id : {"quad-seg", "quad-tri", "cobb2", "ces2", "loc-2cluster"}) {
        CHECK(r.out.find(id) != std::string::npos);
    }
}

TEST_CASE("solve produces a CSV and exits 0 on convergence") {
    fs::path out = work_dir() / "solve.csv";
    CmdResult r = run_cli("solve --problem quad-seg --seed 3 --output " + out.string());
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(out));
    auto rows = parse_csv(slurp(out));
    REQUIRE(rows.size() >= 2);
    CHECK(rows[0][0] == "k");
    CHECK(rows[0][1] == "step_norm");
    CHECK(r.out.find("quad-seg") != std::string::npos);
}

TEST_CASE("unknown problem id exits 2 and lists the catalog") {
    CmdResult r = run_cli("solve --problem nope");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("quad-seg") != std::string::npos);
}

TEST_CASE("alpha outside (0, alpha_bar) exits 2 citing the constraint") {
    CmdResult r = run_cli("solve --problem quad-seg --alpha 0");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("0 < alpha < alpha_bar") != std::string::npos);
}

TEST_CASE("sweep rejects bad grids and unsupported m") {
    CHECK(run_cli("sweep --problem quad-seg --grid 1").exit_code == 2);
    CHECK(run_cli("sweep --problem quad-tri --grid 10").exit_code == 2);  // m = 3
}

TEST_CASE("sweep spans the quadratic segment with nondominated rows") {
    fs::path out = work_dir() / "sweep.csv";
    // Start from x0 = 3, whose level set covers the whole Pareto segment, and
    // use a small alpha so the first proximal step reaches each weighted
    // optimum before the per-iteration dominance constraint ratchets down.
    CmdResult r = run_cli("sweep --problem quad-seg --grid 10 --seed 1 --x0 3 "
                          "--alpha 0.002 --jobs 2 --output " +
                          out.string());
    CHECK(r.exit_code == 0);
    auto rows = parse_csv(slurp(out));
    REQUIRE(rows.size() == 12);  // header + 11 weights
    CHECK(rows[0][0] == "t");
    double lo = 1e300, hi = -1e300;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        double x = std::stod(rows[i][1]);
        lo = std::min(lo, x);
        hi = std::max(hi, x);
        CHECK(x >= -1.0 - 1e-3);
        CHECK(x <= 1.0 + 1e-3);
        CHECK(rows[i].back() == "1");  // mutually nondominated
    }
    // the sweep reaches both ends of the segment
    CHECK(lo <= -1.0 + 1e-2);
    CHECK(hi >= 1.0 - 1e-2);
}

TEST_CASE("check-critical certifies and refutes") {
    CHECK(run_cli("check-critical --problem quad-seg --point 0.5 --method smooth").exit_code ==
          0);
    CmdResult r = run_cli("check-critical --problem quad-seg --point 2.0 --method smooth");
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("descent direction") != std::string::npos);
    CHECK(run_cli("check-critical --problem loc-2cluster --point 0.5,0 --method sampled "
                  "--n-dirs 64")
              .exit_code == 0);
    // smooth method on a nonsmooth problem is a usage error
    CHECK(run_cli("check-critical --problem loc-2cluster --point 0.5,0 --method smooth")
              .exit_code == 2);
}

TEST_CASE("identical config and seed give byte-identical CSV") {
    fs::path a = work_dir() / "det_a.csv";
    fs::path b = work_dir() / "det_b.csv";
    std::string base = "solve --problem loc-2cluster --seed 99 --output ";
    CHECK(run_cli(base + a.string()).exit_code == 0);
    CHECK(run_cli(base + b.string()).exit_code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(!slurp(a).empty());
}

TEST_CASE("config file supplies defaults and flags override") {
    fs::path dir = work_dir();
    fs::path cfg = dir / "run.cfg";
    {
        std::ofstream f(cfg);
        f << "# solver configuration\n";
        f << "problem = quad-seg\n";
        f << "alpha = 2.0\n";
        f << "seed = 4\n";
    }
    fs::path out1 = dir / "cfg1.csv";
    CmdResult r1 = run_cli("solve --config " + cfg.string() + " --output " + out1.string());
    CHECK(r1.exit_code == 0);
    auto rows1 = parse_csv(slurp(out1));
    // uniform z and e make beta equal alpha
    CHECK(std::stod(rows1[1][2]) == doctest::Approx(2.0));

    fs::path out2 = dir / "cfg2.csv";
    CmdResult r2 = run_cli("solve --config " + cfg.string() + " --alpha 1.0 --output " +
                           out2.string());
    CHECK(r2.exit_code == 0);
    auto rows2 = parse_csv(slurp(out2));
    CHECK(std::stod(rows2[1][2]) == doctest::Approx(1.0));
}

TEST_CASE("JSON config fallback") {
    fs::path dir = work_dir();
    fs::path cfg = dir / "run.json.cfg";
    {
        std::ofstream f(cfg);
        f << "{\"problem\": \"quad-seg\", \"alpha\": 3.0, \"seed\": 4}\n";
    }
    fs::path out = dir / "cfg3.csv";
    CmdResult r = run_cli("solve --config " + cfg.string() + " --output " + out.string());
    CHECK(r.exit_code == 0);
    auto rows = parse_csv(slurp(out));
    CHECK(std::stod(rows[1][2]) == doctest::Approx(3.0));
}

TEST_CASE("json export from the CLI parses back") {
    fs::path out = work_dir() / "run.json";
    CmdResult r = run_cli("solve --problem quad-01 --seed 5 --format json --output " +
                          out.string());
    CHECK(r.exit_code == 0);
    std::string text = slurp(out);
    CHECK(text.find("\"problem_name\": \"quad-01\"") != std::string::npos);
    CHECK(text.find("\"termination\"") != std::string::npos);
}
