// Command-line front end: solve catalog problems with the scalarization
// proximal point method, sweep scalarization weights, and run criticality
// checks. Exit codes: 0 success (solve: step-tol/critical termination;
// check-critical: point certified critical), 1 run did not certify
// (stalled/max-iters, or point not critical), 2 usage or validation error.

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sppm/diagnostics.hpp"
#include "sppm/driver.hpp"
#include "sppm/library.hpp"
#include "sppm/order.hpp"

namespace {

std::vector<double> parse_csv_doubles(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            double v = std::stod(item, &pos);
            while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
            if (pos != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw sppm::ConstructionError(std::string(what) + ": cannot parse '" + item +
                                          "' as a number");
        }
    }
    if (out.empty()) throw sppm::ConstructionError(std::string(what) + " is empty");
    return out;
}

Eigen::VectorXd to_vec(const std::vector<double>& v) {
    Eigen::VectorXd out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
    return out;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct CommonFlags {
    std::string problem;
    std::string weights;
    std::string e_weights;
    double alpha = 1.0;
    std::string x0;
    int max_iter = 200;
    double step_tol = 1e-6;
    double inner_tol = 1e-9;
    int inner_iters = 200;
    std::string exp_transform = "auto";
    std::uint64_t seed = 0;
    std::string output;
    std::string format = "csv";
    int jobs = 1;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    auto take_last = [](CLI::Option* o) { o->multi_option_policy(CLI::MultiOptionPolicy::TakeLast); };
    take_last(cmd->add_option("--problem", f.problem, "catalog problem id")->required());
    take_last(cmd->add_option("--weights", f.weights,
                              "scalarization weights z, comma separated (normalized)"));
    take_last(cmd->add_option("--e", f.e_weights,
                              "regularization weights e, comma separated (normalized)"));
    take_last(cmd->add_option("--alpha", f.alpha, "proximal parameter, 0 < alpha < 1e6"));
    take_last(cmd->add_option("--x0", f.x0, "initial point, comma separated"));
    take_last(cmd->add_option("--max-iter", f.max_iter, "outer iteration budget"));
    take_last(cmd->add_option("--step-tol", f.step_tol, "outer step-norm stop tolerance"));
    take_last(cmd->add_option("--inner-tol", f.inner_tol, "inner step-norm stop tolerance"));
    take_last(cmd->add_option("--inner-iters", f.inner_iters, "inner iteration budget"));
    take_last(cmd->add_option("--exp-transform", f.exp_transform,
                              "apply the positivity transform: auto|on|off")
                  ->check(CLI::IsMember({"auto", "on", "off"})));
    take_last(cmd->add_option("--seed", f.seed, "seed for all randomized pieces"));
    take_last(cmd->add_option("--output", f.output, "output path (default derived from problem id)"));
    take_last(cmd->add_option("--format", f.format, "export format: csv|json")
                  ->check(CLI::IsMember({"csv", "json"})));
    take_last(cmd->add_option("--jobs", f.jobs, "concurrent runs (sweep only)"));
}

sppm::DriverParams build_params(const CommonFlags& f, const sppm::Problem& problem) {
    sppm::DriverParams params;
    params.max_outer_iters = f.max_iter;
    params.step_tol = f.step_tol;
    params.inner.inner_tol = f.inner_tol;
    params.inner.max_inner_iters = f.inner_iters;
    params.seed = f.seed;
    if (f.exp_transform == "on") params.exp_transform = sppm::ExpTransformMode::On;
    if (f.exp_transform == "off") params.exp_transform = sppm::ExpTransformMode::Off;

    Eigen::VectorXd z, e;
    if (!f.weights.empty()) {
        z = to_vec(parse_csv_doubles(f.weights, "--weights"));
        if (static_cast<int>(z.size()) != problem.m()) {
            throw sppm::ConstructionError("--weights needs exactly m = " +
                                          std::to_string(problem.m()) + " entries");
        }
        for (int i = 0; i < z.size(); ++i) {
            if (z[i] == 0.0) {
                std::cerr << "warning: weight " << (i + 1)
                          << " is zero; that objective constrains iterations only "
                             "through the level set\n";
            }
        }
    } else {
        z = Eigen::VectorXd::Ones(problem.m());
    }
    if (!f.e_weights.empty()) {
        e = to_vec(parse_csv_doubles(f.e_weights, "--e"));
        if (static_cast<int>(e.size()) != problem.m()) {
            throw sppm::ConstructionError("--e needs exactly m = " +
                                          std::to_string(problem.m()) + " entries");
        }
    } else {
        e = Eigen::VectorXd::Ones(problem.m());
    }
    params.params = sppm::ScalarizationParams::normalized(z, e, f.alpha);

    if (!f.x0.empty()) {
        Eigen::VectorXd x0 = to_vec(parse_csv_doubles(f.x0, "--x0"));
        if (static_cast<int>(x0.size()) != problem.n()) {
            throw sppm::ConstructionError("--x0 needs exactly n = " +
                                          std::to_string(problem.n()) + " entries");
        }
        params.x0 = x0;
    }
    return params;
}

std::string default_output(const CommonFlags& f, const char* suffix) {
    if (!f.output.empty()) return f.output;
    return f.problem + suffix + (f.format == "json" ? ".json" : ".csv");
}

int cmd_solve(const CommonFlags& f) {
    sppm::Problem problem = sppm::make_catalog_problem(f.problem);
    sppm::DriverParams params = build_params(f, problem);
    sppm::RunRecord run = sppm::run_sppm(problem, params);

    std::string path = default_output(f, "-run");
    sppm::export_run(run, f.format == "json" ? sppm::ExportFormat::Json
                                             : sppm::ExportFormat::Csv,
                     path);

    std::cout << f.problem << ": " << sppm::to_string(run.termination) << " after "
              << (run.history.size() - 1) << " iterations, criticality residual "
              << fmt(run.final_criticality.residual) << " ("
              << (run.final_criticality.critical ? "critical" : "not critical")
              << "), wrote " << path << "\n";

    bool ok = run.termination == sppm::Termination::StepTol ||
              run.termination == sppm::Termination::Critical;
    return ok ? 0 : 1;
}

int cmd_sweep(const CommonFlags& f, int grid) {
    if (grid < 2) throw sppm::ConstructionError("--grid must be >= 2");
    sppm::Problem problem = sppm::make_catalog_problem(f.problem);
    if (problem.m() != 2) {
        throw sppm::ConstructionError(
            "sweep supports exactly m = 2 objectives (documented limitation)");
    }

    const int count = grid + 1;
    std::vector<sppm::RunRecord> runs(count);
    std::vector<std::exception_ptr> errors(count);
    std::vector<double> ts(count);

    auto work = [&](int idx) {
        try {
            double t = static_cast<double>(idx) / grid;
            ts[idx] = t;
            // Clip endpoints away from exact zero so z stays in R^m_+ \ {0}
            // with every objective weighted.
            const double eps = 1e-6;
            Eigen::VectorXd z(2);
            z << std::max(t, eps), std::max(1.0 - t, eps);
            CommonFlags fw = f;
            std::ostringstream w;
            w << fmt(z[0]) << "," << fmt(z[1]);
            fw.weights = w.str();
            sppm::DriverParams params = build_params(fw, problem);
            runs[idx] = sppm::run_sppm(problem, params);
        } catch (...) {
            errors[idx] = std::current_exception();
        }
    };

    int jobs = std::max(1, f.jobs);
    if (jobs == 1) {
        for (int i = 0; i < count; ++i) work(i);
    } else {
        std::vector<std::thread> pool;
        for (int tid = 0; tid < jobs; ++tid) {
            pool.emplace_back([&, tid] {
                for (int i = tid; i < count; i += jobs) work(i);
            });
        }
        for (auto& th : pool) th.join();
    }
    for (auto& err : errors) {
        if (err) std::rethrow_exception(err);
    }

    // Pareto filter over the final objective vectors.
    std::vector<bool> nondominated(count, true);
    for (int i = 0; i < count; ++i) {
        const auto& fi = runs[i].final_iterate().f_x;
        for (int j = 0; j < count && nondominated[i]; ++j) {
            if (j == i) continue;
            const auto& fj = runs[j].final_iterate().f_x;
            if (sppm::leq(fj, fi) && (fj - fi).norm() > 0.0) nondominated[i] = false;
        }
    }

    const int n = problem.n();
    const int m = problem.m();
    std::ostringstream out;
    out << "t";
    for (int j = 1; j <= n; ++j) out << ",x_" << j;
    for (int i = 1; i <= m; ++i) out << ",F_" << i;
    out << ",nondominated\n";
    for (int i = 0; i < count; ++i) {
        const auto& last = runs[i].final_iterate();
        out << fmt(ts[i]);
        for (int j = 0; j < n; ++j) out << ',' << fmt(last.x[j]);
        for (int c = 0; c < m; ++c) out << ',' << fmt(last.f_x[c]);
        out << ',' << (nondominated[i] ? 1 : 0) << "\n";
    }

    std::string path = f.output.empty() ? f.problem + "-sweep.csv" : f.output;
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw sppm::IoError("cannot open '" + path + "' for writing");
    file << out.str();

    bool all_ok = true;
    for (const auto& run : runs) {
        all_ok = all_ok && (run.termination == sppm::Termination::StepTol ||
                            run.termination == sppm::Termination::Critical);
    }
    std::cout << f.problem << ": swept " << count << " weights, wrote " << path << "\n";
    return all_ok ? 0 : 1;
}

int cmd_check_critical(const std::string& problem_id, const std::string& point_csv,
                       const std::string& method, double crit_tol, int n_dirs,
                       double h_min, int n_samples, std::uint64_t seed) {
    sppm::Problem problem = sppm::make_catalog_problem(problem_id);
    Eigen::VectorXd x = to_vec(parse_csv_doubles(point_csv, "--point"));
    if (static_cast<int>(x.size()) != problem.n()) {
        throw sppm::ConstructionError("--point needs exactly n = " +
                                      std::to_string(problem.n()) + " entries");
    }

    sppm::CriticalityReport report;
    if (method == "smooth") {
        double tol = crit_tol > 0 ? crit_tol : 1e-5;
        report = sppm::smooth_criticality_residual(problem, x, 200, tol);
    } else {
        double tol = crit_tol > 0 ? crit_tol : 1e-3;
        report = sppm::sampled_pareto_clarke_test(problem, x, n_dirs, h_min, n_samples,
                                                  tol, seed);
    }

    std::cout << problem_id << " at [" << point_csv << "]: residual "
              << fmt(report.residual) << ", method "
              << (report.method == sppm::CriticalityMethod::SmoothQp ? "smooth-qp"
                                                                     : "sampled-directions")
              << ", directions " << report.n_directions << " -> "
              << (report.critical ? "critical" : "not critical") << "\n";
    if (report.witness_direction) {
        std::cout << "descent direction:";
        for (int j = 0; j < report.witness_direction->size(); ++j) {
            std::cout << ' ' << fmt((*report.witness_direction)[j]);
        }
        std::cout << "\n";
    }
    return report.critical ? 0 : 1;
}

int cmd_list_problems() {
    for (const auto& id : sppm::problem_catalog()) {
        sppm::Problem p = sppm::make_catalog_problem(id);
        std::cout << id << "  n=" << p.n() << " m=" << p.m()
                  << (p.smooth() ? " smooth" : " nonsmooth")
                  << (p.convex() ? " convex" : "")
                  << (p.claimed_quasiconvex() ? " quasiconvex" : "")
                  << (p.positive() ? " positive" : "") << "\n";
    }
    return 0;
}

// Loads a config file into --key=value tokens. Flat `key = value` lines with
// '#' comments, or a JSON object of the same keys as a fallback.
std::vector<std::string> config_to_args(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw sppm::IoError("cannot open config '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();

    std::vector<std::string> args;
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        nlohmann::json j = nlohmann::json::parse(text);
        for (const auto& [key, value] : j.items()) {
            std::string v = value.is_string() ? value.get<std::string>() : value.dump();
            args.push_back("--" + key + "=" + v);
        }
        return args;
    }
    std::istringstream lines(text);
    std::string line;
    int lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw sppm::ConstructionError("config '" + path + "' line " +
                                          std::to_string(lineno) + ": expected key = value");
        }
        auto trim = [](std::string s) {
            std::size_t lo = s.find_first_not_of(" \t\r");
            std::size_t hi = s.find_last_not_of(" \t\r");
            return lo == std::string::npos ? std::string() : s.substr(lo, hi - lo + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw sppm::ConstructionError("config '" + path + "' line " +
                                          std::to_string(lineno) + ": empty key");
        }
        args.push_back("--" + key + "=" + value);
    }
    return args;
}

// Splices config-derived arguments in right after the subcommand token, so
// explicit command-line flags (parsed later) override the file.
std::vector<std::string> splice_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            config_path = args[i + 1];
        } else if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(9);
        }
    }
    if (config_path.empty() || args.empty()) return args;
    std::vector<std::string> injected = config_to_args(config_path);
    std::vector<std::string> result;
    result.push_back(args[0]);  // subcommand
    result.insert(result.end(), injected.begin(), injected.end());
    result.insert(result.end(), args.begin() + 1, args.end());
    return result;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Scalarization proximal point solver for multiobjective minimization"};
    app.require_subcommand(1);

    CommonFlags solve_flags;
    CLI::App* solve = app.add_subcommand("solve", "run the solver on one problem");
    add_common(solve, solve_flags);
    std::string ignored_config;
    solve->add_option("--config", ignored_config, "key = value config file (flags override)");

    CommonFlags sweep_flags;
    int grid = 0;
    CLI::App* sweep = app.add_subcommand("sweep", "solve across a grid of weights (m = 2)");
    add_common(sweep, sweep_flags);
    sweep->add_option("--grid", grid, "number of weight intervals (>= 2)")->required();
    sweep->add_option("--config", ignored_config, "key = value config file (flags override)");

    CLI::App* check = app.add_subcommand("check-critical", "certify a point");
    std::string cc_problem, cc_point, cc_method = "sampled";
    double cc_tol = 0.0, cc_hmin = 1e-5;
    int cc_dirs = 256, cc_samples = 64;
    std::uint64_t cc_seed = 0;
    check->add_option("--problem", cc_problem, "catalog problem id")->required();
    check->add_option("--point", cc_point, "point to certify, comma separated")->required();
    check->add_option("--method", cc_method, "smooth|sampled")
        ->check(CLI::IsMember({"smooth", "sampled"}));
    check->add_option("--crit-tol", cc_tol, "criticality tolerance (0 = method default)");
    check->add_option("--n-dirs", cc_dirs, "sampled directions");
    check->add_option("--h-min", cc_hmin, "smallest finite-difference step");
    check->add_option("--n-samples", cc_samples, "samples per direction/component");
    check->add_option("--seed", cc_seed, "sampling seed");

    CLI::App* list = app.add_subcommand("list-problems", "print the problem catalog");

    std::vector<std::string> args;
    try {
        args = splice_config(argc, argv);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    std::reverse(args.begin(), args.end());  // CLI11 consumes back-to-front

    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (solve->parsed()) return cmd_solve(solve_flags);
        if (sweep->parsed()) return cmd_sweep(sweep_flags, grid);
        if (check->parsed()) {
            return cmd_check_critical(cc_problem, cc_point, cc_method, cc_tol, cc_dirs,
                                      cc_hmin, cc_samples, cc_seed);
        }
        if (list->parsed()) return cmd_list_problems();
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 2;
}
