#include "sppm/diagnostics.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace sppm {

FejerSeries fejer_report(const RunRecord& run, const Point& x_ref, double tol) {
    if (!run.history.empty() && x_ref.size() != run.history.front().x.size()) {
        throw DimensionError("fejer_report: reference point dimension mismatch");
    }
    FejerSeries series;
    series.distances.reserve(run.history.size());
    for (const auto& rec : run.history) {
        series.distances.push_back((rec.x - x_ref).norm());
    }
    series.max_violation = 0.0;
    for (std::size_t k = 0; k + 1 < series.distances.size(); ++k) {
        series.max_violation =
            std::max(series.max_violation, series.distances[k + 1] - series.distances[k]);
    }
    series.monotone = series.max_violation <= tol;
    return series;
}

DescentReport descent_report(const RunRecord& run, double feas_tol) {
    DescentReport report;
    for (std::size_t k = 0; k + 1 < run.history.size(); ++k) {
        const ObjectiveVector& prev = run.history[k].f_x;
        const ObjectiveVector& next = run.history[k + 1].f_x;
        for (int i = 0; i < prev.size(); ++i) {
            if (next[i] > prev[i] + feas_tol) {
                report.ok = false;
                report.first_violation = static_cast<int>(k);
                return report;
            }
        }
    }
    return report;
}

namespace {

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

nlohmann::json vec_to_json(const Eigen::VectorXd& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

Eigen::VectorXd vec_from_json(const nlohmann::json& arr) {
    Eigen::VectorXd v(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) v[i] = arr[i].get<double>();
    return v;
}

}  // namespace

std::string run_to_csv(const RunRecord& run) {
    const int m = run.history.empty() ? 0 : static_cast<int>(run.history.front().f_x.size());
    const int n = run.history.empty() ? 0 : static_cast<int>(run.history.front().x.size());
    std::ostringstream out;
    out << "k,step_norm,beta,inner_residual,inner_iters";
    for (int i = 1; i <= m; ++i) out << ",F_" << i;
    for (int j = 1; j <= n; ++j) out << ",x_" << j;
    out << "\n";
    for (const auto& rec : run.history) {
        out << rec.k << ',' << fmt17(rec.step_norm) << ',' << fmt17(rec.beta) << ','
            << fmt17(rec.inner_residual) << ',' << rec.inner_iters;
        for (int i = 0; i < m; ++i) out << ',' << fmt17(rec.f_x[i]);
        for (int j = 0; j < n; ++j) out << ',' << fmt17(rec.x[j]);
        out << "\n";
    }
    return out.str();
}

std::string run_to_json(const RunRecord& run) {
    nlohmann::json j;
    j["problem_name"] = run.problem_name;
    j["params"] = {{"z", vec_to_json(run.params.z)},
                   {"e", vec_to_json(run.params.e)},
                   {"alpha", run.params.alpha}};
    nlohmann::json hist = nlohmann::json::array();
    for (const auto& rec : run.history) {
        hist.push_back({{"k", rec.k},
                        {"x", vec_to_json(rec.x)},
                        {"F_x", vec_to_json(rec.f_x)},
                        {"step_norm", rec.step_norm},
                        {"beta", rec.beta},
                        {"inner_residual", rec.inner_residual},
                        {"inner_iters", rec.inner_iters}});
    }
    j["history"] = std::move(hist);
    j["termination"] = to_string(run.termination);
    const CriticalityReport& crit = run.final_criticality;
    nlohmann::json jc;
    jc["residual"] = crit.residual;
    jc["method"] = crit.method == CriticalityMethod::SmoothQp ? "smooth-qp"
                                                              : "sampled-directions";
    if (crit.witness_direction) {
        jc["witness_direction"] = vec_to_json(*crit.witness_direction);
    } else {
        jc["witness_direction"] = nullptr;
    }
    jc["n_directions"] = crit.n_directions;
    jc["critical"] = crit.critical;
    j["final_criticality"] = std::move(jc);
    j["exp_transform_applied"] = run.exp_transform_applied;
    j["seed"] = run.seed;
    j["step_tol"] = run.step_tol;
    j["max_outer_iters"] = run.max_outer_iters;
    j["assumptions"] = run.assumptions;
    return j.dump(2) + "\n";
}

RunRecord run_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    RunRecord run;
    run.problem_name = j.at("problem_name").get<std::string>();
    run.params = ScalarizationParams::make_unchecked(
        vec_from_json(j.at("params").at("z")), vec_from_json(j.at("params").at("e")),
        j.at("params").at("alpha").get<double>());
    for (const auto& rec : j.at("history")) {
        IterateRecord r;
        r.k = rec.at("k").get<int>();
        r.x = vec_from_json(rec.at("x"));
        r.f_x = vec_from_json(rec.at("F_x"));
        r.step_norm = rec.at("step_norm").get<double>();
        r.beta = rec.at("beta").get<double>();
        r.inner_residual = rec.at("inner_residual").get<double>();
        r.inner_iters = rec.at("inner_iters").get<int>();
        run.history.push_back(std::move(r));
    }
    run.termination = termination_from_string(j.at("termination").get<std::string>());
    const auto& jc = j.at("final_criticality");
    run.final_criticality.residual = jc.at("residual").get<double>();
    run.final_criticality.method = jc.at("method").get<std::string>() == "smooth-qp"
                                       ? CriticalityMethod::SmoothQp
                                       : CriticalityMethod::SampledDirections;
    if (!jc.at("witness_direction").is_null()) {
        run.final_criticality.witness_direction = vec_from_json(jc.at("witness_direction"));
    }
    run.final_criticality.n_directions = jc.at("n_directions").get<int>();
    run.final_criticality.critical = jc.at("critical").get<bool>();
    run.exp_transform_applied = j.at("exp_transform_applied").get<bool>();
    run.seed = j.at("seed").get<std::uint64_t>();
    run.step_tol = j.at("step_tol").get<double>();
    run.max_outer_iters = j.at("max_outer_iters").get<int>();
    run.assumptions = j.at("assumptions").get<std::vector<std::string>>();
    return run;
}

void export_run(const RunRecord& run, ExportFormat format, const std::string& path) {
    std::string payload = format == ExportFormat::Csv ? run_to_csv(run) : run_to_json(run);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    out.flush();
    if (!out) {
        out.close();
        std::remove(path.c_str());
        throw IoError("failed while writing '" + path + "'; partial file removed");
    }
}

RunRecord import_run_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return run_from_json(buf.str());
}

namespace {

bool bit_equal(double a, double b) {
    return std::memcmp(&a, &b, sizeof(double)) == 0;
}

bool bit_equal(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    if (a.size() != b.size()) return false;
    for (int i = 0; i < a.size(); ++i) {
        if (!bit_equal(a[i], b[i])) return false;
    }
    return true;
}

}  // namespace

bool operator==(const IterateRecord& a, const IterateRecord& b) {
    return a.k == b.k && bit_equal(a.x, b.x) && bit_equal(a.f_x, b.f_x) &&
           bit_equal(a.step_norm, b.step_norm) && bit_equal(a.beta, b.beta) &&
           bit_equal(a.inner_residual, b.inner_residual) && a.inner_iters == b.inner_iters;
}

bool operator==(const RunRecord& a, const RunRecord& b) {
    if (a.problem_name != b.problem_name) return false;
    if (!bit_equal(a.params.z, b.params.z) || !bit_equal(a.params.e, b.params.e) ||
        !bit_equal(a.params.alpha, b.params.alpha)) {
        return false;
    }
    if (a.history.size() != b.history.size()) return false;
    for (std::size_t i = 0; i < a.history.size(); ++i) {
        if (!(a.history[i] == b.history[i])) return false;
    }
    if (a.termination != b.termination) return false;
    const auto& ca = a.final_criticality;
    const auto& cb = b.final_criticality;
    if (!bit_equal(ca.residual, cb.residual) || ca.method != cb.method ||
        ca.n_directions != cb.n_directions || ca.critical != cb.critical) {
        return false;
    }
    if (ca.witness_direction.has_value() != cb.witness_direction.has_value()) return false;
    if (ca.witness_direction && !bit_equal(*ca.witness_direction, *cb.witness_direction)) {
        return false;
    }
    return a.exp_transform_applied == b.exp_transform_applied && a.seed == b.seed &&
           bit_equal(a.step_tol, b.step_tol) && a.max_outer_iters == b.max_outer_iters &&
           a.assumptions == b.assumptions;
}

}  // namespace sppm
