#ifndef SPPM_DIAGNOSTICS_HPP
#define SPPM_DIAGNOSTICS_HPP

#include <string>
#include <vector>

#include "sppm/driver.hpp"

namespace sppm {

/// Distances ||x^k - x_ref|| along a run, checked for monotone decrease.
struct FejerSeries {
    std::vector<double> distances;
    bool monotone = false;
    double max_violation = 0.0;  // max(0, max_k (d_{k+1} - d_k))
};

/// Distance series of the history against a reference point (typically the
/// final iterate or a known weak Pareto point the run dominates).
FejerSeries fejer_report(const RunRecord& run, const Point& x_ref, double tol);

/// Componentwise-descent audit of a history.
struct DescentReport {
    bool ok = true;
    int first_violation = -1;  // index k of the first pair (k, k+1) violating
};

/// Checks F(x^{k+1}) <= F(x^k) + feas_tol componentwise for every
/// consecutive pair of recorded iterates.
DescentReport descent_report(const RunRecord& run, double feas_tol);

enum class ExportFormat { Csv, Json };

/// Serializes a run. CSV columns, in order: k, step_norm, beta,
/// inner_residual, inner_iters, F_1..F_m, x_1..x_n; header row, LF line
/// endings, floats at 17 significant digits (round-trip exact). JSON mirrors
/// the RunRecord field names.
std::string run_to_csv(const RunRecord& run);
std::string run_to_json(const RunRecord& run);

/// Parses a JSON export back into a RunRecord (numeric fields bit-exact).
RunRecord run_from_json(const std::string& text);

/// Writes the chosen serialization to `path`. On failure throws IoError
/// naming the path and leaves no partial file behind.
void export_run(const RunRecord& run, ExportFormat format, const std::string& path);

/// Reads a JSON export from disk.
RunRecord import_run_json(const std::string& path);

/// Structural + numeric equality (doubles compared bit-for-bit).
bool operator==(const IterateRecord& a, const IterateRecord& b);
bool operator==(const RunRecord& a, const RunRecord& b);

}  // namespace sppm

#endif  // SPPM_DIAGNOSTICS_HPP
