#ifndef SPPM_DRIVER_HPP
#define SPPM_DRIVER_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sppm/criticality.hpp"
#include "sppm/inner_solver.hpp"
#include "sppm/scalarize.hpp"

namespace sppm {

enum class ExpTransformMode { Auto, On, Off };

enum class Termination { StepTol, Critical, MaxIters, Stalled };

const char* to_string(Termination t);
Termination termination_from_string(const std::string& s);

/// How the driver certifies criticality at stop candidates: the smooth
/// min-norm test on problems flagged smooth, the sampled direction test
/// otherwise.
struct CriticalityOptions {
    int n_dirs = 64;
    double h_min = 1e-5;
    int n_samples = 64;
    double crit_tol_smooth = 1e-5;
    double crit_tol_sampled = 1e-3;
    int qp_iters = 200;
};

/// Outer-loop configuration.
///
/// The scalarization parameters are constant by default (uniform weights,
/// alpha = 1); a per-iteration schedule can be supplied instead. With
/// ExpTransformMode::Auto the problem is replaced by its exponential
/// transform exactly when its positive flag is false, which restores the
/// lower-boundedness the existence argument needs without changing the
/// solution sets.
struct DriverParams {
    int max_outer_iters = 200;
    double step_tol = 1e-6;
    std::optional<ScalarizationParams> params;  // default: uniform weights
    std::function<ScalarizationParams(int)> schedule;  // overrides `params` if set
    InnerOptions inner;
    ExpTransformMode exp_transform = ExpTransformMode::Auto;
    std::uint64_t seed = 0;
    std::optional<Point> x0;  // default: seeded uniform in [-5, 5]^n
    CriticalityOptions crit;

    void validate() const;
};

/// One outer iteration. step_norm is ||x^k - x^{k-1}|| (zero for k = 0);
/// f_x records the objective the driver actually iterates on (the
/// transformed one when the exp transform is applied).
struct IterateRecord {
    int k = 0;
    Point x;
    ObjectiveVector f_x;
    double step_norm = 0.0;
    double beta = 0.0;
    double inner_residual = 0.0;
    int inner_iters = 0;
};

/// Full history of a run plus its termination certificate.
struct RunRecord {
    std::string problem_name;
    ScalarizationParams params;  // parameters of iteration 0
    std::vector<IterateRecord> history;
    Termination termination = Termination::MaxIters;
    CriticalityReport final_criticality;
    bool exp_transform_applied = false;
    std::uint64_t seed = 0;
    double step_tol = 0.0;
    int max_outer_iters = 0;
    // Hypotheses assumed rather than checked; completeness of the initial
    // section quantifies over all decreasing sequences and admits no finite
    // test.
    std::vector<std::string> assumptions = {"H3-completeness"};

    const IterateRecord& final_iterate() const { return history.back(); }
};

enum class StopDecision { Continue, StepTol, Critical };

/// Stop rule: step-tol when ||next - prev|| <= step_tol; critical when a
/// criticality report is present and positive; continue otherwise.
StopDecision check_stop(const Point& prev, const Point& next, double step_tol,
                        const std::optional<CriticalityReport>& crit);

/// Runs the outer proximal loop: per iteration builds the scalarized
/// regularized objective at the current center, solves the subproblem inside
/// the level set, applies the stop rule, and records history. Criticality is
/// evaluated only at stop candidates (step_norm <= 10 * step_tol, or an inner
/// stall) and always for the final point. The input problem is never mutated.
RunRecord run_sppm(const Problem& problem, const DriverParams& params);

}  // namespace sppm

#endif  // SPPM_DRIVER_HPP
