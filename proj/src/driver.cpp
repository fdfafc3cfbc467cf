#include "sppm/driver.hpp"

#include <cmath>
#include <utility>

#include "sppm/order.hpp"
#include "sppm/rng.hpp"

namespace sppm {

const char* to_string(Termination t) {
    switch (t) {
        case Termination::StepTol: return "step-tol";
        case Termination::Critical: return "critical";
        case Termination::MaxIters: return "max-iters";
        case Termination::Stalled: return "stalled";
    }
    return "unknown";
}

Termination termination_from_string(const std::string& s) {
    if (s == "step-tol") return Termination::StepTol;
    if (s == "critical") return Termination::Critical;
    if (s == "max-iters") return Termination::MaxIters;
    if (s == "stalled") return Termination::Stalled;
    throw ConstructionError("unknown termination '" + s + "'");
}

void DriverParams::validate() const {
    if (max_outer_iters < 1) throw ConstructionError("max_outer_iters must be >= 1");
    if (!(step_tol > 0.0)) throw ConstructionError("step_tol must be positive");
    inner.validate();
}

StopDecision check_stop(const Point& prev, const Point& next, double step_tol,
                        const std::optional<CriticalityReport>& crit) {
    if (prev.size() != next.size()) throw DimensionError("stop check: dimension mismatch");
    if ((next - prev).norm() <= step_tol) return StopDecision::StepTol;
    if (crit && crit->critical) return StopDecision::Critical;
    return StopDecision::Continue;
}

namespace {

CriticalityReport certify(const Problem& problem, const Point& x,
                          const CriticalityOptions& opts, std::uint64_t seed) {
    if (problem.smooth()) {
        return smooth_criticality_residual(problem, x, opts.qp_iters,
                                           opts.crit_tol_smooth);
    }
    return sampled_pareto_clarke_test(problem, x, opts.n_dirs, opts.h_min,
                                      opts.n_samples, opts.crit_tol_sampled, seed);
}

}  // namespace

RunRecord run_sppm(const Problem& original, const DriverParams& params) {
    params.validate();

    const bool transform =
        params.exp_transform == ExpTransformMode::On ||
        (params.exp_transform == ExpTransformMode::Auto && !original.positive());
    const Problem problem = transform ? exp_transform(original) : original;

    ScalarizationParams params0 =
        params.schedule ? params.schedule(0)
                        : (params.params ? *params.params
                                         : ScalarizationParams::uniform(problem.m()));
    auto params_at = [&](int k) -> ScalarizationParams {
        if (params.schedule) return params.schedule(k);
        return params0;
    };

    Point x;
    if (params.x0) {
        x = *params.x0;
        if (x.size() != problem.n()) throw DimensionError("x0 dimension mismatch");
    } else {
        Rng rng(mix_seed(params.seed, 0x1417ULL));
        x = rng.in_box(Point::Constant(problem.n(), -5.0),
                       Point::Constant(problem.n(), 5.0));
    }

    RunRecord run;
    run.problem_name = original.name();
    run.params = params0;
    run.exp_transform_applied = transform;
    run.seed = params.seed;
    run.step_tol = params.step_tol;
    run.max_outer_iters = params.max_outer_iters;

    ObjectiveVector fx = evaluate(problem, x);
    run.history.push_back(IterateRecord{0, x, fx, 0.0, beta(params0), 0.0, 0});

    std::optional<CriticalityReport> last_crit;
    Point last_crit_point;

    auto crit_at = [&](const Point& p) -> CriticalityReport {
        if (last_crit && (p - last_crit_point).norm() == 0.0) return *last_crit;
        CriticalityReport rep = certify(problem, p, params.crit, params.seed);
        last_crit = rep;
        last_crit_point = p;
        return rep;
    };

    run.termination = Termination::MaxIters;
    int k = 0;
    while (k < params.max_outer_iters) {
        ScalarizationParams pk = params_at(k);
        RegularizedObjective reg(problem, pk, x);

        InnerOptions inner = params.inner;
        inner.seed = mix_seed(params.seed, static_cast<std::uint64_t>(k) + 1);
        InnerResult res = solve_subproblem(reg, inner);

        double step_norm = (res.x_next - x).norm();
        run.history.push_back(IterateRecord{k + 1, res.x_next,
                                            evaluate(problem, res.x_next), step_norm,
                                            beta(pk), res.residual, res.inner_iters});
        ++k;

        std::optional<CriticalityReport> crit;
        bool stop_candidate = res.stalled || step_norm <= 10.0 * params.step_tol;
        if (stop_candidate) {
            crit = crit_at(res.x_next);
            // A non-critical stop candidate has a certified common descent
            // direction. The subgradient selection can pin the inner solver
            // against a kink of the level-set boundary; stepping along the
            // witness resumes progress where the plain inner solve cannot.
            if (!crit->critical && crit->witness_direction &&
                k < params.max_outer_iters) {
                Point w = *crit->witness_direction;
                w /= w.norm();
                RegularizedObjective escape_reg(problem, pk, res.x_next);
                auto [p, t] = feasible_backtrack(escape_reg, res.x_next, Point(-w), inner);
                double escape_norm = (p - res.x_next).norm();
                if (t > 0.0 && escape_norm > params.step_tol) {
                    run.history.push_back(
                        IterateRecord{k + 1, p, evaluate(problem, p), escape_norm,
                                      beta(pk), escape_reg.subgradient(p).norm(), 0});
                    ++k;
                    x = p;
                    continue;
                }
            }
        }

        if (res.stalled) {
            // No feasible decrease and no usable witness: either the center
            // is (approximately) critical, or the descent heuristic failed.
            run.termination = crit->critical ? Termination::Critical : Termination::Stalled;
            x = res.x_next;
            break;
        }

        StopDecision decision = check_stop(x, res.x_next, params.step_tol, crit);
        x = res.x_next;
        if (decision == StopDecision::StepTol) {
            run.termination = Termination::StepTol;
            break;
        }
        if (decision == StopDecision::Critical) {
            run.termination = Termination::Critical;
            break;
        }
    }

    run.final_criticality = crit_at(x);
    return run;
}

}  // namespace sppm
