#include "sppm/inner_solver.hpp"

#include <cmath>
#include <optional>

#include "sppm/order.hpp"
#include "sppm/rng.hpp"

namespace sppm {

void InnerOptions::validate() const {
    if (max_inner_iters < 1) throw ConstructionError("max_inner_iters must be >= 1");
    if (!(step_init > 0.0)) throw ConstructionError("step_init must be positive");
    if (!(armijo_c > 0.0 && armijo_c < 1.0)) {
        throw ConstructionError("armijo_c must lie strictly inside (0, 1)");
    }
    if (!(backtrack_ratio > 0.0 && backtrack_ratio < 1.0)) {
        throw ConstructionError("backtrack_ratio must lie strictly inside (0, 1)");
    }
    if (!(inner_tol > 0.0)) throw ConstructionError("inner_tol must be positive");
    if (feas_tol < 0.0) throw ConstructionError("feas_tol must be >= 0");
    if (multi_starts < 1) throw ConstructionError("multi_starts must be >= 1");
}

std::pair<Point, double> feasible_backtrack(const RegularizedObjective& reg,
                                            const Point& x, const Point& g,
                                            const InnerOptions& opts) {
    const double phi_x = reg.value(x);
    const double g2 = g.squaredNorm();
    if (g2 == 0.0) return {x, 0.0};

    const double gnorm = std::sqrt(g2);
    // Once the trial displacement is below the resolution of x itself,
    // further shrinking cannot produce a representable new point.
    const double step_floor = 1e-15 * (1.0 + x.norm());

    for (double t = opts.step_init; t * gnorm >= step_floor; t *= opts.backtrack_ratio) {
        Point trial = x - t * g;
        double phi_trial;
        try {
            phi_trial = reg.value(trial);
        } catch (const EvaluationError&) {
            continue;  // e.g. exp overflow far out; shorten the step
        }
        if (phi_trial <= phi_x - opts.armijo_c * t * g2 &&
            in_level_set_values(reg.problem(), trial, reg.f_center(), opts.feas_tol)) {
            return {trial, t};
        }
    }
    return {x, 0.0};
}

namespace {

struct DescentOutcome {
    Point x;
    double phi;
    int iters = 0;
    bool moved = false;
};

DescentOutcome descend(const RegularizedObjective& reg, Point x0,
                       const InnerOptions& opts) {
    DescentOutcome out{std::move(x0), 0.0, 0, false};
    out.phi = reg.value(out.x);
    const int n = static_cast<int>(out.x.size());
    const bool smooth = reg.problem().smooth();
    Point prev_x, prev_g;
    bool have_prev = false;
    for (; out.iters < opts.max_inner_iters; ++out.iters) {
        Point g = reg.subgradient(out.x);
        double gnorm = g.norm();
        if (gnorm <= 1e-15 * (1.0 + std::abs(out.phi))) break;

        // On smooth objectives, seed the backtrack with a Barzilai-Borwein
        // curvature estimate. Plain halving overshoots near the minimum once
        // phi differences fall below double resolution; the BB trial lands on
        // the quadratic model's minimizer instead.
        InnerOptions local = opts;
        if (smooth && have_prev) {
            Point dg = g - prev_g;
            double dgg = dg.squaredNorm();
            double dxg = (out.x - prev_x).dot(dg);
            if (dgg > 0.0 && dxg > 0.0) {
                double bb = dxg / dgg;
                if (std::isfinite(bb) && bb > 0.0) {
                    local.step_init = std::min(opts.step_init, bb);
                }
            }
        }
        prev_x = out.x;
        prev_g = g;
        have_prev = true;

        auto [next, t] = feasible_backtrack(reg, out.x, g, local);
        double step_len = t * gnorm;
        if (step_len <= opts.inner_tol) {
            // A max-type kink can pin the subgradient direction against the
            // level-set boundary even though feasible descent exists along
            // the kink. Before concluding, probe the signed coordinate
            // directions; the backtrack re-checks Armijo decrease and
            // feasibility.
            for (int j = 0; j < 2 * n; ++j) {
                Point d = Point::Zero(n);
                d[j / 2] = (j % 2 == 0) ? 1.0 : -1.0;
                auto [pnext, pt] = feasible_backtrack(reg, out.x, d, opts);
                if (pt > opts.inner_tol) {
                    next = pnext;
                    t = pt;
                    step_len = pt;
                    break;
                }
            }
        }
        if (t == 0.0) break;  // no feasible Armijo step left
        out.x = next;
        out.phi = reg.value(next);
        out.moved = true;
        if (opts.trace) opts.trace->push_back(next);
        if (step_len <= opts.inner_tol) {
            ++out.iters;
            break;
        }
    }
    return out;
}

}  // namespace

InnerResult solve_subproblem(const RegularizedObjective& reg, const InnerOptions& opts) {
    opts.validate();
    const Point& center = reg.center();
    const double phi_center = reg.f_center().dot(reg.params().z);

    std::optional<DescentOutcome> best;
    int total_iters = 0;
    auto consider = [&](DescentOutcome cand) {
        total_iters += cand.iters;
        if (!cand.moved) return;
        if (!best || cand.phi < best->phi) best = std::move(cand);
    };

    consider(descend(reg, center, opts));

    // Extra starts hedge against poor local structure of nonconvex phi; a
    // convex objective has a single basin, so they would only repeat work.
    if (!reg.problem().convex() && opts.multi_starts > 1) {
        auto feasible_start = [&](const Point& start) {
            try {
                return in_level_set_values(reg.problem(), start, reg.f_center(),
                                           opts.feas_tol);
            } catch (const EvaluationError&) {
                return false;  // e.g. exp overflow far from the center
            }
        };
        Point g0 = reg.subgradient(center);
        if (g0.norm() > 0.0) {
            Point start = center - opts.step_init * g0;
            if (feasible_start(start)) consider(descend(reg, start, opts));
        }
        Rng rng(mix_seed(opts.seed, 0x5e0a11ULL));
        for (int s = 2; s < opts.multi_starts; ++s) {
            Point start =
                center + opts.step_init * rng.in_unit_ball(static_cast<int>(center.size()));
            if (feasible_start(start)) consider(descend(reg, start, opts));
        }
    }

    InnerResult result;
    result.inner_iters = total_iters;
    result.feasible = true;
    if (best && best->phi < phi_center) {
        result.x_next = best->x;
        result.phi_final = best->phi;
        result.residual = reg.subgradient(best->x).norm();
        result.stalled = false;
    } else {
        // No feasible decrease anywhere: hand back the center and let the
        // driver treat this iterate as a stop candidate.
        result.x_next = center;
        result.phi_final = phi_center;
        result.residual = 0.0;
        result.stalled = true;
    }
    return result;
}

}  // namespace sppm
