#ifndef SPPM_INNER_SOLVER_HPP
#define SPPM_INNER_SOLVER_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "sppm/scalarize.hpp"

namespace sppm {

/// Options for the inner feasible-descent solver.
struct InnerOptions {
    int max_inner_iters = 200;
    double step_init = 1.0;          // first trial step of each backtrack
    double armijo_c = 1e-4;          // sufficient-decrease constant in (0,1)
    double backtrack_ratio = 0.5;    // step shrink factor in (0,1)
    double inner_tol = 1e-9;         // stop when t * ||g|| falls below this
    double feas_tol = 1e-12;         // level-set membership slack
    int multi_starts = 3;            // extra starts hedging nonconvex landscapes
    std::uint64_t seed = 0;          // drives the perturbed start
    std::vector<Point>* trace = nullptr;  // optional: records accepted iterates

    void validate() const;
};

/// Result of one inner solve. `residual` is the norm of the scalarized
/// subgradient selection at x_next (the direction the next step would take);
/// on smooth problems it equals the exact gradient norm there. `stalled`
/// marks runs that found no feasible decrease at all, in which case x_next is
/// the center and residual is 0.
struct InnerResult {
    Point x_next;
    double phi_final = 0.0;
    double residual = 0.0;
    int inner_iters = 0;
    bool feasible = true;
    bool stalled = false;
};

/// Backtracks from opts.step_init along -g: returns (x - t*g, t) for the
/// largest tested t such that both the Armijo condition
///   phi(x - t g) <= phi(x) - armijo_c * t * ||g||^2
/// and level-set membership F(x - t g) <= F(center) + feas_tol hold;
/// returns (x, 0) when no tested step qualifies.
std::pair<Point, double> feasible_backtrack(const RegularizedObjective& reg,
                                            const Point& x, const Point& g,
                                            const InnerOptions& opts);

/// Approximately solves the proximal subproblem: minimizes phi over the level
/// set of the center by backtracked subgradient descent that never leaves the
/// level set. The returned point always satisfies phi(x_next) <= phi(center)
/// and F(x_next) <= F(center) + feas_tol componentwise.
///
/// For smooth convex objectives this lands near the unique minimizer; for
/// quasiconvex nonsmooth ones it is a descent surrogate whose residual is
/// recorded per iterate so callers can bound the inexactness. Nonconvex
/// problems get opts.multi_starts starts (center, one subgradient step, one
/// seeded perturbation); the best feasible value wins, ties by first found.
InnerResult solve_subproblem(const RegularizedObjective& reg, const InnerOptions& opts);

}  // namespace sppm

#endif  // SPPM_INNER_SOLVER_HPP
