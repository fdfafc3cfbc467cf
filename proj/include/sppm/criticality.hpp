#ifndef SPPM_CRITICALITY_HPP
#define SPPM_CRITICALITY_HPP

#include <cstdint>
#include <optional>

#include "sppm/problem.hpp"

namespace sppm {

enum class CriticalityMethod { SmoothQp, SampledDirections };

/// Certificate of (approximate) Pareto-Clarke criticality at a point.
///
/// A point is Pareto-Clarke critical when every direction leaves at least one
/// objective non-decreasing to first order: no common descent direction
/// exists.
///
/// Residual semantics differ by method:
///   - smooth-qp: the minimum over the unit simplex of ||sum lambda_i
///     grad F_i(x)||; zero iff 0 lies in the convex hull of the gradients,
///     which is equivalent to criticality. critical <=> residual <= tol.
///   - sampled-directions: min over sampled directions d of
///     max_i (estimated F_i^o(x, d)); nonnegative at critical points.
///     critical <=> residual >= -tol. The sampled verdict can refute
///     criticality via a witness but only statistically support it.
struct CriticalityReport {
    double residual = 0.0;
    CriticalityMethod method = CriticalityMethod::SmoothQp;
    std::optional<Point> witness_direction;  // common descent direction, if found
    int n_directions = 0;
    bool critical = false;
};

/// Min-norm convex combination of gradients. Requires problem.smooth();
/// otherwise throws MethodMismatchError. Solved in closed form for m <= 2 and
/// by projected gradient on the simplex (qp_iters iterations) for m >= 3.
/// When the residual exceeds the tolerance, -sum lambda* grad F_i is returned
/// as a witness: it is then a common descent direction.
CriticalityReport smooth_criticality_residual(const Problem& problem, const Point& x,
                                              int qp_iters = 200,
                                              double crit_tol = 1e-5);

/// Direction-sampled Pareto-Clarke test for nonsmooth problems: draws n_dirs
/// unit directions (antithetic pairs), estimates every component's Clarke
/// directional derivative along each, and looks for a direction along which
/// all of them are negative. Deterministic given the seed.
CriticalityReport sampled_pareto_clarke_test(const Problem& problem, const Point& x,
                                             int n_dirs, double h_min, int n_samples,
                                             double crit_tol, std::uint64_t seed);

}  // namespace sppm

#endif  // SPPM_CRITICALITY_HPP
