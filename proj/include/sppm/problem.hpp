#ifndef SPPM_PROBLEM_HPP
#define SPPM_PROBLEM_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "sppm/errors.hpp"
#include "sppm/order.hpp"

namespace sppm {

/// One objective component: a total finite value map on R^n together with a
/// subgradient oracle returning a single selection from the Clarke
/// subdifferential at the query point (the exact gradient where smooth).
struct ComponentOracle {
    std::function<double(const Point&)> value;
    std::function<Point(const Point&)> subgradient;
};

/// Axis-aligned box used as the sampling domain for property checks
/// (quasiconvexity sampling, finite-difference probes).
struct SampleBox {
    Point lo;
    Point hi;
};

/// A vector objective F : R^n -> R^m with per-component value and
/// subgradient oracles plus metadata flags.
///
/// Flags record claims, not derived facts: `smooth` promises that every
/// subgradient oracle returns the exact gradient; `claimed_quasiconvex`
/// records that each component is quasiconvex; `convex` strengthens that to
/// componentwise convexity; `positive` records that every component is
/// strictly positive everywhere (0 < F componentwise).
///
/// Immutable after construction; concurrent evaluation is safe as long as the
/// supplied oracles are.
class Problem {
public:
    Problem(std::string name, int n, std::vector<ComponentOracle> components,
            bool smooth, bool claimed_quasiconvex, bool positive,
            bool convex = false);

    const std::string& name() const { return name_; }
    int n() const { return n_; }
    int m() const { return static_cast<int>(components_.size()); }
    const ComponentOracle& component(int i) const { return components_[i]; }

    bool smooth() const { return smooth_; }
    bool claimed_quasiconvex() const { return claimed_quasiconvex_; }
    bool positive() const { return positive_; }
    bool convex() const { return convex_; }

    const SampleBox& sample_box() const { return sample_box_; }
    void set_sample_box(Point lo, Point hi);

private:
    std::string name_;
    int n_;
    std::vector<ComponentOracle> components_;
    bool smooth_;
    bool claimed_quasiconvex_;
    bool positive_;
    bool convex_;
    SampleBox sample_box_;
};

/// Evaluates all components at x: returns (F_1(x), ..., F_m(x)).
/// Throws DimensionError on length mismatch and EvaluationError (carrying the
/// component index) when any value comes back non-finite.
ObjectiveVector evaluate(const Problem& problem, const Point& x);

/// Returns the subgradient selection of component i (zero-based) at x.
Point subgradient(const Problem& problem, int i, const Point& x);

/// Builds the componentwise exponential transform x -> exp(F_i(x)).
///
/// The transformed problem has identical Pareto solutions, weak Pareto
/// solutions and Pareto-Clarke critical points, is strictly positive, and
/// keeps quasiconvexity and local Lipschitzness. Subgradient selections are
/// chained: exp(F_i(x)) * g_i. Overflow of exp surfaces as an
/// EvaluationError; callers should rescale the objective first.
Problem exp_transform(const Problem& problem);

/// Sampled estimate of the Clarke directional derivative
///
///   F_i^o(x, d) = limsup_{t -> 0+, y -> x} (F_i(y + t d) - F_i(y)) / t.
///
/// Draws t on the geometric grid t_j = h_min * 2^j capped at 1e-1 and, for
/// each t, a base point y uniform in the ball of radius t around x, so the
/// two limits shrink jointly. Returns the maximum sampled quotient: a lower
/// bound on the supremum over the sampled region that is monotone
/// nondecreasing in n_samples for a fixed seed.
double clarke_dir_deriv_estimate(const Problem& problem, int i, const Point& x,
                                 const Point& d, double h_min, int n_samples,
                                 std::uint64_t seed);

/// Worst quasiconvexity violation of component i found by sampling random
/// segment triples (x, y, t) inside the problem's sample box:
///   max over samples of  F_i(t x + (1-t) y) - max(F_i(x), F_i(y)).
/// Nonpositive (up to tolerance) on genuinely quasiconvex components.
double quasiconvexity_violation(const Problem& problem, int i, int n_triples,
                                std::uint64_t seed);

}  // namespace sppm

#endif  // SPPM_PROBLEM_HPP
