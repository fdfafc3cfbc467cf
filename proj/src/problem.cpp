#include "sppm/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sppm/rng.hpp"

namespace sppm {

Problem::Problem(std::string name, int n, std::vector<ComponentOracle> components,
                 bool smooth, bool claimed_quasiconvex, bool positive, bool convex)
    : name_(std::move(name)),
      n_(n),
      components_(std::move(components)),
      smooth_(smooth),
      claimed_quasiconvex_(claimed_quasiconvex),
      positive_(positive),
      convex_(convex) {
    if (n_ < 1) throw ConstructionError("problem dimension n must be >= 1");
    if (components_.empty()) {
        throw ConstructionError("problem needs at least one objective component");
    }
    for (const auto& c : components_) {
        if (!c.value || !c.subgradient) {
            throw ConstructionError("every component needs value and subgradient oracles");
        }
    }
    sample_box_.lo = Point::Constant(n_, -5.0);
    sample_box_.hi = Point::Constant(n_, 5.0);
}

void Problem::set_sample_box(Point lo, Point hi) {
    if (lo.size() != n_ || hi.size() != n_) {
        throw DimensionError("sample box dimension does not match problem");
    }
    sample_box_.lo = std::move(lo);
    sample_box_.hi = std::move(hi);
}

namespace {

void check_point(const Problem& problem, const Point& x) {
    if (x.size() != problem.n()) {
        throw DimensionError("point has dimension " + std::to_string(x.size()) +
                             ", problem expects " + std::to_string(problem.n()));
    }
    for (int j = 0; j < x.size(); ++j) {
        if (!std::isfinite(x[j])) {
            throw EvaluationError("non-finite coordinate in point");
        }
    }
}

}  // namespace

ObjectiveVector evaluate(const Problem& problem, const Point& x) {
    check_point(problem, x);
    ObjectiveVector f(problem.m());
    for (int i = 0; i < problem.m(); ++i) {
        double v = problem.component(i).value(x);
        if (!std::isfinite(v)) {
            throw EvaluationError("component " + std::to_string(i) +
                                      " of '" + problem.name() +
                                      "' evaluated to a non-finite value",
                                  i);
        }
        f[i] = v;
    }
    return f;
}

Point subgradient(const Problem& problem, int i, const Point& x) {
    check_point(problem, x);
    if (i < 0 || i >= problem.m()) {
        throw DimensionError("component index " + std::to_string(i) +
                             " out of range [0, " + std::to_string(problem.m()) + ")");
    }
    Point g = problem.component(i).subgradient(x);
    if (g.size() != problem.n()) {
        throw EvaluationError("subgradient oracle of component " + std::to_string(i) +
                                  " returned wrong dimension",
                              i);
    }
    for (int j = 0; j < g.size(); ++j) {
        if (!std::isfinite(g[j])) {
            throw EvaluationError("subgradient of component " + std::to_string(i) +
                                      " has a non-finite entry",
                                  i);
        }
    }
    return g;
}

Problem exp_transform(const Problem& problem) {
    std::vector<ComponentOracle> transformed;
    transformed.reserve(problem.m());
    for (int i = 0; i < problem.m(); ++i) {
        ComponentOracle base = problem.component(i);
        transformed.push_back(ComponentOracle{
            [base, i](const Point& x) {
                double v = std::exp(base.value(x));
                if (!std::isfinite(v)) {
                    throw EvaluationError(
                        "exp transform overflowed on component " + std::to_string(i) +
                            "; rescale the objective before transforming",
                        i);
                }
                return v;
            },
            [base, i](const Point& x) {
                double scale = std::exp(base.value(x));
                if (!std::isfinite(scale)) {
                    throw EvaluationError(
                        "exp transform overflowed on component " + std::to_string(i) +
                            "; rescale the objective before transforming",
                        i);
                }
                return Point(scale * base.subgradient(x));
            }});
    }
    Problem out("exp(" + problem.name() + ")", problem.n(), std::move(transformed),
                problem.smooth(), problem.claimed_quasiconvex(), /*positive=*/true,
                problem.convex());
    out.set_sample_box(problem.sample_box().lo, problem.sample_box().hi);
    return out;
}

double clarke_dir_deriv_estimate(const Problem& problem, int i, const Point& x,
                                 const Point& d, double h_min, int n_samples,
                                 std::uint64_t seed) {
    check_point(problem, x);
    if (d.size() != x.size()) throw DimensionError("direction dimension mismatch");
    if (d.norm() <= 0.0) throw ConstructionError("direction must be nonzero");
    if (h_min <= 0.0) throw ConstructionError("h_min must be positive");
    if (n_samples < 1) throw ConstructionError("n_samples must be >= 1");
    if (i < 0 || i >= problem.m()) {
        throw DimensionError("component index out of range");
    }

    // Geometric step grid h_min * 2^j capped at 1e-1.
    std::vector<double> grid;
    for (double t = h_min; t <= 1e-1; t *= 2.0) grid.push_back(t);
    if (grid.empty()) grid.push_back(h_min);

    const auto& f = problem.component(i).value;
    Rng rng(seed);
    double best = -std::numeric_limits<double>::infinity();
    for (int s = 0; s < n_samples; ++s) {
        double t = grid[s % grid.size()];
        Point y = x + t * rng.in_unit_ball(static_cast<int>(x.size()));
        double q = (f(y + t * d) - f(y)) / t;
        if (std::isfinite(q)) best = std::max(best, q);
    }
    return best;
}

double quasiconvexity_violation(const Problem& problem, int i, int n_triples,
                                std::uint64_t seed) {
    const auto& f = problem.component(i).value;
    const SampleBox& box = problem.sample_box();
    Rng rng(seed);
    double worst = 0.0;
    for (int s = 0; s < n_triples; ++s) {
        Point x = rng.in_box(box.lo, box.hi);
        Point y = rng.in_box(box.lo, box.hi);
        double t = rng.u01();
        double mid = f(t * x + (1.0 - t) * y);
        double cap = std::max(f(x), f(y));
        worst = std::max(worst, mid - cap);
    }
    return worst;
}

}  // namespace sppm
