#include "sppm/order.hpp"

#include <cmath>
#include <string>

#include "sppm/problem.hpp"

namespace sppm {

namespace {

void check_pair(const ObjectiveVector& a, const ObjectiveVector& b) {
    if (a.size() != b.size()) {
        throw DimensionError("objective vectors differ in dimension: " +
                             std::to_string(a.size()) + " vs " +
                             std::to_string(b.size()));
    }
    if (a.size() == 0) {
        throw DimensionError("objective vectors must have at least one component");
    }
    for (int i = 0; i < a.size(); ++i) {
        if (!std::isfinite(a[i]) || !std::isfinite(b[i])) {
            throw EvaluationError("non-finite entry in objective vector", i);
        }
    }
}

}  // namespace

bool leq(const ObjectiveVector& a, const ObjectiveVector& b) {
    check_pair(a, b);
    for (int i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
    }
    return true;
}

bool lt(const ObjectiveVector& a, const ObjectiveVector& b) {
    check_pair(a, b);
    for (int i = 0; i < a.size(); ++i) {
        if (a[i] >= b[i]) return false;
    }
    return true;
}

bool in_level_set_values(const Problem& problem, const Point& x,
                         const ObjectiveVector& f_ref, double feas_tol) {
    ObjectiveVector f = evaluate(problem, x);
    for (int i = 0; i < f.size(); ++i) {
        if (f[i] > f_ref[i] + feas_tol) return false;
    }
    return true;
}

bool in_level_set(const Problem& problem, const Point& x, const Point& x_ref,
                  double feas_tol) {
    return in_level_set_values(problem, x, evaluate(problem, x_ref), feas_tol);
}

}  // namespace sppm
