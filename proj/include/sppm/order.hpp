#ifndef SPPM_ORDER_HPP
#define SPPM_ORDER_HPP

#include <Eigen/Core>

#include "sppm/errors.hpp"

namespace sppm {

/// A point of objective space R^m carrying the componentwise partial order.
using ObjectiveVector = Eigen::VectorXd;

class Problem;
using Point = Eigen::VectorXd;

/// Componentwise order induced by the cone R^m_+:
/// a <= b iff a_i <= b_i for every component.
///
/// Dimension mismatch raises DimensionError. A NaN entry is a hard error
/// (EvaluationError), never an "incomparable" result: silently ordering NaN
/// would corrupt descent certificates downstream.
bool leq(const ObjectiveVector& a, const ObjectiveVector& b);

/// Strict componentwise order induced by the interior cone R^m_{++}:
/// a < b iff a_i < b_i for every component. Same error contract as leq.
bool lt(const ObjectiveVector& a, const ObjectiveVector& b);

/// Membership in the level set {x : F(x) <= F(x_ref) componentwise},
/// relaxed by feas_tol >= 0 per component.
bool in_level_set(const Problem& problem, const Point& x, const Point& x_ref,
                  double feas_tol);

/// Same test against a precomputed reference value F(x_ref); the inner
/// solver calls this on every trial point with a cached center value.
bool in_level_set_values(const Problem& problem, const Point& x,
                         const ObjectiveVector& f_ref, double feas_tol);

}  // namespace sppm

#endif  // SPPM_ORDER_HPP
