#ifndef SPPM_SCALARIZE_HPP
#define SPPM_SCALARIZE_HPP

#include <Eigen/Core>

#include "sppm/problem.hpp"

namespace sppm {

/// Upper bound for the proximal parameter: every alpha must satisfy
/// 0 < alpha < kAlphaBar.
inline constexpr double kAlphaBar = 1e6;

/// Per-iteration scalarization triple (z, e, alpha).
///
/// Invariants: z in R^m_+ \ {0} with ||z|| = 1; e in R^m_{++} with ||e|| = 1;
/// 0 < alpha < kAlphaBar. Construct through make() (validating) or uniform().
/// Zero entries in z are allowed: the corresponding objective then influences
/// iterations only through the level-set constraint.
struct ScalarizationParams {
    Eigen::VectorXd z;
    Eigen::VectorXd e;
    double alpha = 1.0;

    static ScalarizationParams make(Eigen::VectorXd z, Eigen::VectorXd e,
                                    double alpha);

    /// Uniform weights z = e = (1/sqrt(m), ..., 1/sqrt(m)).
    static ScalarizationParams uniform(int m, double alpha = 1.0);

    /// Normalizes z and e before validating; convenient for user input.
    static ScalarizationParams normalized(Eigen::VectorXd z, Eigen::VectorXd e,
                                          double alpha);

    /// Skips all checks. For tests that deliberately suspend the unit-norm
    /// invariant (e.g. the positive-scaling invariance of the scalarized
    /// objective).
    static ScalarizationParams make_unchecked(Eigen::VectorXd z,
                                              Eigen::VectorXd e, double alpha);
};

/// The regularization coefficient beta = alpha * <e, z>, strictly positive
/// whenever the parameter invariants hold.
double beta(const ScalarizationParams& params);

/// The scalarized, proximally regularized objective of one outer iteration:
///
///   phi(x) = <F(x), z> + (beta / 2) ||x - center||^2,  beta = alpha * <e, z>.
///
/// Immutable; one instance per outer iteration.
class RegularizedObjective {
public:
    RegularizedObjective(const Problem& base, ScalarizationParams params,
                         Point center);

    double value(const Point& x) const;

    /// Subgradient selection sum_i z_i * g_i + beta * (x - center) with g_i
    /// drawn from the component oracles; the exact gradient when the base
    /// problem is smooth.
    Point subgradient(const Point& x) const;

    double beta() const { return beta_; }
    const Point& center() const { return center_; }
    const ObjectiveVector& f_center() const { return f_center_; }
    const ScalarizationParams& params() const { return params_; }
    const Problem& problem() const { return *base_; }

private:
    const Problem* base_;
    ScalarizationParams params_;
    Point center_;
    ObjectiveVector f_center_;
    double beta_;
};

inline double phi_value(const RegularizedObjective& reg, const Point& x) {
    return reg.value(x);
}

inline Point phi_subgradient(const RegularizedObjective& reg, const Point& x) {
    return reg.subgradient(x);
}

}  // namespace sppm

#endif  // SPPM_SCALARIZE_HPP
