#ifndef SPPM_LIBRARY_HPP
#define SPPM_LIBRARY_HPP

#include <limits>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "sppm/problem.hpp"

namespace sppm {

/// Gauge (Minkowski functional) of a compact convex set with 0 in its
/// interior: gamma(v) = inf{t > 0 : v in t*C}. Supported shapes:
///   - euclidean unit ball:            gamma(v) = ||v||
///   - axis-aligned ellipsoid:         gamma(v) = sqrt(sum (v_i / a_i)^2)
///   - bounded polyhedron {<a_j, x> <= b_j}:  gamma(v) = max_j <a_j, v> / b_j
class Gauge {
public:
    static Gauge euclidean_ball();
    static Gauge ellipsoid(Eigen::VectorXd semi_axes);
    static Gauge polyhedron(Eigen::MatrixXd normals, Eigen::VectorXd offsets);

    double value(const Point& v) const;

    /// One element of the (convex) subdifferential at v. For the polyhedral
    /// gauge, ties pick the lowest maximizing halfspace index.
    Point subgradient(const Point& v) const;

    /// Fixed ambient dimension, or 0 when the gauge works in any dimension.
    int dim() const;

private:
    enum class Kind { EuclideanBall, Ellipsoid, Polyhedron };
    Kind kind_ = Kind::EuclideanBall;
    Eigen::VectorXd semi_axes_;
    Eigen::MatrixXd normals_;
    Eigen::VectorXd offsets_;
};

/// Nondecreasing scalar map applied to one gauge distance. The library
/// supplies exactly: identity, affine with nonnegative weight, and powers
/// t^q with q >= 1; arbitrary user maps cannot be validated.
class Composition {
public:
    static Composition identity();
    static Composition affine(double weight, double offset);
    static Composition power(double exponent);

    double value(double t) const;
    double derivative(double t) const;

private:
    enum class Kind { Identity, Affine, Power };
    Kind kind_ = Kind::Identity;
    double weight_ = 1.0;
    double offset_ = 0.0;
    double exponent_ = 1.0;
};

/// One cluster of demand points with a gauge and a composition per point.
/// The induced objective is phi(x) = max_j comp_j(gamma_j(x - d_j)).
struct ClusterSpec {
    std::vector<Point> demand_points;
    std::vector<Gauge> gauges;
    std::vector<Composition> compositions;
};

/// Cobb-Douglas utility mu(x1, x2) = k * x1^alpha * x2^beta with
/// k, alpha, beta > 0. `cap` optionally saturates consumption at
/// min(x_i, cap); +inf reproduces the plain utility (which is unbounded
/// above, so the negated objective then has no Pareto points).
struct CobbDouglasSpec {
    double k;
    double alpha;
    double beta;
    double cap = std::numeric_limits<double>::infinity();
};

/// CES utility mu(x1, x2) = (lambda1 * x1^rho + lambda2 * x2^rho)^(1/rho)
/// with lambda1, lambda2 >= 0, lambda1 + lambda2 = 1, rho != 0. The utility
/// is quasiconcave on the orthant only for rho <= 1.
struct CesSpec {
    double lambda1;
    double lambda2;
    double rho;
};

/// Negated Cobb-Douglas objectives on R^2: components
/// -k * max(x1,0)^alpha * max(x2,0)^beta + ||min(x,0)||^2. The quadratic
/// term keeps the problem unconstrained while steering iterates into the
/// orthant; the resulting extension has convex sublevel sets on all of R^2.
Problem make_cobb_douglas(const std::vector<CobbDouglasSpec>& specs);

/// Negated CES objectives on R^2, extended the same way. Off the orthant the
/// extension is not quasiconvex (the truncated utility stays positive when
/// only one coordinate is negative), so the sampling box of these problems is
/// the consumption domain [0, 6]^2.
Problem make_ces(const std::vector<CesSpec>& specs);

/// Minimax location objectives phi_i(x) = max_j comp_ij(gamma_ij(x - d_ij)),
/// one component per cluster; nonsmooth and quasiconvex, with max aggregation
/// over the cluster's demand points.
Problem make_location(const std::vector<ClusterSpec>& clusters);

/// Smooth convex baseline: components ||x - c_i||^2. The weak Pareto set is
/// the convex hull of the centers.
Problem make_convex_quadratic(const std::vector<Point>& centers);

/// Identifiers of the built-in problem catalog.
const std::vector<std::string>& problem_catalog();

/// Constructs a catalog problem by id; throws ConstructionError for unknown
/// ids (the message lists the catalog).
Problem make_catalog_problem(const std::string& id);

}  // namespace sppm

#endif  // SPPM_LIBRARY_HPP
