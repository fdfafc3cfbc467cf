#include "sppm/criticality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "sppm/rng.hpp"

namespace sppm {

namespace {

/// Euclidean projection onto the unit simplex (sort-based).
Eigen::VectorXd project_simplex(Eigen::VectorXd v) {
    const int m = static_cast<int>(v.size());
    std::vector<double> u(v.data(), v.data() + m);
    std::sort(u.begin(), u.end(), std::greater<double>());
    double cssv = 0.0;
    double theta = 0.0;
    for (int j = 0; j < m; ++j) {
        cssv += u[j];
        double t = (cssv - 1.0) / (j + 1);
        if (u[j] - t > 0.0) theta = t;
    }
    for (int j = 0; j < m; ++j) v[j] = std::max(v[j] - theta, 0.0);
    return v;
}

}  // namespace

CriticalityReport smooth_criticality_residual(const Problem& problem, const Point& x,
                                              int qp_iters, double crit_tol) {
    if (!problem.smooth()) {
        throw MethodMismatchError(
            "smooth criticality test requested on a problem not flagged smooth; "
            "use the sampled Pareto-Clarke test");
    }
    const int m = problem.m();
    std::vector<Point> grads;
    grads.reserve(m);
    for (int i = 0; i < m; ++i) grads.push_back(subgradient(problem, i, x));

    Eigen::VectorXd lambda;
    if (m == 1) {
        lambda = Eigen::VectorXd::Ones(1);
    } else if (m == 2) {
        // Minimize ||l*g1 + (1-l)*g2|| over l in [0,1]: quadratic in l.
        Point diff = grads[0] - grads[1];
        double denom = diff.squaredNorm();
        double l = denom == 0.0 ? 0.0 : -grads[1].dot(diff) / denom;
        l = std::clamp(l, 0.0, 1.0);
        lambda = Eigen::VectorXd(2);
        lambda << l, 1.0 - l;
    } else {
        // Projected gradient on the simplex with a fixed 1/L step.
        Eigen::MatrixXd G(x.size(), m);
        for (int i = 0; i < m; ++i) G.col(i) = grads[i];
        Eigen::MatrixXd Q = G.transpose() * G;
        double L = 2.0 * std::max(Q.norm(), 1e-12);
        lambda = Eigen::VectorXd::Constant(m, 1.0 / m);
        for (int it = 0; it < qp_iters; ++it) {
            Eigen::VectorXd grad = 2.0 * (Q * lambda);
            lambda = project_simplex(lambda - grad / L);
        }
    }

    Point combo = Point::Zero(x.size());
    for (int i = 0; i < m; ++i) combo += lambda[i] * grads[i];

    CriticalityReport report;
    report.method = CriticalityMethod::SmoothQp;
    report.residual = combo.norm();
    report.n_directions = 0;
    report.critical = report.residual <= crit_tol;
    if (!report.critical) report.witness_direction = -combo;
    return report;
}

CriticalityReport sampled_pareto_clarke_test(const Problem& problem, const Point& x,
                                             int n_dirs, double h_min, int n_samples,
                                             double crit_tol, std::uint64_t seed) {
    if (n_dirs < 1) throw ConstructionError("n_dirs must be >= 1");
    if (!(crit_tol > 0.0)) throw ConstructionError("crit_tol must be positive");

    const int n = problem.n();
    Rng dir_rng(mix_seed(seed, 0xd15cULL));

    CriticalityReport report;
    report.method = CriticalityMethod::SampledDirections;
    report.n_directions = n_dirs;
    report.residual = std::numeric_limits<double>::infinity();

    Point pending;  // second half of the antithetic pair
    bool have_pending = false;
    for (int j = 0; j < n_dirs; ++j) {
        Point d;
        if (have_pending) {
            d = pending;
            have_pending = false;
        } else {
            d = dir_rng.on_unit_sphere(n);
            pending = -d;
            have_pending = true;
        }

        // Largest estimated directional derivative over the components: the
        // direction refutes criticality only if every component decreases.
        double worst = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < problem.m(); ++i) {
            double est = clarke_dir_deriv_estimate(problem, i, x, d, h_min, n_samples,
                                                   mix_seed(seed, 1000003ULL * j + i));
            worst = std::max(worst, est);
            if (worst >= report.residual) break;  // cannot improve the minimum
        }
        if (worst < report.residual) {
            report.residual = worst;
            if (worst < -crit_tol) report.witness_direction = d;
        }
    }

    report.critical = report.residual >= -crit_tol;
    if (report.critical) report.witness_direction.reset();
    return report;
}

}  // namespace sppm
