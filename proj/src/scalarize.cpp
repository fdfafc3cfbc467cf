#include "sppm/scalarize.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace sppm {

namespace {

constexpr double kNormTol = 1e-12;

void validate(const Eigen::VectorXd& z, const Eigen::VectorXd& e, double alpha) {
    if (z.size() < 1 || e.size() != z.size()) {
        throw ConstructionError("scalarization weights z and e must share dimension m >= 1");
    }
    for (int i = 0; i < z.size(); ++i) {
        if (!std::isfinite(z[i]) || z[i] < 0.0) {
            throw ConstructionError("z must lie in R^m_+ \\ {0}");
        }
        if (!std::isfinite(e[i]) || e[i] <= 0.0) {
            throw ConstructionError("e must lie in R^m_{++}");
        }
    }
    if (z.maxCoeff() <= 0.0) throw ConstructionError("z must lie in R^m_+ \\ {0}");
    if (std::abs(z.norm() - 1.0) > kNormTol) {
        throw ConstructionError("z must have unit norm (tolerance 1e-12)");
    }
    if (std::abs(e.norm() - 1.0) > kNormTol) {
        throw ConstructionError("e must have unit norm (tolerance 1e-12)");
    }
    if (!(alpha > 0.0) || !(alpha < kAlphaBar)) {
        throw ConstructionError("alpha must satisfy 0 < alpha < alpha_bar (" +
                                std::to_string(kAlphaBar) + ")");
    }
}

}  // namespace

ScalarizationParams ScalarizationParams::make(Eigen::VectorXd z, Eigen::VectorXd e,
                                              double alpha) {
    validate(z, e, alpha);
    return ScalarizationParams{std::move(z), std::move(e), alpha};
}

ScalarizationParams ScalarizationParams::uniform(int m, double alpha) {
    if (m < 1) throw ConstructionError("m must be >= 1");
    Eigen::VectorXd u = Eigen::VectorXd::Constant(m, 1.0 / std::sqrt(double(m)));
    return make(u, u, alpha);
}

ScalarizationParams ScalarizationParams::normalized(Eigen::VectorXd z,
                                                    Eigen::VectorXd e, double alpha) {
    if (z.size() >= 1 && z.norm() > 0.0) z /= z.norm();
    if (e.size() >= 1 && e.norm() > 0.0) e /= e.norm();
    return make(std::move(z), std::move(e), alpha);
}

ScalarizationParams ScalarizationParams::make_unchecked(Eigen::VectorXd z,
                                                        Eigen::VectorXd e,
                                                        double alpha) {
    return ScalarizationParams{std::move(z), std::move(e), alpha};
}

double beta(const ScalarizationParams& params) { return params.alpha * params.e.dot(params.z); }

RegularizedObjective::RegularizedObjective(const Problem& base,
                                           ScalarizationParams params, Point center)
    : base_(&base), params_(std::move(params)), center_(std::move(center)) {
    if (params_.z.size() != base.m()) {
        throw DimensionError("scalarization weights have dimension " +
                             std::to_string(params_.z.size()) + ", problem has m = " +
                             std::to_string(base.m()));
    }
    if (center_.size() != base.n()) {
        throw DimensionError("center has wrong dimension");
    }
    f_center_ = evaluate(base, center_);
    beta_ = sppm::beta(params_);
}

double RegularizedObjective::value(const Point& x) const {
    ObjectiveVector f = evaluate(*base_, x);
    return f.dot(params_.z) + 0.5 * beta_ * (x - center_).squaredNorm();
}

Point RegularizedObjective::subgradient(const Point& x) const {
    Point g = beta_ * (x - center_);
    for (int i = 0; i < base_->m(); ++i) {
        if (params_.z[i] == 0.0) continue;  // component acts only through the level set
        g += params_.z[i] * sppm::subgradient(*base_, i, x);
    }
    return g;
}

}  // namespace sppm
