#include "sppm/library.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace sppm {

// ---------------------------------------------------------------------------
// Gauge
// ---------------------------------------------------------------------------

Gauge Gauge::euclidean_ball() { return Gauge{}; }

Gauge Gauge::ellipsoid(Eigen::VectorXd semi_axes) {
    if (semi_axes.size() < 1 || (semi_axes.array() <= 0.0).any()) {
        throw ConstructionError("ellipsoid gauge needs strictly positive semi-axes");
    }
    Gauge g;
    g.kind_ = Kind::Ellipsoid;
    g.semi_axes_ = std::move(semi_axes);
    return g;
}

Gauge Gauge::polyhedron(Eigen::MatrixXd normals, Eigen::VectorXd offsets) {
    if (normals.rows() < 1 || normals.rows() != offsets.size()) {
        throw ConstructionError("polyhedron gauge needs one offset per halfspace");
    }
    if ((offsets.array() <= 0.0).any()) {
        throw ConstructionError("polyhedron offsets must be positive (0 in the interior)");
    }
    Gauge g;
    g.kind_ = Kind::Polyhedron;
    g.normals_ = std::move(normals);
    g.offsets_ = std::move(offsets);
    // Boundedness sanity check: the gauge must be positive along every axis
    // direction, otherwise the set is unbounded and no gauge exists.
    const int n = static_cast<int>(g.normals_.cols());
    for (int j = 0; j < n; ++j) {
        Point unit = Point::Zero(n);
        unit[j] = 1.0;
        if (g.value(unit) <= 0.0 || g.value(-unit) <= 0.0) {
            throw ConstructionError("polyhedron is unbounded along axis " + std::to_string(j));
        }
    }
    return g;
}

int Gauge::dim() const {
    switch (kind_) {
        case Kind::EuclideanBall: return 0;
        case Kind::Ellipsoid: return static_cast<int>(semi_axes_.size());
        case Kind::Polyhedron: return static_cast<int>(normals_.cols());
    }
    return 0;
}

double Gauge::value(const Point& v) const {
    switch (kind_) {
        case Kind::EuclideanBall:
            return v.norm();
        case Kind::Ellipsoid:
            return (v.array() / semi_axes_.array()).matrix().norm();
        case Kind::Polyhedron:
            return ((normals_ * v).array() / offsets_.array()).maxCoeff();
    }
    return 0.0;
}

Point Gauge::subgradient(const Point& v) const {
    switch (kind_) {
        case Kind::EuclideanBall: {
            double nrm = v.norm();
            if (nrm == 0.0) return Point::Zero(v.size());
            return v / nrm;
        }
        case Kind::Ellipsoid: {
            double val = value(v);
            if (val == 0.0) return Point::Zero(v.size());
            return (v.array() / semi_axes_.array().square()).matrix() / val;
        }
        case Kind::Polyhedron: {
            Eigen::VectorXd scores = (normals_ * v).array() / offsets_.array();
            int best = 0;
            for (int j = 1; j < scores.size(); ++j) {
                if (scores[j] > scores[best]) best = j;  // ties keep the lowest index
            }
            return normals_.row(best).transpose() / offsets_[best];
        }
    }
    return Point::Zero(v.size());
}

// ---------------------------------------------------------------------------
// Composition
// ---------------------------------------------------------------------------

Composition Composition::identity() { return Composition{}; }

Composition Composition::affine(double weight, double offset) {
    if (weight < 0.0) throw ConstructionError("affine composition weight must be >= 0");
    if (offset < 0.0) throw ConstructionError("affine composition offset must be >= 0");
    Composition c;
    c.kind_ = Kind::Affine;
    c.weight_ = weight;
    c.offset_ = offset;
    return c;
}

Composition Composition::power(double exponent) {
    if (exponent < 1.0) throw ConstructionError("power composition needs exponent >= 1");
    Composition c;
    c.kind_ = Kind::Power;
    c.exponent_ = exponent;
    return c;
}

double Composition::value(double t) const {
    switch (kind_) {
        case Kind::Identity: return t;
        case Kind::Affine: return weight_ * t + offset_;
        case Kind::Power: return std::pow(t, exponent_);
    }
    return t;
}

double Composition::derivative(double t) const {
    switch (kind_) {
        case Kind::Identity: return 1.0;
        case Kind::Affine: return weight_;
        case Kind::Power:
            if (t == 0.0) return exponent_ == 1.0 ? 1.0 : 0.0;
            return exponent_ * std::pow(t, exponent_ - 1.0);
    }
    return 1.0;
}

// ---------------------------------------------------------------------------
// Cobb-Douglas
// ---------------------------------------------------------------------------

namespace {

double orthant_penalty(const Point& x) {
    double p = 0.0;
    for (int j = 0; j < x.size(); ++j) {
        double neg = std::min(x[j], 0.0);
        p += neg * neg;
    }
    return p;
}

Point orthant_penalty_gradient(const Point& x) {
    Point g(x.size());
    for (int j = 0; j < x.size(); ++j) g[j] = 2.0 * std::min(x[j], 0.0);
    return g;
}

}  // namespace

Problem make_cobb_douglas(const std::vector<CobbDouglasSpec>& specs) {
    if (specs.empty()) throw ConstructionError("need at least one Cobb-Douglas spec");
    for (const auto& s : specs) {
        if (!(s.k > 0.0) || !(s.alpha > 0.0) || !(s.beta > 0.0)) {
            throw ConstructionError("Cobb-Douglas requires k > 0, alpha > 0, beta > 0");
        }
        if (!(s.cap > 0.0)) throw ConstructionError("Cobb-Douglas cap must be positive");
    }

    std::vector<ComponentOracle> comps;
    for (const auto& s : specs) {
        comps.push_back(ComponentOracle{
            [s](const Point& x) {
                double a1 = std::min(std::max(x[0], 0.0), s.cap);
                double a2 = std::min(std::max(x[1], 0.0), s.cap);
                return -s.k * std::pow(a1, s.alpha) * std::pow(a2, s.beta) +
                       orthant_penalty(x);
            },
            [s](const Point& x) {
                Point g = orthant_penalty_gradient(x);
                double a1 = std::min(std::max(x[0], 0.0), s.cap);
                double a2 = std::min(std::max(x[1], 0.0), s.cap);
                if (x[0] > 0.0 && x[0] < s.cap && a2 > 0.0) {
                    g[0] -= s.k * s.alpha * std::pow(a1, s.alpha - 1.0) * std::pow(a2, s.beta);
                }
                if (x[1] > 0.0 && x[1] < s.cap && a1 > 0.0) {
                    g[1] -= s.k * s.beta * std::pow(a1, s.alpha) * std::pow(a2, s.beta - 1.0);
                }
                return g;
            }});
    }
    return Problem("cobb-douglas", 2, std::move(comps), /*smooth=*/false,
                   /*claimed_quasiconvex=*/true, /*positive=*/false);
}

// ---------------------------------------------------------------------------
// CES
// ---------------------------------------------------------------------------

Problem make_ces(const std::vector<CesSpec>& specs) {
    if (specs.empty()) throw ConstructionError("need at least one CES spec");
    for (const auto& s : specs) {
        if (s.lambda1 < 0.0 || s.lambda2 < 0.0) {
            throw ConstructionError("CES requires lambda1, lambda2 >= 0");
        }
        if (std::abs(s.lambda1 + s.lambda2 - 1.0) > 1e-12) {
            throw ConstructionError("CES weights must sum to 1 (tolerance 1e-12)");
        }
        if (s.rho == 0.0) throw ConstructionError("CES requires rho != 0");
    }

    std::vector<ComponentOracle> comps;
    for (const auto& s : specs) {
        auto utility = [s](double a1, double a2) {
            if (s.rho < 0.0 && ((a1 == 0.0 && s.lambda1 > 0.0) ||
                                (a2 == 0.0 && s.lambda2 > 0.0))) {
                return 0.0;  // limit value on the boundary
            }
            double sum = s.lambda1 * std::pow(a1, s.rho) + s.lambda2 * std::pow(a2, s.rho);
            if (sum <= 0.0) return 0.0;
            return std::pow(sum, 1.0 / s.rho);
        };
        comps.push_back(ComponentOracle{
            [utility](const Point& x) {
                double a1 = std::max(x[0], 0.0);
                double a2 = std::max(x[1], 0.0);
                return -utility(a1, a2) + orthant_penalty(x);
            },
            [s, utility](const Point& x) {
                Point g = orthant_penalty_gradient(x);
                double a1 = std::max(x[0], 0.0);
                double a2 = std::max(x[1], 0.0);
                double u = utility(a1, a2);
                if (u > 0.0) {
                    if (x[0] > 0.0 && s.lambda1 > 0.0) {
                        g[0] -= std::pow(u, 1.0 - s.rho) * s.lambda1 * std::pow(a1, s.rho - 1.0);
                    }
                    if (x[1] > 0.0 && s.lambda2 > 0.0) {
                        g[1] -= std::pow(u, 1.0 - s.rho) * s.lambda2 * std::pow(a2, s.rho - 1.0);
                    }
                }
                return g;
            }});
    }
    Problem p("ces", 2, std::move(comps), /*smooth=*/false,
              /*claimed_quasiconvex=*/true, /*positive=*/false);
    // Quasiconvexity of the penalized extension holds on the consumption
    // domain; off the orthant the truncated utility breaks it, so property
    // checks sample where the model is meaningful.
    p.set_sample_box(Point::Zero(2), Point::Constant(2, 6.0));
    return p;
}

// ---------------------------------------------------------------------------
// Location
// ---------------------------------------------------------------------------

Problem make_location(const std::vector<ClusterSpec>& clusters) {
    if (clusters.empty()) throw ConstructionError("need at least one cluster");
    const int n = clusters.front().demand_points.empty()
                      ? 0
                      : static_cast<int>(clusters.front().demand_points.front().size());
    if (n < 2) throw ConstructionError("location model needs ambient dimension n >= 2");

    bool positive = true;
    for (const auto& c : clusters) {
        const std::size_t p = c.demand_points.size();
        if (p == 0) throw ConstructionError("cluster has no demand points");
        if (c.gauges.size() != p || c.compositions.size() != p) {
            throw ConstructionError("cluster needs one gauge and one composition per demand point");
        }
        bool has_distinct = false;
        bool has_offset = false;
        for (std::size_t j = 0; j < p; ++j) {
            if (c.demand_points[j].size() != n) {
                throw ConstructionError("all demand points must share dimension n");
            }
            if (c.gauges[j].dim() != 0 && c.gauges[j].dim() != n) {
                throw ConstructionError("gauge dimension does not match ambient dimension");
            }
            if ((c.demand_points[j] - c.demand_points[0]).norm() > 0.0) has_distinct = true;
            if (c.compositions[j].value(0.0) > 0.0) has_offset = true;
        }
        // phi_i can reach zero only when a single demand point attains every
        // branch minimum; otherwise the component is strictly positive.
        if (!has_distinct && !has_offset) positive = false;
    }

    std::vector<ComponentOracle> comps;
    for (const auto& c : clusters) {
        comps.push_back(ComponentOracle{
            [c](const Point& x) {
                double best = -std::numeric_limits<double>::infinity();
                for (std::size_t j = 0; j < c.demand_points.size(); ++j) {
                    double v = c.compositions[j].value(c.gauges[j].value(x - c.demand_points[j]));
                    best = std::max(best, v);
                }
                return best;
            },
            [c](const Point& x) {
                // Active-branch rule: gradient of one maximizing branch,
                // ties broken by the lowest index.
                std::size_t best = 0;
                double best_v = -std::numeric_limits<double>::infinity();
                for (std::size_t j = 0; j < c.demand_points.size(); ++j) {
                    double v = c.compositions[j].value(c.gauges[j].value(x - c.demand_points[j]));
                    if (v > best_v) {
                        best_v = v;
                        best = j;
                    }
                }
                Point diff = x - c.demand_points[best];
                double gamma = c.gauges[best].value(diff);
                return Point(c.compositions[best].derivative(gamma) *
                             c.gauges[best].subgradient(diff));
            }});
    }
    return Problem("location", n, std::move(comps), /*smooth=*/false,
                   /*claimed_quasiconvex=*/true, positive);
}

// ---------------------------------------------------------------------------
// Convex quadratic baseline
// ---------------------------------------------------------------------------

Problem make_convex_quadratic(const std::vector<Point>& centers) {
    if (centers.empty()) throw ConstructionError("need at least one center");
    const int n = static_cast<int>(centers.front().size());
    for (const auto& c : centers) {
        if (static_cast<int>(c.size()) != n) {
            throw ConstructionError("all centers must share one dimension");
        }
    }
    std::vector<ComponentOracle> comps;
    for (const auto& c : centers) {
        comps.push_back(ComponentOracle{
            [c](const Point& x) { return (x - c).squaredNorm(); },
            [c](const Point& x) { return Point(2.0 * (x - c)); }});
    }
    return Problem("convex-quadratic", n, std::move(comps), /*smooth=*/true,
                   /*claimed_quasiconvex=*/true, /*positive=*/false,
                   /*convex=*/true);
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

namespace {

Point pt1(double a) {
    Point p(1);
    p << a;
    return p;
}

Point pt2(double a, double b) {
    Point p(2);
    p << a, b;
    return p;
}

Problem named(Problem p, const std::string& id) {
    Problem out(id, p.n(),
                [&p] {
                    std::vector<ComponentOracle> cs;
                    for (int i = 0; i < p.m(); ++i) cs.push_back(p.component(i));
                    return cs;
                }(),
                p.smooth(), p.claimed_quasiconvex(), p.positive(), p.convex());
    out.set_sample_box(p.sample_box().lo, p.sample_box().hi);
    return out;
}

}  // namespace

const std::vector<std::string>& problem_catalog() {
    static const std::vector<std::string> ids = {
        "quad-seg", "quad-01", "quad-tri", "cobb2", "ces2", "loc-2cluster", "loc-poly"};
    return ids;
}

Problem make_catalog_problem(const std::string& id) {
    if (id == "quad-seg") {
        return named(make_convex_quadratic({pt1(1.0), pt1(-1.0)}), id);
    }
    if (id == "quad-01") {
        return named(make_convex_quadratic({pt1(0.0), pt1(1.0)}), id);
    }
    if (id == "quad-tri") {
        return named(make_convex_quadratic({pt2(0, 0), pt2(2, 0), pt2(0, 2)}), id);
    }
    if (id == "cobb2") {
        // Saturated consumption keeps both utilities bounded, so runs reach
        // the common plateau instead of drifting forever.
        return named(make_cobb_douglas({{1.0, 0.5, 0.5, 2.0}, {1.0, 0.3, 0.7, 2.0}}), id);
    }
    if (id == "ces2") {
        return named(make_ces({{0.5, 0.5, 1.0}, {0.3, 0.7, 0.5}}), id);
    }
    if (id == "loc-2cluster") {
        // Two clusters over the same pair of demand points; both components
        // have their unique minimum at (0.5, 0).
        ClusterSpec c1{{pt2(0, 0), pt2(1, 0)},
                       {Gauge::euclidean_ball(), Gauge::euclidean_ball()},
                       {Composition::identity(), Composition::identity()}};
        Eigen::VectorXd axes = pt2(2.0, 1.0);
        ClusterSpec c2{{pt2(0, 0), pt2(1, 0)},
                       {Gauge::ellipsoid(axes), Gauge::ellipsoid(axes)},
                       {Composition::power(2.0), Composition::power(2.0)}};
        return named(make_location({c1, c2}), id);
    }
    if (id == "loc-poly") {
        Eigen::MatrixXd normals(4, 2);
        normals << 1, 0, -1, 0, 0, 1, 0, -1;
        Eigen::VectorXd offsets = Eigen::VectorXd::Ones(4);
        Gauge box = Gauge::polyhedron(normals, offsets);
        ClusterSpec c{{pt2(1, 1), pt2(-1, 1), pt2(0, -1)},
                      {box, box, box},
                      {Composition::identity(), Composition::identity(),
                       Composition::identity()}};
        return named(make_location({c}), id);
    }
    std::ostringstream msg;
    msg << "unknown problem id '" << id << "'; available:";
    for (const auto& known : problem_catalog()) msg << " " << known;
    throw ConstructionError(msg.str());
}

}  // namespace sppm
