#include <doctest.h>

#include <cmath>

#include "sppm/inner_solver.hpp"
#include "sppm/library.hpp"
#include "sppm/rng.hpp"
#include "sppm/scalarize.hpp"
#include "test_util.hpp"

using namespace sppm;

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

TEST_CASE("beta = alpha * <e, z>") {
    auto p1 = ScalarizationParams::make(vec2(1, 0), vec2(kInvSqrt2, kInvSqrt2), 2.0);
    CHECK(beta(p1) == doctest::Approx(2.0 / std::sqrt(2.0)).epsilon(1e-12));

    auto p2 = ScalarizationParams::make(vec1(1), vec1(1), 1.0);
    CHECK(beta(p2) == doctest::Approx(1.0));

    auto p3 = ScalarizationParams::make(vec2(kInvSqrt2, kInvSqrt2),
                                        vec2(kInvSqrt2, kInvSqrt2), 3.0);
    CHECK(beta(p3) == doctest::Approx(3.0));
    CHECK(beta(p3) > 0.0);
}

TEST_CASE("parameter invariants are enforced") {
    Eigen::VectorXd u = vec2(kInvSqrt2, kInvSqrt2);
    CHECK_THROWS_AS(ScalarizationParams::make(u, u, 0.0), ConstructionError);
    CHECK_THROWS_AS(ScalarizationParams::make(u, u, -1.0), ConstructionError);
    CHECK_THROWS_AS(ScalarizationParams::make(u, u, 1e7), ConstructionError);  // alpha_bar
    CHECK_THROWS_AS(ScalarizationParams::make(vec2(0, 0), u, 1.0), ConstructionError);
    CHECK_THROWS_AS(ScalarizationParams::make(vec2(-kInvSqrt2, kInvSqrt2), u, 1.0),
                    ConstructionError);
    CHECK_THROWS_AS(ScalarizationParams::make(vec2(1, 1), u, 1.0), ConstructionError);
    CHECK_THROWS_AS(ScalarizationParams::make(u, vec2(1, 0), 1.0), ConstructionError);
    CHECK_THROWS_AS(ScalarizationParams::make(u, vec2(1, 1), 1.0), ConstructionError);
    // z may contain zeros as long as it is nonzero overall
    CHECK_NOTHROW(ScalarizationParams::make(vec2(1, 0), u, 1.0));
    CHECK_NOTHROW(ScalarizationParams::uniform(3));
}

TEST_CASE("phi value") {
    Problem quad = make_convex_quadratic({vec1(0.0)});  // F = x^2
    auto params = ScalarizationParams::make(vec1(1), vec1(1), 2.0);
    RegularizedObjective reg(quad, params, vec1(1.0));
    CHECK(reg.beta() == doctest::Approx(2.0));
    // 0.25 + (2/2) * 0.25
    CHECK(phi_value(reg, vec1(0.5)) == doctest::Approx(0.5));
    // At the center the regularizer vanishes exactly.
    CHECK(phi_value(reg, vec1(1.0)) == evaluate(quad, vec1(1.0)).dot(params.z));
}

TEST_CASE("phi subgradient") {
    Problem quad = make_convex_quadratic({vec1(0.0)});
    auto params = ScalarizationParams::make(vec1(1), vec1(1), 2.0);
    RegularizedObjective reg(quad, params, vec1(1.0));
    // 2*0.5 + 2*(0.5 - 1) = 0: stationary point of x^2 + (x-1)^2
    CHECK(phi_subgradient(reg, vec1(0.5))[0] == doctest::Approx(0.0));

    Problem tri = make_convex_quadratic({vec2(0, 0), vec2(2, 0), vec2(0, 2)});
    auto p3 = ScalarizationParams::uniform(3, 1.5);
    Point center = vec2(0.3, -0.4);
    RegularizedObjective reg3(tri, p3, center);
    Point expected = Point::Zero(2);
    for (int i = 0; i < 3; ++i) expected += p3.z[i] * subgradient(tri, i, center);
    CHECK((phi_subgradient(reg3, center) - expected).norm() <= 1e-14);

    SUBCASE("finite differences on random points") {
        Rng rng(21);
        for (int s = 0; s < 30; ++s) {
            Point x = rng.in_box(vec2(-3, -3), vec2(3, 3));
            Point d = rng.on_unit_sphere(2);
            double h = 1e-4;
            double fd = (phi_value(reg3, x + h * d) - phi_value(reg3, x - h * d)) / (2 * h);
            CHECK(std::abs(phi_subgradient(reg3, x).dot(d) - fd) <= 1e-6);
        }
    }
}

TEST_CASE("positive scaling of z leaves the inner argmin unchanged") {
    Problem tri = make_convex_quadratic({vec2(0, 0), vec2(2, 0), vec2(0, 2)});
    Point center = vec2(1.5, 1.5);
    Eigen::VectorXd z = vec3(0.5, 0.3, 0.2);
    Eigen::VectorXd e = Eigen::VectorXd::Constant(3, 1.0 / std::sqrt(3.0));

    InnerOptions opts;
    opts.inner_tol = 1e-12;
    opts.max_inner_iters = 5000;

    RegularizedObjective reg1(tri, ScalarizationParams::make_unchecked(z, e, 1.0), center);
    RegularizedObjective reg2(tri, ScalarizationParams::make_unchecked(2.0 * z, e, 1.0),
                              center);
    InnerResult r1 = solve_subproblem(reg1, opts);
    InnerResult r2 = solve_subproblem(reg2, opts);
    CHECK((r1.x_next - r2.x_next).norm() <= 1e-8);
    // phi itself scales by exactly the same factor.
    Point probe = vec2(0.7, 0.9);
    CHECK(phi_value(reg2, probe) == doctest::Approx(2.0 * phi_value(reg1, probe)).epsilon(1e-14));
}

TEST_CASE("strong convexity: inner solver reproduces the analytic prox") {
    // With m = 1 and z = e = (1), the step is the classical proximal point:
    // argmin x^2 + (alpha/2)(x - c)^2 = c * alpha / (alpha + 2).
    Problem quad = make_convex_quadratic({vec1(0.0)});
    for (double alpha : {0.5, 1.0, 2.0, 10.0}) {
        for (double c : {1.0, -0.7, 3.0}) {
            auto params = ScalarizationParams::make(vec1(1), vec1(1), alpha);
            RegularizedObjective reg(quad, params, vec1(c));
            InnerOptions opts;
            opts.inner_tol = 1e-13;
            opts.max_inner_iters = 20000;
            InnerResult res = solve_subproblem(reg, opts);
            CHECK(res.x_next[0] == doctest::Approx(c * alpha / (alpha + 2.0)).epsilon(1e-10));
        }
    }
}
