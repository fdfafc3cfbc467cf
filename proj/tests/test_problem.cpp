#include <doctest.h>

#include <cmath>
#include <limits>

#include "sppm/library.hpp"
#include "sppm/problem.hpp"
#include "sppm/rng.hpp"
#include "test_util.hpp"

using namespace sppm;

namespace {

Problem abs_problem() {
    return Problem("abs", 1,
                   {ComponentOracle{
                       [](const Point& x) { return std::abs(x[0]); },
                       [](const Point& x) {
                           // midpoint selection from [-1, 1] at the kink
                           return vec1(x[0] > 0 ? 1.0 : (x[0] < 0 ? -1.0 : 0.0));
                       }}},
                   /*smooth=*/false, /*claimed_quasiconvex=*/true, /*positive=*/false);
}

double central_diff(const Problem& p, int i, const Point& x, const Point& d, double h) {
    return (p.component(i).value(x + h * d) - p.component(i).value(x - h * d)) / (2 * h);
}

}  // namespace

TEST_CASE("evaluate returns all component values") {
    Problem quad = make_convex_quadratic({vec1(0.0), vec1(1.0)});
    ObjectiveVector f = evaluate(quad, vec1(0.0));
    CHECK(f[0] == doctest::Approx(0.0));
    CHECK(f[1] == doctest::Approx(1.0));

    Problem cobb = make_cobb_douglas({{1.0, 0.5, 0.5}});
    CHECK(evaluate(cobb, vec2(1, 1))[0] == doctest::Approx(-1.0));

    Problem ces = make_ces({{0.5, 0.5, 1.0}});
    CHECK(evaluate(ces, vec2(2, 2))[0] == doctest::Approx(-2.0));
}

TEST_CASE("evaluate error paths carry context") {
    Problem quad = make_convex_quadratic({vec1(0.0)});
    CHECK_THROWS_AS(evaluate(quad, vec2(0, 0)), DimensionError);

    Problem bad("bad", 1,
                {ComponentOracle{[](const Point&) { return 0.0; },
                                 [](const Point&) { return vec1(0.0); }},
                 ComponentOracle{[](const Point&) {
                                     return std::numeric_limits<double>::infinity();
                                 },
                                 [](const Point&) { return vec1(0.0); }}},
                false, false, false);
    try {
        evaluate(bad, vec1(0.0));
        FAIL("expected EvaluationError");
    } catch (const EvaluationError& e) {
        CHECK(e.component() == 1);
    }
}

TEST_CASE("subgradient selections") {
    Problem quad = make_convex_quadratic({vec1(0.0)});
    CHECK(subgradient(quad, 0, vec1(3.0))[0] == doctest::Approx(6.0));

    Problem a = abs_problem();
    CHECK(subgradient(a, 0, vec1(0.0))[0] == 0.0);  // documented midpoint selection
    CHECK(subgradient(a, 0, vec1(-2.0))[0] == -1.0);

    CHECK_THROWS_AS(subgradient(quad, 5, vec1(0.0)), DimensionError);
}

TEST_CASE("location component gradient matches central differences off the kink") {
    ClusterSpec c{{vec2(0, 0), vec2(1, 0)},
                  {Gauge::euclidean_ball(), Gauge::euclidean_ball()},
                  {Composition::identity(), Composition::identity()}};
    Problem loc = make_location({c});
    // At (0.7, 0.3) the max over branches is attained uniquely.
    Point x = vec2(0.7, 0.3);
    Rng rng(5);
    for (int t = 0; t < 20; ++t) {
        Point d = rng.on_unit_sphere(2);
        double g_dot_d = subgradient(loc, 0, x).dot(d);
        double fd = central_diff(loc, 0, x, d, 1e-5);
        CHECK(std::abs(g_dot_d - fd) <= 1e-7);
    }
}

TEST_CASE("exp transform values and chain rule") {
    Problem base("lin", 1,
                 {ComponentOracle{[](const Point& x) { return x[0]; },
                                  [](const Point&) { return vec1(1.0); }},
                  ComponentOracle{[](const Point&) { return -1.0; },
                                  [](const Point&) { return vec1(0.0); }},
                  ComponentOracle{[](const Point&) { return 0.0; },
                                  [](const Point&) { return vec1(0.0); }}},
                 true, false, false);
    Problem t = exp_transform(base);
    CHECK(t.positive());
    CHECK(evaluate(t, vec1(2.0))[1] == doctest::Approx(0.36787944117144233));
    CHECK(evaluate(t, vec1(2.0))[2] == doctest::Approx(1.0));
    CHECK(subgradient(t, 0, vec1(2.0))[0] == doctest::Approx(7.3890560989306495));
}

TEST_CASE("exp transform surfaces overflow as an evaluation error") {
    Problem big("big", 1,
                {ComponentOracle{[](const Point&) { return 1e4; },
                                 [](const Point&) { return vec1(0.0); }}},
                true, false, false);
    Problem t = exp_transform(big);
    CHECK_THROWS_AS(evaluate(t, vec1(0.0)), EvaluationError);
    CHECK_THROWS_AS(subgradient(t, 0, vec1(0.0)), EvaluationError);
}

TEST_CASE("exp transform preserves dominance") {
    Problem quad = make_convex_quadratic({vec2(0, 0), vec2(2, 0), vec2(0, 2)});
    Problem t = exp_transform(quad);
    Rng rng(42);
    for (int s = 0; s < 500; ++s) {
        Point x = rng.in_box(vec2(-5, -5), vec2(5, 5));
        Point y = rng.in_box(vec2(-5, -5), vec2(5, 5));
        CHECK(leq(evaluate(quad, x), evaluate(quad, y)) ==
              leq(evaluate(t, x), evaluate(t, y)));
    }
}

TEST_CASE("Clarke directional derivative estimator") {
    Problem a = abs_problem();
    SUBCASE("abs at the kink reaches the analytic value 1 from below") {
        double est = clarke_dir_deriv_estimate(a, 0, vec1(0.0), vec1(1.0), 1e-6, 4000, 7);
        CHECK(est >= 0.99);
        CHECK(est <= 1.0 + 1e-12);
        double est_neg = clarke_dir_deriv_estimate(a, 0, vec1(0.0), vec1(-1.0), 1e-6, 4000, 7);
        CHECK(est_neg >= 0.99);
    }
    SUBCASE("smooth case reduces to the directional derivative up to O(h)") {
        Problem quad = make_convex_quadratic({vec1(0.0)});
        // Samples live on the grid t <= 0.1 with base points in a matching
        // ball, so the quotient 2y + t deviates from 2 by at most ~3 t_max.
        double est = clarke_dir_deriv_estimate(quad, 0, vec1(1.0), vec1(1.0), 1e-4, 2000, 3);
        CHECK(est == doctest::Approx(2.0).epsilon(0.1));
        double est_neg =
            clarke_dir_deriv_estimate(quad, 0, vec1(1.0), vec1(-1.0), 1e-4, 2000, 3);
        CHECK(est_neg == doctest::Approx(-2.0).epsilon(0.1));
    }
    SUBCASE("estimates are monotone in the sample count for a fixed seed") {
        double prev = -std::numeric_limits<double>::infinity();
        for (int n : {5, 20, 80, 320, 1280}) {
            double est = clarke_dir_deriv_estimate(a, 0, vec1(0.1), vec1(1.0), 1e-5, n, 11);
            CHECK(est >= prev);
            prev = est;
        }
    }
    SUBCASE("input validation") {
        CHECK_THROWS_AS(clarke_dir_deriv_estimate(a, 0, vec1(0), vec1(0), 1e-4, 10, 0),
                        ConstructionError);
        CHECK_THROWS_AS(clarke_dir_deriv_estimate(a, 0, vec1(0), vec1(1), -1.0, 10, 0),
                        ConstructionError);
        CHECK_THROWS_AS(clarke_dir_deriv_estimate(a, 0, vec1(0), vec1(1), 1e-4, 0, 0),
                        ConstructionError);
    }
}

TEST_CASE("smooth gradients agree with central differences at O(h^2)") {
    Problem quad = make_convex_quadratic({vec1(1.0), vec1(-1.0)});
    Problem tquad = exp_transform(quad);
    Rng rng(9);
    for (double h : {1e-3, 1e-4}) {
        for (int s = 0; s < 50; ++s) {
            Point x = vec1(rng.uniform(-1.5, 1.5));
            Point d = vec1(rng.u01() < 0.5 ? 1.0 : -1.0);
            for (int i = 0; i < quad.m(); ++i) {
                double diff =
                    std::abs(subgradient(quad, i, x).dot(d) - central_diff(quad, i, x, d, h));
                CHECK(diff <= 10.0 * h * h);
                double tdiff =
                    std::abs(subgradient(tquad, i, x).dot(d) - central_diff(tquad, i, x, d, h));
                // third-derivative bound of exp(F_i) on the box
                CHECK(tdiff <= 2e4 * h * h);
            }
        }
    }
}

TEST_CASE("quasiconvexity sampling passes on every catalog problem") {
    for (const auto& id : problem_catalog()) {
        Problem p = make_catalog_problem(id);
        for (int i = 0; i < p.m(); ++i) {
            double viol = quasiconvexity_violation(p, i, 2000, 1234 + i);
            INFO(id << " component " << i);
            CHECK(viol <= 1e-10);
        }
    }
}

TEST_CASE("quasiconvexity sampling flags a genuinely nonquasiconvex function") {
    // -CES with rho = 2 has nonconvex sublevel sets on the orthant.
    Problem bad = make_ces({{0.5, 0.5, 2.0}});
    double viol = quasiconvexity_violation(bad, 0, 2000, 99);
    CHECK(viol > 1e-3);
}
