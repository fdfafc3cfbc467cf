#include <doctest.h>

#include <cmath>
#include <limits>

#include "sppm/library.hpp"
#include "sppm/order.hpp"
#include "sppm/rng.hpp"
#include "test_util.hpp"

using namespace sppm;

TEST_CASE("leq is the componentwise order") {
    CHECK(leq(vec2(1, 2), vec2(1, 3)));
    CHECK_FALSE(leq(vec2(1, 2), vec2(0, 3)));
    CHECK(leq(vec2(0, 0), vec2(0, 0)));
}

TEST_CASE("lt is the strict componentwise order") {
    CHECK(lt(vec2(1, 2), vec2(2, 3)));
    CHECK_FALSE(lt(vec2(1, 2), vec2(1, 3)));
    CHECK_FALSE(lt(vec1(5), vec1(5)));
}

TEST_CASE("order rejects dimension mismatches and NaN") {
    CHECK_THROWS_AS(leq(vec2(1, 2), vec1(1)), DimensionError);
    CHECK_THROWS_AS(lt(vec1(1), vec2(1, 2)), DimensionError);
    double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(leq(vec2(nan, 0), vec2(0, 0)), EvaluationError);
    CHECK_THROWS_AS(lt(vec2(0, 0), vec2(0, nan)), EvaluationError);
    double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(leq(vec2(inf, 0), vec2(0, 0)), EvaluationError);
}

TEST_CASE("partial-order axioms hold on random vectors") {
    Rng rng(2024);
    const int trials = 2000;
    for (int t = 0; t < trials; ++t) {
        int m = 1 + static_cast<int>(rng.next_u64() % 4);
        Eigen::VectorXd a(m), step1(m), step2(m);
        for (int i = 0; i < m; ++i) {
            a[i] = rng.uniform(-10, 10);
            step1[i] = rng.u01() < 0.3 ? 0.0 : rng.uniform(0, 5);
            step2[i] = rng.u01() < 0.3 ? 0.0 : rng.uniform(0, 5);
        }
        Eigen::VectorXd b = a + step1;
        Eigen::VectorXd c = b + step2;

        CHECK(leq(a, a));             // reflexivity
        CHECK(leq(a, b));
        CHECK(leq(b, c));
        CHECK(leq(a, c));             // transitivity along the chain
        if (leq(b, a)) CHECK(b == a); // antisymmetry
        if (lt(a, b)) CHECK(leq(a, b));
        CHECK_FALSE(lt(a, a));
    }
}

TEST_CASE("in_level_set evaluates the componentwise sublevel test") {
    // F = (x^2, (x-1)^2)
    Problem p = make_convex_quadratic({vec1(0.0), vec1(1.0)});
    // F_2(0.5) = 0.25 > F_2(1) = 0, so membership fails.
    CHECK_FALSE(in_level_set(p, vec1(0.5), vec1(1.0), 0.0));
    // F_1(0.75) = 0.5625 > F_1(0.5) = 0.25.
    CHECK_FALSE(in_level_set(p, vec1(0.75), vec1(0.5), 0.0));
    CHECK(in_level_set(p, vec1(0.5), vec1(1.0), 0.26));  // tolerance absorbs it
}

TEST_CASE("every catalog problem contains its own reference point") {
    Rng rng(77);
    for (const auto& id : problem_catalog()) {
        Problem p = make_catalog_problem(id);
        for (int t = 0; t < 10; ++t) {
            Point x = rng.in_box(p.sample_box().lo, p.sample_box().hi);
            CHECK(in_level_set(p, x, x, 0.0));
        }
    }
}
