#include <doctest.h>

#include <cmath>
#include <random>

#include "capbound/angle.hpp"
#include "capbound/bound.hpp"
#include "capbound/errors.hpp"
#include "capbound/geometry.hpp"
#include "capbound/orthopoly.hpp"
#include "capbound/sphere_bounds.hpp"

using namespace capbound;
using namespace capbound::sphere;

namespace {
constexpr double kPiL = 3.14159265358979323846;
}

TEST_CASE("circle division") {
    CHECK(exact_circle(Angle(kPiL / 3.0)).as_int() == 6);
    CHECK(exact_circle(Angle(kPiL)).as_int() == 2);
    CHECK(exact_circle(Angle(2.0)).as_int() == 3);
    CHECK(exact_circle(Angle(kPiL / 2.0)).kind == BoundKind::Exact);
    CHECK_THROWS_AS((void)exact_circle(Angle(0.0)), DomainError);
}

TEST_CASE("three-dimensional table: exact anchors") {
    CHECK(exact_3d(Angle(kPiL / 2.0)).as_int() == 6);
    CHECK(exact_3d(Angle(kPiL / 2.0)).kind == BoundKind::Exact);
    CHECK(exact_3d(Angle(2.0 * kPiL / 3.0)).as_int() == 3);
    CHECK(exact_3d(Angle(2.0)).as_int() == 3);
    CHECK(exact_3d(Angle(std::acos(-1.0 / 3.0))).as_int() == 4);
    CHECK(exact_3d(Angle(std::acos(1.0 / 3.0))).as_int() == 9);
    CHECK(exact_3d(Angle::from_degrees(66.1468)).as_int() == 10);
    CHECK(exact_3d(Angle(std::acos(1.0 / std::sqrt(5.0)))).as_int() == 12);
    CHECK(exact_3d(Angle(std::acos(1.0 / std::sqrt(5.0)))).kind == BoundKind::Exact);
    CHECK(exact_3d(Angle(kPiL)).as_int() == 2);
}

TEST_CASE("three-dimensional table: icosahedral upper regime and cutoff") {
    const Bound b = exact_3d(Angle::from_degrees(61.5));
    CHECK(b.kind == BoundKind::Upper);
    CHECK(b.as_int() == 12);
    CHECK(exact_3d(Angle::from_degrees(60.0)).as_int() == 12);
    CHECK(!exact_3d(Angle::from_degrees(59.9)).applicable());
    CHECK(!exact_3d(Angle(1.0)).applicable());
}

TEST_CASE("orthoplex and simplex regimes") {
    for (int n = 3; n <= 10; ++n) {
        const Bound b = rankin(n, Angle(kPiL / 2.0));
        CHECK(b.kind == BoundKind::Exact);
        CHECK(b.as_int() == 2 * n);
    }
    CHECK(rankin(4, Angle(2.0 * kPiL / 3.0)).as_int() == 3);
    CHECK(rankin(4, Angle(2.0 * kPiL / 3.0)).kind == BoundKind::Exact);
    CHECK(rankin(3, Angle(2.8)).as_int() == 2);
    CHECK(rankin(12, Angle(1.9)).as_int() == 4);
    CHECK(!rankin(5, Angle(1.2)).applicable());
}

TEST_CASE("universal bound: frozen anchors") {
    // Real values and interval levels frozen against an independent
    // implementation built on library Jacobi root finders.
    const double eta = geometry::eta0();
    struct Row {
        int n;
        double theta;
        double value;
        int level;
        double tol;
    };
    const Row rows[] = {
        {3, kPiL / 3.0, 13.285714285714288, 5, 1e-9},
        {4, kPiL / 3.0, 26.0, 5, 1e-8},
        {8, kPiL / 3.0, 240.0, 7, 1e-7},
        {24, kPiL / 3.0, 196560.0, 11, 2e-5},
        {6, 0.6618536319099457, 832.7694984499207, 12, 1e-7},
        {5, eta, 70.0, 7, 1e-8},
        {7, eta, 244.49742261192876, 7, 1e-7},
    };
    for (const Row& r : rows) {
        const LevValue v = levenshtein_info(r.n, r.theta);
        CHECK(std::abs(v.value - r.value) < r.tol * (1.0 + std::abs(r.value)));
        CHECK(v.level == r.level);
        CHECK(std::abs(levenshtein_value(r.n, r.theta) - v.value) < 1e-12);
    }
    CHECK(levenshtein(8, Angle(kPiL / 3.0)).as_int() == 240);
    CHECK(levenshtein(24, Angle(kPiL / 3.0)).as_int() == 196560);
    CHECK(!levenshtein(2, Angle(1.0)).applicable());
}

TEST_CASE("universal bound: monotone in both arguments") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> th(0.4, 1.8);
    for (int i = 0; i < 120; ++i) {
        const int n = 3 + i % 8;
        const double t = th(rng);
        const double v = levenshtein_value(n, t);
        CHECK(v >= 1.0);
        // Wider separation, smaller code.
        CHECK(levenshtein_value(n, t + 0.01) <= v + 1e-9);
        // Higher dimension, larger bound.
        CHECK(levenshtein_value(n + 1, t) >= v - 1e-9);
    }
}

TEST_CASE("polynomial method: frozen optima") {
    const double eta = geometry::eta0();
    struct Row {
        int n;
        double theta;
        double value;
    };
    // Frozen against an independent discretized-program solve.
    const Row rows[] = {
        {3, eta, 15.761232},
        {4, eta, 33.914538},
        {5, eta, 68.589065},
        {6, eta, 130.568485},
        {7, eta, 236.942674},
    };
    for (const Row& r : rows) {
        const DelsarteResult full = delsarte_lp_full(r.n, Angle(r.theta), 11);
        CHECK(std::abs(full.value - r.value) < 2e-4);
        CHECK(full.degree == 11);
        REQUIRE(full.coeffs.size() == 12);
        CHECK(std::abs(full.coeffs[0] - 1.0) < 1e-9);
        for (double c : full.coeffs) CHECK(c > -1e-9);
        CHECK(full.max_violation < 1e-6);
    }
    CHECK(delsarte_lp(7, Angle(eta), 11).as_int() == 236);
    CHECK(delsarte_lp(3, Angle(eta), 11).as_int() == 15);
}

TEST_CASE("polynomial method: boundary-exact instances") {
    // The degree-11 program at pi/3 in dimension 8 lands a hair under 240;
    // conservative rounding must keep the integer bound at 240.
    const DelsarteResult full = delsarte_lp_full(8, Angle(kPiL / 3.0), 11);
    CHECK(std::abs(full.value - 240.0) < 5e-5);
    CHECK(delsarte_lp(8, Angle(kPiL / 3.0), 11).as_int() == 240);

    CHECK(delsarte_lp(4, Angle(kPiL / 2.0), 11).as_int() == 8);
    for (int n = 3; n <= 10; ++n) {
        CHECK(delsarte_lp(n, Angle(kPiL), 1).as_int() == 2);
    }
}

TEST_CASE("polynomial method: the optimum is a genuine certificate") {
    const DelsarteResult r = delsarte_lp_full(5, Angle(1.1), 11);
    double f1 = 0.0;
    for (std::size_t k = 0; k < r.coeffs.size(); ++k) f1 += r.coeffs[k];
    CHECK(std::abs(f1 - r.value) < 1e-7 * (1.0 + f1));
    // Nonpositive on [-1, cos theta], checked on a fresh grid.
    const double s = std::cos(1.1);
    for (int i = 0; i <= 3000; ++i) {
        const double t = -1.0 + (s + 1.0) * i / 3000.0;
        double f = 0.0;
        for (std::size_t k = 0; k < r.coeffs.size(); ++k) {
            f += r.coeffs[k] * orthopoly::gegenbauer_eval(5, static_cast<int>(k), t);
        }
        CHECK(f < 1e-6);
    }
}

TEST_CASE("polynomial method: degree can only help") {
    const double v11 = delsarte_lp_full(4, Angle(kPiL / 2.0), 11).value;
    const double v13 = delsarte_lp_full(4, Angle(kPiL / 2.0), 13).value;
    CHECK(v13 <= v11 + 1e-6);
    CHECK_THROWS_AS((void)delsarte_lp(4, Angle(1.0), 0), DomainError);
    CHECK_THROWS_AS((void)delsarte_lp(4, Angle(1.0), 65), DomainError);
}

TEST_CASE("stored kissing bounds") {
    CHECK(kissing_table(2) == std::pair<long long, long long>{6, 6});
    CHECK(kissing_table(8) == std::pair<long long, long long>{240, 240});
    CHECK(kissing_table(5) == std::pair<long long, long long>{40, 46});
    CHECK(kissing_table(24) == std::pair<long long, long long>{196560, 196560});
    for (int n = 2; n <= 24; ++n) {
        const auto [lo, hi] = kissing_table(n);
        CHECK(lo >= 2);
        CHECK(lo <= hi);
    }
    CHECK_THROWS_AS((void)kissing_table(1), DataError);
    CHECK_THROWS_AS((void)kissing_table(25), DataError);
}

TEST_CASE("upper dispatcher: method minimum, exactness preserved") {
    const Bound k8 = sphere_upper(8, Angle(kPiL / 3.0));
    CHECK(k8.as_int() == 240);
    CHECK(k8.kind == BoundKind::Exact);

    const Bound k5 = sphere_upper(5, Angle(kPiL / 3.0));
    CHECK(k5.as_int() == 46);

    // The exact three-dimensional value wins over the universal bound.
    const Bound b3 = sphere_upper(3, Angle(std::acos(1.0 / 3.0)));
    CHECK(b3.as_int() == 9);
    CHECK(b3.kind == BoundKind::Exact);

    SphereOptions none;
    none.methods = MethodSet::none();
    CHECK(!sphere_upper(6, Angle(1.0), none).applicable());
}

TEST_CASE("upper dispatcher: value variant commutes with flooring") {
    std::mt19937 rng(32);
    std::uniform_real_distribution<double> th(0.35, 3.0);
    for (int i = 0; i < 150; ++i) {
        const int n = 3 + i % 9;
        const double t = th(rng);
        const Bound b = sphere_upper(n, Angle(t));
        const double real = sphere_upper_value(n, t);
        CHECK(std::abs(b.value - floor_bound(real)) < 1e-9);
        CHECK(real <= b.value + 1.0);
        // Memoized path is stable.
        CHECK(sphere_upper_value(n, t) == real);
    }
}

TEST_CASE("upper dispatcher: monotone in dimension and separation") {
    std::mt19937 rng(33);
    std::uniform_real_distribution<double> th(0.4, 2.6);
    for (int i = 0; i < 150; ++i) {
        const int n = 3 + i % 8;
        const double t = th(rng);
        const double v = sphere_upper_value(n, t);
        CHECK(sphere_upper_value(n + 1, t) >= v - 1e-9);
        CHECK(sphere_upper_value(n, t + 0.02) <= v + 1e-9);
    }
}

TEST_CASE("lower bounds") {
    const Bound k8 = sphere_lower(8, Angle(kPiL / 3.0));
    CHECK(k8.value == 240.0);
    const Bound k5 = sphere_lower(5, Angle(kPiL / 3.0));
    CHECK(k5.value == 40.0);
    CHECK(sphere_lower(3, Angle(kPiL / 2.0)).value == 6.0);
    CHECK(sphere_lower(3, Angle(2.0 * kPiL / 3.0)).value == 3.0);

    std::mt19937 rng(34);
    std::uniform_real_distribution<double> th(0.4, 3.0);
    for (int i = 0; i < 100; ++i) {
        const int n = 2 + i % 10;
        const double t = th(rng);
        const Bound lo = sphere_lower(n, Angle(t));
        CHECK(lo.value >= 2.0);
        const Bound hi = sphere_upper(n, Angle(t));
        if (hi.applicable()) CHECK(lo.value <= hi.value + 1e-9);
    }
}
