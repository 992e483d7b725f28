#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "capbound/errors.hpp"
#include "capbound/orthopoly.hpp"

using namespace capbound;
using namespace capbound::orthopoly;

TEST_CASE("normalized ultraspherical: low degrees in closed form") {
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double t = u(rng);
        for (int n = 3; n <= 9; ++n) {
            CHECK(gegenbauer_eval(n, 0, t) == 1.0);
            CHECK(std::abs(gegenbauer_eval(n, 1, t) - t) < 1e-14);
        }
        // n = 3: Legendre polynomials.
        CHECK(std::abs(gegenbauer_eval(3, 2, t) - 0.5 * (3.0 * t * t - 1.0)) < 1e-13);
        CHECK(std::abs(gegenbauer_eval(3, 3, t) - 0.5 * (5.0 * t * t * t - 3.0 * t)) < 1e-13);
        // n = 5: quadratic member (5 t^2 - 1)/4.
        CHECK(std::abs(gegenbauer_eval(5, 2, t) - 0.25 * (5.0 * t * t - 1.0)) < 1e-13);
    }
}

TEST_CASE("normalized ultraspherical: n = 4 is the sine ratio") {
    std::mt19937 rng(22);
    std::uniform_real_distribution<double> x(0.05, 3.09);
    for (int i = 0; i < 200; ++i) {
        const double a = x(rng);
        for (int k = 1; k <= 12; ++k) {
            const double expected = std::sin((k + 1) * a) / ((k + 1) * std::sin(a));
            CHECK(std::abs(gegenbauer_eval(4, k, std::cos(a)) - expected) < 1e-11);
        }
    }
}

TEST_CASE("normalized ultraspherical: unit value at 1, parity, bounded") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int n = 3; n <= 12; ++n) {
        for (int k = 0; k <= 30; k += 3) {
            CHECK(std::abs(gegenbauer_eval(n, k, 1.0) - 1.0) < 1e-10);
            const double t = u(rng);
            const double even = gegenbauer_eval(n, k, t);
            const double odd = gegenbauer_eval(n, k, -t);
            CHECK(std::abs(even - (k % 2 == 0 ? odd : -odd)) < 1e-10);
            CHECK(std::abs(even) <= 1.0 + 1e-10);
        }
    }
    CHECK_THROWS_AS((void)gegenbauer_eval(2, 1, 0.0), DomainError);
    CHECK_THROWS_AS((void)gegenbauer_eval(3, 1, 1.5), DomainError);
}

TEST_CASE("jacobi evaluation: closed forms") {
    std::mt19937 rng(24);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> ab(-0.5, 3.0);
    for (int i = 0; i < 200; ++i) {
        const double t = u(rng);
        const double a = ab(rng), b = ab(rng);
        CHECK(jacobi_eval({a, b, 0}, t) == 1.0);
        CHECK(std::abs(jacobi_eval({a, b, 1}, t) - (0.5 * (a + b + 2.0) * t + 0.5 * (a - b))) <
              1e-13);
    }
    // Values at 1: binomial(k + a, k) for integer parameters.
    CHECK(std::abs(jacobi_eval({1.0, 0.0, 3}, 1.0) - 4.0) < 1e-12);
    CHECK(std::abs(jacobi_eval({2.0, 1.0, 2}, 1.0) - 6.0) < 1e-12);
    // Symmetric parameters reproduce the normalized ultraspherical basis.
    for (int i = 0; i < 100; ++i) {
        const double t = u(rng);
        for (int n = 3; n <= 8; ++n) {
            const double alpha = (n - 3) / 2.0;
            for (int k = 1; k <= 8; ++k) {
                const JacobiParams p{alpha, alpha, k};
                CHECK(std::abs(jacobi_eval(p, t) / jacobi_eval(p, 1.0) -
                               gegenbauer_eval(n, k, t)) < 1e-10);
            }
        }
    }
}

TEST_CASE("greatest jacobi zero: reference roots") {
    // Frozen with an independent Gauss-Jacobi quadrature implementation.
    CHECK(std::abs(largest_root({2.5, 1.5, 3}) - 0.4826149645609088) < 1e-10);
    CHECK(std::abs(largest_root({1.0, 0.0, 5}) - 0.8029298284023472) < 1e-10);
    // Chebyshev case: root of sin(5x) scaled, cos(pi/5).
    CHECK(std::abs(largest_root({0.5, 0.5, 4}) - std::cos(3.14159265358979323846 / 5.0)) <
          1e-10);
    // Degree-1 closed form: the (alpha+1, alpha) family has root -1/n.
    for (int n = 3; n <= 10; ++n) {
        const double alpha = (n - 3) / 2.0;
        CHECK(std::abs(largest_root({alpha + 1.0, alpha, 1}) + 1.0 / n) < 1e-12);
    }
}

TEST_CASE("greatest jacobi zero: residual and range") {
    std::mt19937 rng(25);
    std::uniform_real_distribution<double> ab(-0.4, 4.0);
    for (int i = 0; i < 100; ++i) {
        const double a = ab(rng), b = ab(rng);
        const int k = 1 + static_cast<int>(std::abs(ab(rng)) * 3) % 12;
        const JacobiParams p{a, b, k};
        const double r = largest_root(p);
        CHECK(r > -1.0);
        CHECK(r < 1.0);
        CHECK(std::abs(jacobi_eval(p, r)) < 1e-7 * std::abs(jacobi_eval(p, 1.0)));
        // Nothing beyond: the polynomial keeps one sign on (r, 1].
        const double just_above = r + (1.0 - r) * 1e-3;
        CHECK(jacobi_eval(p, just_above) * jacobi_eval(p, 1.0) > 0.0);
    }
    // Roots increase with the degree.
    for (int k = 1; k <= 10; ++k) {
        CHECK(largest_root({1.5, 0.5, k}) < largest_root({1.5, 0.5, k + 1}));
    }
}

TEST_CASE("basis conversion: explicit expansion and round trips") {
    // t^2 in the n = 3 basis: (1 + 2 G_2)/3.
    const std::vector<double> sq = to_gegenbauer(3, {0.0, 0.0, 1.0});
    REQUIRE(sq.size() == 3);
    CHECK(std::abs(sq[0] - 1.0 / 3.0) < 1e-13);
    CHECK(std::abs(sq[1]) < 1e-13);
    CHECK(std::abs(sq[2] - 2.0 / 3.0) < 1e-13);

    std::mt19937 rng(26);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 100; ++i) {
        const int n = 3 + i % 6;
        const int d = 1 + i % 13;
        std::vector<double> mono(static_cast<std::size_t>(d) + 1);
        for (double& c : mono) c = u(rng);
        const std::vector<double> geg = to_gegenbauer(n, mono);
        const std::vector<double> back = from_gegenbauer(n, geg);
        REQUIRE(back.size() == mono.size());
        for (std::size_t j = 0; j < mono.size(); ++j) {
            CHECK(std::abs(back[j] - mono[j]) < 1e-9);
        }
        // The expansion really evaluates to the same polynomial.
        for (double t : {-0.9, -0.3, 0.1, 0.6, 1.0}) {
            double direct = 0.0, pw = 1.0;
            for (double c : mono) {
                direct += c * pw;
                pw *= t;
            }
            double viabasis = 0.0;
            for (std::size_t k = 0; k < geg.size(); ++k) {
                viabasis += geg[k] * gegenbauer_eval(n, static_cast<int>(k), t);
            }
            CHECK(std::abs(direct - viabasis) < 1e-8);
        }
    }
}

TEST_CASE("basis conversion: degree cap") {
    std::vector<double> big(66, 0.0);
    big.back() = 1.0;
    CHECK_THROWS_AS((void)to_gegenbauer(3, big), DomainError);
    CHECK_THROWS_AS((void)from_gegenbauer(3, big), DomainError);
}

TEST_CASE("two-basis polynomial: evaluations agree") {
    std::mt19937 rng(27);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int i = 0; i < 50; ++i) {
        const int n = 3 + i % 5;
        std::vector<double> mono(1 + i % 11);
        for (double& c : mono) c = u(rng);
        const GegenbauerPoly p = GegenbauerPoly::from_monomial(n, mono);
        CHECK(p.n == n);
        CHECK(p.degree() == static_cast<int>(mono.size()) - 1);
        for (double t : {-1.0, -0.4, 0.0, 0.3, 0.95}) {
            CHECK(std::abs(p.eval_mono(t) - p.eval_geg(t)) < 1e-9);
        }
    }
}
