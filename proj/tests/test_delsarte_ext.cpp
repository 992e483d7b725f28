#include <doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "capbound/angle.hpp"
#include "capbound/bound.hpp"
#include "capbound/delsarte_ext.hpp"
#include "capbound/errors.hpp"

using namespace capbound;
using namespace capbound::ext;

namespace {
constexpr double kPiL = 3.14159265358979323846;

const std::vector<double>& coeffs3() {
    static const std::vector<double> c = {-0.005, 0.1,     -2.13, -8.3,  8.575,
                                          45.8325, 0.0,    -64.35, 0.0,  30.3875};
    return c;
}

const std::vector<double>& coeffs4() {
    static const std::vector<double> c = {-0.016, -0.434, -4.128,  -9.832, 16.384,
                                          70.56,  0.0,    -107.52, 0.0,    53.76};
    return c;
}

Certificate cert3() { return verify_certificate(coeffs3(), 3, Angle(kPiL / 3.0)); }
Certificate cert4() { return verify_certificate(coeffs4(), 4, Angle(kPiL / 3.0)); }
}  // namespace

TEST_CASE("certificate acceptance: dimension 3") {
    const Certificate c = cert3();
    CHECK(c.accepted);
    CHECK(c.violations.empty());
    CHECK(std::abs(c.f0 - 1.0) < 1e-9);
    CHECK(std::abs(c.f1 - 10.11) < 1e-9);
    const double phi_deg = c.phi * 180.0 / kPiL;
    CHECK(std::abs(phi_deg - 53.794) < 0.01);
    CHECK(std::abs(phi_deg - 53.79403407) < 1e-4);
}

TEST_CASE("certificate acceptance: dimension 4") {
    const Certificate c = cert4();
    CHECK(c.accepted);
    CHECK(std::abs(c.f0 - 1.0) < 1e-6);
    CHECK(std::abs(c.f1 - 18.774) < 1e-9);
    const double phi_deg = c.phi * 180.0 / kPiL;
    CHECK(std::abs(phi_deg - 52.559) < 0.01);
    CHECK(std::abs(phi_deg - 52.5588025) < 1e-3);
}

TEST_CASE("certificate files parse to the same results") {
    const std::string dir = CAPBOUND_SOURCE_DATA_DIR;
    const Certificate f3 = verify_certificate_file(dir + "/k3_cert.poly", 3, Angle(kPiL / 3.0));
    CHECK(f3.accepted);
    CHECK(std::abs(f3.f0 - 1.0) < 1e-9);
    CHECK(std::abs(f3.phi - cert3().phi) < 1e-12);

    const Certificate f4 = verify_certificate_file(dir + "/k4_cert.poly", 4, Angle(kPiL / 3.0));
    CHECK(f4.accepted);
    CHECK(std::abs(f4.f1 - 18.774) < 1e-9);
}

TEST_CASE("rejections are reported, not thrown") {
    // Positive beyond the separation cosine: 1 + t is positive on all of
    // [-1, 1/2], leaving no admissible cap radius.
    const Certificate lin = verify_certificate({1.0, 1.0}, 3, Angle(kPiL / 3.0));
    CHECK(!lin.accepted);
    CHECK(!lin.violations.empty());

    // Negative expansion coefficient: -t^2 has a negative top coefficient.
    const Certificate neg = verify_certificate({0.0, 0.0, -1.0}, 3, Angle(kPiL / 3.0));
    CHECK(!neg.accepted);
    CHECK(!neg.violations.empty());

    // Mean value must be positive: t alone has f_0 = 0.
    const Certificate zero_mean = verify_certificate({0.0, 1.0}, 3, Angle(kPiL / 2.0));
    CHECK(!zero_mean.accepted);
}

TEST_CASE("plain certificate: nonpositive up to the separation cosine") {
    // t^2 + t <= 0 on [-1, 0]; expansion (1 + 3t + 2 G_2)/3 is admissible.
    const Certificate c = verify_certificate({0.0, 1.0, 1.0}, 3, Angle(kPiL / 2.0));
    CHECK(c.accepted);
    CHECK(c.phi == 0.0);
    CHECK(std::abs(c.f0 - 1.0 / 3.0) < 1e-12);
    CHECK(std::abs(c.f1 - 2.0) < 1e-12);

    const CapConfiguration none{0, {}};
    CHECK(std::abs(h_value(c, none) - 2.0) < 1e-12);
    const Bound b = extension_bound(c, 2.0);
    CHECK(b.as_int() == 6);
    CHECK(b.rule == "extension");
}

TEST_CASE("configuration functional on explicit layouts") {
    const Certificate c = cert3();
    const CapConfiguration none{0, {}};
    CHECK(std::abs(h_value(c, none) - 10.11) < 1e-9);

    const CapConfiguration pole{1, {{0.0, 0.0, 1.0}}};
    CHECK(std::abs(h_value(c, pole) - 12.88) < 1e-9);
}

TEST_CASE("configuration invariants are enforced") {
    const Certificate c = cert3();
    CHECK_THROWS_AS((void)h_value(c, CapConfiguration{1, {{0.0, 0.0, 2.0}}}),
                    InvalidConfigurationError);
    CHECK_THROWS_AS((void)h_value(c, CapConfiguration{1, {{1.0, 0.0, 0.0}}}),
                    InvalidConfigurationError);
    CHECK_THROWS_AS(
        (void)h_value(c, CapConfiguration{2, {{0.0, 0.0, 1.0}, {0.0, 0.0, 1.0}}}),
        InvalidConfigurationError);
    CHECK_THROWS_AS((void)h_value(c, CapConfiguration{1, {{0.0, 1.0}}}),
                    InvalidConfigurationError);
    CHECK_THROWS_AS((void)h_value(c, CapConfiguration{2, {{0.0, 0.0, 1.0}}}),
                    InvalidConfigurationError);

    Certificate rejected = c;
    rejected.accepted = false;
    CHECK_THROWS_AS((void)h_value(rejected, CapConfiguration{0, {}}), DomainError);
}

TEST_CASE("configuration search: deterministic, monotone, in range") {
    const Certificate c = cert3();
    const SearchResult a = h_m_search(c, 4, 30, 7);
    const SearchResult b = h_m_search(c, 4, 30, 7);
    CHECK(a.value == b.value);
    CHECK(a.m_used == b.m_used);
    CHECK(!a.placement_failed);
    CHECK(a.value >= 12.88 - 1e-9);
    CHECK(a.value < 13.0);

    double prev = 0.0;
    for (int m = 0; m <= 4; ++m) {
        const SearchResult r = h_m_search(c, m, 20, 7);
        CHECK(r.value >= prev - 1e-12);
        prev = r.value;
        CHECK(r.m_used <= m);
    }
    CHECK(std::abs(h_m_search(c, 0, 5, 1).value - 10.11) < 1e-9);
}

TEST_CASE("configuration search: dimension 4 stays below the certified maximum") {
    const Certificate c = cert4();
    const SearchResult r = h_m_search(c, 2, 25, 3);
    CHECK(!r.placement_failed);
    CHECK(r.value >= 24.4);
    CHECK(r.value <= 24.8644 + 1e-6);
}

TEST_CASE("extension bound: certified ceiling to integer code bound") {
    CHECK(extension_bound(cert3(), 12.999).as_int() == 12);
    CHECK(extension_bound(cert4(), 24.999).as_int() == 24);
    CHECK(extension_bound(cert3(), 12.999, {12.88, 12.5}).as_int() == 12);
    CHECK_THROWS_AS((void)extension_bound(cert3(), 12.999, {13.5}), ConsistencyError);
}

TEST_CASE("kernel positivity: admissible expansions sum nonnegatively") {
    std::mt19937 rng(61);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (const Certificate& c : {cert3(), cert4()}) {
        REQUIRE(c.accepted);
        const int n = c.n;
        for (int trial = 0; trial < 150; ++trial) {
            const int m = 2 + trial % 11;
            std::vector<std::vector<double>> pts;
            for (int i = 0; i < m; ++i) {
                std::vector<double> p(static_cast<std::size_t>(n));
                double norm = 0.0;
                for (double& v : p) {
                    v = gauss(rng);
                    norm += v * v;
                }
                norm = std::sqrt(norm);
                for (double& v : p) v /= norm;
                pts.push_back(p);
            }
            double total = 0.0;
            for (const auto& x : pts) {
                for (const auto& y : pts) {
                    double dot = 0.0;
                    for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * y[i];
                    total += c.f.eval_geg(std::clamp(dot, -1.0, 1.0));
                }
            }
            CHECK(total >= c.f0 * m * m - 1e-6);
        }
    }
}
