#include "capbound/orthopoly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "capbound/angle.hpp"

namespace capbound::orthopoly {

namespace {

void check_dimension(int n) {
    if (n < 3) throw DomainError("ultraspherical basis requires n >= 3");
}

void check_recurrence_degree(int k) {
    if (k < 0) throw DomainError("negative polynomial degree");
    if (k > kRecurrenceDegreeCap) {
        throw DomainError("degree exceeds recurrence cap " + std::to_string(kRecurrenceDegreeCap));
    }
}

}  // namespace

double gegenbauer_eval(int n, int k, double t) {
    check_dimension(n);
    check_recurrence_degree(k);
    if (t < -1.0 - 1e-12 || t > 1.0 + 1e-12) {
        throw DomainError("gegenbauer_eval requires t in [-1, 1]");
    }
    if (k == 0) return 1.0;
    if (k == 1) return t;
    // Normalized recurrence (values fixed to 1 at t = 1): stays O(1) where
    // the raw ultraspherical values overflow for large k.
    const double lam = 0.5 * (n - 2);
    double pm = 1.0;
    double p = t;
    for (int j = 2; j <= k; ++j) {
        const double next = (2.0 * t * (j - 1 + lam) * p - (j - 1) * pm) / (j - 1 + 2 * lam);
        pm = p;
        p = next;
    }
    return p;
}

double jacobi_eval(const JacobiParams& prm, double t) {
    if (prm.a <= -1.0 || prm.b <= -1.0) throw DomainError("jacobi parameters must exceed -1");
    check_recurrence_degree(prm.degree);
    const double a = prm.a;
    const double b = prm.b;
    if (prm.degree == 0) return 1.0;
    double p0 = 1.0;
    double p1 = 0.5 * ((a + b + 2.0) * t + (a - b));
    for (int j = 2; j <= prm.degree; ++j) {
        const double c1 = 2.0 * j * (j + a + b) * (2.0 * j + a + b - 2.0);
        const double c2 = (2.0 * j + a + b - 1.0) *
                          ((2.0 * j + a + b) * (2.0 * j + a + b - 2.0) * t + a * a - b * b);
        const double c3 = 2.0 * (j + a - 1.0) * (j + b - 1.0) * (2.0 * j + a + b);
        const double next = (c2 * p1 - c3 * p0) / c1;
        p0 = p1;
        p1 = next;
    }
    return p1;
}

double largest_root(const JacobiParams& prm) {
    if (prm.degree < 1) throw DomainError("largest_root requires degree >= 1");
    check_recurrence_degree(prm.degree);
    auto p = [&](double x) { return jacobi_eval(prm, x); };

    // P(1) = binom(k+a, k) > 0; scan down on a cosine-spaced grid, which
    // resolves the O(1/k^2) root spacing near 1, until the sign flips.
    const int grid = 8 * prm.degree + 16;
    double hi = 1.0;
    double phi_val = p(hi);
    double lo = hi;
    bool bracketed = false;
    for (int j = 1; j <= grid; ++j) {
        lo = std::cos(kPi * j / grid);
        const double plo = p(lo);
        if (phi_val > 0.0 ? plo <= 0.0 : plo >= 0.0) {
            bracketed = true;
            break;
        }
        hi = lo;
        phi_val = plo;
    }
    if (!bracketed) throw NumericalError("largest_root: no sign change on [-1, 1]");

    for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double pm = p(mid);
        if ((phi_val > 0.0 && pm > 0.0) || (phi_val < 0.0 && pm < 0.0)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    const double root = 0.5 * (lo + hi);

    double max_abs = 0.0;
    for (int j = 0; j <= 64; ++j) {
        max_abs = std::max(max_abs, std::abs(p(-1.0 + 2.0 * j / 64.0)));
    }
    if (std::abs(p(root)) > 1e-9 * std::max(1.0, max_abs)) {
        throw NumericalError("largest_root: residual check failed");
    }
    return root;
}

namespace {

// Monomial coefficient rows of G_0..G_d for dimension n (ascending powers).
std::vector<std::vector<double>> gegenbauer_monomial_rows(int n, int d) {
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(d) + 1);
    rows[0] = {1.0};
    if (d >= 1) rows[1] = {0.0, 1.0};
    const double lam = 0.5 * (n - 2);
    for (int j = 2; j <= d; ++j) {
        const auto& p = rows[j - 1];
        const auto& pm = rows[j - 2];
        std::vector<double> next(static_cast<std::size_t>(j) + 1, 0.0);
        const double s = 1.0 / (j - 1 + 2 * lam);
        for (std::size_t i = 0; i < p.size(); ++i) {
            next[i + 1] += 2.0 * (j - 1 + lam) * s * p[i];
        }
        for (std::size_t i = 0; i < pm.size(); ++i) {
            next[i] -= (j - 1) * s * pm[i];
        }
        rows[j] = std::move(next);
    }
    return rows;
}

}  // namespace

std::vector<double> to_gegenbauer(int n, const std::vector<double>& mono_coeffs) {
    check_dimension(n);
    if (mono_coeffs.empty()) return {};
    const int d = static_cast<int>(mono_coeffs.size()) - 1;
    if (d > kConversionDegreeCap) {
        throw DomainError("basis conversion capped at degree " +
                          std::to_string(kConversionDegreeCap));
    }
    const auto rows = gegenbauer_monomial_rows(n, d);
    std::vector<double> rem = mono_coeffs;
    std::vector<double> geg(static_cast<std::size_t>(d) + 1, 0.0);
    // G_k has degree exactly k: peel leading coefficients downward.
    for (int k = d; k >= 0; --k) {
        const double lead = rows[k][static_cast<std::size_t>(k)];
        const double fk = rem[static_cast<std::size_t>(k)] / lead;
        geg[static_cast<std::size_t>(k)] = fk;
        for (std::size_t i = 0; i < rows[k].size(); ++i) {
            rem[i] -= fk * rows[k][i];
        }
    }
    return geg;
}

std::vector<double> from_gegenbauer(int n, const std::vector<double>& geg_coeffs) {
    check_dimension(n);
    if (geg_coeffs.empty()) return {};
    const int d = static_cast<int>(geg_coeffs.size()) - 1;
    if (d > kConversionDegreeCap) {
        throw DomainError("basis conversion capped at degree " +
                          std::to_string(kConversionDegreeCap));
    }
    const auto rows = gegenbauer_monomial_rows(n, d);
    std::vector<double> mono(static_cast<std::size_t>(d) + 1, 0.0);
    for (int k = 0; k <= d; ++k) {
        for (std::size_t i = 0; i < rows[k].size(); ++i) {
            mono[i] += geg_coeffs[static_cast<std::size_t>(k)] * rows[k][i];
        }
    }
    return mono;
}

GegenbauerPoly GegenbauerPoly::from_monomial(int n, std::vector<double> mono_coeffs) {
    GegenbauerPoly p;
    p.n = n;
    p.geg = to_gegenbauer(n, mono_coeffs);
    p.mono = std::move(mono_coeffs);
    return p;
}

double GegenbauerPoly::eval_mono(double t) const {
    double v = 0.0;
    for (auto it = mono.rbegin(); it != mono.rend(); ++it) v = v * t + *it;
    return v;
}

double GegenbauerPoly::eval_geg(double t) const {
    double v = 0.0;
    for (std::size_t k = 0; k < geg.size(); ++k) {
        v += geg[k] * gegenbauer_eval(n, static_cast<int>(k), t);
    }
    return v;
}

}  // namespace capbound::orthopoly
