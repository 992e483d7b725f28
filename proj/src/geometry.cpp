#include "capbound/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace capbound::geometry {

namespace {

constexpr double kCosClamp = 1e-9;
constexpr double kSinDegenerate = 1e-12;

double clamp_cos(double c, const char* what) {
    if (c > 1.0 + kCosClamp || c < -1.0 - kCosClamp) {
        std::ostringstream os;
        os << what << ": cosine " << c << " outside [-1,1] beyond tolerance";
        throw DomainError(os.str());
    }
    return std::clamp(c, -1.0, 1.0);
}

}  // namespace

double eta0() {
    static const double v = std::acos(1.0 / std::sqrt(3.0));
    return v;
}

double omega_cos_raw(double theta, double alpha, double beta) {
    const double sa = std::sin(alpha);
    const double sb = std::sin(beta);
    if (sa < kSinDegenerate || sb < kSinDegenerate) {
        throw DomainError("omega undefined at polar angle 0 or pi");
    }
    return (std::cos(theta) - std::cos(alpha) * std::cos(beta)) / (sa * sb);
}

Angle omega(Angle theta, Angle alpha, Angle beta) {
    const double raw = omega_cos_raw(theta.rad(), alpha.rad(), beta.rad());
    return Angle(std::acos(clamp_cos(raw, "omega")));
}

Angle omega(Angle theta, Angle phi) { return omega(theta, phi, phi); }

GammaResult gamma_angle(Angle theta, Angle phi) {
    const double th = theta.rad();
    const double ph = phi.rad();
    if (!(th < ph)) throw DomainError("gamma_angle requires theta < phi");
    if (ph > kPi / 2 + Angle::kTolerance) {
        throw DomainError("gamma_angle requires phi <= pi/2");
    }

    GammaResult res{Angle(0.0), 0.0, 0.0, false, {}};
    const double w = omega_cos_raw(th, ph, ph);  // target cosine, in [-1, 1)
    const double cph = std::cos(ph);

    // cos omega(theta, phi, x) as a function of x has its minimum at
    // cos x* = cos phi / cos theta and equals w again at x = phi; the second
    // root lies in (0, x*). At phi = pi/2 the minimum collides with phi and
    // no interior root exists: the recursion cannot shrink the cap.
    if (cph < kSinDegenerate) {
        res.gamma = phi;
        res.degenerate = true;
        res.notes.emplace_back("gamma degenerate at phi = pi/2 (no interior root)");
        return res;
    }

    auto q = [&](double x) { return omega_cos_raw(th, ph, x) - w; };

    const double xstar = std::acos(std::min(1.0, cph / std::cos(th)));
    double lo = 1e-12;
    double hi = xstar;
    if (q(lo) <= 0.0 || q(hi) >= 0.0) {
        // No sign change: geometry leaves no second root (theta ~ phi edge).
        throw DomainError("gamma_angle: no root of the defining equation in (0, phi)");
    }
    for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
        const double mid = 0.5 * (lo + hi);
        (q(mid) > 0.0 ? lo : hi) = mid;
    }
    const double g = 0.5 * (lo + hi);
    res.gamma = Angle(g);
    res.residual = std::abs(q(g));
    if (res.residual > 1e-9) {
        throw NumericalError("gamma_angle: defining-equation residual above 1e-9");
    }

    // Closed sine formula, cross-check only: its branch is ambiguous near
    // pi/2 and it drifts from the defining root away from special angles.
    const double ct2 = std::cos(th) * std::cos(th);
    const double cp2 = cph * cph;
    const double denom = ct2 + cp2 * (1.0 - 2.0 * std::cos(th));
    if (std::abs(denom) > 1e-12) {
        const double sg = std::sin(ph) * (ct2 - cp2) / denom;
        if (sg >= -1.0 && sg <= 1.0) {
            const double gf = std::asin(sg);
            res.formula_delta = std::abs(gf - g);
            if (res.formula_delta > 1e-6) {
                std::ostringstream os;
                os << "sine-formula cross-check differs from defining root by "
                   << res.formula_delta << " rad (root wins)";
                res.notes.push_back(os.str());
            }
        } else {
            res.notes.emplace_back("sine-formula cross-check out of asin range (root wins)");
        }
    }
    return res;
}

Angle stretch_distance(Angle theta, Angle phi, double s) {
    const double th = theta.rad();
    const double ph = phi.rad();
    if (ph <= 0.0 || ph > kPi / 2 + Angle::kTolerance) {
        throw DomainError("stretch_distance requires 0 < phi <= pi/2");
    }
    if (s < 1.0 - 1e-12) throw DomainError("stretch_distance requires s >= 1");
    if (s * ph > kPi / 2 + 1e-9) throw DomainError("stretch_distance requires s*phi <= pi/2");
    if (th > 2.0 * ph + 1e-12) throw DomainError("stretch_distance requires theta <= 2*phi");
    const double sp = std::sin(ph);
    const double csp = std::cos(s * ph);
    const double ssp = std::sin(s * ph);
    const double c = csp * csp + (ssp * ssp / (sp * sp)) * (std::cos(th) - std::cos(ph) * std::cos(ph));
    return Angle(std::acos(clamp_cos(c, "stretch_distance")));
}

double rho(Angle t, double s) {
    const double x = t.rad();
    if (s < 1.0 - 1e-12) throw DomainError("rho requires s >= 1");
    if (x <= 0.0 || x > kPi / (2.0 * s) + 1e-12) {
        throw DomainError("rho requires t in (0, pi/(2s)]");
    }
    return std::sin(s * x) / std::sin(x);
}

double inc_beta_reg(double a, double b, double x) {
    // Regularized incomplete beta via the Lentz continued fraction; the
    // symmetry I_x(a,b) = 1 - I_{1-x}(b,a) keeps the fraction convergent.
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    auto cf = [](double a_, double b_, double x_) {
        const double qab = a_ + b_;
        const double qap = a_ + 1.0;
        const double qam = a_ - 1.0;
        double c = 1.0;
        double d = 1.0 - qab * x_ / qap;
        if (std::abs(d) < 1e-300) d = 1e-300;
        d = 1.0 / d;
        double h = d;
        for (int m = 1; m <= 500; ++m) {
            const int m2 = 2 * m;
            double aa = m * (b_ - m) * x_ / ((qam + m2) * (a_ + m2));
            d = 1.0 + aa * d;
            if (std::abs(d) < 1e-300) d = 1e-300;
            c = 1.0 + aa / c;
            if (std::abs(c) < 1e-300) c = 1e-300;
            d = 1.0 / d;
            h *= d * c;
            aa = -(a_ + m) * (qab + m) * x_ / ((a_ + m2) * (qap + m2));
            d = 1.0 + aa * d;
            if (std::abs(d) < 1e-300) d = 1e-300;
            c = 1.0 + aa / c;
            if (std::abs(c) < 1e-300) c = 1e-300;
            d = 1.0 / d;
            const double del = d * c;
            h *= del;
            if (std::abs(del - 1.0) < 1e-14) return h;
        }
        throw NumericalError("incomplete beta continued fraction did not converge");
    };
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * cf(a, b, x) / a;
    }
    return 1.0 - front * cf(b, a, 1.0 - x) / b;
}

namespace {

// Integral of sin^m over [0, beta], via the incomplete beta closed form.
double sin_power_integral(int m, double beta) {
    if (beta <= 0.0) return 0.0;
    const double a = (m + 1.0) / 2.0;
    const double b = 0.5;
    const double full_half = 0.5 * std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
    if (beta >= kPi) return 2.0 * full_half;
    if (beta <= kPi / 2) {
        const double s = std::sin(beta);
        return full_half * inc_beta_reg(a, b, s * s);
    }
    const double s = std::sin(kPi - beta);
    return 2.0 * full_half - full_half * inc_beta_reg(a, b, s * s);
}

}  // namespace

double cap_area(int n, Angle beta) {
    if (n < 2) throw DomainError("cap_area requires n >= 2");
    const double coeff =
        std::exp(std::log(2.0) + 0.5 * (n - 1) * std::log(kPi) - std::lgamma(0.5 * (n - 1)));
    return coeff * sin_power_integral(n - 2, beta.rad());
}

double sphere_area(int n) {
    if (n < 2) throw DomainError("sphere_area requires n >= 2");
    return std::exp(std::log(2.0) + 0.5 * n * std::log(kPi) - std::lgamma(0.5 * n));
}

Angle spherical_cos_law(Angle a, Angle b, Angle psi) {
    const double c = std::cos(a.rad()) * std::cos(b.rad()) +
                     std::cos(psi.rad()) * std::sin(a.rad()) * std::sin(b.rad());
    return Angle(std::acos(std::clamp(c, -1.0, 1.0)));
}

}  // namespace capbound::geometry
