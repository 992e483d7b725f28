#pragma once

#include <vector>

#include "capbound/errors.hpp"

namespace capbound::orthopoly {

// Basis conversion and certificate work stay at modest degree; recurrence
// evaluation and extreme roots are stable far beyond that and the universal
// bound needs them at high degree in high dimension.
inline constexpr int kConversionDegreeCap = 64;
inline constexpr int kRecurrenceDegreeCap = 2048;

// Normalized ultraspherical polynomial G_k^{(n)}(t) for dimension n >= 3:
// orthogonal on [-1, 1] with weight (1 - t^2)^{(n-3)/2}, G_k(1) = 1.
double gegenbauer_eval(int n, int k, double t);

struct JacobiParams {
    double a;
    double b;
    int degree;
};

// Standard Jacobi polynomial P_k^{(a,b)}(t), three-term recurrence.
double jacobi_eval(const JacobiParams& p, double t);

// Greatest zero of P_degree^{(a,b)} in (-1, 1): sign-change bracketing on a
// cosine-spaced grid plus bisection to 1e-12, validated by residual.
double largest_root(const JacobiParams& p);

// Expansion of a monomial-basis polynomial (ascending powers) in the
// normalized basis {G_k^{(n)}}: triangular back-substitution, degree <= 64.
std::vector<double> to_gegenbauer(int n, const std::vector<double>& mono_coeffs);

// Inverse conversion, for round-trips and kernel evaluation.
std::vector<double> from_gegenbauer(int n, const std::vector<double>& geg_coeffs);

// A polynomial held in both bases for one dimension; the two evaluations must
// agree (checked by tests, not per call).
struct GegenbauerPoly {
    int n = 3;
    std::vector<double> mono;
    std::vector<double> geg;

    static GegenbauerPoly from_monomial(int n, std::vector<double> mono_coeffs);

    [[nodiscard]] double eval_mono(double t) const;
    [[nodiscard]] double eval_geg(double t) const;
    [[nodiscard]] int degree() const { return static_cast<int>(mono.size()) - 1; }
};

}  // namespace capbound::orthopoly
