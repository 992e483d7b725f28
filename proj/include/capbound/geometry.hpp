#pragma once

#include <string>
#include <vector>

#include "capbound/angle.hpp"
#include "capbound/errors.hpp"

namespace capbound::geometry {

// arccos(1/sqrt(3)), the separation at which hemisphere halving meets the
// kissing regime; appears throughout the one-sided bounds.
double eta0();

// Raw cosine of the equatorial-projection distance between points at polar
// angles alpha, beta and mutual separation theta. No clamping: callers probe
// feasibility (raw > 1 means the polar angles force the pair closer than
// theta, i.e. the configuration cannot exist). Degenerate polar angles throw.
double omega_cos_raw(double theta, double alpha, double beta);

// Projection distance omega(theta, alpha, beta); omega(theta, phi) is the
// equal-radius shorthand. Cosine clamped within 1e-9 of [-1, 1]; beyond that,
// DomainError (geometrically infeasible configuration).
Angle omega(Angle theta, Angle alpha, Angle beta);
Angle omega(Angle theta, Angle phi);

struct GammaResult {
    Angle gamma;          // second root of cos omega(theta,phi,x) = cos omega(theta,phi)
    double residual;      // |cos omega(theta,phi,gamma) - cos omega(theta,phi)|
    double formula_delta; // |gamma - closed sine-formula value| (cross-check)
    bool degenerate;      // true when no interior root exists (phi = pi/2): gamma = phi
    std::vector<std::string> notes;
};

// The recursion angle gamma: the root in (0, phi) of the defining equation
// cos omega(theta, phi, gamma) = cos omega(theta, phi), located by bisection.
// The closed sine formula is evaluated as a cross-check only; disagreement
// beyond 1e-6 rad is recorded in notes (the root wins). Requires theta < phi.
GammaResult gamma_angle(Angle theta, Angle phi);

// Distance law of the meridian-stretching map T_s: two points at polar angle
// phi and separation theta map to polar angle s*phi and separation theta'.
// At s = pi/(2*phi) (cap onto hemisphere) theta' equals omega(theta, phi).
Angle stretch_distance(Angle theta, Angle phi, double s);

// rho(t, s) = sin(s t)/sin t on (0, pi/(2s)]; strictly decreasing, < s.
double rho(Angle t, double s);

// Limit of rho at t -> 0, exposed separately from rho itself.
inline double rho_limit(double s) { return s; }

// Surface measure of the cap of radius beta on S^{n-1}; the full-sphere value
// is cap_area(n, pi) = 2 pi^{n/2} / Gamma(n/2). Incomplete-beta closed form,
// relative accuracy 1e-10.
double cap_area(int n, Angle beta);
double sphere_area(int n);

// Spherical law of cosines: side c of a triangle with sides a, b enclosing
// angle psi.
Angle spherical_cos_law(Angle a, Angle b, Angle psi);

// Regularized incomplete beta I_x(a, b) (continued-fraction evaluation),
// exposed for the area computations and their tests.
double inc_beta_reg(double a, double b, double x);

}  // namespace capbound::geometry
