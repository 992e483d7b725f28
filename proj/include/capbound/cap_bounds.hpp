#pragma once

#include "capbound/angle.hpp"
#include "capbound/bound.hpp"
#include "capbound/sphere_bounds.hpp"

namespace capbound::cap {

struct CapSpec {
    int n;        // ambient dimension, sphere S^{n-1}
    Angle theta;  // minimum pairwise separation
    Angle phi;    // cap radius (= pi/2 means hemisphere-sized cap)

    [[nodiscard]] std::string describe() const;
};

struct StripSpec {
    int n;
    Angle theta;
    Angle psi;  // inner radius
    Angle phi;  // outer radius, psi <= phi <= pi/2

    [[nodiscard]] std::string describe() const;
};

struct CapMethods {
    bool ls1 = true;
    bool ls2 = true;
    bool avz = true;
    bool hemi = true;
    bool two_part = true;
    bool partition = true;

    static CapMethods all() { return {}; }
};

// Lift to the next dimension: A(n,theta,phi) <= A(n+1, omega(theta,phi)).
Bound eq_ls1(const CapSpec& spec, const sphere::SphereOptions& options = {});

// Tangent-plane shrink: A(n,theta,phi) <= A(n, 2 arcsin(sin(theta/2) cot phi));
// vacuous (+inf) at phi = pi/2.
Bound eq_ls2(const CapSpec& spec, const sphere::SphereOptions& options = {});

// Strip bound: full case analysis on theta vs the strip geometry with the
// recursion angle gamma; recursion on narrower strips, fallbacks flagged.
Bound avz_strip(const StripSpec& spec, const sphere::SphereOptions& options = {});

// Cap corollary of the strip bound: the gamma-cascade
// A(n,theta,phi) <= A(n,theta,gamma) + A(n-1, omega(theta,phi)), memoized.
Bound avz_cap(const CapSpec& spec, const sphere::SphereOptions& options = {});

// Large-separation regime phi < theta <= 2 phi: the cap code projects
// bijectively to the equator, A(n,theta,phi) = A(n-1, omega(theta,phi));
// exact whenever the projected sphere value is exact.
Bound exact_large_angle(const CapSpec& spec);

// Cap with radius exactly theta: an equatorial code plus the pole,
// A(n,theta,theta) = A(n-1, omega(theta,theta)) + 1.
Bound boundary_augment(int n, Angle theta);

// Transfer through the hemisphere: A(n,theta,phi) <= B(n, omega(theta,phi)),
// evaluated as the code bound at the projected distance.
Bound hemi_bound(const CapSpec& spec, const sphere::SphereOptions& options = {});

// Two-part split at psi = phi (1 - omega1/pi):
// A(n,theta,phi) <= (A(n-1, min(omega1, omega2)) + A(n, omega1)) / 2.
Bound two_part_bound(const CapSpec& spec, const sphere::SphereOptions& options = {});

// Area-ratio transfer from cap codes to sphere codes:
// A(n,theta) <= (Omega_n / Omega_n(phi)) * A(n,theta,phi).
Bound bassalygo_elias(int n, Angle theta, Angle phi, const Bound& cap_bound);

// Greedy covering lower bound: A(n,theta,phi) >= Omega_n(phi) / Omega_n(theta).
Bound greedy_lower(const CapSpec& spec);

// Projection lower bound: A(n,theta,phi) >= A(n-1, omega(theta,phi))-lower.
Bound projection_lower(const CapSpec& spec);

struct BestCapResult {
    Bound lower;
    Bound upper;
};

// Best-of dispatcher: exact regimes first, otherwise the minimum of the
// selected upper rules and the maximum of the lower rules.
// Throws ConsistencyError if best lower exceeds best upper.
BestCapResult best_cap_bound(const CapSpec& spec,
                             const sphere::SphereOptions& options = {},
                             const CapMethods& methods = {});

// Real-valued (pre-floor) variants backing the table pipeline: identical
// structure, universal-bound terms kept real, floored only by the caller.
double avz_cap_value(const CapSpec& spec, const sphere::SphereOptions& options = {});
double two_part_value(const CapSpec& spec, const sphere::SphereOptions& options = {});

}  // namespace capbound::cap
