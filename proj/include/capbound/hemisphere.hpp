#pragma once

#include <utility>
#include <vector>

#include "capbound/angle.hpp"
#include "capbound/bound.hpp"
#include "capbound/cap_bounds.hpp"
#include "capbound/sphere_bounds.hpp"

namespace capbound::hemi {

// Reflection constraint from doubling about the equator: any theta-code C in
// the closed upper hemisphere satisfies |C([delta, pi/2])| + 2 |C(delta)| <=
// A(n, theta) with delta = (pi - theta)/2.
struct ReflectionConstraint {
    double delta;  // polar radius of the doubled inner cap
    double rhs;    // sphere-code bound on the doubled set
};
ReflectionConstraint reflection_bound(int n, Angle theta,
                                      const sphere::SphereOptions& options = {});

// Hemisphere-code bound B(n, theta): minimum of the two halving corollaries
// (strip form and the tilde-angle form cos theta' = cos theta / cos(theta/2)),
// floored once. For theta >= pi/2 falls back to the whole-sphere bound.
// The dimension-(n-1) factors enable the polynomial-method LP (degree 11)
// in small dimensions, where it beats the universal bound.
Bound b_upper(int n, Angle theta, const sphere::SphereOptions& options = {});

// One-sided kissing number bound:
// B(n) <= min((A(n-1, eta0) + k(n))/2, k(n) - 2), with proved lower values
// from the data table attached; exact when the two meet.
Bound one_sided_kissing(int n, const std::string& data_dir = "");

// Strip partition of a cap for the partition LP. Breakpoints ascend from 0 to
// the cap radius; `pairs` selects which strip unions receive direct strip
// bounds; `phi_indices` selects which sub-caps generate reflection rows.
struct PartitionScheme {
    std::vector<double> breakpoints;           // 0 = b_0 < ... < b_{k+1} = phi
    std::vector<std::pair<int, int>> pairs;    // (i, j), i < j, strip [b_i, b_j]
    std::vector<int> phi_indices;              // i: constraints for sub-cap b_{i+1}
};

// Scheme from the gamma-cascade: the recursion angles as interior breakpoints
// (uniform fill if the cascade is short), all adjacent pairs plus all (0, j)
// pairs, reflection rows at every index.
PartitionScheme default_scheme(const cap::CapSpec& spec, int k);

// Strip-partition LP upper bound on A(n, theta, phi): maximize the strip
// occupancies subject to strip bounds on scheme pairs and, per sub-cap,
// the reflection constraint of the cap stretched onto the hemisphere
// (split point sigma_i = phi_{i+1} (1 - omega(theta, phi_{i+1})/pi)).
// With k = 0 this reduces exactly to the two-part bound.
Bound partition_lp(const cap::CapSpec& spec, const PartitionScheme& scheme,
                   const sphere::SphereOptions& options = {});

}  // namespace capbound::hemi
