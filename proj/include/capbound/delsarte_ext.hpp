#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "capbound/angle.hpp"
#include "capbound/bound.hpp"
#include "capbound/orthopoly.hpp"

namespace capbound::ext {

// A polynomial certificate for the extended polynomial method: f is a
// nonnegative combination of the G_k^{(n)} with f_0 > 0 and f <= 0 on
// [-cos phi, cos theta], where phi is the smallest such cap radius.
struct Certificate {
    int n = 3;
    double theta = 0.0;
    double phi = 0.0;   // located sign-change radius
    double f0 = 0.0;
    double f1 = 0.0;    // f(1)
    orthopoly::GegenbauerPoly f;
    bool accepted = false;
    std::vector<std::string> violations;  // empty iff accepted
};

// Verify a monomial-coefficient polynomial against all certificate
// conditions. Rejection is reported through `accepted`/`violations`, not an
// exception: callers inspect the structured result.
Certificate verify_certificate(const std::vector<double>& mono_coeffs, int n, Angle theta);
Certificate verify_certificate_file(const std::filesystem::path& file, int n, Angle theta);

// m unit vectors in the cap of radius phi around the pole, pairwise >= theta.
struct CapConfiguration {
    int m = 0;
    std::vector<std::vector<double>> points;  // each of length n
};

// H_f of a configuration: f(1) + sum_i f(<-e_n, y_i>). Throws
// InvalidConfigurationError if the configuration violates its invariants.
double h_value(const Certificate& cert, const CapConfiguration& config);

struct SearchResult {
    double value = 0.0;       // best feasible H_f found (lower estimate of h_max)
    int m_used = 0;           // size of the best configuration
    bool placement_failed = false;  // no feasible m-point configuration found
    CapConfiguration config;
};

// Heuristic maximization of H_f over configurations of AT MOST m points:
// multistart perturbation ascent with feasibility repair, deterministic for a
// given seed; every reported configuration is re-verified at 1e-9. Values are
// non-decreasing in m by construction (each level extends the previous best).
SearchResult h_m_search(const Certificate& cert, int m, int restarts, std::uint64_t seed);

// The resulting code bound A(n, theta) <= h_max / f_0 for an externally
// certified h_max; any recorded search value exceeding the certified maximum
// is a ConsistencyError.
Bound extension_bound(const Certificate& cert, double h_max_certified,
                      const std::vector<double>& observed_search_values = {});

}  // namespace capbound::ext
