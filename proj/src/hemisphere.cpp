#include "capbound/hemisphere.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "capbound/data.hpp"
#include "capbound/geometry.hpp"
#include "capbound/lp.hpp"

namespace capbound::hemi {

namespace {

constexpr double kTol = 1e-12;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

// The polynomial-method LP is worth its cost exactly where it beats the
// universal bound: the small dimensions entering the halving corollaries.
sphere::SphereOptions with_small_dim_lp(sphere::SphereOptions options, int dim) {
    if (dim >= 3 && dim <= 8) options.methods.delsarte_lp = true;
    return options;
}

}  // namespace

ReflectionConstraint reflection_bound(int n, Angle theta, const sphere::SphereOptions& options) {
    if (n < 2) throw DomainError("dimension must be at least 2");
    const double t = theta.rad();
    if (t <= 0.0 || t >= kPi) throw DomainError("separation must lie in (0, pi)");
    return ReflectionConstraint{(kPi - t) / 2.0, sphere::sphere_upper_value(n, t, options)};
}

Bound b_upper(int n, Angle theta, const sphere::SphereOptions& options) {
    if (n < 3) throw DomainError("hemisphere bound needs dimension >= 3");
    const double t = theta.rad();
    if (t <= 0.0) throw DomainError("separation must be positive");
    if (t >= kPi / 2.0 - kTol) {
        Bound whole = sphere::sphere_upper(n, theta, options);
        Bound b{whole.kind, whole.value, "hemisphere-upper", "whole-sphere bound", {}, {}};
        b.note("separation >= pi/2: halving does not improve on the sphere bound");
        b.child(std::move(whole));
        return b;
    }

    const sphere::SphereOptions half_options = with_small_dim_lp(options, n - 1);
    const double delta = (kPi - t) / 2.0;

    // Both halving corollaries project the doubled code to dimension n-1; the
    // strip route goes through the equatorial band, the direct route through
    // the stretched separation cos theta' = cos theta / cos(theta/2). They
    // agree analytically; the minimum guards numerical drift.
    const double tilde = std::acos(std::min(1.0, std::cos(t) / std::cos(t / 2.0)));
    const double tilde_term = sphere::sphere_upper_value(n - 1, tilde, half_options);
    const cap::StripSpec strip{n, theta, Angle(delta), Angle(kPi / 2.0)};
    const double strip_term =
        sphere::sphere_upper_value(n - 1, geometry::omega(theta, Angle(kPi / 2.0), Angle(delta)).rad(),
                                   half_options);
    const double whole_term = sphere::sphere_upper_value(n, t, options);
    const double half = 0.5 * (std::min(tilde_term, strip_term) + whole_term);

    Bound b = Bound::upper(floor_bound(half), "hemisphere-upper",
                           "half of (projected bound + whole-sphere bound)");
    Bound strip_bound = cap::avz_strip(strip, half_options);
    b.child(Bound::upper(std::min(tilde_term, strip_term), "halving-projection",
                         "dimension n-1 at stretched separation " + fmt(tilde)));
    b.child(std::move(strip_bound));
    b.child(Bound::upper(whole_term, "whole-sphere", "code bound at the separation itself"));
    if (half_options.methods.delsarte_lp && !options.methods.delsarte_lp) {
        b.note("polynomial-method bound enabled for the dimension-" + std::to_string(n - 1) +
               " factor");
    }
    return b;
}

Bound one_sided_kissing(int n, const std::string& data_dir) {
    if (n < 2) throw DomainError("dimension must be at least 2");
    const auto [k_low, k_up] = sphere::kissing_table(n, data_dir);
    const double eta = geometry::eta0();

    double g_hat;
    std::string g_detail;
    if (n == 2) {
        // S^0 holds exactly the two antipodes, both at angle eta0 from any
        // equator direction.
        g_hat = 2.0;
        g_detail = "two-point code on S^0";
    } else {
        sphere::SphereOptions opts;
        opts.data_dir = data_dir;
        opts = with_small_dim_lp(opts, n - 1);
        g_hat = floor_bound(sphere::sphere_upper_value(n - 1, eta, opts));
        g_detail = "code bound at arccos(1/sqrt 3) in dimension " + std::to_string(n - 1);
    }

    const double halving = floor_bound(0.5 * (g_hat + static_cast<double>(k_up)));
    const double drop_two = static_cast<double>(k_up) - 2.0;
    const double chain = std::min(halving, drop_two);

    Bound b = Bound::upper(chain, "one-sided-halving",
                           "min((g + k)/2, k - 2) with g = " + fmt(g_hat) +
                               ", k = " + std::to_string(k_up));
    b.child(Bound::upper(g_hat, "equatorial-factor", g_detail));
    b.child(Bound::upper(static_cast<double>(k_up), "kissing-upper"));

    const auto& rows = data::onesided_rows(data_dir);
    if (auto it = rows.find(n); it != rows.end()) {
        const auto& row = it->second;
        if (row.tag == "proved") {
            if (static_cast<double>(row.lower) == chain) {
                b.kind = BoundKind::Exact;
                b.note("meets the proved value");
            }
            b.child(Bound::lower(static_cast<double>(row.lower), "stored-value", row.tag));
        } else {
            b.note("stored " + row.tag + " value " + std::to_string(row.lower) +
                   " (not used in bound logic)");
        }
    }
    return b;
}

PartitionScheme default_scheme(const cap::CapSpec& spec, int k) {
    if (k < 0) throw DomainError("scheme needs k >= 0");
    const double theta = spec.theta.rad();
    const double phi = spec.phi.rad();
    if (theta <= 0.0 || phi <= 0.0 || phi > kPi / 2.0 + kTol) {
        throw DomainError("scheme needs positive separation and cap radius <= pi/2");
    }

    // Interior breakpoints follow the recursion angles of the cascade; if it
    // bottoms out early the remainder is spaced uniformly below it.
    std::vector<double> interior;
    double cur = phi;
    while (static_cast<int>(interior.size()) < k) {
        if (theta >= cur - kTol) break;
        const geometry::GammaResult gr = geometry::gamma_angle(spec.theta, Angle(cur));
        if (gr.degenerate || gr.gamma.rad() <= 1e-9) break;
        interior.push_back(gr.gamma.rad());
        cur = gr.gamma.rad();
    }
    const int missing = k - static_cast<int>(interior.size());
    if (missing > 0) {
        const double low = interior.empty() ? phi : interior.back();
        for (int i = missing; i >= 1; --i) {
            interior.push_back(low * i / (missing + 1));
        }
    }
    std::sort(interior.begin(), interior.end());

    PartitionScheme scheme;
    scheme.breakpoints.push_back(0.0);
    for (double v : interior) scheme.breakpoints.push_back(v);
    scheme.breakpoints.push_back(phi);
    for (int i = 0; i <= k; ++i) scheme.pairs.emplace_back(i, i + 1);
    for (int j = 2; j <= k + 1; ++j) scheme.pairs.emplace_back(0, j);
    for (int i = 0; i <= k; ++i) scheme.phi_indices.push_back(i);
    return scheme;
}

Bound partition_lp(const cap::CapSpec& spec, const PartitionScheme& scheme,
                   const sphere::SphereOptions& options) {
    const double theta = spec.theta.rad();
    const double phi = spec.phi.rad();
    if (spec.n < 3) throw DomainError("partition bound needs ambient dimension >= 3");
    if (theta <= 0.0 || phi <= 0.0 || phi > kPi / 2.0 + kTol) {
        throw DomainError("partition needs positive separation and cap radius <= pi/2");
    }
    const auto& bp = scheme.breakpoints;
    if (bp.size() < 2) throw DomainError("scheme needs at least two breakpoints");
    if (std::abs(bp.front()) > kTol) throw DomainError("scheme must start at 0");
    if (std::abs(bp.back() - phi) > 1e-9) throw DomainError("scheme must end at the cap radius");
    for (std::size_t i = 1; i < bp.size(); ++i) {
        if (bp[i] <= bp[i - 1] + kTol) throw DomainError("breakpoints must ascend strictly");
    }
    const int k = static_cast<int>(bp.size()) - 2;
    for (const auto& [i, j] : scheme.pairs) {
        if (i < 0 || j <= i || j > k + 1) throw DomainError("pair indices out of range");
    }
    for (int i : scheme.phi_indices) {
        if (i < 0 || i > k) throw DomainError("sub-cap index out of range");
    }

    Bound result = Bound::upper(0.0, "strip-partition", "");

    // Reflection data per requested sub-cap; sigma split points refine the
    // breakpoint grid so every row is a clean sum of occupancies.
    struct SubCap {
        int index;
        double radius;
        double sigma;
        double strip_rhs;   // bound for the stretched strip [sigma, radius]
        double reflect_rhs; // bound for the doubled inner cap + strip
    };
    std::vector<SubCap> subs;
    for (int i : scheme.phi_indices) {
        const double r = bp[static_cast<std::size_t>(i) + 1];
        if (theta > 2.0 * r + kTol) {
            result.note("sub-cap " + std::to_string(i) +
                        ": separation exceeds the diameter; reflection rows skipped");
            continue;
        }
        const double w1 = geometry::omega(spec.theta, Angle(r)).rad();
        const double sigma = r * (1.0 - w1 / kPi);
        double w2 = w1;
        if (sigma > kTol) {
            const double raw = geometry::omega_cos_raw(theta, r, sigma);
            if (raw <= 1.0 && raw >= -1.0) {
                w2 = geometry::omega(spec.theta, Angle(r), Angle(sigma)).rad();
            }
        }
        SubCap sc;
        sc.index = i;
        sc.radius = r;
        sc.sigma = sigma;
        // Both sides bound integer code sizes; flooring keeps the k = 0 scheme
        // identical to the two-part rule.
        sc.strip_rhs =
            floor_bound(sphere::sphere_upper_value(spec.n - 1, std::min(w1, w2), options));
        sc.reflect_rhs = floor_bound(sphere::sphere_upper_value(spec.n, w1, options));
        subs.push_back(sc);
    }

    std::vector<double> refined(bp);
    for (const SubCap& sc : subs) refined.push_back(sc.sigma);
    std::sort(refined.begin(), refined.end());
    refined.erase(std::unique(refined.begin(), refined.end(),
                              [](double a, double b) { return std::abs(a - b) < kTol; }),
                  refined.end());
    const std::size_t nvars = refined.size() - 1;

    auto interval_in = [&](std::size_t m, double lo, double hi) {
        return refined[m] >= lo - 1e-9 && refined[m + 1] <= hi + 1e-9;
    };

    lp::LPProblem prob;
    prob.direction = lp::Direction::Maximize;
    prob.c.assign(nvars, 1.0);

    auto add_row = [&](const std::vector<double>& coef, double rhs) {
        prob.A.push_back(coef);
        prob.b.push_back(rhs);
        prob.senses.push_back(lp::Sense::LE);
    };

    for (const auto& [i, j] : scheme.pairs) {
        if (i == 0 && j == k + 1) continue;  // would bound the objective directly
        const double lo = bp[static_cast<std::size_t>(i)];
        const double hi = bp[static_cast<std::size_t>(j)];
        double rhs;
        std::string rule;
        if (i == 0) {
            rhs = cap::avz_cap(cap::CapSpec{spec.n, spec.theta, Angle(hi)}, options).value;
            rule = "cascade";
        } else {
            rhs = cap::avz_strip(cap::StripSpec{spec.n, spec.theta, Angle(lo), Angle(hi)},
                                 options)
                      .value;
            rule = "strip";
        }
        std::vector<double> coef(nvars, 0.0);
        for (std::size_t m = 0; m < nvars; ++m) {
            if (interval_in(m, lo, hi)) coef[m] = 1.0;
        }
        add_row(coef, rhs);
        result.child(Bound::upper(rhs, rule,
                                  "[" + fmt(lo) + ", " + fmt(hi) + "] occupancy row"));
    }

    for (const SubCap& sc : subs) {
        std::vector<double> strip_coef(nvars, 0.0);
        std::vector<double> reflect_coef(nvars, 0.0);
        for (std::size_t m = 0; m < nvars; ++m) {
            if (interval_in(m, sc.sigma, sc.radius)) {
                strip_coef[m] = 1.0;
                reflect_coef[m] = 1.0;
            } else if (interval_in(m, 0.0, sc.sigma)) {
                reflect_coef[m] = 2.0;
            }
        }
        add_row(strip_coef, sc.strip_rhs);
        add_row(reflect_coef, sc.reflect_rhs);
        result.child(Bound::upper(sc.strip_rhs, "sub-cap-strip",
                                  "sub-cap " + std::to_string(sc.index) + " outer band"));
        result.child(Bound::upper(sc.reflect_rhs, "sub-cap-reflection",
                                  "sub-cap " + std::to_string(sc.index) + " doubled inner cap"));
    }

    if (prob.A.empty()) {
        throw InfeasibleSchemeError("scheme generates no constraints for " + spec.describe());
    }
    const lp::LPSolution sol = lp::solve(prob);
    if (sol.status != lp::LPStatus::Optimal) {
        throw InfeasibleSchemeError("scheme leaves some strip occupancy unconstrained for " +
                                    spec.describe());
    }
    result.value = floor_bound(sol.objective_value);
    result.detail = "k = " + std::to_string(k) + ", " + std::to_string(nvars) + " strip(s)";
    return result;
}

}  // namespace capbound::hemi
