#include "capbound/cap_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "capbound/geometry.hpp"

namespace capbound::cap {

namespace {

constexpr double kTol = 1e-12;
constexpr int kCascadeCap = 4096;

std::string angle_str(double r) {
    std::ostringstream os;
    os.precision(6);
    os << r << "rad";
    return os.str();
}

void validate_cap(const CapSpec& spec) {
    if (spec.n < 3) throw DomainError("cap bounds need ambient dimension >= 3");
    if (spec.theta.rad() <= 0.0) throw DomainError("separation must be positive");
    if (spec.phi.rad() <= 0.0 || spec.phi.rad() > kPi / 2.0 + kTol) {
        throw DomainError("cap radius must lie in (0, pi/2]");
    }
}

void validate_strip(const StripSpec& spec) {
    if (spec.n < 3) throw DomainError("strip bounds need ambient dimension >= 3");
    if (spec.theta.rad() <= 0.0) throw DomainError("separation must be positive");
    if (spec.phi.rad() <= 0.0 || spec.phi.rad() > kPi / 2.0 + kTol) {
        throw DomainError("outer strip radius must lie in (0, pi/2]");
    }
    if (spec.psi.rad() > spec.phi.rad() + kTol) {
        throw DomainError("inner strip radius exceeds outer radius");
    }
}

}  // namespace

std::string CapSpec::describe() const {
    std::ostringstream os;
    os << "cap(n=" << n << ", theta=" << angle_str(theta.rad()) << ", phi="
       << angle_str(phi.rad()) << ")";
    return os.str();
}

std::string StripSpec::describe() const {
    std::ostringstream os;
    os << "strip(n=" << n << ", theta=" << angle_str(theta.rad()) << ", ["
       << angle_str(psi.rad()) << ", " << angle_str(phi.rad()) << "])";
    return os.str();
}

Bound eq_ls1(const CapSpec& spec, const sphere::SphereOptions& options) {
    validate_cap(spec);
    if (spec.theta.rad() > 2.0 * spec.phi.rad() + kTol) {
        return Bound::not_applicable("lift", "cap holds at most one point");
    }
    const Angle w = geometry::omega(spec.theta, spec.phi);
    Bound child = sphere::sphere_upper(spec.n + 1, w, options);
    Bound b = Bound::upper(child.value, "lift", "code bound in dimension n+1 at " +
                                                    angle_str(w.rad()));
    b.child(std::move(child));
    return b;
}

Bound eq_ls2(const CapSpec& spec, const sphere::SphereOptions& options) {
    validate_cap(spec);
    const double theta = spec.theta.rad();
    const double phi = spec.phi.rad();
    if (theta > 2.0 * phi + kTol) {
        return Bound::not_applicable("shrink", "cap holds at most one point");
    }
    if (phi > kPi / 2.0 - kTol) {
        Bound b = Bound::upper(kInf, "shrink", "tangent radius diverges");
        b.note("vacuous at phi = pi/2");
        return b;
    }
    const double arg = std::sin(theta / 2.0) / std::tan(phi);
    if (arg > 1.0 + 1e-9) throw NumericalError("shrunk separation argument above 1");
    const Angle shrunk = 2.0 * std::asin(std::min(1.0, arg));
    Bound child = sphere::sphere_upper(spec.n, shrunk, options);
    Bound b = Bound::upper(child.value, "shrink",
                           "code bound at shrunk separation " + angle_str(shrunk.rad()));
    b.child(std::move(child));
    return b;
}

namespace {

Bound strip_bound_impl(const StripSpec& spec, const sphere::SphereOptions& options, int depth) {
    if (depth > kCascadeCap) {
        throw RecursionLimitError("strip recursion failed to shrink after " +
                                  std::to_string(kCascadeCap) + " levels");
    }
    const int n = spec.n;
    const double theta = spec.theta.rad();
    const double psi = spec.psi.rad();
    const double phi = spec.phi.rad();

    // Separation too wide for two points anywhere in the containing cap.
    if (theta > 2.0 * phi + kTol) {
        return Bound::exact(1.0, "strip-single", "theta > 2 phi");
    }

    // Wide separation: the projection to the equator is itself a code at the
    // projected distance, and the latitude-phi circle realizes it.
    if (theta >= phi - kTol) {
        const Angle w = geometry::omega(spec.theta, spec.phi);
        Bound child = sphere::sphere_upper(n - 1, w, options);
        Bound b{child.kind == BoundKind::Exact ? BoundKind::Exact : BoundKind::Upper,
                child.value,
                "strip-projection",
                "equatorial code at " + angle_str(w.rad()),
                {},
                {}};
        b.child(std::move(child));
        return b;
    }

    // theta < phi: the recursion angle decides how the strip splits.
    const geometry::GammaResult gr = geometry::gamma_angle(spec.theta, spec.phi);
    const double w_phi = geometry::omega(spec.theta, spec.phi).rad();

    auto mixed_projection = [&]() -> Bound {
        // Projection at the worst latitude pair (phi, psi); needs the pair to
        // be geometrically constrained (theta >= phi - psi).
        const Angle w2 = geometry::omega(spec.theta, spec.phi, spec.psi);
        Bound child = sphere::sphere_upper(n - 1, w2, options);
        Bound b = Bound::upper(child.value, "strip-mixed-projection",
                               "equatorial code at " + angle_str(w2.rad()));
        b.child(std::move(child));
        return b;
    };
    auto cap_fallback = [&]() -> Bound {
        Bound lifted = sphere::sphere_upper(n + 1, Angle(w_phi), options);
        Bound b = Bound::upper(lifted.value, "strip-cap-fallback",
                               "lifted bound of the containing cap");
        b.note("no usable recursion angle; whole-cap bound substituted");
        b.child(std::move(lifted));
        return b;
    };

    if (gr.degenerate) {
        if (psi > kTol && theta >= phi - psi - kTol) {
            Bound b = mixed_projection();
            for (const auto& note : gr.notes) b.note(note);
            return b;
        }
        return cap_fallback();
    }

    const double gamma = gr.gamma.rad();
    auto split_member = [&]() -> Bound {
        StripSpec inner{n, spec.theta, spec.psi, gr.gamma};
        Bound rec = strip_bound_impl(inner, options, depth + 1);
        Bound outer = sphere::sphere_upper(n - 1, Angle(w_phi), options);
        Bound b = Bound::upper(rec.value + outer.value, "strip-split",
                               "split at gamma = " + angle_str(gamma));
        for (const auto& note : gr.notes) b.note(note);
        b.child(std::move(rec));
        b.child(std::move(outer));
        return b;
    };

    if (theta > phi - psi + kTol) {
        if (gamma < psi - kTol) {
            // Entire strip sits above the recursion angle: every projected
            // pair is at least the corner distance apart.
            const Angle w = geometry::omega(spec.theta, spec.phi);
            Bound child = sphere::sphere_upper(n - 1, w, options);
            Bound b{child.kind == BoundKind::Exact ? BoundKind::Exact : BoundKind::Upper,
                    child.value,
                    "strip-projection",
                    "strip above gamma, equatorial code at " + angle_str(w.rad()),
                    {},
                    {}};
            b.child(std::move(child));
            return b;
        }
        Bound split = split_member();
        if (psi > kTol) {
            Bound mixed = mixed_projection();
            if (mixed.value < split.value) {
                mixed.child(std::move(split));
                return mixed;
            }
            split.child(std::move(mixed));
        }
        return split;
    }

    // theta <= phi - psi: same-meridian pairs are unconstrained, so only the
    // split member applies; gamma lies inside (psi, phi) here.
    if (gamma > psi + kTol && gamma < phi - kTol) {
        return split_member();
    }
    return cap_fallback();
}

}  // namespace

Bound avz_strip(const StripSpec& spec, const sphere::SphereOptions& options) {
    validate_strip(spec);
    return strip_bound_impl(spec, options, 0);
}

namespace {

struct CascadeOutcome {
    double total = 0.0;  // per-term floored when `floored`, raw otherwise
    int levels = 0;
    bool degenerate = false;
    std::vector<Bound> terms;  // populated only for the Bound-producing path
    std::vector<double> gammas;  // recursion angles, outermost first
};

CascadeOutcome run_cascade(const CapSpec& spec, const sphere::SphereOptions& options,
                           bool floored, bool keep_terms) {
    CascadeOutcome out;
    const int n = spec.n;
    const double theta = spec.theta.rad();
    double cur = spec.phi.rad();
    for (int level = 0;; ++level) {
        if (level > kCascadeCap) {
            throw RecursionLimitError("cascade failed to terminate after " +
                                      std::to_string(kCascadeCap) + " levels");
        }
        out.levels = level + 1;
        if (theta > 2.0 * cur + kTol) {
            out.total += 1.0;
            if (keep_terms) {
                out.terms.push_back(Bound::exact(1.0, "strip-single", "theta > 2 phi"));
            }
            return out;
        }
        if (theta >= cur - kTol) {
            const Angle w = geometry::omega(spec.theta, Angle(cur));
            if (keep_terms) {
                Bound term = sphere::sphere_upper(n - 1, w, options);
                out.total += term.value;
                out.terms.push_back(std::move(term));
            } else {
                const double v = sphere::sphere_upper_value(n - 1, w.rad(), options);
                out.total += floored ? floor_bound(v) : v;
            }
            return out;
        }
        const geometry::GammaResult gr = geometry::gamma_angle(spec.theta, Angle(cur));
        if (gr.degenerate) {
            out.degenerate = true;
            return out;
        }
        const Angle w = geometry::omega(spec.theta, Angle(cur));
        if (keep_terms) {
            Bound term = sphere::sphere_upper(n - 1, w, options);
            out.total += term.value;
            out.terms.push_back(std::move(term));
        } else {
            const double v = sphere::sphere_upper_value(n - 1, w.rad(), options);
            out.total += floored ? floor_bound(v) : v;
        }
        out.gammas.push_back(gr.gamma.rad());
        cur = gr.gamma.rad();
    }
}

}  // namespace

Bound avz_cap(const CapSpec& spec, const sphere::SphereOptions& options) {
    validate_cap(spec);
    CascadeOutcome out = run_cascade(spec, options, /*floored=*/true, /*keep_terms=*/true);
    if (out.degenerate) {
        Bound lifted = sphere::sphere_upper(spec.n + 1, spec.theta, options);
        Bound b = Bound::upper(lifted.value, "cascade",
                               "degenerate at phi = pi/2; lifted whole-cap bound");
        b.note("cascade cannot shrink a hemisphere cap; lifted bound substituted");
        b.child(std::move(lifted));
        return b;
    }
    Bound b = Bound::upper(out.total, "cascade", std::to_string(out.levels) + " level(s)");
    for (Bound& term : out.terms) b.child(std::move(term));
    return b;
}

double avz_cap_value(const CapSpec& spec, const sphere::SphereOptions& options) {
    validate_cap(spec);
    CascadeOutcome out = run_cascade(spec, options, /*floored=*/false, /*keep_terms=*/false);
    if (out.degenerate) {
        return sphere::sphere_upper_value(spec.n + 1, spec.theta.rad(), options);
    }
    return out.total;
}

Bound exact_large_angle(const CapSpec& spec) {
    validate_cap(spec);
    const double theta = spec.theta.rad();
    const double phi = spec.phi.rad();
    if (theta <= phi + kTol || theta > 2.0 * phi + kTol) {
        throw DomainError("projection regime needs phi < theta <= 2 phi");
    }
    const Angle w = geometry::omega(spec.theta, spec.phi);
    Bound child = sphere::sphere_upper(spec.n - 1, w, {});
    Bound b{child.kind == BoundKind::Exact ? BoundKind::Exact : BoundKind::Upper,
            child.value,
            "equatorial-projection",
            "bijective projection, code at " + angle_str(w.rad()),
            {},
            {}};
    b.child(std::move(child));
    return b;
}

Bound boundary_augment(int n, Angle theta) {
    CapSpec spec{n, theta, theta};
    validate_cap(spec);
    const Angle w = geometry::omega(theta, theta);
    Bound child = sphere::sphere_upper(n - 1, w, {});
    Bound b{child.kind == BoundKind::Exact ? BoundKind::Exact : BoundKind::Upper,
            child.value + 1.0,
            "boundary-augment",
            "equatorial code at " + angle_str(w.rad()) + " plus the pole",
            {},
            {}};
    b.child(std::move(child));
    return b;
}

Bound hemi_bound(const CapSpec& spec, const sphere::SphereOptions& options) {
    validate_cap(spec);
    if (spec.theta.rad() > 2.0 * spec.phi.rad() + kTol) {
        return Bound::not_applicable("hemisphere-transfer", "cap holds at most one point");
    }
    const Angle w = geometry::omega(spec.theta, spec.phi);
    Bound child = sphere::sphere_upper(spec.n, w, options);
    Bound b = Bound::upper(child.value, "hemisphere-transfer",
                           "stretched onto the hemisphere, code bound at " + angle_str(w.rad()));
    b.child(std::move(child));
    return b;
}

namespace {

struct TwoPartTerms {
    double strip;  // bound on the outer strip [psi, phi]
    double whole;  // bound on the stretched whole cap
    double psi;
    double w1;
    double w2;  // mixed projection distance, or w1 if infeasible
};

TwoPartTerms two_part_terms(const CapSpec& spec, const sphere::SphereOptions& options) {
    TwoPartTerms t{};
    t.w1 = geometry::omega(spec.theta, spec.phi).rad();
    t.psi = spec.phi.rad() * (1.0 - t.w1 / kPi);
    t.w2 = t.w1;
    if (t.psi > kTol) {
        const double raw = geometry::omega_cos_raw(spec.theta.rad(), spec.phi.rad(), t.psi);
        // Outside [-1, 1] the latitudes phi and psi cannot hold a
        // theta-separated pair at all, so the mixed term adds no constraint.
        if (raw <= 1.0 && raw >= -1.0) {
            t.w2 = geometry::omega(spec.theta, spec.phi, Angle(t.psi)).rad();
        }
    }
    t.strip = sphere::sphere_upper_value(spec.n - 1, std::min(t.w1, t.w2), options);
    t.whole = sphere::sphere_upper_value(spec.n, t.w1, options);
    return t;
}

}  // namespace

Bound two_part_bound(const CapSpec& spec, const sphere::SphereOptions& options) {
    validate_cap(spec);
    if (spec.theta.rad() > 2.0 * spec.phi.rad() + kTol) {
        return Bound::not_applicable("two-part", "cap holds at most one point");
    }
    const TwoPartTerms t = two_part_terms(spec, options);
    // Both terms bound integer code sizes, so each floors before the average.
    const double strip = floor_bound(t.strip);
    const double whole = floor_bound(t.whole);
    Bound b = Bound::upper(floor_bound(0.5 * (strip + whole)), "two-part",
                           "split at psi = " + angle_str(t.psi));
    b.child(Bound::upper(strip, "two-part-strip",
                         "outer strip code at " + angle_str(std::min(t.w1, t.w2))));
    b.child(Bound::upper(whole, "two-part-whole",
                         "stretched cap code at " + angle_str(t.w1)));
    return b;
}

double two_part_value(const CapSpec& spec, const sphere::SphereOptions& options) {
    validate_cap(spec);
    const TwoPartTerms t = two_part_terms(spec, options);
    return 0.5 * (t.strip + t.whole);
}

Bound bassalygo_elias(int n, Angle theta, Angle phi, const Bound& cap_bound) {
    if (n < 2) throw DomainError("dimension must be at least 2");
    if (!cap_bound.is_upper()) throw DomainError("area transfer needs an upper cap bound");
    if (!cap_bound.finite()) {
        return Bound::not_applicable("area-transfer", "cap bound is not finite");
    }
    const double ratio = geometry::sphere_area(n) / geometry::cap_area(n, phi);
    Bound b = Bound::upper(floor_bound(ratio * cap_bound.value), "area-transfer",
                           "sphere/cap area ratio applied to the cap bound");
    b.child(cap_bound);
    return b;
}

Bound greedy_lower(const CapSpec& spec) {
    validate_cap(spec);
    const double ratio =
        geometry::cap_area(spec.n, spec.phi) / geometry::cap_area(spec.n, spec.theta);
    return Bound::lower(std::max(1.0, ceil_bound(ratio)), "cap-covering",
                        "a maximal code covers the cap with separation-radius caps");
}

Bound projection_lower(const CapSpec& spec) {
    validate_cap(spec);
    if (spec.theta.rad() > 2.0 * spec.phi.rad() + kTol) {
        return Bound::lower(1.0, "equatorial-embedding", "single point");
    }
    const Angle w = geometry::omega(spec.theta, spec.phi);
    Bound child = sphere::sphere_lower(spec.n - 1, w, {});
    Bound b = Bound::lower(child.value, "equatorial-embedding",
                           "lower-dimensional code on the boundary circle");
    b.child(std::move(child));
    return b;
}

BestCapResult best_cap_bound(const CapSpec& spec, const sphere::SphereOptions& options,
                             const CapMethods& methods) {
    validate_cap(spec);
    const double theta = spec.theta.rad();
    const double phi = spec.phi.rad();

    if (theta > 2.0 * phi + kTol) {
        Bound b = Bound::exact(1.0, "single-point", "theta > 2 phi");
        return BestCapResult{b, b};
    }

    std::vector<Bound> uppers;
    std::vector<Bound> lowers;

    if (theta > phi + kTol) {
        Bound b = exact_large_angle(spec);
        if (b.kind == BoundKind::Exact) return BestCapResult{b, b};
        uppers.push_back(std::move(b));
    } else if (std::abs(theta - phi) <= kTol) {
        Bound b = boundary_augment(spec.n, spec.theta);
        if (b.kind == BoundKind::Exact) return BestCapResult{b, b};
        uppers.push_back(std::move(b));
    } else {
        if (methods.ls1) uppers.push_back(eq_ls1(spec, options));
        if (methods.ls2) uppers.push_back(eq_ls2(spec, options));
        if (methods.avz) uppers.push_back(avz_cap(spec, options));
        if (methods.hemi) uppers.push_back(hemi_bound(spec, options));
        if (methods.two_part) uppers.push_back(two_part_bound(spec, options));
    }
    // The partition LP is declared in the hemisphere module; the CLI composes
    // it explicitly, so only the closed-form rules compete here.

    lowers.push_back(greedy_lower(spec));
    lowers.push_back(projection_lower(spec));

    std::size_t bu = 0;
    for (std::size_t i = 1; i < uppers.size(); ++i) {
        if (uppers[i].applicable() && uppers[i].value < uppers[bu].value) bu = i;
    }
    std::size_t bl = 0;
    for (std::size_t i = 1; i < lowers.size(); ++i) {
        if (lowers[i].value > lowers[bl].value) bl = i;
    }

    BestCapResult result{lowers[bl], uppers[bu]};
    for (std::size_t i = 0; i < uppers.size(); ++i) {
        if (i != bu) result.upper.child(uppers[i]);
    }
    for (std::size_t i = 0; i < lowers.size(); ++i) {
        if (i != bl) result.lower.child(lowers[i]);
    }
    if (result.lower.value > result.upper.value + 0.5) {
        throw ConsistencyError("best lower bound " + std::to_string(result.lower.value) +
                               " exceeds best upper bound " +
                               std::to_string(result.upper.value) + " for " + spec.describe());
    }
    return result;
}

}  // namespace capbound::cap
