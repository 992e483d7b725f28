#include "capbound/delsarte_ext.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "capbound/data.hpp"

namespace capbound::ext {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

}  // namespace

Certificate verify_certificate(const std::vector<double>& mono_coeffs, int n, Angle theta) {
    Certificate cert;
    cert.n = n;
    cert.theta = theta.rad();
    cert.f = orthopoly::GegenbauerPoly::from_monomial(n, mono_coeffs);
    cert.f0 = cert.f.geg.empty() ? 0.0 : cert.f.geg[0];
    cert.f1 = cert.f.eval_mono(1.0);

    for (std::size_t k = 1; k < cert.f.geg.size(); ++k) {
        if (cert.f.geg[k] < -1e-10) {
            cert.violations.push_back("expansion coefficient " + std::to_string(k) +
                                      " is negative (" + fmt(cert.f.geg[k]) + ")");
        }
    }
    if (cert.f0 <= 0.0) {
        cert.violations.push_back("mean coefficient is not positive (" + fmt(cert.f0) + ")");
    }

    // Locate the admissible cap radius: f must be <= 0 from some -cos(phi) up
    // to cos(theta); phi comes from the last sign change on that interval.
    const double s = std::cos(cert.theta);
    constexpr int kGrid = 4000;
    std::vector<double> ts(kGrid), fs(kGrid);
    for (int i = 0; i < kGrid; ++i) {
        ts[static_cast<std::size_t>(i)] = -1.0 + (s + 1.0) * i / (kGrid - 1);
        fs[static_cast<std::size_t>(i)] = cert.f.eval_mono(ts[static_cast<std::size_t>(i)]);
    }
    int last_positive = -1;
    for (int i = 0; i < kGrid; ++i) {
        if (fs[static_cast<std::size_t>(i)] > 1e-8) last_positive = i;
    }
    if (last_positive == kGrid - 1) {
        cert.violations.push_back("no admissible cap radius: f is positive at the separation "
                                  "cosine (f = " +
                                  fmt(fs.back()) + ")");
    } else if (last_positive < 0) {
        // Nonpositive on the whole interval: the plain certificate. Only the
        // pole configuration contributes, encoded as radius zero.
        cert.phi = 0.0;
    } else {
        double lo = ts[static_cast<std::size_t>(last_positive)];
        double hi = ts[static_cast<std::size_t>(last_positive) + 1];
        for (int it = 0; it < 100 && hi - lo > 1e-14; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (cert.f.eval_mono(mid) > 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        const double root = 0.5 * (lo + hi);
        cert.phi = std::acos(std::clamp(-root, -1.0, 1.0));
    }

    cert.accepted = cert.violations.empty();
    return cert;
}

Certificate verify_certificate_file(const std::filesystem::path& file, int n, Angle theta) {
    return verify_certificate(data::load_polynomial(file), n, theta);
}

namespace {

void check_configuration(const Certificate& cert, const CapConfiguration& config, double tol) {
    if (config.m != static_cast<int>(config.points.size())) {
        throw InvalidConfigurationError("declared size disagrees with the point list");
    }
    const double cos_phi = std::cos(cert.phi);
    const double cos_theta = std::cos(cert.theta);
    for (std::size_t i = 0; i < config.points.size(); ++i) {
        const auto& y = config.points[i];
        if (static_cast<int>(y.size()) != cert.n) {
            throw InvalidConfigurationError("point " + std::to_string(i) +
                                            " has wrong dimension");
        }
        double norm2 = 0.0;
        for (double c : y) norm2 += c * c;
        if (std::abs(norm2 - 1.0) > 2.0 * tol) {
            throw InvalidConfigurationError("point " + std::to_string(i) + " is not unit");
        }
        if (y.back() < cos_phi - tol) {
            throw InvalidConfigurationError("point " + std::to_string(i) +
                                            " lies outside the cap");
        }
        for (std::size_t j = i + 1; j < config.points.size(); ++j) {
            double dot = 0.0;
            for (std::size_t c = 0; c < y.size(); ++c) dot += y[c] * config.points[j][c];
            if (dot > cos_theta + tol) {
                throw InvalidConfigurationError("points " + std::to_string(i) + " and " +
                                                std::to_string(j) + " are too close");
            }
        }
    }
}

double h_of(const Certificate& cert, const CapConfiguration& config) {
    double h = cert.f1;
    for (const auto& y : config.points) h += cert.f.eval_mono(-y.back());
    return h;
}

}  // namespace

double h_value(const Certificate& cert, const CapConfiguration& config) {
    if (!cert.accepted) throw DomainError("certificate was rejected; no h to evaluate");
    check_configuration(cert, config, 1e-9);
    return h_of(cert, config);
}

namespace {

class CapSampler {
public:
    CapSampler(const Certificate& cert, std::mt19937_64& rng)
        : n_(cert.n), phi_(cert.phi), cos_theta_(std::cos(cert.theta)), rng_(rng) {}

    std::vector<double> random_point() {
        std::uniform_real_distribution<double> upolar(0.0, phi_);
        return assemble(upolar(rng_), random_direction());
    }

    // Gaussian jitter followed by projection back onto the sphere and, if
    // needed, pulling the polar angle back to the cap boundary.
    std::vector<double> perturb(const std::vector<double>& y, double step) {
        std::normal_distribution<double> g(0.0, step);
        std::vector<double> z = y;
        for (double& c : z) c += g(rng_);
        if (!clamp_to_cap(z)) return y;
        return z;
    }

    // Normalize onto the sphere and pull the polar angle back to the cap
    // boundary when it escaped; false on a degenerate (near-zero) vector.
    bool clamp_to_cap(std::vector<double>& z) const {
        double norm = 0.0;
        for (double c : z) norm += c * c;
        norm = std::sqrt(norm);
        if (norm < 1e-12) return false;
        for (double& c : z) c /= norm;
        if (z.back() < std::cos(phi_)) {
            std::vector<double> w(z.begin(), z.end() - 1);
            double wn = 0.0;
            for (double c : w) wn += c * c;
            wn = std::sqrt(wn);
            if (wn < 1e-12) return false;
            for (double& c : w) c /= wn;
            z = assemble(phi_, w);
        }
        return true;
    }

    bool fits(const std::vector<double>& y, const std::vector<std::vector<double>>& others,
              std::size_t skip) const {
        for (std::size_t j = 0; j < others.size(); ++j) {
            if (j == skip) continue;
            double dot = 0.0;
            for (std::size_t c = 0; c < y.size(); ++c) dot += y[c] * others[j][c];
            if (dot > cos_theta_ + 1e-12) return false;
        }
        return true;
    }

    // Deterministic maximin repulsion: push every point away from its nearest
    // neighbor with a decaying step. Rescues tight configurations that pure
    // rejection sampling cannot hit. Returns feasibility of the final set.
    bool repel(std::vector<std::vector<double>>& pts, int sweeps) const {
        if (pts.size() < 2) return !pts.empty();
        for (int s = 0; s < sweeps; ++s) {
            const double step = 0.3 * std::pow(0.985, s);
            for (std::size_t i = 0; i < pts.size(); ++i) {
                std::size_t nearest = 0;
                double worst = -2.0;
                for (std::size_t j = 0; j < pts.size(); ++j) {
                    if (j == i) continue;
                    double dot = 0.0;
                    for (std::size_t c = 0; c < pts[i].size(); ++c) {
                        dot += pts[i][c] * pts[j][c];
                    }
                    if (dot > worst) {
                        worst = dot;
                        nearest = j;
                    }
                }
                std::vector<double> z = pts[i];
                for (std::size_t c = 0; c < z.size(); ++c) z[c] -= step * pts[nearest][c];
                if (clamp_to_cap(z)) pts[i] = std::move(z);
            }
        }
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (!fits(pts[i], pts, i)) return false;
        }
        return true;
    }

private:
    std::vector<double> random_direction() {
        std::normal_distribution<double> g(0.0, 1.0);
        std::vector<double> w(static_cast<std::size_t>(n_) - 1);
        double norm = 0.0;
        do {
            norm = 0.0;
            for (double& c : w) {
                c = g(rng_);
                norm += c * c;
            }
        } while (norm < 1e-12);
        norm = std::sqrt(norm);
        for (double& c : w) c /= norm;
        return w;
    }

    std::vector<double> assemble(double polar, const std::vector<double>& dir) const {
        std::vector<double> y(static_cast<std::size_t>(n_));
        for (std::size_t c = 0; c + 1 < y.size(); ++c) y[c] = std::sin(polar) * dir[c];
        y.back() = std::cos(polar);
        return y;
    }

    int n_;
    double phi_;
    double cos_theta_;
    std::mt19937_64& rng_;
};

}  // namespace

SearchResult h_m_search(const Certificate& cert, int m, int restarts, std::uint64_t seed) {
    if (!cert.accepted) throw DomainError("certificate was rejected; nothing to search");
    if (m < 0) throw DomainError("configuration size must be nonnegative");
    if (restarts < 1) throw DomainError("at least one restart is required");

    std::mt19937_64 rng(seed);
    CapSampler sampler(cert, rng);

    SearchResult best;
    best.value = cert.f1;  // the empty configuration
    best.m_used = 0;
    best.config.m = 0;

    std::vector<std::vector<double>> chain;  // best configuration of the previous level
    const double phi = cert.phi;

    for (int level = 1; level <= m; ++level) {
        bool level_feasible = false;
        double level_best = -kInf;
        std::vector<std::vector<double>> level_config;

        for (int r = 0; r < restarts; ++r) {
            // Extend the previous level's best on even restarts, grow a fresh
            // configuration on odd ones.
            std::vector<std::vector<double>> pts;
            if (r % 2 == 0 && static_cast<int>(chain.size()) == level - 1) pts = chain;
            bool built = true;
            while (static_cast<int>(pts.size()) < level) {
                bool placed = false;
                for (int attempt = 0; attempt < 200; ++attempt) {
                    std::vector<double> y = sampler.random_point();
                    if (sampler.fits(y, pts, pts.size())) {
                        pts.push_back(std::move(y));
                        placed = true;
                        break;
                    }
                }
                if (!placed) {
                    // Rejection cannot hit tight layouts; restart from a fresh
                    // random set spread out by deterministic repulsion.
                    std::vector<std::vector<double>> trial;
                    for (int i = 0; i < level; ++i) trial.push_back(sampler.random_point());
                    if (sampler.repel(trial, 400)) {
                        pts = std::move(trial);
                    } else {
                        built = false;
                    }
                    break;
                }
            }
            if (!built) continue;

            auto total = [&](const std::vector<std::vector<double>>& p) {
                double h = cert.f1;
                for (const auto& y : p) h += cert.f.eval_mono(-y.back());
                return h;
            };
            double value = total(pts);
            for (int sweep = 0; sweep < 80; ++sweep) {
                const double step = phi * 0.4 * std::pow(0.93, sweep) + 1e-4;
                for (std::size_t i = 0; i < pts.size(); ++i) {
                    std::vector<double> cand = sampler.perturb(pts[i], step);
                    if (!sampler.fits(cand, pts, i)) continue;
                    const double delta =
                        cert.f.eval_mono(-cand.back()) - cert.f.eval_mono(-pts[i].back());
                    if (delta > 0.0) {
                        pts[i] = std::move(cand);
                        value += delta;
                    }
                }
            }
            level_feasible = true;
            if (value > level_best) {
                level_best = value;
                level_config = pts;
            }
        }

        if (!level_feasible) continue;
        chain = level_config;
        if (level_best > best.value) {
            best.value = level_best;
            best.m_used = level;
            best.config.m = level;
            best.config.points = level_config;
        }
    }

    if (m > 0 && static_cast<int>(chain.size()) != m) {
        // No feasible configuration of the full requested size was ever built.
        best.placement_failed = true;
    }
    // Re-verify whatever is reported at the looser external tolerance.
    best.value = h_value(cert, best.config);
    return best;
}

Bound extension_bound(const Certificate& cert, double h_max_certified,
                      const std::vector<double>& observed_search_values) {
    if (!cert.accepted) throw DomainError("certificate was rejected; no bound follows");
    for (double v : observed_search_values) {
        if (v > h_max_certified + 1e-9) {
            throw ConsistencyError("search found h = " + fmt(v) +
                                   " above the certified maximum " + fmt(h_max_certified));
        }
    }
    Bound b = Bound::upper(floor_bound(h_max_certified / cert.f0), "extension",
                           "certified h-max over the mean coefficient");
    b.child(Bound::upper(h_max_certified, "h-max", "externally certified"));
    return b;
}

}  // namespace capbound::ext
