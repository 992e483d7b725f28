#include "capbound/sphere_bounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>
#include <vector>

#include "capbound/data.hpp"
#include "capbound/geometry.hpp"
#include "capbound/lp.hpp"
#include "capbound/orthopoly.hpp"

namespace capbound::sphere {

namespace {

constexpr double kAngleTol = 1e-12;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

double binom(double top, int k) {
    double v = 1.0;
    for (int i = 1; i <= k; ++i) v *= (top - k + i) / i;
    return v;
}

}  // namespace

Bound exact_circle(Angle theta) {
    const double t = theta.rad();
    if (t <= 0.0) throw DomainError("separation must be positive");
    return Bound::exact(floor_bound(2.0 * kPi / t), "circle-division", "floor(2*pi/theta)");
}

namespace {

// Maximal separation of M points on the two-sphere, M = 2..12. Known exactly
// except M = 10, which is a published numerical optimum.
const std::vector<std::pair<int, double>>& phi3_table() {
    static const std::vector<std::pair<int, double>> table = [] {
        const double deg = kPi / 180.0;
        std::vector<std::pair<int, double>> t;
        t.emplace_back(2, kPi);
        t.emplace_back(3, 2.0 * kPi / 3.0);
        t.emplace_back(4, std::acos(-1.0 / 3.0));
        t.emplace_back(5, kPi / 2.0);
        t.emplace_back(6, kPi / 2.0);
        t.emplace_back(7, std::acos(1.0 / (std::tan(40.0 * deg) * std::tan(80.0 * deg))));
        t.emplace_back(8, std::acos((std::sqrt(8.0) - 1.0) / 7.0));
        t.emplace_back(9, std::acos(1.0 / 3.0));
        t.emplace_back(10, 66.1468 * deg);
        t.emplace_back(11, std::acos(1.0 / std::sqrt(5.0)));
        t.emplace_back(12, std::acos(1.0 / std::sqrt(5.0)));
        return t;
    }();
    return table;
}

}  // namespace

Bound exact_3d(Angle theta) {
    const double t = theta.rad();
    if (t <= 0.0) throw DomainError("separation must be positive");
    const double exact_floor = std::acos(1.0 / std::sqrt(5.0));
    if (t < kPi / 3.0 - kAngleTol) {
        return Bound::not_applicable("three-sphere-table", "separation below pi/3");
    }
    if (t < exact_floor - kAngleTol) {
        // 12 is attained at pi/3 and the separation table is silent in
        // between, so only the upper direction is claimed across the range.
        return Bound::upper(12.0, "three-sphere-table", "M = 12 regime");
    }
    int best = 0;
    for (const auto& [m, sep] : phi3_table()) {
        if (sep >= t - kAngleTol) best = std::max(best, m);
    }
    if (best < 2) throw DomainError("separation exceeds pi");
    Bound b = Bound::exact(best, "three-sphere-table", "max M with phi_3(M) >= theta");
    const double deg = kPi / 180.0;
    if (best == 10 || std::abs(t - 66.1468 * deg) < 0.01 * deg) {
        b.note("phi_3(10) boundary is numerical (66.1468 deg +- 0.01 deg)");
    }
    return b;
}

Bound rankin(int n, Angle theta) {
    if (n < 2) throw DomainError("dimension must be at least 2");
    const double t = theta.rad();
    if (std::abs(t - kPi / 2.0) <= kAngleTol) {
        return Bound::exact(2.0 * n, "orthoplex", "2n at theta = pi/2");
    }
    if (t > kPi / 2.0) {
        const double cap = floor_bound(1.0 - 1.0 / std::cos(t));
        return Bound::exact(std::min<double>(n + 1, cap), "simplex",
                            "min(n+1, floor(1 - 1/cos theta))");
    }
    return Bound::not_applicable("simplex", "separation below pi/2");
}

namespace {

// Largest roots of the adjacent Jacobi families that delimit the levels of
// the universal bound; alpha = (n-3)/2.
double level_root(int n, int k, bool equal_pair) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, bool>, double> cache;
    std::scoped_lock lock(mu);
    const auto key = std::make_tuple(n, k, equal_pair);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const double alpha = 0.5 * (n - 3);
    orthopoly::JacobiParams prm{alpha + 1.0, equal_pair ? alpha + 1.0 : alpha, k};
    const double root = orthopoly::largest_root(prm);
    cache.emplace(key, root);
    return root;
}

LevValue levenshtein_compute(int n, double theta) {
    if (n < 3) throw DomainError("universal bound needs dimension >= 3");
    if (theta <= 0.0 || theta > kPi + kAngleTol) {
        throw DomainError("separation must lie in (0, pi]");
    }
    const double s = std::cos(theta);
    auto geg = [&](int k) { return orthopoly::gegenbauer_eval(n, k, s); };

    // The closed forms are valid only between consecutive extreme roots of
    // the adjacent Jacobi families; outside their interval they can dip
    // below the true maximum, so the level scan is mandatory.
    constexpr int kMaxLevel = 1000;
    for (int k = 1; k <= kMaxLevel; ++k) {
        if (s <= level_root(n, k, false)) {
            const double gk = geg(k);
            const double den = (1.0 - s) * gk;
            if (std::abs(den) < 1e-300) throw NumericalError("degenerate level denominator");
            const double bracket = (2.0 * k + n - 3.0) / (n - 1.0) - (geg(k - 1) - gk) / den;
            return LevValue{binom(k + n - 3.0, k - 1) * bracket, 2 * k - 1};
        }
        if (s <= level_root(n, k, true)) {
            const double gk = geg(k);
            const double gk1 = geg(k + 1);
            const double den = (1.0 - s) * (gk + gk1);
            if (std::abs(den) < 1e-300) throw NumericalError("degenerate level denominator");
            const double bracket =
                (2.0 * k + n - 1.0) / (n - 1.0) - (1.0 + s) * (gk - gk1) / den;
            return LevValue{binom(k + n - 2.0, k) * bracket, 2 * k};
        }
    }
    throw NumericalError("level scan exhausted (separation too small)");
}

}  // namespace

LevValue levenshtein_info(int n, double theta) {
    static std::mutex mu;
    static std::map<std::pair<int, std::uint64_t>, LevValue> cache;
    const auto key = std::make_pair(n, std::bit_cast<std::uint64_t>(theta));
    {
        std::scoped_lock lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const LevValue v = levenshtein_compute(n, theta);
    std::scoped_lock lock(mu);
    cache.emplace(key, v);
    return v;
}

double levenshtein_value(int n, double theta) { return levenshtein_info(n, theta).value; }

Bound levenshtein(int n, Angle theta) {
    if (n == 2) {
        return Bound::not_applicable("universal", "dimension 2 handled by circle division");
    }
    const LevValue v = levenshtein_info(n, theta.rad());
    return Bound::upper(floor_bound(v.value), "universal", "level " + std::to_string(v.level));
}

namespace {

std::vector<double> uniform_grid(double lo, double hi, int count) {
    if (hi - lo < 1e-15) return {lo};
    std::vector<double> g(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (count - 1);
    return g;
}

}  // namespace

DelsarteResult delsarte_lp_full(int n, Angle theta, int degree) {
    if (n < 3) throw DomainError("polynomial method needs dimension >= 3");
    if (degree < 1 || degree > 64) throw DomainError("polynomial degree must lie in [1, 64]");
    const double t = theta.rad();
    if (t <= 0.0) throw DomainError("separation must be positive");
    const double s = std::cos(t);

    std::vector<double> ts = uniform_grid(-1.0, s, 2002);
    const std::vector<double> fine = uniform_grid(-1.0, s, 20 * 2002);

    DelsarteResult result;
    result.degree = degree;
    for (int round = 0; round <= 20; ++round) {
        // Column form of the dual: one nonnegative variable per abscissa,
        // one row per basis index; the row multipliers are the coefficients
        // of the certificate polynomial.
        lp::LPProblem prob;
        prob.direction = lp::Direction::Maximize;
        const std::size_t nc = ts.size();
        prob.c.assign(nc, 1.0);
        prob.A.assign(static_cast<std::size_t>(degree), std::vector<double>(nc));
        prob.b.assign(static_cast<std::size_t>(degree), 1.0);
        prob.senses.assign(static_cast<std::size_t>(degree), lp::Sense::LE);
        for (int k = 1; k <= degree; ++k) {
            auto& row = prob.A[static_cast<std::size_t>(k - 1)];
            for (std::size_t j = 0; j < nc; ++j) {
                row[j] = -orthopoly::gegenbauer_eval(n, k, ts[j]);
            }
        }
        const lp::LPSolution sol = lp::solve(prob);
        if (sol.status == lp::LPStatus::Unbounded) {
            throw LPError("no feasible certificate at degree " + std::to_string(degree));
        }
        if (sol.status != lp::LPStatus::Optimal) {
            throw NumericalError("discretized certificate program did not solve");
        }

        result.value = 1.0 + sol.objective_value;
        result.rounds = round;
        result.coeffs.assign(static_cast<std::size_t>(degree) + 1, 0.0);
        result.coeffs[0] = 1.0;
        for (int k = 1; k <= degree; ++k) {
            const double fk = sol.duals[static_cast<std::size_t>(k - 1)];
            if (fk < -1e-7) throw NumericalError("negative certificate coefficient from duals");
            result.coeffs[static_cast<std::size_t>(k)] = std::max(0.0, fk);
        }

        auto f_at = [&](double x) {
            double v = 0.0;
            for (int k = 0; k <= degree; ++k) {
                v += result.coeffs[static_cast<std::size_t>(k)] * orthopoly::gegenbauer_eval(n, k, x);
            }
            return v;
        };

        // Verify on a 20x finer grid; augment with the worst local maxima.
        std::vector<double> fv(fine.size());
        double worst = -kInf;
        for (std::size_t j = 0; j < fine.size(); ++j) {
            fv[j] = f_at(fine[j]);
            worst = std::max(worst, fv[j]);
        }
        result.max_violation = worst;
        if (worst <= 1e-8) return result;

        std::vector<std::pair<double, double>> peaks;  // (violation, t)
        for (std::size_t j = 0; j < fine.size(); ++j) {
            if (fv[j] <= 1e-8) continue;
            const bool up = j == 0 || fv[j] >= fv[j - 1];
            const bool down = j + 1 == fine.size() || fv[j] >= fv[j + 1];
            if (up && down) peaks.emplace_back(fv[j], fine[j]);
        }
        std::sort(peaks.rbegin(), peaks.rend());
        if (peaks.size() > 32) peaks.resize(32);
        for (const auto& [v, x] : peaks) ts.push_back(x);
    }
    throw ConvergenceError("certificate grid refinement did not converge in 20 rounds");
}

Bound delsarte_lp(int n, Angle theta, int degree) {
    const DelsarteResult r = delsarte_lp_full(n, theta, degree);
    Bound b = Bound::upper(floor_bound(r.value), "polynomial-method",
                           "degree " + std::to_string(degree));
    if (r.rounds > 0) {
        b.note("grid augmented " + std::to_string(r.rounds) + " round(s)");
    }
    return b;
}

std::pair<long long, long long> kissing_table(int n, const std::string& data_dir) {
    const auto& rows = data::kissing_rows(data_dir);
    auto it = rows.find(n);
    if (it == rows.end()) {
        throw DataError("no stored kissing bounds for dimension " + std::to_string(n));
    }
    return {it->second.lower, it->second.upper};
}

namespace {

std::vector<Bound> upper_candidates(int n, Angle theta, const SphereOptions& options) {
    std::vector<Bound> cands;
    const MethodSet& m = options.methods;
    if (m.exact_circle && n == 2) cands.push_back(exact_circle(theta));
    if (m.exact_3d && n == 3) {
        Bound b = exact_3d(theta);
        if (b.applicable()) cands.push_back(std::move(b));
    }
    if (m.rankin) {
        Bound b = rankin(n, theta);
        if (b.applicable()) cands.push_back(std::move(b));
    }
    if (m.levenshtein && n >= 3) {
        Bound b = levenshtein(n, theta);
        if (b.applicable()) cands.push_back(std::move(b));
    }
    if (m.table && std::abs(theta.rad() - kPi / 3.0) <= kAngleTol) {
        const auto& rows = data::kissing_rows(options.data_dir);
        if (auto it = rows.find(n); it != rows.end()) {
            const auto& row = it->second;
            Bound b = row.lower == row.upper
                          ? Bound::exact(static_cast<double>(row.upper), "kissing-table")
                          : Bound::upper(static_cast<double>(row.upper), "kissing-table");
            if (!row.tag.empty()) b.detail = row.tag;
            cands.push_back(std::move(b));
        }
    }
    if (m.delsarte_lp && n >= 3) {
        cands.push_back(delsarte_lp(n, theta, options.lp_degree));
    }
    return cands;
}

}  // namespace

Bound sphere_upper(int n, Angle theta, const SphereOptions& options) {
    if (n < 2) throw DomainError("dimension must be at least 2");
    std::vector<Bound> cands = upper_candidates(n, theta, options);
    if (cands.empty()) {
        return Bound::not_applicable("sphere-upper", "no applicable method selected");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < cands.size(); ++i) {
        if (cands[i].value < cands[best].value ||
            (cands[i].value == cands[best].value && cands[i].kind == BoundKind::Exact)) {
            best = i;
        }
    }
    for (const Bound& c : cands) {
        if (c.kind == BoundKind::Exact && cands[best].value < c.value - 0.5) {
            throw ConsistencyError("upper bound " + fmt(cands[best].value) + " (" +
                                   cands[best].rule + ") undercuts exact value " +
                                   fmt(c.value) + " (" + c.rule + ")");
        }
    }
    Bound result = cands[best];
    for (std::size_t i = 0; i < cands.size(); ++i) {
        if (i != best) result.child(cands[i]);
    }
    return result;
}

double sphere_upper_value(int n, double theta, const SphereOptions& options) {
    static std::mutex mu;
    static std::map<std::tuple<int, std::uint64_t, int, int>, double> cache;
    const int mask = (options.methods.exact_circle << 0) | (options.methods.exact_3d << 1) |
                     (options.methods.rankin << 2) | (options.methods.levenshtein << 3) |
                     (options.methods.delsarte_lp << 4) | (options.methods.table << 5);
    const auto key = std::make_tuple(n, std::bit_cast<std::uint64_t>(theta), mask,
                                     options.methods.delsarte_lp ? options.lp_degree : 0);
    {
        std::scoped_lock lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }

    if (n < 2) throw DomainError("dimension must be at least 2");
    double best = kInf;
    const MethodSet& m = options.methods;
    const Angle th = theta;
    if (m.exact_circle && n == 2) best = std::min(best, exact_circle(th).value);
    if (m.exact_3d && n == 3) {
        const Bound b = exact_3d(th);
        if (b.applicable()) best = std::min(best, b.value);
    }
    if (m.rankin) {
        const Bound b = rankin(n, th);
        if (b.applicable()) best = std::min(best, b.value);
    }
    if (m.levenshtein && n >= 3) {
        best = std::min(best, levenshtein_value(n, theta));
    }
    if (m.table && std::abs(theta - kPi / 3.0) <= kAngleTol) {
        const auto& rows = data::kissing_rows(options.data_dir);
        if (auto it = rows.find(n); it != rows.end()) {
            best = std::min(best, static_cast<double>(it->second.upper));
        }
    }
    if (m.delsarte_lp && n >= 3) {
        best = std::min(best, delsarte_lp_full(n, th, options.lp_degree).value);
    }

    std::scoped_lock lock(mu);
    cache.emplace(key, best);
    return best;
}

Bound sphere_lower(int n, Angle theta, const SphereOptions& options) {
    if (n < 2) throw DomainError("dimension must be at least 2");
    const double t = theta.rad();
    if (t <= 0.0) throw DomainError("separation must be positive");
    std::vector<Bound> cands;
    cands.push_back(Bound::lower(2.0, "antipodal-pair", "two antipodes separate by pi"));
    if (options.methods.exact_circle && n == 2) cands.push_back(exact_circle(theta));
    if (options.methods.exact_3d && n == 3) {
        Bound b = exact_3d(theta);
        if (b.kind == BoundKind::Exact) cands.push_back(std::move(b));
    }
    if (options.methods.rankin) {
        Bound b = rankin(n, theta);
        if (b.kind == BoundKind::Exact) cands.push_back(std::move(b));
    }
    if (options.methods.table && std::abs(t - kPi / 3.0) <= kAngleTol) {
        const auto& rows = data::kissing_rows(options.data_dir);
        if (auto it = rows.find(n); it != rows.end()) {
            cands.push_back(Bound::lower(static_cast<double>(it->second.lower), "kissing-table"));
        }
    }
    // A maximal code's caps of radius theta cover the sphere.
    const double ratio = geometry::sphere_area(n) / geometry::cap_area(n, theta);
    cands.push_back(Bound::lower(std::max(1.0, ceil_bound(ratio)), "covering",
                                 "area ratio " + fmt(ratio)));

    std::size_t best = 0;
    for (std::size_t i = 1; i < cands.size(); ++i) {
        if (cands[i].value > cands[best].value ||
            (cands[i].value == cands[best].value && cands[i].kind == BoundKind::Exact)) {
            best = i;
        }
    }
    for (const Bound& c : cands) {
        if (c.kind == BoundKind::Exact && cands[best].value > c.value + 0.5) {
            throw ConsistencyError("lower bound " + fmt(cands[best].value) + " (" +
                                   cands[best].rule + ") exceeds exact value " + fmt(c.value) +
                                   " (" + c.rule + ")");
        }
    }
    Bound result = cands[best];
    for (std::size_t i = 0; i < cands.size(); ++i) {
        if (i != best) result.child(cands[i]);
    }
    return result;
}

}  // namespace capbound::sphere
