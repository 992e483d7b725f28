#pragma once

#include <string>
#include <utility>

#include "capbound/angle.hpp"
#include "capbound/bound.hpp"

namespace capbound::sphere {

struct MethodSet {
    bool exact_circle = true;
    bool exact_3d = true;
    bool rankin = true;
    bool levenshtein = true;
    bool delsarte_lp = false;  // opt-in: expensive and never needed by the table paths
    bool table = true;

    static MethodSet defaults() { return {}; }
    static MethodSet all() { return {true, true, true, true, true, true}; }
    static MethodSet none() { return {false, false, false, false, false, false}; }
};

struct SphereOptions {
    MethodSet methods{};
    int lp_degree = 11;
    std::string data_dir;  // forwarded to the kissing table loader
};

// A(2, theta) = floor(2 pi / theta); exact, theta = pi gives 2.
Bound exact_circle(Angle theta);

// Three-dimensional codes through the tabulated maximal separations phi_3(M):
// exact for theta >= arccos(1/sqrt 5), upper bound 12 for theta >= pi/3,
// not applicable below.
Bound exact_3d(Angle theta);

// Simplex/cross-polytope regime: exact for theta >= pi/2
// (2n at pi/2; min(n+1, floor(1 - 1/cos theta)) beyond).
Bound rankin(int n, Angle theta);

// Universal upper bound on A(n, theta) from extreme Jacobi roots. The level
// m is selected by the root-interval rule (smallest k whose interval contains
// cos theta) — the closed forms are valid only inside their intervals.
// The Bound value is the floored bound; the raw real value backs the
// real-valued table pipeline.
Bound levenshtein(int n, Angle theta);

struct LevValue {
    double value = 0.0;  // real-valued bound, before flooring
    int level = 0;       // m in L_m
};
LevValue levenshtein_info(int n, double theta);
double levenshtein_value(int n, double theta);  // memoized

struct DelsarteResult {
    double value = 0.0;          // min f(1) with f_0 = 1 (real)
    int degree = 0;
    int rounds = 0;              // cutting-plane iterations used
    std::vector<double> coeffs;  // f_k, k = 0..degree, f_0 = 1
    double max_violation = 0.0;  // max f(t) on the final verification grid
};

// Polynomial-method upper bound: minimize f(1) over f = sum f_k G_k with
// f_k >= 0, f_0 = 1, f <= 0 on [-1, cos theta]; discretized constraint set
// verified on a 20x finer grid with cutting-plane augmentation (<= 20 rounds).
DelsarteResult delsarte_lp_full(int n, Angle theta, int degree);
Bound delsarte_lp(int n, Angle theta, int degree);

// Stored best-known kissing bounds (lower, upper) for 2 <= n <= 24.
std::pair<long long, long long> kissing_table(int n, const std::string& data_dir = "");

// Dispatcher: minimum over the selected applicable methods, floored once.
// The real-valued variant returns the pre-floor minimum (exact methods
// contribute their integers, the universal bound its real value) for
// compositions that floor at the end.
Bound sphere_upper(int n, Angle theta, const SphereOptions& options = {});
double sphere_upper_value(int n, double theta, const SphereOptions& options = {});

// Best known lower bound on A(n, theta): exact regimes, the kissing table at
// pi/3, and the covering argument.
Bound sphere_lower(int n, Angle theta, const SphereOptions& options = {});

}  // namespace capbound::sphere
