#pragma once

#include <utility>
#include <vector>

#include "capbound/errors.hpp"

namespace capbound::lp {

enum class Sense { LE, EQ, GE };
enum class Direction { Minimize, Maximize };

// Dense linear program. Variable bounds default to [0, +inf); a finite lower
// bound shifts the variable internally, a finite upper bound adds a row.
struct LPProblem {
    Direction direction = Direction::Minimize;
    std::vector<double> c;
    std::vector<std::vector<double>> A;
    std::vector<double> b;
    std::vector<Sense> senses;
    std::vector<std::pair<double, double>> var_bounds;  // empty => all [0, inf)

    [[nodiscard]] std::size_t num_vars() const { return c.size(); }
    [[nodiscard]] std::size_t num_rows() const { return A.size(); }
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPSolution {
    LPStatus status = LPStatus::Infeasible;
    std::vector<double> x;
    double objective_value = 0.0;
    // One multiplier per input row. Sign convention: for a Maximize problem
    // with <= rows the duals are >= 0 and satisfy c <= y^T A on the support;
    // Minimize flips the sign. Populated only when status == Optimal.
    std::vector<double> duals;
};

// Two-phase dense tableau simplex, largest-coefficient pricing with a Bland
// fallback once the objective stalls (anti-cycling). Feasibility tolerance
// 1e-9 scaled by row norms; persistent tiny pivots raise NumericalError;
// infeasible/unbounded return via status.
LPSolution solve(const LPProblem& problem);

}  // namespace capbound::lp
