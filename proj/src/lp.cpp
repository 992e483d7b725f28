#include "capbound/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace capbound::lp {

namespace {

constexpr double kTol = 1e-9;
constexpr double kTinyPivot = 1e-10;
constexpr int kMaxIterations = 50000;

struct Tableau {
    std::size_t rows = 0;
    std::size_t cols = 0;  // excluding the RHS column
    std::vector<double> a;  // (rows) x (cols + 1), row-major, RHS last
    std::vector<double> obj;  // reduced costs, size cols
    double obj_rhs = 0.0;  // negated objective value of the current basis
    std::vector<std::size_t> basis;  // column basic in each row

    double& at(std::size_t i, std::size_t j) { return a[i * (cols + 1) + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * (cols + 1) + j]; }
    double& rhs(std::size_t i) { return a[i * (cols + 1) + cols]; }
    double rhs(std::size_t i) const { return a[i * (cols + 1) + cols]; }

    void pivot(std::size_t r, std::size_t e) {
        const double p = at(r, e);
        for (std::size_t j = 0; j <= cols; ++j) a[r * (cols + 1) + j] /= p;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            const double f = at(i, e);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= cols; ++j) {
                a[i * (cols + 1) + j] -= f * a[r * (cols + 1) + j];
            }
            at(i, e) = 0.0;
        }
        const double fo = obj[e];
        if (fo != 0.0) {
            for (std::size_t j = 0; j < cols; ++j) obj[j] -= fo * at(r, j);
            obj_rhs -= fo * rhs(r);
            obj[e] = 0.0;
        }
        basis[r] = e;
    }

    // Rebuild reduced costs for cost vector `cost` against the current basis.
    void set_objective(const std::vector<double>& cost) {
        obj = cost;
        obj_rhs = 0.0;
        for (std::size_t i = 0; i < rows; ++i) {
            const double cb = cost[basis[i]];
            if (cb == 0.0) continue;
            for (std::size_t j = 0; j < cols; ++j) obj[j] -= cb * at(i, j);
            obj_rhs -= cb * rhs(i);
        }
        for (std::size_t i = 0; i < rows; ++i) obj[basis[i]] = 0.0;
    }
};

enum class RunResult { Optimal, Unbounded };

RunResult run_simplex(Tableau& t, const std::vector<bool>& allowed, int& iterations) {
    int consecutive_tiny = 0;
    int stalled = 0;               // non-improving pivots in a row
    double last_obj = -t.obj_rhs;  // internal minimization objective
    while (true) {
        if (++iterations > kMaxIterations) {
            throw NumericalError("simplex iteration limit exceeded");
        }
        // Dantzig pricing for speed; Bland's lowest-index rule kicks in after
        // a degenerate stall, which restores the termination guarantee.
        const bool bland = stalled > 40;
        std::size_t enter = t.cols;
        double most_negative = -kTol;
        for (std::size_t j = 0; j < t.cols; ++j) {
            if (!allowed[j]) continue;
            if (bland) {
                if (t.obj[j] < -kTol) {
                    enter = j;
                    break;
                }
            } else if (t.obj[j] < most_negative) {
                most_negative = t.obj[j];
                enter = j;
            }
        }
        if (enter == t.cols) return RunResult::Optimal;

        std::size_t leave = t.rows;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < t.rows; ++i) {
            const double coef = t.at(i, enter);
            if (coef <= kTol) continue;
            const double ratio = t.rhs(i) / coef;
            if (ratio < best_ratio - kTol ||
                (ratio < best_ratio + kTol && (leave == t.rows || t.basis[i] < t.basis[leave]))) {
                best_ratio = ratio;
                leave = i;
            }
        }
        if (leave == t.rows) return RunResult::Unbounded;

        if (std::abs(t.at(leave, enter)) < kTinyPivot) {
            if (++consecutive_tiny > 30) {
                throw NumericalError("simplex stalled on near-singular pivots");
            }
        } else {
            consecutive_tiny = 0;
        }
        t.pivot(leave, enter);
        const double now = -t.obj_rhs;
        if (now < last_obj - 1e-12 * (1.0 + std::abs(last_obj))) {
            stalled = 0;
            last_obj = now;
        } else {
            ++stalled;
        }
    }
}

}  // namespace

LPSolution solve(const LPProblem& problem) {
    const std::size_t nv = problem.num_vars();
    const std::size_t m = problem.num_rows();
    if (nv == 0) throw DomainError("linear program has no variables");
    if (problem.b.size() != m || problem.senses.size() != m) {
        throw DomainError("linear program row arrays disagree in length");
    }
    for (const auto& row : problem.A) {
        if (row.size() != nv) throw DomainError("constraint row has wrong width");
    }
    if (!problem.var_bounds.empty() && problem.var_bounds.size() != nv) {
        throw DomainError("var_bounds must be empty or one pair per variable");
    }

    const double dir_sign = problem.direction == Direction::Minimize ? 1.0 : -1.0;
    const double inf = std::numeric_limits<double>::infinity();

    // Expand variables: finite lower bounds shift, free variables split into
    // a difference of nonnegative columns, finite upper bounds add LE rows.
    std::vector<double> lo(nv, 0.0), hi(nv, inf);
    if (!problem.var_bounds.empty()) {
        for (std::size_t j = 0; j < nv; ++j) {
            lo[j] = problem.var_bounds[j].first;
            hi[j] = problem.var_bounds[j].second;
            if (hi[j] < lo[j]) throw DomainError("variable bound has hi < lo");
        }
    }
    std::vector<std::size_t> pos_col(nv), neg_col(nv, SIZE_MAX);
    std::size_t ncols_real = 0;
    for (std::size_t j = 0; j < nv; ++j) {
        pos_col[j] = ncols_real++;
        if (!std::isfinite(lo[j])) neg_col[j] = ncols_real++;
    }

    struct Row {
        std::vector<double> coef;
        double rhs = 0.0;
        Sense sense = Sense::LE;
    };
    std::vector<Row> rows;
    rows.reserve(m + nv);
    double shift_offset = 0.0;  // sum c_j * lo_j over shifted variables
    for (std::size_t i = 0; i < m; ++i) {
        Row r;
        r.coef.assign(ncols_real, 0.0);
        r.rhs = problem.b[i];
        r.sense = problem.senses[i];
        for (std::size_t j = 0; j < nv; ++j) {
            const double aij = problem.A[i][j];
            if (aij == 0.0) continue;
            r.coef[pos_col[j]] = aij;
            if (neg_col[j] != SIZE_MAX) r.coef[neg_col[j]] = -aij;
            if (std::isfinite(lo[j]) && lo[j] != 0.0) r.rhs -= aij * lo[j];
        }
        rows.push_back(std::move(r));
    }
    for (std::size_t j = 0; j < nv; ++j) {
        if (std::isfinite(lo[j]) && lo[j] != 0.0) shift_offset += problem.c[j] * lo[j];
        if (std::isfinite(hi[j])) {
            Row r;
            r.coef.assign(ncols_real, 0.0);
            r.coef[pos_col[j]] = 1.0;
            if (neg_col[j] != SIZE_MAX) r.coef[neg_col[j]] = -1.0;
            r.rhs = std::isfinite(lo[j]) ? hi[j] - lo[j] : hi[j];
            r.sense = Sense::LE;
            rows.push_back(std::move(r));
        }
    }

    const std::size_t nrows = rows.size();
    // Column layout: real | slack/surplus | artificial; RHS appended last.
    std::vector<std::size_t> slack_col(nrows, SIZE_MAX);
    std::size_t ncols = ncols_real;
    for (std::size_t i = 0; i < nrows; ++i) {
        if (rows[i].sense != Sense::EQ) slack_col[i] = ncols++;
    }
    std::vector<double> row_scale(nrows, 1.0);
    std::vector<std::size_t> art_col(nrows, SIZE_MAX);
    std::vector<bool> needs_artificial(nrows, false);
    for (std::size_t i = 0; i < nrows; ++i) {
        if (rows[i].rhs < 0.0) row_scale[i] = -1.0;
        const double slack_sign =
            rows[i].sense == Sense::LE ? row_scale[i] : (rows[i].sense == Sense::GE ? -row_scale[i] : 0.0);
        needs_artificial[i] = slack_sign <= 0.0;
        if (needs_artificial[i]) art_col[i] = ncols++;
    }

    Tableau t;
    t.rows = nrows;
    t.cols = ncols;
    t.a.assign(nrows * (ncols + 1), 0.0);
    t.basis.assign(nrows, SIZE_MAX);
    for (std::size_t i = 0; i < nrows; ++i) {
        for (std::size_t j = 0; j < ncols_real; ++j) {
            t.at(i, j) = row_scale[i] * rows[i].coef[j];
        }
        if (slack_col[i] != SIZE_MAX) {
            t.at(i, slack_col[i]) = row_scale[i] * (rows[i].sense == Sense::LE ? 1.0 : -1.0);
        }
        t.rhs(i) = row_scale[i] * rows[i].rhs;
        if (needs_artificial[i]) {
            t.at(i, art_col[i]) = 1.0;
            t.basis[i] = art_col[i];
        } else {
            t.basis[i] = slack_col[i];
        }
    }

    int iterations = 0;
    std::vector<bool> allowed(ncols, true);
    const bool any_artificial =
        std::any_of(needs_artificial.begin(), needs_artificial.end(), [](bool v) { return v; });
    if (any_artificial) {
        std::vector<double> phase1(ncols, 0.0);
        for (std::size_t i = 0; i < nrows; ++i) {
            if (art_col[i] != SIZE_MAX) phase1[art_col[i]] = 1.0;
        }
        t.set_objective(phase1);
        if (run_simplex(t, allowed, iterations) != RunResult::Optimal) {
            throw NumericalError("phase-1 objective unbounded");
        }
        double b_scale = 1.0;
        for (std::size_t i = 0; i < nrows; ++i) b_scale = std::max(b_scale, std::abs(t.rhs(i)));
        if (-t.obj_rhs > 1e-7 * b_scale) {
            return LPSolution{LPStatus::Infeasible, {}, 0.0, {}};
        }
        // Force artificials out of the basis where a real pivot exists; a row
        // with none is redundant and its artificial stays basic at level zero.
        for (std::size_t i = 0; i < nrows; ++i) {
            if (art_col[i] == SIZE_MAX || t.basis[i] != art_col[i]) continue;
            for (std::size_t j = 0; j < ncols; ++j) {
                const bool is_art =
                    std::find(art_col.begin(), art_col.end(), j) != art_col.end();
                if (!is_art && std::abs(t.at(i, j)) > 1e-8) {
                    t.pivot(i, j);
                    break;
                }
            }
        }
        for (std::size_t i = 0; i < nrows; ++i) {
            if (art_col[i] != SIZE_MAX) allowed[art_col[i]] = false;
        }
    }

    std::vector<double> phase2(ncols, 0.0);
    for (std::size_t j = 0; j < nv; ++j) {
        phase2[pos_col[j]] = dir_sign * problem.c[j];
        if (neg_col[j] != SIZE_MAX) phase2[neg_col[j]] = -dir_sign * problem.c[j];
    }
    t.set_objective(phase2);
    if (run_simplex(t, allowed, iterations) == RunResult::Unbounded) {
        return LPSolution{LPStatus::Unbounded, {}, 0.0, {}};
    }

    std::vector<double> col_value(ncols, 0.0);
    for (std::size_t i = 0; i < nrows; ++i) col_value[t.basis[i]] = t.rhs(i);
    LPSolution sol;
    sol.status = LPStatus::Optimal;
    sol.x.assign(nv, 0.0);
    for (std::size_t j = 0; j < nv; ++j) {
        double v = col_value[pos_col[j]];
        if (neg_col[j] != SIZE_MAX) {
            v -= col_value[neg_col[j]];
        } else {
            v += lo[j];
        }
        sol.x[j] = v;
    }
    // obj_rhs carries -z for the internal minimization.
    sol.objective_value = dir_sign * (-t.obj_rhs) + shift_offset;

    // Row multipliers via a per-row identity witness column w with
    // column s*e_i and zero phase-2 cost: reduced_cost(w) = -s * y_i.
    sol.duals.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t w;
        double s;
        if (art_col[i] != SIZE_MAX) {
            w = art_col[i];
            s = 1.0;
        } else {
            w = slack_col[i];
            s = row_scale[i] * (rows[i].sense == Sense::LE ? 1.0 : -1.0);
        }
        const double y_internal = -s * t.obj[w];
        sol.duals[i] = dir_sign * row_scale[i] * y_internal;
    }
    return sol;
}

}  // namespace capbound::lp
