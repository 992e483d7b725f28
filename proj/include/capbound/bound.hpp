#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "capbound/errors.hpp"

namespace capbound {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Conservative integer rounding for real-valued code-size bounds.
// Upper bounds may only loosen when rounded, so the guard nudges values that
// sit a hair below an integer (LP optima, tight universal-bound anchors) up
// before flooring. Lower bounds use the mirrored ceiling.
inline double floor_bound(double x, double guard = 1e-6) {
    return std::floor(x + guard);
}
inline double ceil_bound(double x, double guard = 1e-6) {
    return std::ceil(x - guard);
}

enum class BoundKind { Upper, Lower, Exact, NotApplicable };

[[nodiscard]] std::string to_string(BoundKind k);

// A code-size bound together with the derivation that produced it.
// `value` is an extended natural: a nonnegative integer stored as double, or
// +infinity for a vacuous bound. `rule` names the rule applied; `inputs` are
// the child bounds it combined; `notes` carry flags (fallbacks, degeneracies,
// cross-check mismatches) that the CLI renders alongside the tree.
struct Bound {
    BoundKind kind = BoundKind::NotApplicable;
    double value = kInf;
    std::string rule;
    std::string detail;
    std::vector<std::string> notes;
    std::vector<Bound> inputs;

    [[nodiscard]] bool applicable() const { return kind != BoundKind::NotApplicable; }
    [[nodiscard]] bool finite() const { return applicable() && std::isfinite(value); }

    [[nodiscard]] long long as_int() const {
        if (!finite()) throw DomainError("bound has no finite value: " + rule);
        return std::llround(value);
    }

    [[nodiscard]] bool is_upper() const {
        return kind == BoundKind::Upper || kind == BoundKind::Exact;
    }
    [[nodiscard]] bool is_lower() const {
        return kind == BoundKind::Lower || kind == BoundKind::Exact;
    }

    Bound& note(std::string n) {
        notes.push_back(std::move(n));
        return *this;
    }
    Bound& child(Bound b) {
        inputs.push_back(std::move(b));
        return *this;
    }

    static Bound upper(double v, std::string rule, std::string detail = "") {
        return Bound{BoundKind::Upper, v, std::move(rule), std::move(detail), {}, {}};
    }
    static Bound lower(double v, std::string rule, std::string detail = "") {
        return Bound{BoundKind::Lower, v, std::move(rule), std::move(detail), {}, {}};
    }
    static Bound exact(double v, std::string rule, std::string detail = "") {
        return Bound{BoundKind::Exact, v, std::move(rule), std::move(detail), {}, {}};
    }
    static Bound not_applicable(std::string rule, std::string why = "") {
        Bound b{BoundKind::NotApplicable, kInf, std::move(rule), "", {}, {}};
        if (!why.empty()) b.notes.push_back(std::move(why));
        return b;
    }

    // Indented derivation-tree rendering.
    [[nodiscard]] std::string describe(int indent = 0) const;
};

}  // namespace capbound
