#pragma once

#include <compare>
#include <numbers>
#include <string>
#include <string_view>

#include "capbound/errors.hpp"

namespace capbound {

inline constexpr double kPi = std::numbers::pi;

// Polar/separation angle in radians, confined to [0, pi].
// Values within 1e-12 of the interval are clamped; anything further is rejected.
class Angle {
public:
    static constexpr double kTolerance = 1e-12;

    Angle(double radians) : rad_(validate(radians)) {}  // NOLINT: implicit by design

    [[nodiscard]] double rad() const { return rad_; }
    [[nodiscard]] double deg() const { return rad_ * 180.0 / kPi; }

    static Angle from_degrees(double d) { return Angle(d * kPi / 180.0); }

    // Grammar: "<decimal>deg" | "<decimal>rad" | "<decimal>pi" | "<decimal>" (radians).
    static Angle parse(std::string_view text);

    // Renders using the same grammar ("0.4pi" style when close to a nice pi
    // multiple is NOT attempted; plain "...rad" keeps formatting unambiguous).
    [[nodiscard]] std::string format() const;

    friend auto operator<=>(const Angle& a, const Angle& b) { return a.rad_ <=> b.rad_; }
    friend bool operator==(const Angle& a, const Angle& b) { return a.rad_ == b.rad_; }

private:
    static double validate(double r) {
        if (r < 0.0) {
            if (r < -kTolerance) throw DomainError("angle below 0: " + std::to_string(r));
            return 0.0;
        }
        if (r > kPi) {
            if (r > kPi + kTolerance) throw DomainError("angle above pi: " + std::to_string(r));
            return kPi;
        }
        return r;
    }

    double rad_;
};

}  // namespace capbound
