#pragma once

#include <optional>
#include <string>
#include <vector>

#include "capbound/angle.hpp"
#include "capbound/bound.hpp"
#include "capbound/sphere_bounds.hpp"

namespace capbound::app {

enum class Format { Tsv, Json, Markdown };

struct DensityRequest {
    int n = 3;                  // packing dimension (balls in R^n)
    Angle theta{0.0};
    std::optional<Angle> phi;   // enables the cap-transfer variant
};

struct DensityResult {
    double value = 1.0;
    bool clamped = false;          // true when the raw bound exceeded 1 (vacuous)
    double plain = 0.0;            // (1/2) sin(theta/2)^n A(n+1, theta)
    std::optional<double> by_cap;  // cap-transfer variant when phi was given
    Bound a_bound;                 // the code bound used by the winner
};

// Sphere-packing density bound: the smaller of the plain transfer and (when a
// cap radius is supplied) the cap transfer, clamped at 1.
DensityResult density_bound(const DensityRequest& req,
                            const sphere::SphereOptions& options = {});

enum class TableId { A6, Log2A };

struct TableCell {
    double avz = 0.0;
    double hemi = 0.0;
    double two = 0.0;
};

struct TableRowResult {
    int n = 0;
    double theta_pi = 0.0;
    double phi_pi = 0.0;
    TableCell computed;       // integer cells for A6, log2 of real bounds for Log2A
    TableCell floored_mode;   // Log2A only: log2 of per-term-floored compositions
    TableCell reference;      // stored reference values
    TableCell diff;           // computed - reference
    std::vector<std::string> flags;  // per-cell mismatch / mode annotations
};

struct BoundTable {
    TableId id = TableId::A6;
    std::vector<TableRowResult> rows;
    [[nodiscard]] std::string render(Format format) const;
    [[nodiscard]] bool all_match(double tolerance) const;
};

// Recompute every cell of the named table with the bound pipeline and diff it
// against the stored reference values. Rows evaluate concurrently; output is
// deterministic.
BoundTable run_table(TableId id, const std::string& data_dir = "");

// Shared rendering helpers for the CLI.
std::string render_bound(const Bound& b, Format format);

}  // namespace capbound::app
