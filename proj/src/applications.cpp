#include "capbound/applications.hpp"

#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>

#include <json.hpp>

#include "capbound/cap_bounds.hpp"
#include "capbound/data.hpp"
#include "capbound/geometry.hpp"

namespace capbound::app {

using ordered_json = nlohmann::ordered_json;

DensityResult density_bound(const DensityRequest& req, const sphere::SphereOptions& options) {
    if (req.n < 1) throw DomainError("packing dimension must be at least 1");
    const double theta = req.theta.rad();
    if (!(theta > 0.0)) throw DomainError("separation must be positive");
    if (req.phi) {
        const double phi = req.phi->rad();
        if (phi < 0.5 * theta - 1e-12 || phi > 0.5 * kPi + 1e-12) {
            throw DomainError("cap radius must lie in [theta/2, pi/2]");
        }
    }

    // Balls of radius sin(theta/2)/... : packings in R^n transfer to codes on
    // the sphere one dimension up.
    const int code_dim = req.n + 1;
    const double scale = 0.5 * std::pow(std::sin(0.5 * theta), req.n);

    DensityResult res;
    res.a_bound = sphere::sphere_upper(code_dim, req.theta, options);
    res.plain = scale * res.a_bound.value;
    double best = res.plain;

    if (req.phi) {
        cap::CapSpec spec{code_dim, req.theta, *req.phi};
        const auto cap_res = cap::best_cap_bound(spec, options);
        Bound transfer = cap::bassalygo_elias(code_dim, req.theta, *req.phi, cap_res.upper);
        res.by_cap = scale * transfer.value;
        if (*res.by_cap < best) {
            best = *res.by_cap;
            res.a_bound = std::move(transfer);
        }
    }

    res.value = best;
    if (res.value > 1.0) {
        res.value = 1.0;
        res.clamped = true;
    }
    return res;
}

namespace {

constexpr double kA6Tolerance = 1.0;      // documented per-cell allowance
constexpr double kLog2Tolerance = 0.05;   // reference cells print 4-6 digits

double closer(double a, double b, double ref) {
    return std::abs(a - ref) <= std::abs(b - ref) ? a : b;
}

TableRowResult compute_row(TableId id, const data::ReferenceCell& ref,
                           const std::string& data_dir) {
    TableRowResult row;
    row.n = ref.n;
    row.theta_pi = ref.theta_pi;
    row.phi_pi = ref.phi_pi;
    row.reference = {ref.avz, ref.hemi, ref.two};

    sphere::SphereOptions opts;
    opts.data_dir = data_dir;
    cap::CapSpec spec{ref.n, Angle(ref.theta_pi * kPi), Angle(ref.phi_pi * kPi)};

    const double floored_avz = cap::avz_cap(spec, opts).value;
    const double floored_hemi = cap::hemi_bound(spec, opts).value;
    const double floored_two = cap::two_part_bound(spec, opts).value;

    if (id == TableId::A6) {
        row.computed = {floored_avz, floored_hemi, floored_two};
        row.floored_mode = row.computed;
        row.diff = {row.computed.avz - ref.avz, row.computed.hemi - ref.hemi,
                    row.computed.two - ref.two};
        const char* names[3] = {"cascade", "hemisphere", "two-part"};
        const double diffs[3] = {row.diff.avz, row.diff.hemi, row.diff.two};
        for (int c = 0; c < 3; ++c) {
            if (std::abs(diffs[c]) > kA6Tolerance + 1e-9) {
                std::ostringstream os;
                os << names[c] << ": deviates from reference by " << diffs[c];
                row.flags.push_back(os.str());
            }
        }
        return row;
    }

    const double omega = geometry::omega(spec.theta, spec.phi).rad();
    row.computed.avz = std::log2(cap::avz_cap_value(spec, opts));
    row.computed.hemi = std::log2(sphere::sphere_upper_value(ref.n, omega, opts));
    row.computed.two = std::log2(cap::two_part_value(spec, opts));
    row.floored_mode = {std::log2(floored_avz), std::log2(floored_hemi),
                        std::log2(floored_two)};
    row.diff = {row.computed.avz - ref.avz, row.computed.hemi - ref.hemi,
                row.computed.two - ref.two};

    const char* names[3] = {"cascade", "hemisphere", "two-part"};
    const double real_v[3] = {row.computed.avz, row.computed.hemi, row.computed.two};
    const double floor_v[3] = {row.floored_mode.avz, row.floored_mode.hemi,
                               row.floored_mode.two};
    const double refs[3] = {ref.avz, ref.hemi, ref.two};
    for (int c = 0; c < 3; ++c) {
        if (std::abs(floor_v[c] - refs[c]) < std::abs(real_v[c] - refs[c])) {
            row.flags.push_back(std::string(names[c]) + ": floored composition closer");
        }
        const double best = closer(real_v[c], floor_v[c], refs[c]);
        if (std::abs(best - refs[c]) > kLog2Tolerance + 1e-9) {
            std::ostringstream os;
            os << names[c] << ": deviates from reference by " << (best - refs[c]);
            row.flags.push_back(os.str());
        }
    }
    return row;
}

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string fmt_cell(TableId id, double v) {
    if (id == TableId::A6) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(std::llround(v)));
        return buf;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

const char* table_name(TableId id) { return id == TableId::A6 ? "A6" : "logA"; }

ordered_json cell_json(TableId id, const TableCell& c) {
    ordered_json j;
    if (id == TableId::A6) {
        j["avz"] = static_cast<long long>(std::llround(c.avz));
        j["hemi"] = static_cast<long long>(std::llround(c.hemi));
        j["two"] = static_cast<long long>(std::llround(c.two));
    } else {
        j["avz"] = c.avz;
        j["hemi"] = c.hemi;
        j["two"] = c.two;
    }
    return j;
}

}  // namespace

std::string BoundTable::render(Format format) const {
    std::ostringstream out;
    if (format == Format::Json) {
        // JSON lines: one self-contained record per row.
        for (const auto& row : rows) {
            ordered_json j;
            j["table"] = table_name(id);
            j["n"] = row.n;
            j["theta_pi"] = row.theta_pi;
            j["phi_pi"] = row.phi_pi;
            j["computed"] = cell_json(id, row.computed);
            if (id == TableId::Log2A) {
                j["floored"] = ordered_json{{"avz", row.floored_mode.avz},
                                            {"hemi", row.floored_mode.hemi},
                                            {"two", row.floored_mode.two}};
            }
            j["reference"] = ordered_json{{"avz", row.reference.avz},
                                          {"hemi", row.reference.hemi},
                                          {"two", row.reference.two}};
            j["diff"] = ordered_json{{"avz", row.diff.avz},
                                     {"hemi", row.diff.hemi},
                                     {"two", row.diff.two}};
            j["flags"] = row.flags;
            out << j.dump() << '\n';
        }
        return out.str();
    }

    std::vector<std::string> header = {"n", "theta/pi", "phi/pi", "avz", "hemi", "two"};
    if (id == TableId::Log2A) {
        header.insert(header.end(), {"avz_floored", "hemi_floored", "two_floored"});
    }
    header.insert(header.end(), {"ref_avz", "ref_hemi", "ref_two", "flags"});

    std::vector<std::vector<std::string>> body;
    for (const auto& row : rows) {
        std::vector<std::string> r = {std::to_string(row.n), fmt_g(row.theta_pi),
                                      fmt_g(row.phi_pi), fmt_cell(id, row.computed.avz),
                                      fmt_cell(id, row.computed.hemi),
                                      fmt_cell(id, row.computed.two)};
        if (id == TableId::Log2A) {
            r.push_back(fmt_cell(id, row.floored_mode.avz));
            r.push_back(fmt_cell(id, row.floored_mode.hemi));
            r.push_back(fmt_cell(id, row.floored_mode.two));
        }
        r.push_back(fmt_cell(id, row.reference.avz));
        r.push_back(fmt_cell(id, row.reference.hemi));
        r.push_back(fmt_cell(id, row.reference.two));
        r.push_back(join(row.flags, "; "));
        body.push_back(std::move(r));
    }

    if (format == Format::Tsv) {
        out << join(header, "\t") << '\n';
        for (const auto& r : body) out << join(r, "\t") << '\n';
        return out.str();
    }

    out << "| " << join(header, " | ") << " |\n|";
    for (std::size_t i = 0; i < header.size(); ++i) out << " --- |";
    out << '\n';
    for (const auto& r : body) out << "| " << join(r, " | ") << " |\n";
    return out.str();
}

bool BoundTable::all_match(double tolerance) const {
    for (const auto& row : rows) {
        const double real_v[3] = {row.computed.avz, row.computed.hemi, row.computed.two};
        const double floor_v[3] = {row.floored_mode.avz, row.floored_mode.hemi,
                                   row.floored_mode.two};
        const double refs[3] = {row.reference.avz, row.reference.hemi, row.reference.two};
        for (int c = 0; c < 3; ++c) {
            double d = std::abs(real_v[c] - refs[c]);
            if (id == TableId::Log2A) {
                d = std::min(d, std::abs(floor_v[c] - refs[c]));
            }
            if (d > tolerance + 1e-12) return false;
        }
    }
    return true;
}

BoundTable run_table(TableId id, const std::string& data_dir) {
    BoundTable table;
    table.id = id;
    const auto& cells = data::reference_cells(data_dir);
    std::vector<std::future<TableRowResult>> futures;
    for (const auto& cell : cells) {
        if (cell.table != table_name(id)) continue;
        futures.push_back(std::async(std::launch::async, compute_row, id, cell, data_dir));
    }
    table.rows.reserve(futures.size());
    for (auto& f : futures) table.rows.push_back(f.get());
    return table;
}

namespace {

std::string value_str(const Bound& b) {
    if (!std::isfinite(b.value)) return "inf";
    return fmt_g(b.value);
}

ordered_json bound_json(const Bound& b) {
    ordered_json j;
    j["kind"] = to_string(b.kind);
    if (std::isfinite(b.value)) {
        j["value"] = b.value;
    } else {
        j["value"] = "inf";
    }
    j["rule"] = b.rule;
    if (!b.detail.empty()) j["detail"] = b.detail;
    if (!b.notes.empty()) j["notes"] = b.notes;
    if (!b.inputs.empty()) {
        ordered_json kids = ordered_json::array();
        for (const auto& k : b.inputs) kids.push_back(bound_json(k));
        j["inputs"] = kids;
    }
    return j;
}

}  // namespace

std::string render_bound(const Bound& b, Format format) {
    switch (format) {
        case Format::Json:
            return bound_json(b).dump() + "\n";
        case Format::Tsv: {
            std::ostringstream out;
            out << to_string(b.kind) << '\t' << value_str(b) << '\t' << b.rule << '\t'
                << b.detail << '\t' << join(b.notes, "; ") << '\n';
            return out.str();
        }
        case Format::Markdown: {
            std::ostringstream out;
            out << "**" << to_string(b.kind) << " " << value_str(b) << "** — `" << b.rule
                << "`";
            if (!b.detail.empty()) out << ": " << b.detail;
            out << "\n\n```\n" << b.describe() << "```\n";
            return out.str();
        }
    }
    throw DomainError("unknown format");
}

}  // namespace capbound::app
