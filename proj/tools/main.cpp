#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "capbound/applications.hpp"
#include "capbound/cap_bounds.hpp"
#include "capbound/data.hpp"
#include "capbound/delsarte_ext.hpp"
#include "capbound/hemisphere.hpp"
#include "capbound/sphere_bounds.hpp"

namespace {

using capbound::Angle;
using capbound::Bound;
using ordered_json = nlohmann::ordered_json;
namespace app = capbound::app;
namespace cap = capbound::cap;
namespace ext = capbound::ext;
namespace hemi = capbound::hemi;
namespace sphere = capbound::sphere;

app::Format to_format(const std::string& s) {
    if (s == "tsv") return app::Format::Tsv;
    if (s == "json") return app::Format::Json;
    return app::Format::Markdown;
}

std::vector<std::string> split_tokens(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

// The --methods grammar: a comma list of rule names; sphere-level tokens and
// cap-level tokens share one flag so `cap --methods lp` can reach the
// polynomial-method LP inside the sphere dispatcher.
void apply_sphere_token(sphere::MethodSet& set, const std::string& tok, bool& known) {
    known = true;
    if (tok == "all") {
        set = sphere::MethodSet::all();
    } else if (tok == "defaults") {
        set = sphere::MethodSet::defaults();
    } else if (tok == "none") {
        set = sphere::MethodSet::none();
    } else if (tok == "circle") {
        set.exact_circle = true;
    } else if (tok == "exact3d") {
        set.exact_3d = true;
    } else if (tok == "rankin") {
        set.rankin = true;
    } else if (tok == "levenshtein" || tok == "lev") {
        set.levenshtein = true;
    } else if (tok == "lp") {
        set.delsarte_lp = true;
    } else if (tok == "table") {
        set.table = true;
    } else {
        known = false;
    }
}

sphere::MethodSet parse_sphere_methods(const std::string& spec) {
    if (spec.empty()) return sphere::MethodSet::defaults();
    auto set = sphere::MethodSet::none();
    for (const auto& tok : split_tokens(spec)) {
        bool known = false;
        apply_sphere_token(set, tok, known);
        if (!known) throw CLI::ValidationError("--methods", "unknown method '" + tok + "'");
    }
    return set;
}

struct CapMethodChoice {
    cap::CapMethods methods;
    sphere::MethodSet sphere_set = sphere::MethodSet::defaults();
};

CapMethodChoice parse_cap_methods(const std::string& spec) {
    CapMethodChoice out;
    if (spec.empty()) return out;
    out.methods = cap::CapMethods{false, false, false, false, false, false};
    for (const auto& tok : split_tokens(spec)) {
        if (tok == "all") {
            out.methods = cap::CapMethods::all();
        } else if (tok == "ls1") {
            out.methods.ls1 = true;
        } else if (tok == "ls2") {
            out.methods.ls2 = true;
        } else if (tok == "avz") {
            out.methods.avz = true;
        } else if (tok == "hemi") {
            out.methods.hemi = true;
        } else if (tok == "two-part" || tok == "two_part") {
            out.methods.two_part = true;
        } else if (tok == "partition") {
            out.methods.partition = true;
        } else {
            bool known = false;
            apply_sphere_token(out.sphere_set, tok, known);
            if (!known) {
                throw CLI::ValidationError("--methods", "unknown method '" + tok + "'");
            }
        }
    }
    return out;
}

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void emit(const std::string& label, const Bound& b, app::Format fmt) {
    switch (fmt) {
        case app::Format::Tsv:
            std::cout << label << '\t' << app::render_bound(b, fmt);
            break;
        case app::Format::Json: {
            auto inner = ordered_json::parse(app::render_bound(b, fmt));
            ordered_json out;
            out["label"] = label;
            out.update(inner);
            std::cout << out.dump() << '\n';
            break;
        }
        case app::Format::Markdown:
            std::cout << "### " << label << "\n\n" << app::render_bound(b, fmt) << '\n';
            break;
    }
}

struct Global {
    std::string format = "tsv";
    std::uint64_t seed = 1;
    int lp_degree = 11;
    std::string methods;
    std::string data_dir;

    [[nodiscard]] app::Format fmt() const { return to_format(format); }
    [[nodiscard]] sphere::SphereOptions sphere_options(sphere::MethodSet set) const {
        sphere::SphereOptions o;
        o.methods = set;
        o.lp_degree = lp_degree;
        o.data_dir = data_dir;
        return o;
    }
};

void run_density(const Global& g, int n, const std::string& theta, const std::string& phi) {
    app::DensityRequest req;
    req.n = n;
    req.theta = Angle::parse(theta);
    if (!phi.empty()) req.phi = Angle::parse(phi);
    auto res = app::density_bound(req, g.sphere_options(parse_sphere_methods(g.methods)));

    const auto fmt = g.fmt();
    if (fmt == app::Format::Tsv) {
        std::cout << "value\tclamped\tplain\tby_cap\n"
                  << fmt_g(res.value) << '\t' << (res.clamped ? 1 : 0) << '\t'
                  << fmt_g(res.plain) << '\t' << (res.by_cap ? fmt_g(*res.by_cap) : "-")
                  << '\n';
        emit("code-bound", res.a_bound, fmt);
    } else if (fmt == app::Format::Json) {
        ordered_json j;
        j["value"] = res.value;
        j["clamped"] = res.clamped;
        j["plain"] = res.plain;
        if (res.by_cap) {
            j["by_cap"] = *res.by_cap;
        } else {
            j["by_cap"] = nullptr;
        }
        j["code_bound"] = ordered_json::parse(app::render_bound(res.a_bound, fmt));
        std::cout << j.dump() << '\n';
    } else {
        std::cout << "Density bound: **" << fmt_g(res.value) << "**"
                  << (res.clamped ? " (clamped: the raw bound exceeded 1 and is vacuous)"
                                  : "")
                  << "\n\n- plain transfer: " << fmt_g(res.plain);
        if (res.by_cap) std::cout << "\n- cap transfer: " << fmt_g(*res.by_cap);
        std::cout << "\n\n";
        emit("code bound used", res.a_bound, fmt);
    }
}

void print_certificate(const ext::Certificate& cert, app::Format fmt) {
    if (fmt == app::Format::Json) {
        ordered_json j;
        j["accepted"] = cert.accepted;
        j["n"] = cert.n;
        j["theta_deg"] = cert.theta * 180.0 / capbound::kPi;
        j["phi_deg"] = cert.phi * 180.0 / capbound::kPi;
        j["f0"] = cert.f0;
        j["f1"] = cert.f1;
        j["expansion"] = cert.f.geg;
        j["violations"] = cert.violations;
        std::cout << j.dump() << '\n';
        return;
    }
    if (fmt == app::Format::Tsv) {
        std::cout << "accepted\tphi_deg\tf0\tf1\tviolations\n"
                  << (cert.accepted ? 1 : 0) << '\t' << fmt_g(cert.phi * 180.0 / capbound::kPi)
                  << '\t' << fmt_g(cert.f0) << '\t' << fmt_g(cert.f1) << '\t';
        for (std::size_t i = 0; i < cert.violations.size(); ++i) {
            if (i) std::cout << "; ";
            std::cout << cert.violations[i];
        }
        std::cout << '\n';
        return;
    }
    std::cout << (cert.accepted ? "Certificate **accepted**" : "Certificate **rejected**")
              << "\n\n- cap radius: " << fmt_g(cert.phi * 180.0 / capbound::kPi)
              << " deg\n- mean coefficient: " << fmt_g(cert.f0)
              << "\n- value at 1: " << fmt_g(cert.f1) << '\n';
    for (const auto& v : cert.violations) std::cout << "- violation: " << v << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App cli{"Upper and lower bounds for codes in spherical caps"};
    cli.require_subcommand(1);

    Global g;
    cli.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"tsv", "json", "markdown"}))
        ->capture_default_str();
    cli.add_option("--seed", g.seed, "seed for randomized searches")->capture_default_str();
    cli.add_option("--lp-degree", g.lp_degree, "polynomial degree for the LP method")
        ->capture_default_str();
    cli.add_option("--methods", g.methods, "comma list of bound rules to enable");
    cli.add_option("--data-dir", g.data_dir,
                   "data directory (CAPBOUND_DATA overrides this flag)");

    int n = 3;
    std::string theta_s, phi_s, psi_s;

    auto* sphere_cmd = cli.add_subcommand("sphere", "bounds on sphere codes A(n, theta)");
    sphere_cmd->fallthrough();
    sphere_cmd->add_option("--n", n, "ambient dimension")->required();
    sphere_cmd->add_option("--theta", theta_s, "minimum separation")->required();
    sphere_cmd->callback([&] {
        const auto fmt = g.fmt();
        auto opts = g.sphere_options(parse_sphere_methods(g.methods));
        const Angle theta = Angle::parse(theta_s);
        emit("upper", sphere::sphere_upper(n, theta, opts), fmt);
        emit("lower", sphere::sphere_lower(n, theta, opts), fmt);
    });

    int partition_k = 2;
    auto* cap_cmd = cli.add_subcommand("cap", "bounds on cap codes A(n, theta, phi)");
    cap_cmd->fallthrough();
    cap_cmd->add_option("--n", n, "ambient dimension")->required();
    cap_cmd->add_option("--theta", theta_s, "minimum separation")->required();
    cap_cmd->add_option("--phi", phi_s, "cap radius")->required();
    cap_cmd->add_option("--partition-k", partition_k, "interior breakpoints for the partition LP")
        ->capture_default_str();
    cap_cmd->callback([&] {
        const auto fmt = g.fmt();
        auto choice = parse_cap_methods(g.methods);
        auto opts = g.sphere_options(choice.sphere_set);
        cap::CapSpec spec{n, Angle::parse(theta_s), Angle::parse(phi_s)};

        if (choice.methods.ls1) emit("ls1", cap::eq_ls1(spec, opts), fmt);
        if (choice.methods.ls2) emit("ls2", cap::eq_ls2(spec, opts), fmt);
        if (choice.methods.avz) emit("avz", cap::avz_cap(spec, opts), fmt);
        if (choice.methods.hemi) emit("hemi", cap::hemi_bound(spec, opts), fmt);
        if (choice.methods.two_part) emit("two_part", cap::two_part_bound(spec, opts), fmt);

        auto best = cap::best_cap_bound(spec, opts, choice.methods);
        if (choice.methods.partition) {
            auto scheme = hemi::default_scheme(spec, partition_k);
            auto part = hemi::partition_lp(spec, scheme, opts);
            emit("partition", part, fmt);
            if (best.upper.kind != capbound::BoundKind::Exact &&
                part.finite() && part.value < best.upper.value) {
                part.note("selected over the closed-form rules");
                best.upper = part;
            }
        }
        emit("best_upper", best.upper, fmt);
        emit("best_lower", best.lower, fmt);
    });

    auto* strip_cmd = cli.add_subcommand("strip", "bounds on strip codes A(n, theta, [psi, phi])");
    strip_cmd->fallthrough();
    strip_cmd->add_option("--n", n, "ambient dimension")->required();
    strip_cmd->add_option("--theta", theta_s, "minimum separation")->required();
    strip_cmd->add_option("--psi", psi_s, "inner radius")->required();
    strip_cmd->add_option("--phi", phi_s, "outer radius")->required();
    strip_cmd->callback([&] {
        auto opts = g.sphere_options(parse_sphere_methods(g.methods));
        cap::StripSpec spec{n, Angle::parse(theta_s), Angle::parse(psi_s), Angle::parse(phi_s)};
        emit("strip", cap::avz_strip(spec, opts), g.fmt());
    });

    auto* hemi_cmd = cli.add_subcommand("hemisphere", "bounds on hemisphere codes B(n, theta)");
    hemi_cmd->fallthrough();
    hemi_cmd->add_option("--n", n, "ambient dimension")->required();
    hemi_cmd->add_option("--theta", theta_s, "minimum separation")->required();
    hemi_cmd->callback([&] {
        auto opts = g.sphere_options(parse_sphere_methods(g.methods));
        emit("hemisphere", hemi::b_upper(n, Angle::parse(theta_s), opts), g.fmt());
    });

    auto* onesided_cmd = cli.add_subcommand("onesided", "one-sided kissing number B(n)");
    onesided_cmd->fallthrough();
    onesided_cmd->add_option("--n", n, "ambient dimension")->required();
    onesided_cmd->callback(
        [&] { emit("onesided", hemi::one_sided_kissing(n, g.data_dir), g.fmt()); });

    auto* kissing_cmd = cli.add_subcommand("kissing", "stored kissing number bounds k(n)");
    kissing_cmd->fallthrough();
    kissing_cmd->add_option("--n", n, "ambient dimension")->required();
    kissing_cmd->callback([&] {
        auto [lo, hi] = sphere::kissing_table(n, g.data_dir);
        if (lo == hi) {
            emit("kissing",
                 Bound::exact(static_cast<double>(lo), "kissing-table", "stored exact value"),
                 g.fmt());
        } else {
            emit("kissing_lower",
                 Bound::lower(static_cast<double>(lo), "kissing-table", "stored lower bound"),
                 g.fmt());
            emit("kissing_upper",
                 Bound::upper(static_cast<double>(hi), "kissing-table", "stored upper bound"),
                 g.fmt());
        }
    });

    auto* density_cmd = cli.add_subcommand("density", "sphere packing density bound");
    density_cmd->fallthrough();
    density_cmd->add_option("--n", n, "packing dimension")->required();
    density_cmd->add_option("--theta", theta_s, "code separation")->required();
    density_cmd->add_option("--phi", phi_s, "optional cap radius for the cap transfer");
    density_cmd->callback([&] { run_density(g, n, theta_s, phi_s); });

    std::string table_name;
    auto* table_cmd = cli.add_subcommand("table", "recompute a stored reference table");
    table_cmd->fallthrough();
    table_cmd->add_option("name,--name", table_name, "table id")
        ->check(CLI::IsMember({"A6", "logA"}))
        ->required();
    table_cmd->callback([&] {
        const auto id = table_name == "A6" ? app::TableId::A6 : app::TableId::Log2A;
        std::cout << app::run_table(id, g.data_dir).render(g.fmt());
    });

    auto* cert_cmd = cli.add_subcommand("certificate", "polynomial certificate operations");
    cert_cmd->fallthrough();
    cert_cmd->require_subcommand(1);
    std::string cert_file;
    int search_m = 4;
    int restarts = 200;

    auto* verify_cmd = cert_cmd->add_subcommand("verify", "check certificate conditions");
    verify_cmd->fallthrough();
    verify_cmd->add_option("--file", cert_file, "polynomial file")->required();
    verify_cmd->add_option("--n", n, "ambient dimension")->required();
    verify_cmd->add_option("--theta", theta_s, "minimum separation")->required();
    verify_cmd->callback([&] {
        print_certificate(ext::verify_certificate_file(cert_file, n, Angle::parse(theta_s)),
                          g.fmt());
    });

    auto* search_cmd = cert_cmd->add_subcommand("search-h", "heuristic H maximization");
    search_cmd->fallthrough();
    search_cmd->add_option("--file", cert_file, "polynomial file")->required();
    search_cmd->add_option("--n", n, "ambient dimension")->required();
    search_cmd->add_option("--theta", theta_s, "minimum separation")->required();
    search_cmd->add_option("--m", search_m, "maximum configuration size")
        ->capture_default_str();
    search_cmd->add_option("--restarts", restarts, "restarts per level")->capture_default_str();
    search_cmd->callback([&] {
        auto cert = ext::verify_certificate_file(cert_file, n, Angle::parse(theta_s));
        auto res = ext::h_m_search(cert, search_m, restarts, g.seed);
        const auto fmt = g.fmt();
        if (fmt == app::Format::Json) {
            ordered_json j;
            j["value"] = res.value;
            j["m_used"] = res.m_used;
            j["placement_failed"] = res.placement_failed;
            j["points"] = res.config.points;
            std::cout << j.dump() << '\n';
        } else if (fmt == app::Format::Tsv) {
            std::cout << "value\tm_used\tplacement_failed\n"
                      << fmt_g(res.value) << '\t' << res.m_used << '\t'
                      << (res.placement_failed ? 1 : 0) << '\n';
        } else {
            std::cout << "Best value **" << fmt_g(res.value) << "** with " << res.m_used
                      << " points" << (res.placement_failed ? " (placement failed)" : "")
                      << '\n';
        }
    });

    auto* part_cmd = cli.add_subcommand("partition-lp", "strip-partition LP bound on a cap");
    part_cmd->fallthrough();
    part_cmd->add_option("--n", n, "ambient dimension")->required();
    part_cmd->add_option("--theta", theta_s, "minimum separation")->required();
    part_cmd->add_option("--phi", phi_s, "cap radius")->required();
    part_cmd->add_option("--k", partition_k, "interior breakpoints")->capture_default_str();
    part_cmd->callback([&] {
        auto opts = g.sphere_options(parse_sphere_methods(g.methods));
        cap::CapSpec spec{n, Angle::parse(theta_s), Angle::parse(phi_s)};
        auto scheme = hemi::default_scheme(spec, partition_k);
        emit("partition", hemi::partition_lp(spec, scheme, opts), g.fmt());
    });

    try {
        cli.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return cli.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n(run with --help for usage)\n";
        return 64;
    } catch (const capbound::ConsistencyError& e) {
        std::cerr << "consistency error: " << e.what() << '\n';
        return 2;
    } catch (const capbound::InfeasibleSchemeError& e) {
        std::cerr << "infeasible scheme: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
