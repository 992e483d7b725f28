#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "capbound/errors.hpp"

namespace capbound::data {

// Resolution order for the data directory: the CAPBOUND_DATA environment
// variable, then the explicit override (CLI --data-dir), then the directory
// shipped with the source tree.
std::filesystem::path data_dir(const std::string& override_dir = "");

struct CodeTableRow {
    int n = 0;
    long long lower = 0;
    long long upper = 0;
    std::string tag;  // source tag / proof status
};

// kissing_bounds.csv: best known bounds on the kissing number per dimension.
const std::map<int, CodeTableRow>& kissing_rows(const std::string& override_dir = "");

// onesided_bounds.csv: one-sided kissing values; rows tagged `conjecture`
// are never used in bound logic.
const std::map<int, CodeTableRow>& onesided_rows(const std::string& override_dir = "");

// Polynomial file: one coefficient per line, ascending powers, decimal or
// rational `p/q`; blank lines and `#` comments ignored.
std::vector<double> load_polynomial(const std::filesystem::path& file);

struct ReferenceCell {
    std::string table;  // "A6" | "logA"
    int n = 0;
    double theta_pi = 0.0;  // theta as a multiple of pi
    double phi_pi = 0.0;
    double avz = 0.0;
    double hemi = 0.0;
    double two = 0.0;
};

// paper_tables.csv: the published table values this tool reproduces, kept as
// data so the table runner can diff against them.
const std::vector<ReferenceCell>& reference_cells(const std::string& override_dir = "");

}  // namespace capbound::data
