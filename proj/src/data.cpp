#include "capbound/data.hpp"

#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>

#ifndef CAPBOUND_SOURCE_DATA_DIR
#define CAPBOUND_SOURCE_DATA_DIR "data"
#endif

namespace capbound::data {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, ',')) {
        // Trim surrounding whitespace so hand-edited files stay valid.
        const auto b = field.find_first_not_of(" \t\r");
        const auto e = field.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
    }
    return out;
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw DataError("cannot open " + file.string());
    std::vector<std::vector<std::string>> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_csv_line(line);
        if (first) {
            first = false;  // header
            continue;
        }
        rows.push_back(std::move(fields));
    }
    return rows;
}

std::map<int, CodeTableRow> parse_code_table(const std::filesystem::path& file) {
    std::map<int, CodeTableRow> out;
    for (const auto& f : read_csv(file)) {
        if (f.size() < 3) throw DataError("short row in " + file.string());
        CodeTableRow row;
        try {
            row.n = std::stoi(f[0]);
            row.lower = std::stoll(f[1]);
            row.upper = std::stoll(f[2]);
        } catch (const std::exception&) {
            throw DataError("non-numeric row in " + file.string());
        }
        if (f.size() > 3) row.tag = f[3];
        if (row.lower > row.upper) {
            throw DataError("lower bound exceeds upper bound in " + file.string());
        }
        out[row.n] = std::move(row);
    }
    if (out.empty()) throw DataError("no rows in " + file.string());
    return out;
}

}  // namespace

std::filesystem::path data_dir(const std::string& override_dir) {
    if (const char* env = std::getenv("CAPBOUND_DATA"); env != nullptr && *env != '\0') {
        return std::filesystem::path(env);
    }
    if (!override_dir.empty()) return std::filesystem::path(override_dir);
    return std::filesystem::path(CAPBOUND_SOURCE_DATA_DIR);
}

const std::map<int, CodeTableRow>& kissing_rows(const std::string& override_dir) {
    static std::mutex mu;
    static std::map<std::string, std::map<int, CodeTableRow>> cache;
    const auto dir = data_dir(override_dir);
    std::scoped_lock lock(mu);
    auto it = cache.find(dir.string());
    if (it == cache.end()) {
        it = cache.emplace(dir.string(), parse_code_table(dir / "kissing_bounds.csv")).first;
    }
    return it->second;
}

const std::map<int, CodeTableRow>& onesided_rows(const std::string& override_dir) {
    static std::mutex mu;
    static std::map<std::string, std::map<int, CodeTableRow>> cache;
    const auto dir = data_dir(override_dir);
    std::scoped_lock lock(mu);
    auto it = cache.find(dir.string());
    if (it == cache.end()) {
        it = cache.emplace(dir.string(), parse_code_table(dir / "onesided_bounds.csv")).first;
    }
    return it->second;
}

std::vector<double> load_polynomial(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw DataError("cannot open " + file.string());
    std::vector<double> coeffs;
    std::string line;
    while (std::getline(in, line)) {
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        const auto e = line.find_last_not_of(" \t\r");
        const std::string tok = line.substr(b, e - b + 1);
        const auto slash = tok.find('/');
        try {
            if (slash != std::string::npos) {
                const double num = std::stod(tok.substr(0, slash));
                const double den = std::stod(tok.substr(slash + 1));
                if (den == 0.0) throw DataError("zero denominator in " + file.string());
                coeffs.push_back(num / den);
            } else {
                coeffs.push_back(std::stod(tok));
            }
        } catch (const DataError&) {
            throw;
        } catch (const std::exception&) {
            throw DataError("bad coefficient '" + tok + "' in " + file.string());
        }
    }
    if (coeffs.empty()) throw DataError("no coefficients in " + file.string());
    return coeffs;
}

const std::vector<ReferenceCell>& reference_cells(const std::string& override_dir) {
    static std::mutex mu;
    static std::map<std::string, std::vector<ReferenceCell>> cache;
    const auto dir = data_dir(override_dir);
    std::scoped_lock lock(mu);
    auto it = cache.find(dir.string());
    if (it != cache.end()) return it->second;

    std::vector<ReferenceCell> cells;
    for (const auto& f : read_csv(dir / "paper_tables.csv")) {
        if (f.size() < 7) throw DataError("short row in paper_tables.csv");
        ReferenceCell c;
        try {
            c.table = f[0];
            c.n = std::stoi(f[1]);
            c.theta_pi = std::stod(f[2]);
            c.phi_pi = std::stod(f[3]);
            c.avz = std::stod(f[4]);
            c.hemi = std::stod(f[5]);
            c.two = std::stod(f[6]);
        } catch (const std::exception&) {
            throw DataError("non-numeric row in paper_tables.csv");
        }
        if (c.table != "A6" && c.table != "logA") {
            throw DataError("unknown table id '" + c.table + "' in paper_tables.csv");
        }
        cells.push_back(std::move(c));
    }
    if (cells.empty()) throw DataError("no rows in paper_tables.csv");
    return cache.emplace(dir.string(), std::move(cells)).first->second;
}

}  // namespace capbound::data
