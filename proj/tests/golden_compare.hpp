#pragma once

// CSV comparison against the vendored golden tables. A printed golden value
// carries only its visible digits, so each numeric cell is accepted within
// max(column relative tolerance, absolute tolerance, half of the golden's
// last printed decimal place); exact tables bypass the slack entirely.

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace golden {

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

inline std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

inline Csv parse_csv(const std::string& text) {
    Csv csv;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (csv.header.empty()) {
            csv.header = split_line(line);
        } else {
            csv.rows.push_back(split_line(line));
        }
    }
    return csv;
}

inline Csv load_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open golden file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str());
}

inline bool is_number(const std::string& s) {
    if (s.empty()) return false;
    char* end = nullptr;
    std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

// half of the last printed place: "2.80" -> 0.005, "3423" -> 0.5,
// "6.14168242E+03" -> 0.5 * 10^(3-8)
inline double half_last_place(const std::string& text) {
    int exponent = 0;
    std::string mantissa = text;
    const auto epos = text.find_first_of("eE");
    if (epos != std::string::npos) {
        exponent = std::atoi(text.c_str() + epos + 1);
        mantissa = text.substr(0, epos);
    }
    int decimals = 0;
    const auto dot = mantissa.find('.');
    if (dot != std::string::npos) decimals = static_cast<int>(mantissa.size() - dot - 1);
    return 0.5 * std::pow(10.0, exponent - decimals);
}

struct CompareSpec {
    double default_rel = 0.0;
    double abs_tol = 0.0;
    std::map<std::string, double> column_rel;  // overrides by header name
    bool exact = false;
    bool printed_precision_slack = true;
};

// Returns an empty string on success, else a description of the first mismatch.
inline std::string compare(const Csv& got, const Csv& want, const CompareSpec& spec) {
    if (got.header != want.header) return "header mismatch";
    if (got.rows.size() != want.rows.size()) {
        return "row count " + std::to_string(got.rows.size()) + " vs " +
               std::to_string(want.rows.size());
    }
    for (size_t r = 0; r < want.rows.size(); ++r) {
        if (got.rows[r].size() != want.rows[r].size()) {
            return "row " + std::to_string(r + 1) + ": cell count mismatch";
        }
        for (size_t c = 0; c < want.rows[r].size(); ++c) {
            const std::string& g = got.rows[r][c];
            const std::string& w = want.rows[r][c];
            const std::string where =
                "row " + std::to_string(r + 1) + " col '" + want.header[c] + "'";
            if (w.empty() || !is_number(w)) {
                if (g != w) return where + ": '" + g + "' != '" + w + "'";
                continue;
            }
            if (!is_number(g)) return where + ": '" + g + "' is not numeric";
            const double gv = std::strtod(g.c_str(), nullptr);
            const double wv = std::strtod(w.c_str(), nullptr);
            if (spec.exact) {
                if (gv != wv) return where + ": " + g + " != " + w + " (exact)";
                continue;
            }
            double rel = spec.default_rel;
            if (auto it = spec.column_rel.find(want.header[c]); it != spec.column_rel.end()) {
                rel = it->second;
            }
            double tol = std::max(rel * std::fabs(wv), spec.abs_tol);
            if (spec.printed_precision_slack) tol = std::max(tol, half_last_place(w));
            if (std::fabs(gv - wv) > tol) {
                return where + ": " + g + " deviates from " + w + " beyond " +
                       std::to_string(tol);
            }
        }
    }
    return "";
}

}  // namespace golden
