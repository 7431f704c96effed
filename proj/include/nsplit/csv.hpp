#pragma once

#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "nsplit/study.hpp"

namespace nsplit {

namespace detail {

inline std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

inline std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    return out;
}

inline double parse_field_double(const std::string& s) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    return std::stod(s);
}

}  // namespace detail

/// CSV with the fixed column set
///   method,dt,error,rhs_evals_total,rhs_evals_op1..opN,wall_seconds
/// using '.' decimals and 17-significant-digit scientific notation, so the
/// numeric columns round-trip exactly.
inline std::string emit_csv(const StudyResult& result) {
    std::string out = "method,dt,error,rhs_evals_total";
    for (int l = 1; l <= result.n_operators; ++l) out += ",rhs_evals_op" + std::to_string(l);
    out += ",wall_seconds\n";
    for (const StudyRow& row : result.rows) {
        out += row.method;
        out += ',' + detail::format_double(row.dt);
        out += ',' + detail::format_double(row.error);
        out += ',' + std::to_string(row.rhs_evals_total);
        for (std::int64_t c : row.per_op_evals) out += ',' + std::to_string(c);
        out += ',' + detail::format_double(row.wall_seconds);
        out += '\n';
    }
    return out;
}

inline StudyResult parse_csv(const std::string& text) {
    std::istringstream ss(text);
    std::string line;
    if (!std::getline(ss, line)) throw std::invalid_argument("parse_csv: empty document");
    const auto header = detail::split_fields(line);
    if (header.size() < 6 || header[0] != "method" || header[1] != "dt" || header[2] != "error" ||
        header[3] != "rhs_evals_total" || header.back() != "wall_seconds")
        throw std::invalid_argument("parse_csv: unexpected header");
    StudyResult result;
    result.n_operators = static_cast<int>(header.size()) - 5;

    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        const auto f = detail::split_fields(line);
        if (f.size() != header.size()) throw std::invalid_argument("parse_csv: ragged row");
        StudyRow row;
        row.method = f[0];
        row.dt = detail::parse_field_double(f[1]);
        row.error = detail::parse_field_double(f[2]);
        row.rhs_evals_total = std::stoll(f[3]);
        for (int l = 0; l < result.n_operators; ++l)
            row.per_op_evals.push_back(std::stoll(f[static_cast<std::size_t>(4 + l)]));
        row.wall_seconds = detail::parse_field_double(f.back());
        result.rows.push_back(std::move(row));
    }
    recompute_slopes(result);
    return result;
}

}  // namespace nsplit
