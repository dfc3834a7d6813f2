#pragma once

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "blindspot/config.hpp"

namespace blindspot::csv {

inline constexpr const char* kHeader = "method,lambda,lambda0,L,R,k_min,value,stderr,n_trials,seed";

// 9 significant digits, trailing zeros kept so re-serialization is stable.
inline std::string format_value(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

inline std::string format_length(double length) {
    return std::isinf(length) ? "inf" : format_value(length);
}

inline std::string to_line(const SweepRow& row) {
    std::ostringstream out;
    out << row.method << ',' << format_value(row.lambda) << ',' << format_value(row.lambda0)
        << ',' << format_length(row.length) << ',' << format_value(row.range) << ','
        << row.k_min << ',' << format_value(row.value) << ',';
    if (row.stderr_) out << format_value(*row.stderr_);
    out << ',';
    if (row.n_trials) out << *row.n_trials;
    out << ',';
    if (row.seed) out << *row.seed;
    return out.str();
}

inline std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

inline SweepRow from_line(const std::string& line) {
    const auto f = split_fields(line);
    if (f.size() != 10) throw std::invalid_argument("csv: expected 10 fields");
    SweepRow row;
    row.method = f[0];
    row.lambda = std::stod(f[1]);
    row.lambda0 = std::stod(f[2]);
    row.length = f[3] == "inf" ? std::numeric_limits<double>::infinity() : std::stod(f[3]);
    row.range = std::stod(f[4]);
    row.k_min = std::stoi(f[5]);
    row.value = std::stod(f[6]);
    if (!f[7].empty()) row.stderr_ = std::stod(f[7]);
    if (!f[8].empty()) row.n_trials = std::stoull(f[8]);
    if (!f[9].empty()) row.seed = std::stoull(f[9]);
    return row;
}

}  // namespace blindspot::csv
