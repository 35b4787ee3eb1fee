#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace steadytime::csv {

/// RFC-4180 quoting: fields containing commas, quotes or line breaks are
/// wrapped in double quotes with embedded quotes doubled.
inline std::string quote(const std::string& field) {
    bool needs = field.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

inline void write_row(std::ostream& os, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) os << ',';
        os << quote(fields[i]);
    }
    os << "\r\n";
}

/// Times to 4 decimal places (the tables' convention).
inline std::string fmt_time(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

/// Errors as 3-significant-digit scientific notation, e.g. 1.14e-02.
inline std::string fmt_sci(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

/// Shortest round-trip representation for raw data columns.
inline std::string fmt_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string fmt_compact(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

} // namespace steadytime::csv
