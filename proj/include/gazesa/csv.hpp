#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gazesa/common.hpp"

namespace gazesa {

/// Full-precision float formatting: 17 significant digits round-trip
/// any double exactly through text.
inline std::string fmt_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Compact formatting for human-facing values (radii in column names etc).
inline std::string fmt_short(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline double parse_double(const std::string& s, const std::string& where) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw DataError(where + ": not a number: '" + s + "'");
    return v;
}

inline int parse_bool01(const std::string& s, const std::string& where) {
    if (s == "0") return 0;
    if (s == "1") return 1;
    throw DataError(where + ": expected 0 or 1, got '" + s + "'");
}

struct CsvReader {
    std::ifstream in;
    std::string path;
    std::size_t lineno = 0;

    explicit CsvReader(const std::string& p) : in(p), path(p) {
        if (!in) throw DataError("missing file: " + p);
    }

    bool next(std::vector<std::string>& fields) {
        std::string line;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty() || line == "\r") continue;
            fields = split_csv_line(line);
            return true;
        }
        return false;
    }

    std::string where() const {
        std::ostringstream os;
        os << path << ":" << lineno;
        return os.str();
    }
};

}  // namespace gazesa
