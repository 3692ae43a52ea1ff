#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include "core.hpp"

namespace fracpath {

// 17 significant digits, locale independent; inf/-inf/nan spelled out.
inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

class CsvWriter {
public:
    CsvWriter(std::ostream& out, std::initializer_list<std::string> header) : out_(out), columns_(header.size()) {
        write_row(std::vector<std::string>(header));
    }

    void write_row(const std::vector<std::string>& cells) {
        if (cells.size() != columns_) throw Error("csv: row width differs from header");
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << escape(cells[i]);
        }
        out_ << '\n';
    }

    static std::string escape(const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) {
            if (c == '"') q += '"';
            q += c;
        }
        return q + '"';
    }

private:
    std::ostream& out_;
    std::size_t columns_;
};

inline std::string cell(double v) { return format_double(v); }
inline std::string cell(const std::string& s) { return s; }
inline std::string cell(const char* s) { return s; }
inline std::string cell(bool b) { return b ? "1" : "0"; }
inline std::string cell(std::size_t v) { return std::to_string(v); }
inline std::string cell(int v) { return std::to_string(v); }

template <class... Ts>
std::vector<std::string> row(const Ts&... xs) {
    return {cell(xs)...};
}

// t,value,flag with flag 1 at singular hits.
inline void write_profile_csv(std::ostream& out, const std::vector<double>& times, const std::vector<double>& values,
                              const std::vector<bool>& flags) {
    CsvWriter w(out, {"t", "value", "flag"});
    for (std::size_t i = 0; i < times.size(); ++i) w.write_row(row(times[i], values[i], static_cast<bool>(flags[i])));
}

}  // namespace fracpath
