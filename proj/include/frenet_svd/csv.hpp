#pragma once

// SampledCurve CSV: header `t,x1,...,xn`, one row per sample, numbers written
// with 17 significant digits so they round-trip exactly.

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "frenet_svd/curve.hpp"
#include "frenet_svd/errors.hpp"

namespace frenet_svd {

/// `digits` significant digits, locale-independent.
inline std::string format_number(double value, int digits) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::general, digits);
    return std::string(buffer, result.ptr);
}

inline double parse_number(std::string_view text, const std::string& where) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0;
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || result.ec != std::errc() || result.ptr != text.data() + text.size())
        throw Error(ErrorCode::ParseError, where + ": '" + std::string(text) + "' is not a number");
    return value;
}

inline std::string csv_header(int dim) {
    std::string header = "t";
    for (int i = 1; i <= dim; ++i) header += ",x" + std::to_string(i);
    return header;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        fields.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

/// Reads a SampledCurve; the dimension comes from the header. Errors name the
/// offending line.
inline SampledCurve read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::ParseError, "line 1: empty input, expected header 't,x1,...,xn'");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::vector<std::string_view> header = split_fields(line);
    const int dim = static_cast<int>(header.size()) - 1;
    if (dim < 1 || line != csv_header(dim))
        throw Error(ErrorCode::ParseError, "line 1: header '" + line + "' does not match expected 't,x1,...,xn'");

    SampledCurve curve;
    curve.dim = dim;
    std::size_t line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::string where = "line " + std::to_string(line_number);
        const std::vector<std::string_view> fields = split_fields(line);
        if (static_cast<int>(fields.size()) != dim + 1)
            throw Error(ErrorCode::ParseError, where + ": expected " + std::to_string(dim + 1) + " fields, found " +
                                                   std::to_string(fields.size()));
        const double t = parse_number(fields[0], where);
        if (!curve.t.empty() && !(t > curve.t.back()))
            throw Error(ErrorCode::ParseError, where + ": parameter values must be strictly increasing");
        Vector<double> point(dim);
        for (int i = 0; i < dim; ++i) point[i] = parse_number(fields[static_cast<std::size_t>(i) + 1], where);
        curve.t.push_back(t);
        curve.points.push_back(std::move(point));
    }
    return curve;
}

inline SampledCurve read_csv_string(const std::string& text) {
    std::istringstream in(text);
    return read_csv(in);
}

inline void write_csv(std::ostream& out, const SampledCurve& curve) {
    curve.validate();
    out << csv_header(curve.dim) << '\n';
    for (std::size_t k = 0; k < curve.size(); ++k) {
        out << format_number(curve.t[k], 17);
        for (int i = 0; i < curve.dim; ++i) out << ',' << format_number(curve.points[k][i], 17);
        out << '\n';
    }
}

}  // namespace frenet_svd
