#pragma once

#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "numrad/matrix.hpp"

namespace numrad {

/// Matrix file contents: a JSON document {"n", "data", "name"?} with
/// complex entries written as [re, im] pairs, or a CSV of reals.
struct MatrixDocument {
    ComplexMatrix matrix;
    std::optional<std::string> name;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

inline double parse_component(const nlohmann::json& v, const std::string& where) {
    if (!v.is_number()) throw Error(ErrorKind::ParseError, where + ": expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw Error(ErrorKind::ParseError, where + ": component is not finite");
    return x;
}

inline MatrixDocument parse_json_matrix(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
    if (!doc.is_object()) throw Error(ErrorKind::ParseError, "top level must be an object");
    if (!doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<long long>() < 1) {
        throw Error(ErrorKind::ParseError, "field 'n': expected a positive integer");
    }
    const auto n = static_cast<std::size_t>(doc["n"].get<long long>());
    if (!doc.contains("data") || !doc["data"].is_array()) {
        throw Error(ErrorKind::ParseError, "field 'data': expected an array of rows");
    }
    const auto& data = doc["data"];
    if (data.size() != n) {
        throw Error(ErrorKind::DimensionMismatch,
                    "field 'data' has " + std::to_string(data.size()) + " rows, n = " + std::to_string(n));
    }
    MatrixDocument out{ComplexMatrix(n), std::nullopt};
    for (std::size_t i = 0; i < n; ++i) {
        const auto& row = data[i];
        const std::string rw = "data[" + std::to_string(i) + "]";
        if (!row.is_array()) throw Error(ErrorKind::ParseError, rw + ": expected an array");
        if (row.size() != n) {
            throw Error(ErrorKind::DimensionMismatch,
                        rw + " has " + std::to_string(row.size()) + " entries, n = " + std::to_string(n));
        }
        for (std::size_t j = 0; j < n; ++j) {
            const std::string where = rw + "[" + std::to_string(j) + "]";
            const auto& entry = row[j];
            if (!entry.is_array() || entry.size() != 2) {
                throw Error(ErrorKind::ParseError, where + ": expected an [re, im] pair");
            }
            out.matrix(i, j) = Complex(parse_component(entry[0], where + "[0]"),
                                       parse_component(entry[1], where + "[1]"));
        }
    }
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) throw Error(ErrorKind::ParseError, "field 'name': expected a string");
        out.name = doc["name"].get<std::string>();
    }
    return out;
}

inline MatrixDocument parse_csv_matrix(std::string_view text) {
    std::vector<std::vector<double>> rows;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        line = trim(line);
        if (line.empty()) continue;
        std::vector<double> row;
        std::size_t field = 0;
        while (true) {
            const auto comma = line.find(',');
            const std::string_view token = trim(line.substr(0, comma));
            ++field;
            double value = 0.0;
            const auto* first = token.data();
            const auto* last = token.data() + token.size();
            if (!token.empty() && *first == '+') ++first;
            const auto [ptr, ec] = std::from_chars(first, last, value);
            if (token.empty() || ec != std::errc{} || ptr != last || !std::isfinite(value)) {
                throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ", field " +
                                                       std::to_string(field) + ": '" + std::string(token) +
                                                       "' is not a finite real");
            }
            row.push_back(value);
            if (comma == std::string_view::npos) break;
            line = line.substr(comma + 1);
        }
        rows.push_back(std::move(row));
    }
    const std::size_t n = rows.size();
    if (n == 0) throw Error(ErrorKind::ParseError, "empty CSV document");
    MatrixDocument out{ComplexMatrix(n), std::nullopt};
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) {
            throw Error(ErrorKind::DimensionMismatch, "CSV row " + std::to_string(i + 1) + " has " +
                                                          std::to_string(rows[i].size()) + " fields, expected " +
                                                          std::to_string(n));
        }
        for (std::size_t j = 0; j < n; ++j) out.matrix(i, j) = rows[i][j];
    }
    return out;
}

}  // namespace detail

/// JSON when the first non-blank byte is '{', CSV otherwise.
inline MatrixDocument parse_matrix_document(std::string_view text) {
    const auto body = detail::trim(text);
    if (!body.empty() && body.front() == '{') return detail::parse_json_matrix(body);
    return detail::parse_csv_matrix(body);
}

inline ComplexMatrix parse_matrix(std::string_view text) { return parse_matrix_document(text).matrix; }

inline nlohmann::json matrix_to_json(const ComplexMatrix& m, const std::optional<std::string>& name = {}) {
    nlohmann::json data = nlohmann::json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.size(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        data.push_back(std::move(row));
    }
    nlohmann::json doc = {{"n", m.size()}, {"data", std::move(data)}};
    if (name) doc["name"] = *name;
    return doc;
}

inline std::string serialize_matrix(const ComplexMatrix& m, const std::optional<std::string>& name = {}) {
    return matrix_to_json(m, name).dump();
}

}  // namespace numrad
