#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "dist.hpp"
#include "errors.hpp"
#include "space.hpp"

// Space documents: UTF-8 JSON objects with exactly two members,
//
//   "points": array of distinct strings
//   "d":      square array of arrays of distance literals
//
// A distance literal is a string holding a decimal integer "p" or a
// fraction "p/q" (p >= 0, q >= 1). Non-negative JSON integers are also
// accepted on input. Output is canonical: fractions in lowest terms,
// "points" before "d", one matrix row per line, two-space indentation,
// trailing newline.

namespace pmetric {

using json = nlohmann::ordered_json;

namespace detail {

inline std::string path(std::size_t i, std::size_t j)
{
    return "d[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}

inline Rational literal_value(const json& v, std::size_t i, std::size_t j)
{
    if (v.is_string()) {
        try {
            return Dist::parse(v.get_ref<const std::string&>()).value();
        } catch (const InputError& e) {
            throw InputError(path(i, j) + ": " + e.what());
        }
    }
    if (v.is_number_unsigned())
        return Rational(v.get<std::uint64_t>());
    if (v.is_number_integer())
        throw InputError(path(i, j) + ": distance must be non-negative");
    throw InputError(path(i, j) + ": distance must be a string literal \"p\" or \"p/q\", got " +
                     std::string(v.type_name()));
}

} // namespace detail

/// Parses a document into an unvalidated matrix. Syntax errors carry the
/// line and column; structural errors carry a member path such as d[1][2].
/// Shape problems (non-square matrix, duplicate labels) are reported too;
/// axioms are not checked here.
inline RawMatrix parse_document(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw InputError(e.what());
    }
    if (!doc.is_object())
        throw InputError("document must be a JSON object");
    for (auto it = doc.begin(); it != doc.end(); ++it)
        if (it.key() != "points" && it.key() != "d")
            throw InputError("unknown member \"" + it.key() + "\"");
    if (!doc.contains("points") || !doc["points"].is_array())
        throw InputError("member \"points\" must be an array of strings");
    if (!doc.contains("d") || !doc["d"].is_array())
        throw InputError("member \"d\" must be an array of arrays");

    RawMatrix raw;
    const json& points = doc["points"];
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!points[i].is_string())
            throw InputError("points[" + std::to_string(i) + "] must be a string");
        raw.labels.push_back(points[i].get<std::string>());
    }
    const json& d = doc["d"];
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (!d[i].is_array())
            throw InputError("d[" + std::to_string(i) + "] must be an array");
        std::vector<Rational> row;
        for (std::size_t j = 0; j < d[i].size(); ++j)
            row.push_back(detail::literal_value(d[i][j], i, j));
        raw.rows.push_back(std::move(row));
    }
    detail::check_shape(raw.labels, raw.rows.size(), [&](std::size_t i) { return raw.rows[i].size(); });
    return raw;
}

/// Parses and validates. Throws InvalidSpace if an axiom fails.
inline Space parse_space(std::string_view text) { return Space::from_raw(parse_document(text)); }

namespace detail {

inline std::string rational_literal(const Rational& r)
{
    if (boost::multiprecision::denominator(r) == 1)
        return boost::multiprecision::numerator(r).str();
    return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

} // namespace detail

inline std::string emit_document(const RawMatrix& m)
{
    std::ostringstream os;
    os << "{\n  \"points\": [";
    for (std::size_t i = 0; i < m.labels.size(); ++i)
        os << (i ? ", " : "") << json(m.labels[i]).dump();
    os << "],\n  \"d\": [";
    for (std::size_t i = 0; i < m.rows.size(); ++i) {
        os << (i ? ",\n    [" : "\n    [");
        for (std::size_t j = 0; j < m.rows[i].size(); ++j)
            os << (j ? ", " : "") << '"' << detail::rational_literal(m.rows[i][j]) << '"';
        os << ']';
    }
    os << (m.rows.empty() ? "]\n}\n" : "\n  ]\n}\n");
    return os.str();
}

inline std::string emit_document(const Space& s) { return emit_document(s.to_raw()); }

/// Parse then re-emit.
inline std::string canonicalize(std::string_view text) { return emit_document(parse_document(text)); }

/// The document as a JSON value, for embedding in structured reports.
inline json to_json(const Space& s)
{
    json d = json::array();
    for (std::size_t i = 0; i < s.size(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < s.size(); ++j)
            row.push_back(s(i, j).str());
        d.push_back(std::move(row));
    }
    return json{{"points", s.labels()}, {"d", std::move(d)}};
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace pmetric
