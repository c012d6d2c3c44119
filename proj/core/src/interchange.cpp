#include "growth/interchange.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "growth/errors.hpp"
#include "growth/families.hpp"

namespace growth {

using nlohmann::ordered_json;

InterchangeGraph interchange_from_truncation(const Truncation& t, std::size_t unit_index) {
    InterchangeGraph g;
    g.unit = unit_index;
    g.labels.reserve(t.size());
    for (const auto& v : t.vertices()) g.labels.push_back(key_str(v));
    const SparseMatrix& m = t.matrix();
    for (std::size_t j = 0; j < m.n; ++j) {
        for (const auto& [i, w] : m.cols[j]) {
            g.edges.emplace_back(j, i, w);
        }
    }
    return g;
}

std::string interchange_to_json(const InterchangeGraph& g) {
    ordered_json doc;
    doc["vertices"] = g.labels;
    doc["unit"] = g.unit;
    ordered_json edges = ordered_json::array();
    for (const auto& [src, dst, w] : g.edges) {
        edges.push_back(ordered_json::array({src, dst, rational_str(w)}));
    }
    doc["edges"] = std::move(edges);
    return doc.dump(2) + "\n";
}

InterchangeGraph interchange_from_json(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw InvalidPresentation(std::string("interchange parse failure: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("unit") ||
        !doc.contains("edges")) {
        throw InvalidPresentation("interchange document needs vertices, unit, edges");
    }
    InterchangeGraph g;
    for (const auto& v : doc["vertices"]) g.labels.push_back(v.get<std::string>());
    g.unit = doc["unit"].get<std::size_t>();
    if (g.unit >= g.labels.size()) {
        throw InvalidPresentation("interchange unit index out of range");
    }
    for (const auto& e : doc["edges"]) {
        if (!e.is_array() || e.size() != 3) {
            throw InvalidPresentation("interchange edge must be [src, dst, weight]");
        }
        std::size_t src = e[0].get<std::size_t>();
        std::size_t dst = e[1].get<std::size_t>();
        if (src >= g.labels.size() || dst >= g.labels.size()) {
            throw InvalidPresentation("interchange edge endpoint out of range");
        }
        Rational w = e[2].is_string() ? parse_rational(e[2].get<std::string>())
                                      : Rational(e[2].get<long>());
        if (w < 0) throw InvalidPresentation("negative interchange edge weight");
        g.edges.emplace_back(src, dst, std::move(w));
    }
    return g;
}

std::vector<std::vector<Rational>> interchange_matrix(const InterchangeGraph& g) {
    const std::size_t n = g.labels.size();
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, Rational(0)));
    for (const auto& [src, dst, w] : g.edges) {
        m[dst][src] += w;
    }
    return m;
}

GrowthProblem load_interchange_file(const std::string& path, ProblemOptions opts) {
    std::ifstream in(path);
    if (!in) throw InvalidPresentation("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    InterchangeGraph g = interchange_from_json(buf.str());
    return load_explicit(interchange_matrix(g), g.unit, opts);
}

GrowthProblem load_matrix_file(const std::string& path, long long unit_override,
                               ProblemOptions opts) {
    std::ifstream in(path);
    if (!in) throw InvalidPresentation("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        InterchangeGraph g = interchange_from_json(text);
        std::size_t unit = unit_override >= 0 ? static_cast<std::size_t>(unit_override) : g.unit;
        return load_explicit(interchange_matrix(g), unit, opts);
    }
    // plain whitespace-separated rows
    std::vector<std::vector<Rational>> rows;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        std::istringstream fields(line);
        std::vector<Rational> row;
        std::string tok;
        while (fields >> tok) row.push_back(parse_rational(tok));
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw InvalidPresentation("empty matrix file '" + path + "'");
    std::size_t unit = unit_override >= 0 ? static_cast<std::size_t>(unit_override) : 0;
    return load_explicit(std::move(rows), unit, opts);
}

}  // namespace growth
