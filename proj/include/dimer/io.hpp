#pragma once

#include "dimer/graph.hpp"
#include "dimer/quiver.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

namespace dimer {

using Json = nlohmann::ordered_json;

inline RawModel raw_from_json(const Json &j) {
    try {
        RawModel raw;
        if (!j.is_object()) throw Error(ErrorCode::ParseError, "top level must be an object");
        for (const auto &n : j.at("nodes")) {
            const auto color = n.at("color").get<std::string>();
            if (color != "white" && color != "black")
                throw Error(ErrorCode::ParseError, "node color must be \"white\" or \"black\", got \"" + color + "\"");
            raw.nodes.push_back({n.at("id").get<std::string>(), color == "white" ? Color::White : Color::Black});
        }
        for (const auto &e : j.at("edges")) {
            const auto &off = e.at("offset");
            if (!off.is_array() || off.size() != 2) throw Error(ErrorCode::ParseError, "offset must be [dx, dy]");
            raw.edges.push_back({e.at("id").get<std::string>(), e.at("white").get<std::string>(),
                                 e.at("black").get<std::string>(),
                                 Vec2{off[0].get<std::int64_t>(), off[1].get<std::int64_t>()}});
        }
        for (const auto &[node, list] : j.at("rotations").items())
            raw.rotations[node] = list.get<std::vector<std::string>>();
        return raw;
    } catch (const nlohmann::json::exception &ex) {
        throw Error(ErrorCode::ParseError, ex.what());
    }
}

inline Json parse_json_text(const std::string &text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception &ex) {
        throw Error(ErrorCode::ParseError, ex.what());
    }
}

inline DimerModel model_from_json(const Json &j) { return validate(raw_from_json(j)); }

inline DimerModel parse_model(const std::string &text) { return model_from_json(parse_json_text(text)); }

inline std::string read_text(std::istream &in) {
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline DimerModel load_model(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
    return parse_model(read_text(in));
}

inline Json to_json(const DimerModel &m) {
    Json j;
    j["nodes"] = Json::array();
    for (const auto &n : m.nodes()) j["nodes"].push_back({{"id", n.id}, {"color", std::string(to_string(n.color))}});
    j["edges"] = Json::array();
    for (const auto &e : m.edges())
        j["edges"].push_back({{"id", e.id},
                              {"white", m.nodes()[e.white].id},
                              {"black", m.nodes()[e.black].id},
                              {"offset", {e.offset.x, e.offset.y}}});
    j["rotations"] = Json::object();
    for (std::size_t v = 0; v < m.node_count(); ++v) {
        Json list = Json::array();
        for (auto e : m.rotation(v)) list.push_back(m.edges()[e].id);
        j["rotations"][m.nodes()[v].id] = list;
    }
    return j;
}

// ---------------------------------------------------------------------------
// Drawings of one fundamental domain (lossy; for figures only)

struct Point {
    double x = 0, y = 0;
};

/// Periodic barycentric (Tutte) positions in [0,1)^2.
inline std::vector<Point> layout(const DimerModel &m, int iterations = 400) {
    std::vector<Point> p(m.node_count());
    // deterministic spread as a starting point
    for (std::size_t v = 0; v < p.size(); ++v) {
        const double t = static_cast<double>(v) / static_cast<double>(p.size());
        p[v] = {t, std::fmod(t * 0.618 + 0.1, 1.0)};
    }
    for (int it = 0; it < iterations; ++it) {
        for (std::size_t v = 1; v < p.size(); ++v) {
            Point s{};
            for (auto e : m.rotation(v)) {
                const Dart d = m.dart_from(v, e);
                const Vec2 dv = m.displacement(d);
                const auto u = m.head(d);
                s.x += p[u].x + static_cast<double>(dv.x);
                s.y += p[u].y + static_cast<double>(dv.y);
            }
            const double k = static_cast<double>(m.degree(v));
            p[v] = {s.x / k, s.y / k};
        }
    }
    for (auto &q : p) {
        q.x -= std::floor(q.x);
        q.y -= std::floor(q.y);
    }
    return p;
}

namespace detail {

inline std::string fmt(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(3) << (std::abs(v) < 5e-4 ? 0.0 : v);
    return os.str();
}

} // namespace detail

inline std::string to_dot(const DimerModel &m) {
    const auto p = layout(m);
    std::ostringstream os;
    os << "graph dimer {\n  node [shape=circle, width=0.2, label=\"\"];\n";
    for (std::size_t v = 0; v < m.node_count(); ++v) {
        os << "  \"" << m.nodes()[v].id << "\" [pos=\"" << detail::fmt(4 * p[v].x) << ',' << detail::fmt(4 * p[v].y)
           << "!\", style=filled, fillcolor=" << (m.nodes()[v].color == Color::White ? "white" : "black")
           << ", xlabel=\"" << m.nodes()[v].id << "\"];\n";
    }
    for (const auto &e : m.edges()) {
        os << "  \"" << m.nodes()[e.white].id << "\" -- \"" << m.nodes()[e.black].id << "\" [label=\"" << e.id;
        if (!e.offset.is_zero()) os << ' ' << to_string(e.offset);
        os << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

inline std::string to_tikz(const DimerModel &m) {
    const auto p = layout(m);
    std::ostringstream os;
    os << "\\begin{tikzpicture}[scale=4]\n  \\draw[thin, gray] (0,0) rectangle (1,1);\n";
    for (const auto &e : m.edges()) {
        const Point a = p[e.white];
        const Point b{p[e.black].x + static_cast<double>(e.offset.x), p[e.black].y + static_cast<double>(e.offset.y)};
        os << "  \\draw (" << detail::fmt(a.x) << ',' << detail::fmt(a.y) << ") -- (" << detail::fmt(b.x) << ','
           << detail::fmt(b.y) << "); % " << e.id << "\n";
    }
    for (std::size_t v = 0; v < m.node_count(); ++v) {
        os << "  \\filldraw[" << (m.nodes()[v].color == Color::White ? "fill=white" : "fill=black") << "] ("
           << detail::fmt(p[v].x) << ',' << detail::fmt(p[v].y) << ") circle (0.02); % " << m.nodes()[v].id << "\n";
    }
    os << "\\end{tikzpicture}\n";
    return os.str();
}

inline std::string to_dot(const Quiver &q) {
    std::ostringstream os;
    os << "digraph quiver {\n";
    for (const auto &v : q.vertices) os << "  \"" << v << "\";\n";
    for (const auto &a : q.arrows) {
        os << "  \"" << q.vertices[a.tail] << "\" -> \"" << q.vertices[a.head] << "\" [label=\"" << a.id;
        if (!a.offset.is_zero()) os << ' ' << to_string(a.offset);
        os << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace dimer
