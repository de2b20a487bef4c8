#pragma once

#include "dimer/graph.hpp"
#include "dimer/matchings.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <queue>
#include <string>
#include <utility>
#include <vector>

namespace dimer {

/// Arrow dual to a dimer edge, oriented so the white endpoint lies on its
/// right. `offset` is the translation between the lifted tail and head faces.
struct Arrow {
    std::string id;
    std::size_t tail = 0;
    std::size_t head = 0;
    std::size_t edge = 0;
    Vec2 offset;
};

struct Quiver {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;
    std::vector<std::vector<std::size_t>> outgoing; // per vertex, sorted by arrow id

    std::size_t vertex_count() const { return vertices.size(); }
    std::size_t arrow_count() const { return arrows.size(); }
};

/// Small cycles of the potential: sum over plus cycles (around white nodes,
/// clockwise) minus sum over minus cycles (around black nodes).
struct Potential {
    std::vector<std::vector<std::size_t>> plus_cycles;
    std::vector<std::vector<std::size_t>> minus_cycles;
    std::vector<std::size_t> plus_nodes;
    std::vector<std::size_t> minus_nodes;
};

/// One step of a path in the double quiver; `reversed` walks a^* instead of a.
struct PathStep {
    std::size_t arrow = 0;
    bool reversed = false;
};

/// Paths compose left to right: a_1 then a_2 then ...
struct QuiverPath {
    std::size_t start = 0;
    std::vector<PathStep> steps;

    std::size_t length() const { return steps.size(); }

    std::size_t end(const Quiver &q) const {
        std::size_t v = start;
        for (const auto &s : steps) v = s.reversed ? q.arrows[s.arrow].tail : q.arrows[s.arrow].head;
        return v;
    }

    /// Checks h(a_l) == t(a_{l+1}) throughout.
    bool composable(const Quiver &q) const {
        std::size_t v = start;
        for (const auto &s : steps) {
            const auto &a = q.arrows[s.arrow];
            if ((s.reversed ? a.head : a.tail) != v) return false;
            v = s.reversed ? a.tail : a.head;
        }
        return true;
    }

    /// The formal reverse path (each arrow replaced by its starred partner).
    QuiverPath reversed(const Quiver &q) const {
        QuiverPath r{end(q), {}};
        for (auto it = steps.rbegin(); it != steps.rend(); ++it) r.steps.push_back({it->arrow, !it->reversed});
        return r;
    }

    QuiverPath then(const QuiverPath &next) const {
        QuiverPath r = *this;
        r.steps.insert(r.steps.end(), next.steps.begin(), next.steps.end());
        return r;
    }

    static QuiverPath from_cycle(const Quiver &q, const std::vector<std::size_t> &arrows) {
        QuiverPath p{q.arrows[arrows.front()].tail, {}};
        for (auto a : arrows) p.steps.push_back({a, false});
        return p;
    }
};

namespace detail {

inline void sort_outgoing(Quiver &q) {
    q.outgoing.assign(q.vertices.size(), {});
    for (std::size_t a = 0; a < q.arrows.size(); ++a) q.outgoing[q.arrows[a].tail].push_back(a);
    for (auto &out : q.outgoing)
        std::sort(out.begin(), out.end(),
                  [&](std::size_t x, std::size_t y) { return q.arrows[x].id < q.arrows[y].id; });
}

} // namespace detail

inline std::pair<Quiver, Potential> dualize(const DimerModel &m) {
    Quiver q;
    for (const auto &f : m.faces()) q.vertices.push_back(f.id);
    for (std::size_t e = 0; e < m.edge_count(); ++e) {
        const Dart wb{e, true};
        const Dart bw{e, false};
        const std::size_t tail = m.left_face(wb);
        const std::size_t head = m.left_face(bw);
        const Vec2 tail_lift = m.faces()[tail].lift[m.position_in_face(wb)];
        const Vec2 head_lift = m.faces()[head].lift[m.position_in_face(bw)];
        q.arrows.push_back({m.edges()[e].id, tail, head, e, tail_lift + m.edges()[e].offset - head_lift});
    }
    detail::sort_outgoing(q);

    Potential w;
    for (std::size_t v = 0; v < m.node_count(); ++v) {
        std::vector<std::size_t> cycle(m.rotation(v).begin(), m.rotation(v).end());
        if (m.nodes()[v].color == Color::White) {
            std::reverse(cycle.begin(), cycle.end());
            w.plus_cycles.push_back(std::move(cycle));
            w.plus_nodes.push_back(v);
        } else {
            w.minus_cycles.push_back(std::move(cycle));
            w.minus_nodes.push_back(v);
        }
    }
    return {std::move(q), std::move(w)};
}

inline Quiver opposite(const Quiver &q) {
    Quiver r = q;
    for (auto &a : r.arrows) {
        std::swap(a.tail, a.head);
        a.offset = -a.offset;
    }
    detail::sort_outgoing(r);
    return r;
}

/// Shortest path by breadth-first search; arrows are explored in id order.
inline QuiverPath find_path(const Quiver &q, std::size_t from, std::size_t to) {
    if (from >= q.vertex_count() || to >= q.vertex_count())
        throw Error(ErrorCode::DimensionMismatch, "quiver vertex out of range");
    constexpr auto none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> via(q.vertex_count(), none);
    std::vector<char> seen(q.vertex_count(), 0);
    std::queue<std::size_t> frontier;
    frontier.push(from);
    seen[from] = 1;
    while (!frontier.empty() && !seen[to]) {
        const auto v = frontier.front();
        frontier.pop();
        for (auto a : q.outgoing[v]) {
            const auto h = q.arrows[a].head;
            if (seen[h]) continue;
            seen[h] = 1;
            via[h] = a;
            frontier.push(h);
        }
    }
    if (!seen[to]) throw Error(ErrorCode::Disconnected, "quiver is not strongly connected");
    QuiverPath p{from, {}};
    for (std::size_t v = to; v != from; v = q.arrows[via[v]].tail) p.steps.push_back({via[v], false});
    std::reverse(p.steps.begin(), p.steps.end());
    return p;
}

/// Perfect matching function extended additively along the path, with
/// P(a^*) = -P(a).
inline std::int64_t evaluate_pm(const Quiver &q, const QuiverPath &path, const PerfectMatching &pm) {
    std::int64_t total = 0;
    for (const auto &s : path.steps) {
        const int v = pm.contains(q.arrows[s.arrow].edge) ? 1 : 0;
        total += s.reversed ? -v : v;
    }
    return total;
}

inline Vec2 path_homology(const Quiver &q, const QuiverPath &path) {
    Vec2 total{};
    for (const auto &s : path.steps) total += s.reversed ? -q.arrows[s.arrow].offset : q.arrows[s.arrow].offset;
    return total;
}

} // namespace dimer
