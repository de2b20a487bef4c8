#pragma once

#include "dimer/errors.hpp"
#include "dimer/graph.hpp"
#include "dimer/lattice.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace dimer {

/// A set of edges meeting every node exactly once.
struct PerfectMatching {
    std::vector<std::size_t> edges; // sorted
    std::vector<bool> mask;         // indexed by edge

    PerfectMatching() = default;
    PerfectMatching(std::vector<std::size_t> chosen, std::size_t edge_count) : edges(std::move(chosen)) {
        std::sort(edges.begin(), edges.end());
        mask.assign(edge_count, false);
        for (auto e : edges) mask[e] = true;
    }

    bool contains(std::size_t edge) const { return edge < mask.size() && mask[edge]; }

    friend bool operator==(const PerfectMatching &a, const PerfectMatching &b) { return a.edges == b.edges; }
    friend bool operator<(const PerfectMatching &a, const PerfectMatching &b) { return a.edges < b.edges; }
};

inline bool is_perfect_matching(const DimerModel &m, std::span<const std::size_t> edges) {
    std::vector<int> hit(m.node_count(), 0);
    for (auto e : edges) {
        if (e >= m.edge_count()) return false;
        ++hit[m.edges()[e].white];
        ++hit[m.edges()[e].black];
    }
    return std::all_of(hit.begin(), hit.end(), [](int h) { return h == 1; });
}

/// All perfect matchings, by backtracking on the uncovered node with the
/// fewest remaining choices. Sorted lexicographically by edge index list.
/// Throws SearchExhausted when more than `limit` matchings exist.
inline std::vector<PerfectMatching> enumerate_pms(const DimerModel &m,
                                                  std::size_t limit = std::numeric_limits<std::size_t>::max()) {
    std::vector<PerfectMatching> out;
    const std::size_t n = m.node_count();
    std::size_t whites = 0;
    for (const auto &node : m.nodes()) whites += node.color == Color::White;
    if (2 * whites != n) return out;

    std::vector<std::vector<std::size_t>> incident(n);
    for (std::size_t e = 0; e < m.edge_count(); ++e) {
        incident[m.edges()[e].white].push_back(e);
        incident[m.edges()[e].black].push_back(e);
    }
    std::vector<char> covered(n, 0);
    std::vector<std::size_t> chosen;
    chosen.reserve(n / 2);

    auto other = [&](std::size_t e, std::size_t v) {
        const auto &edge = m.edges()[e];
        return edge.white == v ? edge.black : edge.white;
    };

    auto recurse = [&](auto &self) -> void {
        std::optional<std::size_t> pick;
        std::size_t best = std::numeric_limits<std::size_t>::max();
        for (std::size_t v = 0; v < n; ++v) {
            if (covered[v]) continue;
            std::size_t avail = 0;
            for (auto e : incident[v]) avail += !covered[other(e, v)];
            if (avail < best) {
                best = avail;
                pick = v;
                if (avail <= 1) break;
            }
        }
        if (!pick) {
            if (out.size() >= limit)
                throw Error(ErrorCode::SearchExhausted, "more than " + std::to_string(limit) + " perfect matchings");
            out.emplace_back(chosen, m.edge_count());
            return;
        }
        if (best == 0) return;
        const std::size_t v = *pick;
        for (auto e : incident[v]) {
            const auto w = other(e, v);
            if (covered[w]) continue;
            covered[v] = covered[w] = 1;
            chosen.push_back(e);
            self(self);
            chosen.pop_back();
            covered[v] = covered[w] = 0;
        }
    };
    recurse(recurse);
    std::sort(out.begin(), out.end());
    return out;
}

/// Homology class of the 1-cycle pm - pm0 (pm oriented white to black,
/// pm0 black to white).
inline Vec2 pm_homology(const DimerModel &m, const PerfectMatching &pm, const PerfectMatching &pm0) {
    Vec2 total{};
    for (auto e : pm.edges) total += m.edges()[e].offset;
    for (auto e : pm0.edges) total -= m.edges()[e].offset;
    return total;
}

/// Lattice points of all perfect matchings relative to a base matching, with
/// multiplicities, and their convex hull.
struct PMPolygon {
    std::size_t base = 0;
    std::vector<Vec2> classes;                         // per matching
    std::map<Vec2, std::vector<std::size_t>> matchings_at; // lattice point -> matching indices
    std::vector<Vec2> hull;                            // counterclockwise from the least vertex

    std::size_t total() const { return classes.size(); }
    bool degenerate() const { return hull.size() < 3; }

    std::size_t multiplicity(Vec2 p) const {
        auto it = matchings_at.find(p);
        return it == matchings_at.end() ? 0 : it->second.size();
    }

    LatticePolygon polygon() const {
        if (degenerate()) throw Error(ErrorCode::DegeneratePolygon, "perfect matching polygon has empty interior");
        return LatticePolygon::hull_of(hull);
    }
};

/// Perfect matching polygon. `base` indexes into `pms`; defaults to the
/// lexicographically least matching (index 0 of a sorted enumeration).
inline PMPolygon pm_polygon(const DimerModel &m, std::span<const PerfectMatching> pms,
                            std::optional<std::size_t> base = std::nullopt) {
    if (pms.empty()) throw Error(ErrorCode::NoPerfectMatching, "model has no perfect matching");
    PMPolygon out;
    out.base = base.value_or(0);
    if (out.base >= pms.size()) throw Error(ErrorCode::DimensionMismatch, "base matching index out of range");
    for (std::size_t k = 0; k < pms.size(); ++k) {
        const Vec2 p = pm_homology(m, pms[k], pms[out.base]);
        out.classes.push_back(p);
        out.matchings_at[p].push_back(k);
    }
    std::vector<Vec2> pts;
    for (const auto &[p, _] : out.matchings_at) pts.push_back(p);
    out.hull = LatticePolygon::convex_hull(pts);
    return out;
}

inline PMPolygon pm_polygon(const DimerModel &m) {
    const auto pms = enumerate_pms(m);
    return pm_polygon(m, pms);
}

struct ExtremalMatching {
    Vec2 vertex;
    std::size_t matching = 0; // index into the enumeration
};

/// The unique matching at each polygon vertex, counterclockwise from the
/// lexicographically least vertex.
inline std::vector<ExtremalMatching> extremal_pms(const PMPolygon &poly) {
    if (poly.degenerate()) throw Error(ErrorCode::DegeneratePolygon, "perfect matching polygon has empty interior");
    std::vector<ExtremalMatching> out;
    for (Vec2 v : poly.hull) {
        const auto &at = poly.matchings_at.at(v);
        if (at.size() != 1)
            throw Error(ErrorCode::NonUniqueExtremal, std::to_string(at.size()) + " perfect matchings at vertex " +
                                                          to_string(v) + " (model is not consistent)");
        out.push_back({v, at.front()});
    }
    return out;
}

/// Edges contained in no perfect matching.
inline std::vector<std::size_t> edge_coverage(const DimerModel &m, std::span<const PerfectMatching> pms) {
    std::vector<bool> hit(m.edge_count(), false);
    for (const auto &pm : pms)
        for (auto e : pm.edges) hit[e] = true;
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < m.edge_count(); ++e)
        if (!hit[e]) out.push_back(e);
    return out;
}

inline std::vector<std::size_t> edge_coverage(const DimerModel &m) { return edge_coverage(m, enumerate_pms(m)); }

} // namespace dimer
