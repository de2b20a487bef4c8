#pragma once

#include "dimer/graph.hpp"
#include "dimer/lattice.hpp"
#include "dimer/matchings.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dimer {

/// One traversal of an edge by a zigzag path.
struct ZigzagUse {
    std::size_t edge = 0;
    bool white_to_black = true;
    std::size_t white_slot = 0; // position in the white endpoint's rotation
    std::size_t black_slot = 0;
    Vec2 offset; // translation of the white endpoint, relative to the start of the period
};

/// Walk turning maximally right at white nodes and maximally left at black
/// nodes, recorded over one period.
struct ZigzagPath {
    std::string id;
    std::vector<Dart> darts;
    std::vector<ZigzagUse> uses;
    Vec2 slope;

    std::size_t length() const { return darts.size(); }
    bool trivial() const { return slope.is_zero(); }
};

/// Next dart of the zigzag through `d`.
inline Dart zigzag_successor(const DimerModel &m, Dart d) {
    const std::size_t v = m.head(d);
    const std::size_t next = d.from_white ? m.prev_ccw(v, d.edge) : m.next_ccw(v, d.edge);
    return m.dart_from(v, next);
}

/// Zigzag paths as orbits of darts, numbered by least dart.
inline std::vector<ZigzagPath> extract_zigzags(const DimerModel &m) {
    std::vector<char> used(m.dart_count(), 0);
    std::vector<ZigzagPath> out;
    for (std::size_t start = 0; start < m.dart_count(); ++start) {
        if (used[start]) continue;
        ZigzagPath z;
        z.id = "z" + std::to_string(out.size());
        Vec2 pos{};
        Dart d = Dart::from_index(start);
        do {
            used[d.index()] = 1;
            const Edge &e = m.edges()[d.edge];
            z.darts.push_back(d);
            z.uses.push_back({d.edge, d.from_white, m.slot(e.white, d.edge), m.slot(e.black, d.edge),
                              d.from_white ? pos : pos + m.displacement(d)});
            pos += m.displacement(d);
            d = zigzag_successor(m, d);
        } while (d.index() != start);
        z.slope = pos;
        out.push_back(std::move(z));
    }
    return out;
}

/// An edge shared by the lift of z and a translate of the lift of w.
/// Positions count uses along each lift; `sign` is +1 when z crosses from
/// white to black.
struct SharedEdge {
    std::size_t edge = 0;
    std::int64_t pos_z = 0;
    std::int64_t pos_w = 0;
    int sign = 1;
};

enum class PairKind { Independent, Parallel, Antiparallel, Same };

inline std::string_view to_string(PairKind k) {
    switch (k) {
    case PairKind::Independent: return "independent";
    case PairKind::Parallel: return "parallel";
    case PairKind::Antiparallel: return "antiparallel";
    case PairKind::Same: return "same";
    }
    return "?";
}

/// Shared edges between the lift z~ and the lift w~ + translate. For
/// dependent slopes the sharing repeats periodically; `shared` then holds a
/// finite window and `infinite` is set.
struct LiftPair {
    std::size_t z = 0;
    std::size_t w = 0;
    PairKind kind = PairKind::Independent;
    Vec2 translate;
    std::vector<SharedEdge> shared; // sorted by pos_z
    bool infinite = false;
    bool self_intersection = false;

    /// Order along w is the reverse of the order along z.
    bool reversed_order() const {
        for (std::size_t k = 1; k < shared.size(); ++k)
            if (!(shared[k].pos_w < shared[k - 1].pos_w)) return false;
        return true;
    }
};

struct LiftIntersectionReport {
    std::vector<ZigzagPath> zigzags;
    std::vector<std::size_t> trivial;  // zigzags with zero slope
    std::vector<LiftPair> pairs;       // every lift pair that shares at least one edge
    std::map<std::pair<std::size_t, std::size_t>, std::int64_t> translate_classes; // independent pairs: |det|
};

namespace detail {

// Integer solutions of m*a - m2*b == c for nonzero a, b; returns the family
// base + s*(b/h, a/h) normalized so 0 <= base.m < |b/h|.
struct LineFamily {
    std::int64_t m = 0, m2 = 0, step_m = 0, step_m2 = 0;
};

inline std::optional<LineFamily> solve_line(std::int64_t a, std::int64_t b, std::int64_t c) {
    const Bezout bz = ext_gcd(a, b); // s*a + t*b = h
    if (c % bz.g != 0) return std::nullopt;
    LineFamily f;
    f.m = bz.s * (c / bz.g);
    f.m2 = -bz.t * (c / bz.g);
    f.step_m = b / bz.g;
    f.step_m2 = a / bz.g;
    const std::int64_t k = floor_div(f.m, std::abs(f.step_m));
    const std::int64_t dir = f.step_m > 0 ? 1 : -1;
    f.m -= k * dir * f.step_m;
    f.m2 -= k * dir * f.step_m2;
    return f;
}

constexpr std::int64_t lift_window = 3;

} // namespace detail

/// Finite description of how zigzag lifts share edges on the universal cover.
inline LiftIntersectionReport lift_report(const DimerModel &m) {
    LiftIntersectionReport r;
    r.zigzags = extract_zigzags(m);
    const auto &zs = r.zigzags;
    for (std::size_t i = 0; i < zs.size(); ++i)
        if (zs[i].trivial()) r.trivial.push_back(i);

    // per edge: which (zigzag, use index) traverse it
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> on_edge(m.edge_count());
    for (std::size_t i = 0; i < zs.size(); ++i)
        for (std::size_t k = 0; k < zs[i].uses.size(); ++k) on_edge[zs[i].uses[k].edge].push_back({i, k});

    // occurrences (k, l) grouped by zigzag pair
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::pair<std::size_t, std::size_t>>> occ;
    for (std::size_t e = 0; e < m.edge_count(); ++e) {
        const auto &uses = on_edge[e];
        for (std::size_t x = 0; x < uses.size(); ++x)
            for (std::size_t y = 0; y < uses.size(); ++y) {
                if (x == y) continue;
                auto [zi, k] = uses[x];
                auto [wi, l] = uses[y];
                if (zi > wi) continue;
                occ[{zi, wi}].push_back({k, l});
            }
    }

    for (auto &[key, list] : occ) {
        const auto [zi, wi] = key;
        const ZigzagPath &z = zs[zi];
        const ZigzagPath &w = zs[wi];
        if (z.trivial() || w.trivial()) continue;
        const auto lz = static_cast<std::int64_t>(z.length());
        const auto lw = static_cast<std::int64_t>(w.length());
        const std::int64_t det = cross(z.slope, w.slope);
        const Lattice2 lambda{z.slope, w.slope};

        PairKind kind = PairKind::Independent;
        if (zi == wi)
            kind = PairKind::Same;
        else if (det == 0)
            kind = dot(z.slope, w.slope) > 0 ? PairKind::Parallel : PairKind::Antiparallel;
        if (kind == PairKind::Independent) r.translate_classes[key] = std::abs(det);

        std::map<Vec2, LiftPair> by_class;
        for (auto [k, l] : list) {
            const Vec2 t0 = z.uses[k].offset - w.uses[l].offset;
            const Vec2 cls = lambda.reduce(t0);
            auto [it, fresh] = by_class.try_emplace(cls);
            LiftPair &p = it->second;
            if (fresh) {
                p.z = zi;
                p.w = wi;
                p.kind = kind;
                p.translate = cls;
            }
            const Vec2 d = cls - t0; // m*[z] - m2*[w] == d
            const int sign = z.uses[k].white_to_black ? 1 : -1;
            if (kind == PairKind::Independent) {
                const std::int64_t mm = cross(d, w.slope) / det;
                const std::int64_t mm2 = -cross(z.slope, d) / det;
                p.shared.push_back({z.uses[k].edge, mm * lz + static_cast<std::int64_t>(k),
                                    mm2 * lw + static_cast<std::int64_t>(l), sign});
                continue;
            }
            // dependent slopes: both are multiples of one primitive vector g
            const Vec2 g = primitive(z.slope);
            const std::int64_t a = lattice_length(z.slope) * (same_direction(z.slope, g) ? 1 : -1);
            const std::int64_t b = lattice_length(w.slope) * (same_direction(w.slope, g) ? 1 : -1);
            const std::int64_t c = g.x != 0 ? d.x / g.x : d.y / g.y;
            const auto fam = detail::solve_line(a, b, c);
            if (!fam) continue; // cannot happen: d lies in the lattice
            p.infinite = true;
            if (kind == PairKind::Same && t0.is_zero() && k == l) continue;
            if (kind == PairKind::Same && lambda.contains(t0)) p.self_intersection = true;
            for (std::int64_t s = -detail::lift_window; s <= detail::lift_window; ++s) {
                const std::int64_t mm = fam->m + s * fam->step_m;
                const std::int64_t mm2 = fam->m2 + s * fam->step_m2;
                p.shared.push_back({z.uses[k].edge, mm * lz + static_cast<std::int64_t>(k),
                                    mm2 * lw + static_cast<std::int64_t>(l), sign});
            }
        }
        for (auto &[cls, p] : by_class) {
            if (p.shared.empty()) continue;
            std::sort(p.shared.begin(), p.shared.end(),
                      [](const SharedEdge &x, const SharedEdge &y) { return x.pos_z < y.pos_z; });
            r.pairs.push_back(std::move(p));
        }
    }
    return r;
}

/// Verdict of a predicate together with the first violated condition.
struct CheckResult {
    bool ok = true;
    int condition = 0; // number of the violated condition, 0 when ok
    std::string detail;

    explicit operator bool() const { return ok; }

    static CheckResult pass() { return {}; }
    static CheckResult fail(int cond, std::string why) { return {false, cond, std::move(why)}; }
};

namespace detail {

inline std::string pair_label(const LiftIntersectionReport &r, const LiftPair &p, const DimerModel &m) {
    std::string s = r.zigzags[p.z].id + "/" + r.zigzags[p.w].id + " at translate " + to_string(p.translate) +
                    " sharing";
    for (std::size_t k = 0; k < p.shared.size() && k < 4; ++k) s += " " + m.edges()[p.shared[k].edge].id;
    return s;
}

inline std::optional<CheckResult> check_trivial(const LiftIntersectionReport &r) {
    if (r.trivial.empty()) return std::nullopt;
    return CheckResult::fail(1, "zigzag " + r.zigzags[r.trivial.front()].id + " is homologically trivial");
}

inline std::optional<CheckResult> check_self(const LiftIntersectionReport &r, const DimerModel &m) {
    for (const auto &p : r.pairs)
        if (p.self_intersection)
            return CheckResult::fail(2, "self-intersection of " + pair_label(r, p, m));
    return std::nullopt;
}

} // namespace detail

inline CheckResult is_consistent(const DimerModel &m, const LiftIntersectionReport &r) {
    if (auto f = detail::check_trivial(r)) return *f;
    if (auto f = detail::check_self(r, m)) return *f;
    for (const auto &p : r.pairs) {
        if (p.kind == PairKind::Same || p.kind == PairKind::Parallel)
            return CheckResult::fail(3, "parallel lifts intersect repeatedly in the same direction: " +
                                            detail::pair_label(r, p, m));
        if (p.shared.size() >= 2 && !p.reversed_order())
            return CheckResult::fail(3, "lifts intersect twice in the same direction: " + detail::pair_label(r, p, m));
    }
    return CheckResult::pass();
}

inline CheckResult is_consistent(const DimerModel &m) { return is_consistent(m, lift_report(m)); }

/// Cyclic order of zigzag passes at a node: one pass per sector between
/// rotation-consecutive edges, listed counterclockwise.
inline std::vector<std::size_t> zigzags_at_node(const DimerModel &m, const std::vector<ZigzagPath> &zs,
                                                std::size_t node) {
    std::vector<std::size_t> owner(m.dart_count());
    for (std::size_t i = 0; i < zs.size(); ++i)
        for (Dart d : zs[i].darts) owner[d.index()] = i;
    const auto &rot = m.rotation(node);
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < rot.size(); ++k) {
        // sector between rot[k] and rot[k+1]; at a white node the pass arrives
        // along rot[k] and leaves along rot[k+1], at a black node the reverse
        const std::size_t e = m.nodes()[node].color == Color::White ? rot[k] : rot[(k + 1) % rot.size()];
        out.push_back(owner[m.dart_from(node, e).reversed().index()]);
    }
    return out;
}

inline CheckResult is_properly_ordered(const DimerModel &m, const LiftIntersectionReport &r) {
    if (auto f = detail::check_trivial(r)) return *f;
    if (auto f = detail::check_self(r, m)) return *f;
    const auto &zs = r.zigzags;
    std::vector<std::vector<std::size_t>> at(m.node_count());
    for (std::size_t v = 0; v < m.node_count(); ++v) at[v] = zigzags_at_node(m, zs, v);
    // two passes at one node with equal slopes: either two zigzags, or one
    // zigzag through the node twice, i.e. two same-slope lifts meeting
    for (std::size_t v = 0; v < m.node_count(); ++v)
        for (std::size_t x = 0; x < at[v].size(); ++x)
            for (std::size_t y = x + 1; y < at[v].size(); ++y)
                if (zs[at[v][x]].slope == zs[at[v][y]].slope)
                    return CheckResult::fail(3, at[v][x] == at[v][y]
                                                    ? zs[at[v][x]].id + " passes node " + m.nodes()[v].id + " twice"
                                                    : zs[at[v][x]].id + " and " + zs[at[v][y]].id +
                                                          " have the same slope and meet at node " + m.nodes()[v].id);
    for (std::size_t v = 0; v < m.node_count(); ++v) {
        const auto &seq = at[v];
        std::size_t descents = 0;
        for (std::size_t k = 0; k < seq.size(); ++k)
            if (angle_less(zs[seq[(k + 1) % seq.size()]].slope, zs[seq[k]].slope)) ++descents;
        if (descents > 1)
            return CheckResult::fail(4, "zigzag order at node " + m.nodes()[v].id + " disagrees with slope order");
    }
    return CheckResult::pass();
}

inline CheckResult is_properly_ordered(const DimerModel &m) { return is_properly_ordered(m, lift_report(m)); }

/// Combinatorial isoradiality: lifts with independent slopes share exactly
/// one edge, lifts with dependent slopes share none.
inline CheckResult is_isoradial(const DimerModel &m, const LiftIntersectionReport &r) {
    if (auto f = detail::check_trivial(r)) return CheckResult::fail(1, f->detail);
    if (auto f = detail::check_self(r, m)) return CheckResult::fail(1, f->detail);
    for (const auto &p : r.pairs)
        if (p.kind != PairKind::Independent)
            return CheckResult::fail(3, "lifts with dependent slopes intersect: " + detail::pair_label(r, p, m));
    std::map<std::pair<std::size_t, std::size_t>, std::int64_t> seen;
    for (const auto &p : r.pairs) {
        if (p.shared.size() != 1)
            return CheckResult::fail(2, "lifts share " + std::to_string(p.shared.size()) +
                                            " edges: " + detail::pair_label(r, p, m));
        ++seen[{p.z, p.w}];
    }
    const auto &zs = r.zigzags;
    for (std::size_t i = 0; i < zs.size(); ++i)
        for (std::size_t j = i + 1; j < zs.size(); ++j) {
            const std::int64_t need = std::abs(cross(zs[i].slope, zs[j].slope));
            if (need == 0) continue;
            const auto it = seen.find({i, j});
            const std::int64_t got = it == seen.end() ? 0 : it->second;
            if (got != need)
                return CheckResult::fail(2, "only " + std::to_string(got) + " of " + std::to_string(need) +
                                                " lift pairs of " + zs[i].id + "/" + zs[j].id + " intersect");
        }
    return CheckResult::pass();
}

inline CheckResult is_isoradial(const DimerModel &m) { return is_isoradial(m, lift_report(m)); }

inline std::vector<Vec2> zigzag_slopes(const std::vector<ZigzagPath> &zs) {
    std::vector<Vec2> out;
    for (const auto &z : zs) out.push_back(z.slope);
    std::stable_sort(out.begin(), out.end(), angle_less);
    return out;
}

/// Zigzag slopes agree, as a multiset, with the primitive side segments of
/// the perfect matching polygon.
inline bool slope_side_correspondence(const std::vector<ZigzagPath> &zs, const LatticePolygon &polygon) {
    auto slopes = zigzag_slopes(zs);
    auto sides = primitive_side_segments(polygon);
    std::sort(slopes.begin(), slopes.end());
    std::sort(sides.begin(), sides.end());
    return slopes == sides;
}

inline bool slope_side_correspondence(const DimerModel &m) {
    return slope_side_correspondence(extract_zigzags(m), pm_polygon(m).polygon());
}

} // namespace dimer
