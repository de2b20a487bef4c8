#pragma once

#include "dimer/graph.hpp"
#include "dimer/lattice.hpp"

#include <cstddef>
#include <optional>
#include <queue>
#include <vector>

namespace dimer {

/// Color- and rotation-preserving bijection between two dimer models,
/// together with the induced map on H_1 of the torus.
struct ModelIsomorphism {
    std::vector<std::size_t> nodes;
    std::vector<std::size_t> edges;
    Mat2 homology;
};

namespace detail {

// Edge e of a goes to edge f of b; extend along rotations.
inline std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>>
extend_map(const DimerModel &a, const DimerModel &b, std::size_t e0, std::size_t f0) {
    constexpr auto none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> nmap(a.node_count(), none), emap(a.edge_count(), none);
    std::vector<std::size_t> used_n(b.node_count(), 0), used_e(b.edge_count(), 0);
    std::queue<std::pair<std::size_t, std::size_t>> todo; // (node of a, anchor edge of a)

    auto assign_node = [&](std::size_t v, std::size_t w) {
        if (nmap[v] == none) {
            if (used_n[w] || a.nodes()[v].color != b.nodes()[w].color || a.degree(v) != b.degree(w)) return false;
            nmap[v] = w;
            used_n[w] = 1;
            return true;
        }
        return nmap[v] == w;
    };
    auto assign_edge = [&](std::size_t e, std::size_t f) {
        if (emap[e] == none) {
            if (used_e[f]) return false;
            emap[e] = f;
            used_e[f] = 1;
            return true;
        }
        return emap[e] == f;
    };

    if (!assign_edge(e0, f0) || !assign_node(a.edges()[e0].white, b.edges()[f0].white) ||
        !assign_node(a.edges()[e0].black, b.edges()[f0].black))
        return std::nullopt;
    todo.push({a.edges()[e0].white, e0});
    todo.push({a.edges()[e0].black, e0});
    std::vector<char> done(a.node_count(), 0);
    while (!todo.empty()) {
        auto [v, e] = todo.front();
        todo.pop();
        if (done[v]) continue;
        done[v] = 1;
        const std::size_t w = nmap[v];
        const auto &ra = a.rotation(v);
        const auto &rb = b.rotation(w);
        const std::size_t sa = a.slot(v, e);
        const std::size_t sb = b.slot(w, emap[e]);
        for (std::size_t k = 0; k < ra.size(); ++k) {
            const std::size_t ea = ra[(sa + k) % ra.size()];
            const std::size_t fb = rb[(sb + k) % rb.size()];
            if (!assign_edge(ea, fb)) return std::nullopt;
            const auto &x = a.edges()[ea];
            const auto &y = b.edges()[fb];
            if (!assign_node(x.white, y.white) || !assign_node(x.black, y.black)) return std::nullopt;
            const std::size_t other = x.white == v ? x.black : x.white;
            if (!done[other]) todo.push({other, ea});
        }
    }
    for (auto x : nmap)
        if (x == none) return std::nullopt;
    return std::make_pair(nmap, emap);
}

// BFS spanning tree as (parent, tree edge, child) triples in visiting order.
struct TreeStep {
    std::size_t parent, edge, child;
};

inline std::vector<TreeStep> spanning_tree(const DimerModel &m) {
    std::vector<TreeStep> out;
    std::vector<char> seen(m.node_count(), 0);
    std::queue<std::size_t> q;
    q.push(0);
    seen[0] = 1;
    while (!q.empty()) {
        const auto v = q.front();
        q.pop();
        for (auto e : m.rotation(v)) {
            const auto u = m.head(m.dart_from(v, e));
            if (seen[u]) continue;
            seen[u] = 1;
            out.push_back({v, e, u});
            q.push(u);
        }
    }
    return out;
}

// Homology of the fundamental cycle of every edge of m, using the tree of a
// transported through the node/edge maps (identity maps for m == a).
inline std::vector<Vec2> fundamental_cycles(const DimerModel &m, const std::vector<TreeStep> &tree,
                                            const std::vector<std::size_t> &nmap,
                                            const std::vector<std::size_t> &emap) {
    std::vector<Vec2> pot(m.node_count());
    for (const auto &s : tree) {
        const std::size_t v = nmap[s.parent];
        pot[nmap[s.child]] = pot[v] + m.displacement(m.dart_from(v, emap[s.edge]));
    }
    std::vector<Vec2> out;
    for (const auto &e : m.edges()) out.push_back(pot[e.white] + e.offset - pot[e.black]);
    return out;
}

} // namespace detail

/// Finds an isomorphism of embedded dimer models: colors, cyclic rotations
/// and edge incidences preserved, and cycle homology related by a matrix in
/// SL(2, Z).
inline std::optional<ModelIsomorphism> find_isomorphism(const DimerModel &a, const DimerModel &b) {
    if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count() || a.edge_count() == 0)
        return std::nullopt;
    const auto tree = detail::spanning_tree(a);
    std::vector<std::size_t> id_n(a.node_count()), id_e(a.edge_count());
    for (std::size_t i = 0; i < id_n.size(); ++i) id_n[i] = i;
    for (std::size_t i = 0; i < id_e.size(); ++i) id_e[i] = i;
    const auto ha = detail::fundamental_cycles(a, tree, id_n, id_e);
    for (std::size_t f = 0; f < b.edge_count(); ++f) {
        auto maps = detail::extend_map(a, b, 0, f);
        if (!maps) continue;
        auto &[nmap, emap] = *maps;
        const auto hb = detail::fundamental_cycles(b, tree, nmap, emap); // indexed by edge of b
        // pick two independent cycle classes in a
        std::optional<std::size_t> i1, i2;
        for (std::size_t e = 0; e < ha.size() && !i2; ++e) {
            if (ha[e].is_zero()) continue;
            if (!i1)
                i1 = e;
            else if (cross(ha[*i1], ha[e]) != 0)
                i2 = e;
        }
        if (!i2) continue;
        const Vec2 p = ha[*i1], q = ha[*i2];
        const Vec2 pb = hb[emap[*i1]], qb = hb[emap[*i2]];
        const std::int64_t det = cross(p, q);
        // A [p q] = [pb qb]  =>  A = [pb qb] adj([p q]) / det
        const std::int64_t a11 = pb.x * q.y - qb.x * p.y, a12 = -pb.x * q.x + qb.x * p.x;
        const std::int64_t a21 = pb.y * q.y - qb.y * p.y, a22 = -pb.y * q.x + qb.y * p.x;
        if (a11 % det || a12 % det || a21 % det || a22 % det) continue;
        const Mat2 A{a11 / det, a12 / det, a21 / det, a22 / det};
        if (A.det() != 1) continue;
        bool ok = true;
        for (std::size_t e = 0; e < ha.size() && ok; ++e) ok = A * ha[e] == hb[emap[e]];
        if (ok) return ModelIsomorphism{nmap, emap, A};
    }
    return std::nullopt;
}

} // namespace dimer
