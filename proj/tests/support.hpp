#pragma once

#include "dimer/dimer.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#ifndef DIMER_FIXTURE_DIR
#error "DIMER_FIXTURE_DIR must point at the fixtures directory"
#endif

namespace dimer::testing {

inline std::string fixture_path(const std::string &name) { return std::string(DIMER_FIXTURE_DIR) + "/" + name; }

inline DimerModel fixture(const std::string &name) { return load_model(fixture_path(name)); }

inline std::vector<Integer> ints(std::initializer_list<long long> v) { return {v.begin(), v.end()}; }

/// Every subset of |V|/2 edges, kept when it covers each node once.
inline std::vector<std::vector<std::size_t>> brute_force_pms(const DimerModel &m) {
    std::vector<std::vector<std::size_t>> out;
    const std::size_t ne = m.edge_count();
    const std::size_t k = m.node_count() / 2;
    if (ne > 24) return out;
    for (std::uint32_t mask = 0; mask < (1u << ne); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
        std::vector<std::size_t> es;
        for (std::size_t e = 0; e < ne; ++e)
            if (mask >> e & 1u) es.push_back(e);
        if (is_perfect_matching(m, es)) out.push_back(es);
    }
    return out;
}

/// Random path i -> j: a random walk of random length followed by a
/// shortest path to j, optionally with small cycles spliced in.
inline QuiverPath random_path(const Quiver &q, const Potential &w, std::size_t i, std::size_t j, std::mt19937 &rng) {
    QuiverPath p{i, {}};
    std::size_t at = i;
    const int steps = std::uniform_int_distribution<int>(0, 12)(rng);
    for (int s = 0; s < steps; ++s) {
        const auto &out = q.outgoing[at];
        const auto a = out[std::uniform_int_distribution<std::size_t>(0, out.size() - 1)(rng)];
        p.steps.push_back({a, false});
        at = q.arrows[a].head;
        if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) {
            // splice a small cycle starting at `at`, if one does
            const auto &cycles = std::uniform_int_distribution<int>(0, 1)(rng) ? w.plus_cycles : w.minus_cycles;
            for (const auto &c : cycles) {
                const auto pos = std::find_if(c.begin(), c.end(), [&](std::size_t x) { return q.arrows[x].tail == at; });
                if (pos == c.end()) continue;
                for (std::size_t k = 0; k < c.size(); ++k)
                    p.steps.push_back({c[(static_cast<std::size_t>(pos - c.begin()) + k) % c.size()], false});
                break;
            }
        }
    }
    const auto rest = find_path(q, at, j);
    p.steps.insert(p.steps.end(), rest.steps.begin(), rest.steps.end());
    return p;
}

/// Adds an edge across face f from the node at boundary position k to the
/// node three steps further on, splitting the face in two.
inline DimerModel add_chord(const DimerModel &m, std::size_t f, std::size_t k, const std::string &id = "chord") {
    const Face &face = m.faces()[f];
    const std::size_t n = face.length();
    const std::size_t k2 = (k + 3) % n;
    const std::size_t a = m.tail(face.boundary[k]);
    const std::size_t b = m.tail(face.boundary[k2]);
    const bool a_white = m.nodes()[a].color == Color::White;
    const std::size_t w = a_white ? a : b;
    const std::size_t bl = a_white ? b : a;
    const Vec2 lw = a_white ? face.lift[k] : face.lift[k2];
    const Vec2 lb = a_white ? face.lift[k2] : face.lift[k];
    RawModel raw = m.to_raw();
    raw.edges.push_back({id, m.nodes()[w].id, m.nodes()[bl].id, lb - lw});
    // the face is the sector just counterclockwise of the outgoing boundary edge
    auto insert_after = [&](std::size_t node, std::size_t pos) {
        auto &rot = raw.rotations.at(m.nodes()[node].id);
        const auto it = std::find(rot.begin(), rot.end(), m.edges()[face.boundary[pos].edge].id);
        rot.insert(it + 1, id);
    };
    insert_after(a, k);
    insert_after(b, k2);
    return validate(raw);
}

/// A new white node inside face f joined to every black corner of the face,
/// plus a pendant black neighbor. The pendant edge is forced, so the spokes
/// lie in no perfect matching.
inline DimerModel add_star(const DimerModel &m, std::size_t f) {
    const Face &face = m.faces()[f];
    RawModel raw = m.to_raw();
    raw.nodes.push_back({"star_w", Color::White});
    raw.nodes.push_back({"star_b", Color::Black});
    std::vector<std::string> rot;
    for (std::size_t k = 0; k < face.length(); ++k) {
        const std::size_t v = m.tail(face.boundary[k]);
        if (m.nodes()[v].color != Color::Black) continue;
        const std::string id = "spoke" + std::to_string(k);
        raw.edges.push_back({id, "star_w", m.nodes()[v].id, face.lift[k]});
        auto &r = raw.rotations.at(m.nodes()[v].id);
        r.insert(std::find(r.begin(), r.end(), m.edges()[face.boundary[k].edge].id) + 1, id);
        rot.push_back(id);
    }
    raw.edges.push_back({"pendant", "star_w", "star_b", {}});
    rot.push_back("pendant");
    raw.rotations["star_w"] = rot;
    raw.rotations["star_b"] = {"pendant"};
    return validate(raw);
}

/// A 4-cycle inside face f hanging off one black corner by a single edge.
/// The cycle matches itself in two ways, doubling every multiplicity.
inline DimerModel add_pocket(const DimerModel &m, std::size_t f) {
    const Face &face = m.faces()[f];
    std::size_t k = 0;
    while (m.nodes()[m.tail(face.boundary[k])].color != Color::Black) ++k;
    const std::size_t v = m.tail(face.boundary[k]);
    RawModel raw = m.to_raw();
    raw.nodes.push_back({"pw1", Color::White});
    raw.nodes.push_back({"pb1", Color::Black});
    raw.nodes.push_back({"pw2", Color::White});
    raw.nodes.push_back({"pb2", Color::Black});
    raw.edges.push_back({"pa", "pw1", "pb1", {}});
    raw.edges.push_back({"pb", "pw2", "pb1", {}});
    raw.edges.push_back({"pc", "pw2", "pb2", {}});
    raw.edges.push_back({"pd", "pw1", "pb2", {}});
    raw.edges.push_back({"pspoke", "pw1", m.nodes()[v].id, face.lift[k]});
    raw.rotations["pw1"] = {"pa", "pd", "pspoke"};
    raw.rotations["pb1"] = {"pb", "pa"};
    raw.rotations["pw2"] = {"pc", "pb"};
    raw.rotations["pb2"] = {"pc", "pd"};
    auto &r = raw.rotations.at(m.nodes()[v].id);
    r.insert(std::find(r.begin(), r.end(), m.edges()[face.boundary[k].edge].id) + 1, "pspoke");
    return validate(raw);
}

/// Replaces edge e = (w, b) by the path w - b2 - w2 - b through two new
/// bivalent nodes.
inline RawModel subdivide(const DimerModel &m, std::size_t e) {
    RawModel raw = m.to_raw();
    const Edge old = m.edges()[e];
    const std::string w = m.nodes()[old.white].id, b = m.nodes()[old.black].id;
    const std::string id = old.id;
    raw.nodes.push_back({"sub_b", Color::Black});
    raw.nodes.push_back({"sub_w", Color::White});
    std::erase_if(raw.edges, [&](const RawEdge &x) { return x.id == id; });
    raw.edges.push_back({id + "_a", w, "sub_b", old.offset});
    raw.edges.push_back({id + "_b", "sub_w", "sub_b", {}});
    raw.edges.push_back({id + "_c", "sub_w", b, {}});
    std::replace(raw.rotations[w].begin(), raw.rotations[w].end(), id, id + "_a");
    std::replace(raw.rotations[b].begin(), raw.rotations[b].end(), id, id + "_c");
    raw.rotations["sub_b"] = {id + "_a", id + "_b"};
    raw.rotations["sub_w"] = {id + "_b", id + "_c"};
    return raw;
}

/// True when some bijection of the vertices onto Z/n carries the arrows of q
/// onto {i -> i + s : i in Z/n, s in steps}, tried exhaustively.
inline bool matches_cyclic_mckay(const Quiver &q, std::size_t n, const std::vector<std::size_t> &steps) {
    if (q.vertex_count() != n || q.arrow_count() != n * steps.size()) return false;
    std::multiset<std::pair<std::size_t, std::size_t>> want;
    for (std::size_t i = 0; i < n; ++i)
        for (auto s : steps) want.insert({i, (i + s) % n});
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    do {
        std::multiset<std::pair<std::size_t, std::size_t>> got;
        for (const auto &a : q.arrows) got.insert({perm[a.tail], perm[a.head]});
        if (got == want) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

struct CorpusEntry {
    std::string name;
    DimerModel model;
};

/// Fixtures plus builder outputs.
inline std::vector<CorpusEntry> corpus() {
    std::vector<CorpusEntry> out;
    for (const char *f : {"square2x2.json", "hex1.json", "hex7_124.json", "ex52_nonregular.json"})
        out.push_back({f, fixture(f)});
    const std::vector<QuotientLattice> hex = {
        {{1, 0}, {0, 1}}, {{2, 0}, {0, 1}}, {{1, 0}, {0, 2}}, {{2, 0}, {1, 1}}, {{3, 0}, {0, 1}}, {{3, 0}, {1, 1}},
        {{2, 0}, {0, 2}}, {{4, 0}, {1, 1}}, {{5, 0}, {2, 1}}, {{3, 0}, {0, 2}}, {{6, 0}, {1, 1}}, {{7, 0}, {2, 1}},
        {{7, 0}, {3, 1}}, {{3, 0}, {1, 3}}};
    for (const auto &q : hex)
        out.push_back({"hex " + to_string(q.u) + to_string(q.v), build_hexagonal(q)});
    const std::vector<QuotientLattice> sq = {{{2, 0}, {1, 1}}, {{2, 0}, {0, 2}}, {{4, 0}, {0, 2}}, {{2, 0}, {1, 3}},
                                             {{4, 0}, {1, 1}}, {{4, 0}, {1, 3}}, {{6, 0}, {1, 1}}, {{2, 0}, {0, 4}},
                                             {{4, 0}, {2, 2}}, {{1, 1}, {-1, 1}}, {{1, 1}, {1, -1}}};
    for (const auto &q : sq) out.push_back({"square " + to_string(q.u) + to_string(q.v), build_square(q)});
    // chord-split hexagons; some are consistent, some are not
    const auto h21 = build_hexagonal({{2, 0}, {0, 1}});
    const auto h22 = build_hexagonal({{2, 0}, {0, 2}});
    out.push_back({"hex (2,0)(0,1) + chord 0", add_chord(h21, 0, 0)});
    out.push_back({"hex (2,0)(0,1) + chord 1", add_chord(h21, 0, 1)});
    out.push_back({"hex (2,0)(0,2) + chord", add_chord(h22, 0, 0)});
    out.push_back({"hex (3,0)(1,1) + chord", add_chord(build_hexagonal({{3, 0}, {1, 1}}), 1, 1)});
    out.push_back({"hex (2,0)(1,1) + star", add_star(build_hexagonal({{2, 0}, {1, 1}}), 0)});
    out.push_back({"square (2,0)(0,2) + pocket", add_pocket(build_square({{2, 0}, {0, 2}}), 0)});
    return out;
}

} // namespace dimer::testing
