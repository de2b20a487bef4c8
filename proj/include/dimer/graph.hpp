#pragma once

#include "dimer/errors.hpp"
#include "dimer/lattice.hpp"
#include "dimer/vec2.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dimer {

enum class Color : std::uint8_t { White, Black };

inline std::string_view to_string(Color c) { return c == Color::White ? "white" : "black"; }
constexpr Color opposite(Color c) { return c == Color::White ? Color::Black : Color::White; }

struct Node {
    std::string id;
    Color color = Color::White;
};

/// The edge runs from the white node's fundamental-domain representative to
/// the black node's representative translated by `offset`.
struct Edge {
    std::string id;
    std::size_t white = 0;
    std::size_t black = 0;
    Vec2 offset;
};

/// An edge traversed in one direction.
struct Dart {
    std::size_t edge = 0;
    bool from_white = true;

    constexpr Dart reversed() const { return {edge, !from_white}; }
    constexpr std::size_t index() const { return 2 * edge + (from_white ? 0 : 1); }
    static constexpr Dart from_index(std::size_t i) { return {i / 2, i % 2 == 0}; }

    friend constexpr auto operator<=>(const Dart &, const Dart &) = default;
};

/// A face is the cycle of darts having it on their left. `lift[k]` is the
/// translation of the origin of `boundary[k]` when the face is lifted with
/// its first node in the fundamental domain.
struct Face {
    std::string id;
    std::vector<Dart> boundary;
    std::vector<Vec2> lift;

    std::size_t length() const { return boundary.size(); }
};

/// Unvalidated description, as read from JSON.
struct RawNode {
    std::string id;
    Color color = Color::White;
};

struct RawEdge {
    std::string id;
    std::string white;
    std::string black;
    Vec2 offset;
};

struct RawModel {
    std::vector<RawNode> nodes;
    std::vector<RawEdge> edges;
    std::map<std::string, std::vector<std::string>> rotations;
};

/// Bipartite graph cellularly embedded in the torus R^2/Z^2, given
/// combinatorially by a counterclockwise rotation system and Z^2 offsets.
/// Immutable once validated.
class DimerModel {
  public:
    const std::vector<Node> &nodes() const { return nodes_; }
    const std::vector<Edge> &edges() const { return edges_; }
    const std::vector<Face> &faces() const { return faces_; }
    const std::vector<std::size_t> &rotation(std::size_t node) const { return rotations_[node]; }
    const std::vector<std::vector<std::size_t>> &rotations() const { return rotations_; }

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    std::size_t face_count() const { return faces_.size(); }
    std::size_t dart_count() const { return 2 * edges_.size(); }
    std::size_t degree(std::size_t node) const { return rotations_[node].size(); }

    std::int64_t euler_characteristic() const {
        return static_cast<std::int64_t>(nodes_.size()) - static_cast<std::int64_t>(edges_.size()) +
               static_cast<std::int64_t>(faces_.size());
    }

    std::size_t tail(Dart d) const { return d.from_white ? edges_[d.edge].white : edges_[d.edge].black; }
    std::size_t head(Dart d) const { return d.from_white ? edges_[d.edge].black : edges_[d.edge].white; }

    /// Translation picked up by traversing the dart.
    Vec2 displacement(Dart d) const { return d.from_white ? edges_[d.edge].offset : -edges_[d.edge].offset; }

    /// Position of `edge` in the rotation at `node`.
    std::size_t slot(std::size_t node, std::size_t edge) const {
        const Edge &e = edges_[edge];
        if (node == e.white) return white_slot_[edge];
        if (node == e.black) return black_slot_[edge];
        throw Error(ErrorCode::DanglingEdgeReference, "edge " + e.id + " is not incident to node " + nodes_[node].id);
    }

    std::size_t next_ccw(std::size_t node, std::size_t edge) const {
        const auto &r = rotations_[node];
        return r[(slot(node, edge) + 1) % r.size()];
    }
    std::size_t prev_ccw(std::size_t node, std::size_t edge) const {
        const auto &r = rotations_[node];
        return r[(slot(node, edge) + r.size() - 1) % r.size()];
    }

    /// The dart leaving `node` along `edge`.
    Dart dart_from(std::size_t node, std::size_t edge) const { return {edge, edges_[edge].white == node}; }

    /// Face on the left of the dart.
    std::size_t left_face(Dart d) const { return face_of_dart_[d.index()]; }
    /// Position of the dart inside its face boundary.
    std::size_t position_in_face(Dart d) const { return pos_in_face_[d.index()]; }

    std::optional<std::size_t> find_node(std::string_view id) const {
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            if (nodes_[i].id == id) return i;
        return std::nullopt;
    }
    std::optional<std::size_t> find_edge(std::string_view id) const {
        for (std::size_t i = 0; i < edges_.size(); ++i)
            if (edges_[i].id == id) return i;
        return std::nullopt;
    }

    RawModel to_raw() const {
        RawModel raw;
        for (const auto &n : nodes_) raw.nodes.push_back({n.id, n.color});
        for (const auto &e : edges_) raw.edges.push_back({e.id, nodes_[e.white].id, nodes_[e.black].id, e.offset});
        for (std::size_t v = 0; v < nodes_.size(); ++v) {
            auto &list = raw.rotations[nodes_[v].id];
            for (std::size_t e : rotations_[v]) list.push_back(edges_[e].id);
        }
        return raw;
    }

  private:
    friend DimerModel validate(const RawModel &raw);

    std::vector<Node> nodes_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> rotations_;
    std::vector<std::size_t> white_slot_;
    std::vector<std::size_t> black_slot_;
    std::vector<Face> faces_;
    std::vector<std::size_t> face_of_dart_;
    std::vector<std::size_t> pos_in_face_;
};

/// Faces of the embedding: each dart lies on exactly one face, the one on
/// its left. Arriving at a node along an edge, the boundary continues along
/// the edge immediately clockwise from it. Faces are numbered in order of
/// their least dart.
inline std::vector<Face> trace_faces(std::span<const Node> nodes, std::span<const Edge> edges,
                                     const std::vector<std::vector<std::size_t>> &rotations) {
    const std::size_t darts = 2 * edges.size();
    std::vector<std::size_t> wslot(edges.size()), bslot(edges.size());
    std::vector<int> wseen(edges.size(), 0), bseen(edges.size(), 0);
    for (std::size_t v = 0; v < rotations.size(); ++v)
        for (std::size_t k = 0; k < rotations[v].size(); ++k) {
            const std::size_t e = rotations[v][k];
            if (e >= edges.size()) throw Error(ErrorCode::DanglingEdgeReference, "rotation references unknown edge");
            if (edges[e].white == v) {
                wslot[e] = k;
                ++wseen[e];
            } else if (edges[e].black == v) {
                bslot[e] = k;
                ++bseen[e];
            } else {
                throw Error(ErrorCode::RotationMismatch,
                            "edge " + edges[e].id + " listed at non-incident node " + nodes[v].id);
            }
        }
    for (std::size_t e = 0; e < edges.size(); ++e)
        if (wseen[e] != 1 || bseen[e] != 1)
            throw Error(ErrorCode::RotationMismatch, "edge " + edges[e].id + " must appear once at each endpoint");

    std::vector<char> used(darts, 0);
    std::vector<Face> faces;
    for (std::size_t start = 0; start < darts; ++start) {
        if (used[start]) continue;
        Face f;
        f.id = "f" + std::to_string(faces.size());
        Vec2 pos{};
        Dart d = Dart::from_index(start);
        do {
            if (used[d.index()])
                throw Error(ErrorCode::RotationMismatch, "face tracing revisited an edge side inconsistently");
            used[d.index()] = 1;
            f.boundary.push_back(d);
            f.lift.push_back(pos);
            const Edge &e = edges[d.edge];
            pos += d.from_white ? e.offset : -e.offset;
            const std::size_t v = d.from_white ? e.black : e.white;
            const auto &rot = rotations[v];
            const std::size_t k = d.from_white ? bslot[d.edge] : wslot[d.edge];
            const std::size_t next = rot[(k + rot.size() - 1) % rot.size()];
            d = Dart{next, edges[next].white == v};
        } while (d.index() != start);
        faces.push_back(std::move(f));
    }
    return faces;
}

/// Checks every invariant of a dimer model on the torus and traces its faces.
inline DimerModel validate(const RawModel &raw) {
    DimerModel m;
    std::unordered_map<std::string, std::size_t> node_index;
    for (const auto &n : raw.nodes) {
        if (n.id.empty()) throw Error(ErrorCode::ParseError, "node with empty id");
        if (!node_index.emplace(n.id, m.nodes_.size()).second)
            throw Error(ErrorCode::ParseError, "duplicate node id " + n.id);
        m.nodes_.push_back({n.id, n.color});
    }
    if (m.nodes_.empty()) throw Error(ErrorCode::Disconnected, "model has no nodes");

    std::unordered_map<std::string, std::size_t> edge_index;
    std::set<std::tuple<std::size_t, std::size_t, Vec2>> triples;
    for (const auto &e : raw.edges) {
        if (!edge_index.emplace(e.id, m.edges_.size()).second)
            throw Error(ErrorCode::ParseError, "duplicate edge id " + e.id);
        auto w = node_index.find(e.white);
        auto b = node_index.find(e.black);
        if (w == node_index.end() || b == node_index.end())
            throw Error(ErrorCode::DanglingEdgeReference, "edge " + e.id + " references an unknown node");
        if (m.nodes_[w->second].color != Color::White || m.nodes_[b->second].color != Color::Black)
            throw Error(ErrorCode::NonBipartite, "edge " + e.id + " must join a white node to a black node");
        if (!triples.emplace(w->second, b->second, e.offset).second)
            throw Error(ErrorCode::ParseError, "edge " + e.id + " duplicates an existing (white, black, offset)");
        m.edges_.push_back({e.id, w->second, b->second, e.offset});
    }

    m.rotations_.assign(m.nodes_.size(), {});
    for (const auto &[node, list] : raw.rotations) {
        auto it = node_index.find(node);
        if (it == node_index.end())
            throw Error(ErrorCode::DanglingEdgeReference, "rotation given for unknown node " + node);
        for (const auto &eid : list) {
            auto e = edge_index.find(eid);
            if (e == edge_index.end())
                throw Error(ErrorCode::DanglingEdgeReference, "rotation at " + node + " references unknown edge " + eid);
            m.rotations_[it->second].push_back(e->second);
        }
    }
    std::vector<std::size_t> degree(m.nodes_.size(), 0);
    for (const auto &e : m.edges_) {
        ++degree[e.white];
        ++degree[e.black];
    }
    for (std::size_t v = 0; v < m.nodes_.size(); ++v) {
        if (degree[v] == 0) throw Error(ErrorCode::Disconnected, "node " + m.nodes_[v].id + " is isolated");
        if (m.rotations_[v].size() != degree[v])
            throw Error(ErrorCode::RotationMismatch, "rotation at " + m.nodes_[v].id + " lists " +
                                                         std::to_string(m.rotations_[v].size()) + " edges, degree is " +
                                                         std::to_string(degree[v]));
    }

    // connectivity
    {
        std::vector<std::vector<std::size_t>> adj(m.nodes_.size());
        for (const auto &e : m.edges_) {
            adj[e.white].push_back(e.black);
            adj[e.black].push_back(e.white);
        }
        std::vector<char> seen(m.nodes_.size(), 0);
        std::queue<std::size_t> q;
        q.push(0);
        seen[0] = 1;
        std::size_t count = 1;
        while (!q.empty()) {
            const auto v = q.front();
            q.pop();
            for (auto w : adj[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    ++count;
                    q.push(w);
                }
        }
        if (count != m.nodes_.size()) throw Error(ErrorCode::Disconnected, "underlying graph is not connected");
    }

    m.white_slot_.assign(m.edges_.size(), 0);
    m.black_slot_.assign(m.edges_.size(), 0);
    for (std::size_t v = 0; v < m.nodes_.size(); ++v)
        for (std::size_t k = 0; k < m.rotations_[v].size(); ++k) {
            const auto e = m.rotations_[v][k];
            (m.edges_[e].white == v ? m.white_slot_ : m.black_slot_)[e] = k;
        }

    m.faces_ = trace_faces(m.nodes_, m.edges_, m.rotations_);
    if (m.euler_characteristic() != 0)
        throw Error(ErrorCode::EulerCharacteristicNonzero,
                    "|V| - |E| + |F| = " + std::to_string(m.euler_characteristic()) + ", expected 0 on the torus");
    for (const auto &f : m.faces_) {
        Vec2 total{};
        for (Dart d : f.boundary) total += m.displacement(d);
        if (!total.is_zero())
            throw Error(ErrorCode::DegenerateHomology,
                        "face " + f.id + " boundary has nonzero homology " + to_string(total));
    }

    m.face_of_dart_.assign(m.dart_count(), 0);
    m.pos_in_face_.assign(m.dart_count(), 0);
    for (std::size_t f = 0; f < m.faces_.size(); ++f)
        for (std::size_t k = 0; k < m.faces_[f].boundary.size(); ++k) {
            m.face_of_dart_[m.faces_[f].boundary[k].index()] = f;
            m.pos_in_face_[m.faces_[f].boundary[k].index()] = k;
        }

    // The offsets must identify H_1 of the surface with Z^2.
    {
        std::vector<std::optional<Vec2>> pos(m.nodes_.size());
        std::vector<std::vector<std::size_t>> inc(m.nodes_.size());
        for (std::size_t e = 0; e < m.edges_.size(); ++e) {
            inc[m.edges_[e].white].push_back(e);
            inc[m.edges_[e].black].push_back(e);
        }
        std::vector<Vec2> cycles;
        pos[0] = Vec2{};
        std::queue<std::size_t> q;
        q.push(0);
        while (!q.empty()) {
            const auto v = q.front();
            q.pop();
            for (auto e : inc[v]) {
                const Dart d = m.dart_from(v, e);
                const auto w = m.head(d);
                const Vec2 p = *pos[v] + m.displacement(d);
                if (!pos[w]) {
                    pos[w] = p;
                    q.push(w);
                } else if (*pos[w] != p) {
                    cycles.push_back(p - *pos[w]);
                }
            }
        }
        const Lattice2 span(cycles);
        if (span.rank() != 2 || span.index() != 1)
            throw Error(ErrorCode::DegenerateHomology, "edge offsets do not generate H_1(T) = Z^2");
    }
    return m;
}

/// Homology class of a closed walk given as a sequence of darts.
inline Vec2 homology_class(const DimerModel &m, std::span<const Dart> walk) {
    Vec2 total{};
    for (std::size_t k = 0; k < walk.size(); ++k) {
        const Dart d = walk[k];
        const Dart next = walk[(k + 1) % walk.size()];
        if (m.head(d) != m.tail(next)) throw Error(ErrorCode::NotClosed, "walk is not a closed path");
        total += m.displacement(d);
    }
    return total;
}

/// The same embedding with colors exchanged; dualizes to the opposite quiver.
inline DimerModel swap_colors(const DimerModel &m) {
    RawModel raw = m.to_raw();
    for (auto &n : raw.nodes) n.color = opposite(n.color);
    for (auto &e : raw.edges) {
        std::swap(e.white, e.black);
        e.offset = -e.offset;
    }
    return validate(raw);
}

/// Contracts every bivalent node together with its two neighbors until none
/// is left. The merged node keeps the id of the neighbor reached through the
/// first edge of the bivalent node's rotation; offsets compose additively.
inline DimerModel remove_bivalent(const DimerModel &model) {
    RawModel raw = model.to_raw();
    for (;;) {
        std::map<std::string, std::size_t> nidx;
        for (std::size_t i = 0; i < raw.nodes.size(); ++i) nidx[raw.nodes[i].id] = i;
        std::map<std::string, std::size_t> eidx;
        for (std::size_t i = 0; i < raw.edges.size(); ++i) eidx[raw.edges[i].id] = i;

        auto bivalent = std::find_if(raw.nodes.begin(), raw.nodes.end(),
                                     [&](const RawNode &n) { return raw.rotations.at(n.id).size() == 2; });
        if (bivalent == raw.nodes.end()) break;
        const RawNode v = *bivalent;
        const auto &vrot = raw.rotations.at(v.id);
        const RawEdge e1 = raw.edges[eidx.at(vrot[0])];
        const RawEdge e2 = raw.edges[eidx.at(vrot[1])];
        const bool v_white = v.color == Color::White;
        const std::string keep = v_white ? e1.black : e1.white;
        const std::string gone = v_white ? e2.black : e2.white;
        if (keep == gone)
            throw Error(ErrorCode::DegenerateCollapse, "bivalent node " + v.id + " has a single neighbor " + keep);

        // lifted(gone) = lifted(keep) + shift
        const Vec2 shift = v_white ? e2.offset - e1.offset : e1.offset - e2.offset;
        const bool keep_white = !v_white;

        // splice rotations: keep's list with e1 replaced by gone's list after e2
        const auto &grot = raw.rotations.at(gone);
        std::vector<std::string> tail_part;
        {
            const auto at = std::find(grot.begin(), grot.end(), e2.id) - grot.begin();
            for (std::size_t k = 1; k < grot.size(); ++k) tail_part.push_back(grot[(at + k) % grot.size()]);
        }
        std::vector<std::string> merged;
        for (const auto &eid : raw.rotations.at(keep)) {
            if (eid == e1.id)
                merged.insert(merged.end(), tail_part.begin(), tail_part.end());
            else
                merged.push_back(eid);
        }

        for (auto &e : raw.edges) {
            std::string &end = keep_white ? e.white : e.black;
            if (end != gone || e.id == e2.id) continue;
            end = keep;
            // white end moved by -shift  => offset grows by shift; black end the reverse
            e.offset = keep_white ? e.offset + shift : e.offset - shift;
        }
        std::erase_if(raw.edges, [&](const RawEdge &e) { return e.id == e1.id || e.id == e2.id; });
        std::erase_if(raw.nodes, [&](const RawNode &n) { return n.id == v.id || n.id == gone; });
        raw.rotations.erase(v.id);
        raw.rotations.erase(gone);
        raw.rotations[keep] = std::move(merged);

        std::set<std::tuple<std::string, std::string, Vec2>> seen;
        for (const auto &e : raw.edges)
            if (!seen.emplace(e.white, e.black, e.offset).second)
                throw Error(ErrorCode::DegenerateCollapse, "contraction at " + v.id + " creates a duplicate edge " + e.id);
    }
    return validate(raw);
}

/// True when both models have the same nodes, edges and cyclic rotations and
/// their offsets agree up to re-choosing node representatives.
inline bool same_embedding(const DimerModel &a, const DimerModel &b) {
    if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) return false;
    std::vector<std::size_t> nmap(a.node_count());
    for (std::size_t v = 0; v < a.node_count(); ++v) {
        auto w = b.find_node(a.nodes()[v].id);
        if (!w || b.nodes()[*w].color != a.nodes()[v].color) return false;
        nmap[v] = *w;
    }
    std::vector<std::size_t> emap(a.edge_count());
    for (std::size_t e = 0; e < a.edge_count(); ++e) {
        auto f = b.find_edge(a.edges()[e].id);
        if (!f) return false;
        if (nmap[a.edges()[e].white] != b.edges()[*f].white || nmap[a.edges()[e].black] != b.edges()[*f].black)
            return false;
        emap[e] = *f;
    }
    for (std::size_t v = 0; v < a.node_count(); ++v) {
        const auto &ra = a.rotation(v);
        const auto &rb = b.rotation(nmap[v]);
        if (ra.size() != rb.size()) return false;
        const auto start = std::find(rb.begin(), rb.end(), emap[ra[0]]) - rb.begin();
        for (std::size_t k = 0; k < ra.size(); ++k)
            if (emap[ra[k]] != rb[(start + k) % rb.size()]) return false;
    }
    // gauge: offset_b(e) = offset_a(e) + g(black) - g(white)
    std::vector<std::optional<Vec2>> gauge(a.node_count());
    gauge[0] = Vec2{};
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t e = 0; e < a.edge_count(); ++e) {
            const auto &ea = a.edges()[e];
            const Vec2 diff = b.edges()[emap[e]].offset - ea.offset;
            auto &gw = gauge[ea.white];
            auto &gb = gauge[ea.black];
            if (gw && !gb) {
                gb = *gw + diff;
                changed = true;
            } else if (gb && !gw) {
                gw = *gb - diff;
                changed = true;
            } else if (gw && gb && *gb - *gw != diff) {
                return false;
            }
        }
    }
    return true;
}

} // namespace dimer
