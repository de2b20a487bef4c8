#pragma once

#include "dimer/graph.hpp"
#include "dimer/lattice.hpp"
#include "dimer/matchings.hpp"
#include "dimer/zigzag.hpp"

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace dimer {

/// Finite-index sublattice L of Z^2 given by a basis. The torus of the built
/// model is R^2/L, and edge offsets are written in the (u, v) basis.
struct QuotientLattice {
    Vec2 u;
    Vec2 v;

    std::int64_t det() const { return cross(u, v); }
    std::int64_t index() const { return std::abs(det()); }

    /// Coordinates of a lattice vector in the (u, v) basis.
    Vec2 coordinates(Vec2 l) const { return {cross(l, v) / det(), cross(u, l) / det()}; }
};

namespace detail {

struct Quotient {
    QuotientLattice basis;
    Lattice2 lattice;
    std::vector<Vec2> reps;
    std::map<Vec2, std::size_t> index_of;

    explicit Quotient(const QuotientLattice &q) : basis(q), lattice{q.u, q.v} {
        if (q.det() == 0) throw Error(ErrorCode::InvalidLattice, "lattice basis is linearly dependent");
        const auto [row0, row1] = lattice.hermite_basis();
        for (std::int64_t y = 0; y < row1.y; ++y)
            for (std::int64_t x = 0; x < row0.x; ++x) {
                index_of[{x, y}] = reps.size();
                reps.push_back({x, y});
            }
    }

    // representative index and offset (in basis coordinates) of a point
    std::pair<std::size_t, Vec2> locate(Vec2 p) const {
        const Vec2 r = lattice.reduce(p);
        return {index_of.at(r), basis.coordinates(p - r)};
    }
};

inline std::string point_id(char prefix, Vec2 p) {
    return std::string(1, prefix) + std::to_string(p.x) + "_" + std::to_string(p.y);
}

inline void orient(RawModel &raw, const QuotientLattice &q) {
    if (q.det() > 0) return;
    for (auto &[_, rot] : raw.rotations) std::reverse(rot.begin(), rot.end());
}

} // namespace detail

/// Honeycomb quotient. White w_p is joined to b_p, b_{p+(1,0)} and
/// b_{p+(0,1)}, coordinates taken in the triangular lattice of hexagons.
inline DimerModel build_hexagonal(const QuotientLattice &q) {
    const detail::Quotient quo(q);
    RawModel raw;
    for (Vec2 p : quo.reps) {
        raw.nodes.push_back({detail::point_id('w', p), Color::White});
        raw.nodes.push_back({detail::point_id('b', p), Color::Black});
    }
    const std::array<Vec2, 3> steps{Vec2{0, 0}, Vec2{1, 0}, Vec2{0, 1}};
    // edge id by (white rep, step)
    std::map<std::pair<std::size_t, std::size_t>, std::string> ids;
    for (std::size_t i = 0; i < quo.reps.size(); ++i)
        for (std::size_t s = 0; s < 3; ++s) {
            const auto [j, off] = quo.locate(quo.reps[i] + steps[s]);
            const std::string id = "e" + std::to_string(raw.edges.size());
            ids[{i, s}] = id;
            raw.edges.push_back({id, detail::point_id('w', quo.reps[i]), detail::point_id('b', quo.reps[j]), off});
            raw.rotations[detail::point_id('w', quo.reps[i])].push_back(id);
        }
    for (Vec2 p : quo.reps) {
        auto &rot = raw.rotations[detail::point_id('b', p)];
        for (std::size_t s = 0; s < 3; ++s) rot.push_back(ids.at({quo.locate(p - steps[s]).first, s}));
    }
    detail::orient(raw, q);
    return validate(raw);
}

/// Square-grid quotient; L must preserve the checkerboard coloring.
inline DimerModel build_square(const QuotientLattice &q) {
    if (q.det() == 0) throw Error(ErrorCode::InvalidLattice, "lattice basis is linearly dependent");
    if ((q.u.x + q.u.y) % 2 != 0 || (q.v.x + q.v.y) % 2 != 0)
        throw Error(ErrorCode::ParityViolation, "lattice does not preserve the checkerboard coloring");
    const detail::Quotient quo(q);
    auto is_white = [](Vec2 p) { return floor_mod(p.x + p.y, 2) == 1; };
    auto id_of = [&](Vec2 p) { return detail::point_id(is_white(p) ? 'w' : 'b', p); };
    RawModel raw;
    for (Vec2 p : quo.reps) raw.nodes.push_back({id_of(p), is_white(p) ? Color::White : Color::Black});
    const std::array<Vec2, 4> dirs{Vec2{1, 0}, Vec2{0, 1}, Vec2{-1, 0}, Vec2{0, -1}}; // E N W S
    std::map<std::pair<std::size_t, std::size_t>, std::string> ids;
    for (std::size_t i = 0; i < quo.reps.size(); ++i) {
        if (!is_white(quo.reps[i])) continue;
        for (std::size_t d = 0; d < 4; ++d) {
            const auto [j, off] = quo.locate(quo.reps[i] + dirs[d]);
            const std::string id = "e" + std::to_string(raw.edges.size());
            ids[{i, d}] = id;
            raw.edges.push_back({id, id_of(quo.reps[i]), id_of(quo.reps[j]), off});
        }
    }
    for (std::size_t i = 0; i < quo.reps.size(); ++i) {
        auto &rot = raw.rotations[id_of(quo.reps[i])];
        for (std::size_t d = 0; d < 4; ++d) {
            if (is_white(quo.reps[i])) {
                rot.push_back(ids.at({i, d}));
            } else {
                // the white neighbor reaches this node in the opposite direction
                const std::size_t w = quo.locate(quo.reps[i] + dirs[d]).first;
                rot.push_back(ids.at({w, (d + 2) % 4}));
            }
        }
    }
    detail::orient(raw, q);
    return validate(raw);
}

struct HananyVeghResult {
    DimerModel model;
    QuotientLattice lattice;
    AffineMap witness; // maps the model's polygon onto the input
    std::size_t candidates_tried = 0;
};

/// Square dimer model whose perfect matching polygon is the given
/// parallelogram, found among checkerboard-compatible quotients of index
/// 2 * Area in Hermite order and verified.
inline HananyVeghResult hanany_vegh_parallelogram(const LatticePolygon &target) {
    if (!is_parallelogram(target)) throw Error(ErrorCode::NotParallelogram, "input polygon is not a parallelogram");
    const std::int64_t n = target.twice_area();
    HananyVeghResult res;
    for (const auto &[a, b] : sublattices_of_index(n)) {
        if ((a.x + a.y) % 2 != 0 || (b.x + b.y) % 2 != 0) continue;
        ++res.candidates_tried;
        const QuotientLattice q{a, b};
        DimerModel m = build_square(q);
        const auto zs = extract_zigzags(m);
        std::vector<Vec2> slopes;
        for (const auto &z : zs) slopes.push_back(z.slope);
        std::optional<LatticePolygon> guess;
        try {
            guess = polygon_from_sides(slopes);
        } catch (const Error &) {
            continue;
        }
        if (!affine_equivalent(*guess, target)) continue;
        const auto report = lift_report(m);
        if (!is_consistent(m, report) || !is_isoradial(m, report)) continue;
        const auto poly = pm_polygon(m);
        if (poly.degenerate()) continue;
        const auto w = affine_equivalent(poly.polygon(), target);
        if (!w) continue;
        res.model = std::move(m);
        res.lattice = q;
        res.witness = *w;
        return res;
    }
    throw Error(ErrorCode::SearchExhausted, "no square quotient realizes the parallelogram");
}

} // namespace dimer
