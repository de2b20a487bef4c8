#pragma once

#include "dimer/errors.hpp"
#include "dimer/lattice.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dimer {

/// Class of a divisorial ideal T(u) in Cl(R): a representative u and its
/// canonical coordinates.
struct DivClass {
    std::vector<Integer> rep;
    std::vector<Integer> coords;

    friend bool operator==(const DivClass &a, const DivClass &b) { return a.coords == b.coords; }
    friend bool operator<(const DivClass &a, const DivClass &b) { return a.coords < b.coords; }
};

inline std::string to_string(std::span<const Integer> v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
    return s + ")";
}

/// Cone over a lattice polygon at height one, its lambda map and class group.
struct ToricData {
    std::vector<Vec2> vertices;              // counterclockwise cyclic order
    std::vector<std::array<std::int64_t, 3>> rays;
    IntMatrix lambda;                         // rows are the rays
    AbelianGroup class_group;
    std::optional<std::vector<Integer>> gorenstein_witness;

    std::size_t ray_count() const { return rays.size(); }

    /// Rays in the given cyclic order, which must be the counterclockwise
    /// vertex cycle of a convex lattice polygon (any starting vertex).
    static ToricData from_vertex_cycle(std::vector<Vec2> cycle) {
        if (cycle.size() < 3) throw Error(ErrorCode::DegeneratePolygon, "need at least three vertices");
        const std::size_t n = cycle.size();
        for (std::size_t k = 0; k < n; ++k) {
            const Vec2 a = cycle[(k + 1) % n] - cycle[k];
            const Vec2 b = cycle[(k + 2) % n] - cycle[(k + 1) % n];
            if (cross(a, b) <= 0)
                throw Error(ErrorCode::DegeneratePolygon, "vertices are not a strictly convex counterclockwise cycle");
        }
        ToricData td;
        td.vertices = std::move(cycle);
        td.lambda = IntMatrix(n, 3);
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2 v = td.vertices[i];
            td.rays.push_back({v.x, v.y, 1});
            td.lambda(i, 0) = v.x;
            td.lambda(i, 1) = v.y;
            td.lambda(i, 2) = 1;
        }
        td.class_group = cokernel(td.lambda);
        const std::vector<Integer> ones(n, Integer(1));
        td.gorenstein_witness = solve_integer(td.lambda, ones);
        return td;
    }

    static ToricData from_polygon(const LatticePolygon &p) { return from_vertex_cycle(p.vertices()); }

    DivClass class_of(std::span<const Integer> u) const {
        return {std::vector<Integer>(u.begin(), u.end()), class_group.canonical(u)};
    }

    DivClass class_of(std::initializer_list<long long> u) const {
        std::vector<Integer> v(u.begin(), u.end());
        return class_of(v);
    }

    DivClass identity() const { return class_of(std::vector<Integer>(rays.size())); }

    /// u - u' lies in the image of lambda.
    bool is_isomorphic(std::span<const Integer> u, std::span<const Integer> u2) const {
        if (u.size() != rays.size() || u2.size() != rays.size())
            throw Error(ErrorCode::DimensionMismatch, "expected vectors of length " + std::to_string(rays.size()));
        std::vector<Integer> d(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) d[i] = u[i] - u2[i];
        return solve_integer(lambda, d).has_value();
    }

    /// lambda(y) as a vector in Z^n.
    std::vector<Integer> lambda_of(std::span<const Integer> y) const { return lambda.apply(y); }

    DivClass dual_class(const DivClass &c) const {
        std::vector<Integer> u = c.rep;
        for (auto &x : u) x = -x;
        return class_of(u);
    }

    /// Class of Hom_R(T1, T2), i.e. c2 - c1.
    DivClass hom_class(const DivClass &c1, const DivClass &c2) const {
        std::vector<Integer> u(rays.size());
        for (std::size_t i = 0; i < u.size(); ++i) u[i] = c2.rep[i] - c1.rep[i];
        return class_of(u);
    }

    bool is_gorenstein() const { return gorenstein_witness.has_value(); }
};

} // namespace dimer
