#pragma once

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <string>

namespace dimer {

/// Integer point / vector in Z^2. Used for homology classes on the torus,
/// lattice-polygon vertices and sublattice bases.
struct Vec2 {
    std::int64_t x = 0;
    std::int64_t y = 0;

    constexpr Vec2 &operator+=(Vec2 o) {
        x += o.x;
        y += o.y;
        return *this;
    }
    constexpr Vec2 &operator-=(Vec2 o) {
        x -= o.x;
        y -= o.y;
        return *this;
    }
    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return a += b; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return a -= b; }
    friend constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
    friend constexpr Vec2 operator*(std::int64_t k, Vec2 a) { return {k * a.x, k * a.y}; }

    // lexicographic: x first, then y
    friend constexpr auto operator<=>(const Vec2 &, const Vec2 &) = default;

    constexpr bool is_zero() const { return x == 0 && y == 0; }

    friend std::ostream &operator<<(std::ostream &os, Vec2 v) {
        return os << '(' << v.x << ',' << v.y << ')';
    }
};

inline std::string to_string(Vec2 v) {
    return "(" + std::to_string(v.x) + "," + std::to_string(v.y) + ")";
}

constexpr std::int64_t cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
constexpr std::int64_t dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

/// Lattice length: gcd of the coordinates (0 for the zero vector).
inline std::int64_t lattice_length(Vec2 v) { return std::gcd(std::abs(v.x), std::abs(v.y)); }

inline Vec2 primitive(Vec2 v) {
    const auto g = lattice_length(v);
    return g == 0 ? v : Vec2{v.x / g, v.y / g};
}

/// Half-plane index used for exact angular sorting: 0 for angles in [0, pi),
/// 1 for [pi, 2pi).
constexpr int half_plane(Vec2 v) { return (v.y > 0 || (v.y == 0 && v.x > 0)) ? 0 : 1; }

/// Strict weak order on nonzero vectors by counterclockwise angle from the
/// positive x-axis. Parallel vectors compare equal.
constexpr bool angle_less(Vec2 a, Vec2 b) {
    const int ha = half_plane(a);
    const int hb = half_plane(b);
    if (ha != hb) return ha < hb;
    return cross(a, b) > 0;
}

constexpr bool same_direction(Vec2 a, Vec2 b) { return cross(a, b) == 0 && dot(a, b) > 0; }

/// Floor division for signed integers.
constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

constexpr std::int64_t floor_mod(std::int64_t a, std::int64_t b) { return a - floor_div(a, b) * b; }

/// Extended gcd: returns g = gcd(a, b) >= 0 and s, t with s*a + t*b = g.
struct Bezout {
    std::int64_t g, s, t;
};

constexpr Bezout ext_gcd(std::int64_t a, std::int64_t b) {
    std::int64_t r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        const std::int64_t q = r0 / r1;
        std::int64_t tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = s0 - q * s1;
        s0 = s1;
        s1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
    }
    if (r0 < 0) return {-r0, -s0, -t0};
    return {r0, s0, t0};
}

} // namespace dimer
