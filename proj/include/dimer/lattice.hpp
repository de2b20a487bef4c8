#pragma once

#include "dimer/errors.hpp"
#include "dimer/vec2.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace dimer {

using Integer = boost::multiprecision::cpp_int;

/// Dense row-major matrix over arbitrary-precision integers.
class IntMatrix {
  public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto &r : rows) {
            if (r.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "ragged matrix literal");
            for (long long v : r) data_.emplace_back(v);
        }
    }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Integer &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Integer &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    std::vector<Integer> apply(std::span<const Integer> v) const {
        if (v.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "matrix-vector size mismatch");
        std::vector<Integer> out(rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * v[c];
        return out;
    }

    friend IntMatrix operator*(const IntMatrix &a, const IntMatrix &b) {
        if (a.cols_ != b.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product size mismatch");
        IntMatrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k) == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
            }
        return out;
    }

    friend bool operator==(const IntMatrix &, const IntMatrix &) = default;

    void swap_rows(std::size_t a, std::size_t b) {
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
    }
    // row[dst] += k * row[src]
    void add_row(std::size_t dst, std::size_t src, const Integer &k) {
        for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += k * (*this)(src, c);
    }
    void add_col(std::size_t dst, std::size_t src, const Integer &k) {
        for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += k * (*this)(r, src);
    }
    void negate_row(std::size_t r) {
        for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
    }

    friend std::ostream &operator<<(std::ostream &os, const IntMatrix &m) {
        os << '[';
        for (std::size_t r = 0; r < m.rows_; ++r) {
            os << (r ? "; " : "");
            for (std::size_t c = 0; c < m.cols_; ++c) os << (c ? " " : "") << m(r, c);
        }
        return os << ']';
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

/// Fraction-free (Bareiss) determinant of a square matrix.
inline Integer determinant(IntMatrix m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
    if (n == 0) return 1;
    Integer sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

/// Result of a Smith normal form computation: `left * A * right == diagonal`.
struct SmithForm {
    IntMatrix left;
    IntMatrix diagonal;
    IntMatrix right;
    std::size_t rank = 0;

    /// Diagonal entries d_0 | d_1 | ... | d_{rank-1}, all positive.
    std::vector<Integer> invariant_factors() const {
        std::vector<Integer> out;
        for (std::size_t i = 0; i < rank; ++i) out.push_back(diagonal(i, i));
        return out;
    }
};

namespace detail {

inline Integer abs_int(const Integer &v) { return v < 0 ? Integer(-v) : v; }

// Smallest nonzero |entry| in the trailing block starting at (t, t).
inline std::optional<std::pair<std::size_t, std::size_t>> min_pivot(const IntMatrix &d, std::size_t t) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Integer best_abs;
    for (std::size_t r = t; r < d.rows(); ++r)
        for (std::size_t c = t; c < d.cols(); ++c) {
            if (d(r, c) == 0) continue;
            Integer a = abs_int(d(r, c));
            if (!best || a < best_abs) {
                best = {r, c};
                best_abs = a;
            }
        }
    return best;
}

} // namespace detail

/// Smith normal form by repeated least-absolute-value pivoting.
inline SmithForm snf(const IntMatrix &a) {
    SmithForm out{IntMatrix::identity(a.rows()), a, IntMatrix::identity(a.cols()), 0};
    IntMatrix &d = out.diagonal;
    IntMatrix &u = out.left;
    IntMatrix &v = out.right;
    const std::size_t limit = std::min(a.rows(), a.cols());

    for (std::size_t t = 0; t < limit; ++t) {
        const auto first = detail::min_pivot(d, t);
        if (!first) break;
        std::pair<std::size_t, std::size_t> pivot = *first;
        for (;;) {
            const auto [pr, pc] = pivot;
            if (pr != t) {
                d.swap_rows(pr, t);
                u.swap_rows(pr, t);
            }
            if (pc != t) {
                d.swap_cols(pc, t);
                v.swap_cols(pc, t);
            }
            bool residue = false;
            for (std::size_t r = t + 1; r < d.rows(); ++r) {
                if (d(r, t) == 0) continue;
                const Integer q = d(r, t) / d(t, t);
                d.add_row(r, t, -q);
                u.add_row(r, t, -q);
                residue = residue || d(r, t) != 0;
            }
            for (std::size_t c = t + 1; c < d.cols(); ++c) {
                if (d(t, c) == 0) continue;
                const Integer q = d(t, c) / d(t, t);
                d.add_col(c, t, -q);
                v.add_col(c, t, -q);
                residue = residue || d(t, c) != 0;
            }
            if (residue) {
                pivot = *detail::min_pivot(d, t);
                continue;
            }
            // Row and column t are clear; enforce d_t | every trailing entry.
            std::optional<std::size_t> offending;
            for (std::size_t r = t + 1; r < d.rows() && !offending; ++r)
                for (std::size_t c = t + 1; c < d.cols(); ++c)
                    if (d(r, c) % d(t, t) != 0) {
                        offending = r;
                        break;
                    }
            if (!offending) break;
            d.add_row(t, *offending, 1);
            u.add_row(t, *offending, 1);
            pivot = std::pair{t, t};
        }
        if (d(t, t) < 0) {
            d.negate_row(t);
            u.negate_row(t);
        }
        out.rank = t + 1;
    }
    return out;
}

/// Finitely generated abelian group Z^free_rank x Z/d_1 x ... x Z/d_k together
/// with a projection from the ambient Z^n onto canonical coordinates.
struct AbelianGroup {
    std::size_t ambient_rank = 0;
    std::size_t free_rank = 0;
    std::vector<Integer> torsion;
    // One row per free coordinate followed by one row per torsion factor.
    IntMatrix projection;

    std::size_t coordinate_count() const { return free_rank + torsion.size(); }

    Integer torsion_order() const {
        Integer p = 1;
        for (const auto &d : torsion) p *= d;
        return p;
    }

    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }

    /// Canonical coordinates: free parts as integers, torsion parts reduced
    /// into [0, d).
    std::vector<Integer> canonical(std::span<const Integer> u) const {
        if (u.size() != ambient_rank)
            throw Error(ErrorCode::DimensionMismatch, "expected vector of length " + std::to_string(ambient_rank) +
                                                          ", got " + std::to_string(u.size()));
        std::vector<Integer> out = projection.apply(u);
        for (std::size_t i = 0; i < torsion.size(); ++i) {
            Integer &c = out[free_rank + i];
            c %= torsion[i];
            if (c < 0) c += torsion[i];
        }
        return out;
    }

    std::vector<Integer> reduce(std::vector<Integer> coords) const {
        for (std::size_t i = 0; i < torsion.size(); ++i) {
            Integer &c = coords[free_rank + i];
            c %= torsion[i];
            if (c < 0) c += torsion[i];
        }
        return coords;
    }

    /// e.g. "Z + Z/2" or "0".
    std::string describe() const {
        std::ostringstream os;
        bool first = true;
        auto sep = [&] {
            if (!first) os << " + ";
            first = false;
        };
        for (std::size_t i = 0; i < free_rank; ++i) {
            sep();
            os << "Z";
        }
        for (const auto &d : torsion) {
            sep();
            os << "Z/" << d;
        }
        if (first) os << "0";
        return os.str();
    }
};

/// Cokernel of the column map Z^cols -> Z^rows given by `a`.
inline AbelianGroup cokernel(const IntMatrix &a) {
    const SmithForm s = snf(a);
    AbelianGroup g;
    g.ambient_rank = a.rows();
    g.free_rank = a.rows() - s.rank;
    std::vector<std::size_t> torsion_rows;
    for (std::size_t i = 0; i < s.rank; ++i)
        if (s.diagonal(i, i) != 1) {
            torsion_rows.push_back(i);
            g.torsion.push_back(s.diagonal(i, i));
        }
    g.projection = IntMatrix(g.coordinate_count(), a.rows());
    std::size_t row = 0;
    auto copy_row = [&](std::size_t src) {
        for (std::size_t c = 0; c < a.rows(); ++c) g.projection(row, c) = s.left(src, c);
        ++row;
    };
    for (std::size_t i = s.rank; i < a.rows(); ++i) copy_row(i);
    for (std::size_t i : torsion_rows) copy_row(i);
    return g;
}

/// Exact solution of a * x = b over Z, if one exists.
inline std::optional<std::vector<Integer>> solve_integer(const IntMatrix &a, std::span<const Integer> b) {
    const SmithForm s = snf(a);
    const std::vector<Integer> ub = s.left.apply(b);
    std::vector<Integer> z(a.cols());
    for (std::size_t i = 0; i < ub.size(); ++i) {
        if (i < s.rank) {
            if (ub[i] % s.diagonal(i, i) != 0) return std::nullopt;
            z[i] = ub[i] / s.diagonal(i, i);
        } else if (ub[i] != 0) {
            return std::nullopt;
        }
    }
    return s.right.apply(z);
}

// ---------------------------------------------------------------------------
// Sublattices of Z^2

/// Integer 2x2 matrix acting on column vectors.
struct Mat2 {
    std::int64_t a = 1, b = 0, c = 0, d = 1;

    constexpr Vec2 operator*(Vec2 v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
    constexpr Mat2 operator*(const Mat2 &o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    constexpr std::int64_t det() const { return a * d - b * c; }
    friend constexpr bool operator==(const Mat2 &, const Mat2 &) = default;

    friend std::ostream &operator<<(std::ostream &os, const Mat2 &m) {
        return os << "[[" << m.a << ',' << m.b << "],[" << m.c << ',' << m.d << "]]";
    }
};

/// A sublattice of Z^2 of rank 0, 1 or 2 with canonical coset representatives.
class Lattice2 {
  public:
    Lattice2() = default;

    /// Lattice spanned by the given generators.
    explicit Lattice2(std::span<const Vec2> generators) {
        // Row-style Hermite reduction on the generator list.
        std::vector<Vec2> gens;
        for (Vec2 g : generators)
            if (!g.is_zero()) gens.push_back(g);
        // Combine the y-coordinates into a single generator via gcd steps.
        Vec2 top{};
        std::vector<Vec2> flat; // generators with y == 0
        for (Vec2 g : gens) {
            if (g.y == 0) {
                flat.push_back(g);
                continue;
            }
            if (top.y == 0) {
                top = g;
                continue;
            }
            const Bezout bz = ext_gcd(top.y, g.y);
            const Vec2 combined = bz.s * top + bz.t * g;
            // the other unimodular combination kills the y-coordinate
            const Vec2 killed = (g.y / bz.g) * top - (top.y / bz.g) * g;
            top = combined;
            if (!killed.is_zero()) flat.push_back(killed);
        }
        std::int64_t gx = 0;
        for (Vec2 f : flat) gx = std::gcd(gx, std::abs(f.x));
        if (top.y < 0) top = -top;
        if (gx != 0 && top.y != 0) {
            x_step_ = gx;
            row_ = {floor_mod(top.x, gx), top.y};
            rank_ = 2;
        } else if (top.y != 0) {
            rank_ = 1;
            row_ = top;
        } else if (gx != 0) {
            rank_ = 1;
            row_ = {gx, 0};
        } else {
            rank_ = 0;
        }
        if (rank_ == 1) {
            // Canonical sign and a unimodular complement for reduction.
            Vec2 g = primitive(row_);
            if (half_plane(g) == 1) {
                g = -g;
                row_ = -row_;
            }
            dir_ = g;
            multiple_ = lattice_length(row_);
            const Bezout bz = ext_gcd(g.x, g.y);
            // det(g, comp) = g.x*comp.y - g.y*comp.x = 1 with comp = (-t, s)
            comp_ = {-bz.t, bz.s};
        }
    }

    Lattice2(std::initializer_list<Vec2> generators)
        : Lattice2(std::span<const Vec2>(generators.begin(), generators.size())) {}

    int rank() const { return rank_; }

    /// Index in Z^2 (0 when rank < 2).
    std::int64_t index() const { return rank_ == 2 ? x_step_ * row_.y : 0; }

    /// Hermite basis for rank 2: (x_step, 0) and (offset, height).
    std::pair<Vec2, Vec2> hermite_basis() const { return {{x_step_, 0}, row_}; }

    bool contains(Vec2 v) const { return reduce(v).is_zero(); }

    /// Canonical representative of v modulo the lattice.
    Vec2 reduce(Vec2 v) const {
        switch (rank_) {
        case 0: return v;
        case 2: {
            const std::int64_t q = floor_div(v.y, row_.y);
            v -= q * row_;
            v.x = floor_mod(v.x, x_step_);
            return v;
        }
        default: {
            // v = a*dir + b*comp ; reduce a modulo multiple_
            const std::int64_t a = cross(v, comp_);
            const std::int64_t b = cross(dir_, v);
            const std::int64_t ar = floor_mod(a, multiple_);
            return ar * dir_ + b * comp_;
        }
        }
    }

  private:
    int rank_ = 0;
    std::int64_t x_step_ = 0;
    Vec2 row_{};
    Vec2 dir_{};
    Vec2 comp_{};
    std::int64_t multiple_ = 0;
};

/// All sublattices of Z^2 of the given index, each as its Hermite basis
/// (a, 0), (b, d) with a*d == index and 0 <= b < a, in lexicographic (a, b)
/// order.
inline std::vector<std::pair<Vec2, Vec2>> sublattices_of_index(std::int64_t index) {
    std::vector<std::pair<Vec2, Vec2>> out;
    if (index <= 0) return out;
    for (std::int64_t a = 1; a <= index; ++a) {
        if (index % a != 0) continue;
        const std::int64_t d = index / a;
        for (std::int64_t b = 0; b < a; ++b) out.push_back({Vec2{a, 0}, Vec2{b, d}});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Lattice polygons

/// Strictly convex lattice polygon; vertices counterclockwise starting at the
/// lexicographically least vertex.
class LatticePolygon {
  public:
    /// Convex hull of the points. Throws DegeneratePolygon when the hull has
    /// empty interior.
    static LatticePolygon hull_of(std::span<const Vec2> points) {
        auto hull = convex_hull(points);
        if (hull.size() < 3) throw Error(ErrorCode::DegeneratePolygon, "convex hull has empty interior");
        LatticePolygon p;
        p.vertices_ = std::move(hull);
        return p;
    }

    static LatticePolygon hull_of(std::initializer_list<Vec2> points) {
        return hull_of(std::span<const Vec2>(points.begin(), points.size()));
    }

    /// Counterclockwise hull without collinear points, starting at the
    /// lexicographically least point. May have fewer than 3 vertices.
    static std::vector<Vec2> convex_hull(std::span<const Vec2> points) {
        std::vector<Vec2> pts(points.begin(), points.end());
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        if (pts.size() <= 2) return pts;
        std::vector<Vec2> h(2 * pts.size());
        std::size_t k = 0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
            h[k++] = pts[i];
        }
        for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
            while (k >= t && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
            h[k++] = pts[i];
        }
        h.resize(k - 1);
        return h;
    }

    const std::vector<Vec2> &vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }

    /// Side vectors v_{k+1} - v_k in counterclockwise order.
    std::vector<Vec2> sides() const {
        std::vector<Vec2> out;
        for (std::size_t k = 0; k < vertices_.size(); ++k)
            out.push_back(vertices_[(k + 1) % vertices_.size()] - vertices_[k]);
        return out;
    }

    /// Twice the Euclidean area (always a positive integer).
    std::int64_t twice_area() const {
        std::int64_t s = 0;
        for (std::size_t k = 0; k < vertices_.size(); ++k)
            s += cross(vertices_[k], vertices_[(k + 1) % vertices_.size()]);
        return s;
    }

    LatticePolygon translated(Vec2 t) const {
        std::vector<Vec2> pts;
        for (Vec2 v : vertices_) pts.push_back(v + t);
        return hull_of(pts);
    }

    LatticePolygon transformed(const Mat2 &u, Vec2 t = {}) const {
        std::vector<Vec2> pts;
        for (Vec2 v : vertices_) pts.push_back(u * v + t);
        return hull_of(pts);
    }

    friend bool operator==(const LatticePolygon &, const LatticePolygon &) = default;

    friend std::ostream &operator<<(std::ostream &os, const LatticePolygon &p) {
        os << "conv{";
        for (std::size_t k = 0; k < p.vertices_.size(); ++k) os << (k ? "," : "") << p.vertices_[k];
        return os << '}';
    }

  private:
    std::vector<Vec2> vertices_;
};

/// Each side of lattice length k contributes k copies of its primitive
/// direction (counterclockwise orientation). Sorted by angle.
inline std::vector<Vec2> primitive_side_segments(const LatticePolygon &p) {
    std::vector<Vec2> out;
    for (Vec2 s : p.sides()) {
        const auto k = lattice_length(s);
        for (std::int64_t i = 0; i < k; ++i) out.push_back(primitive(s));
    }
    std::stable_sort(out.begin(), out.end(), angle_less);
    return out;
}

/// Polygon whose counterclockwise boundary is the given multiset of side
/// vectors (which must sum to zero), placed with its least vertex at `anchor`.
inline LatticePolygon polygon_from_sides(std::vector<Vec2> sides, Vec2 anchor = {}) {
    Vec2 total{};
    for (Vec2 s : sides) total += s;
    if (!total.is_zero() || sides.size() < 3)
        throw Error(ErrorCode::DegeneratePolygon, "side vectors do not close up a polygon");
    std::stable_sort(sides.begin(), sides.end(), angle_less);
    std::vector<Vec2> pts;
    Vec2 cur{};
    for (Vec2 s : sides) {
        pts.push_back(cur);
        cur += s;
    }
    auto poly = LatticePolygon::hull_of(pts);
    return poly.translated(anchor - poly.vertices().front());
}

struct AffineMap {
    Mat2 linear;
    Vec2 shift;

    Vec2 operator()(Vec2 v) const { return linear * v + shift; }
};

/// Finds U in GL(2, Z) and t in Z^2 with U * P1 + t == P2, if one exists.
inline std::optional<AffineMap> affine_equivalent(const LatticePolygon &p1, const LatticePolygon &p2) {
    const auto &a = p1.vertices();
    const auto &b = p2.vertices();
    const std::size_t n = a.size();
    if (n != b.size() || p1.twice_area() != p2.twice_area()) return std::nullopt;
    const Vec2 e0 = a[1] - a[0];
    const Vec2 e1 = a[2] - a[1];
    const std::int64_t det_e = cross(e0, e1);
    for (int reflect = 0; reflect < 2; ++reflect) {
        for (std::size_t r = 0; r < n; ++r) {
            auto at = [&](std::size_t k) {
                return reflect ? b[(r + n - (k % n)) % n] : b[(r + k) % n];
            };
            const Vec2 f0 = at(1) - at(0);
            const Vec2 f1 = at(2) - at(1);
            // U = F * E^{-1},  E^{-1} = adj(E) / det(E)
            const std::int64_t ua = f0.x * e1.y - f1.x * e0.y;
            const std::int64_t ub = -f0.x * e1.x + f1.x * e0.x;
            const std::int64_t uc = f0.y * e1.y - f1.y * e0.y;
            const std::int64_t ud = -f0.y * e1.x + f1.y * e0.x;
            if (ua % det_e || ub % det_e || uc % det_e || ud % det_e) continue;
            const Mat2 u{ua / det_e, ub / det_e, uc / det_e, ud / det_e};
            if (std::abs(u.det()) != 1) continue;
            const Vec2 t = at(0) - u * a[0];
            bool ok = true;
            for (std::size_t k = 0; k < n && ok; ++k) ok = (u * a[k] + t) == at(k);
            if (ok) return AffineMap{u, t};
        }
    }
    return std::nullopt;
}

inline bool is_triangle(const LatticePolygon &p) { return p.size() == 3; }

inline bool is_parallelogram(const LatticePolygon &p) {
    if (p.size() != 4) return false;
    const auto s = p.sides();
    return s[0] == -s[2] && s[1] == -s[3];
}

} // namespace dimer
