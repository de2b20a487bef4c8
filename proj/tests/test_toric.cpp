#include "support.hpp"

#include <gtest/gtest.h>

using namespace dimer;
using dimer::testing::ints;

namespace {

ToricData square() { return ToricData::from_vertex_cycle({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}); }
ToricData quad_z() { return ToricData::from_vertex_cycle({{0, 1}, {-1, 0}, {0, -1}, {1, -1}}); }
ToricData triangle() { return ToricData::from_vertex_cycle({{0, 0}, {1, 0}, {0, 1}}); }

// u ~ u' iff u - u' = lambda(y) for an integer y; solve exactly on three
// independent rows by Cramer's rule, then check the rest
bool isomorphic_by_cramer(const ToricData &td, const std::vector<Integer> &u, const std::vector<Integer> &u2) {
    const auto &r = td.rays;
    auto det3 = [](const std::array<Integer, 3> &a, const std::array<Integer, 3> &b, const std::array<Integer, 3> &c) {
        return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0]);
    };
    auto row = [&](std::size_t i) { return std::array<Integer, 3>{r[i][0], r[i][1], r[i][2]}; };
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = i + 1; j < r.size(); ++j)
            for (std::size_t k = j + 1; k < r.size(); ++k) {
                const auto a = row(i), b = row(j), c = row(k);
                const Integer d = det3(a, b, c);
                if (d == 0) continue;
                const Integer di = u[i] - u2[i], dj = u[j] - u2[j], dk = u[k] - u2[k];
                std::vector<Integer> y(3);
                for (int col = 0; col < 3; ++col) {
                    auto a2 = a, b2 = b, c2 = c;
                    a2[col] = di;
                    b2[col] = dj;
                    c2[col] = dk;
                    const Integer num = det3(a2, b2, c2);
                    if (num % d != 0) return false;
                    y[col] = num / d;
                }
                const auto img = td.lambda_of(y);
                for (std::size_t t = 0; t < u.size(); ++t)
                    if (u[t] - u2[t] != img[t]) return false;
                return true;
            }
    return false;
}

} // namespace

TEST(Toric, SquareRaysAndClassGroup) {
    const auto td = square();
    EXPECT_EQ(td.rays, (std::vector<std::array<std::int64_t, 3>>{{1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1}}));
    EXPECT_EQ(td.class_group.free_rank, 1u);
    EXPECT_EQ(td.class_group.torsion, ints({2}));
    EXPECT_TRUE(td.is_gorenstein());
}

TEST(Toric, QuadrilateralClassGroupIsZ) {
    const auto td = quad_z();
    EXPECT_EQ(td.class_group.describe(), "Z");
    EXPECT_TRUE(td.is_gorenstein());
}

TEST(Toric, UnitTriangleTrivial) {
    const auto td = triangle();
    EXPECT_TRUE(td.class_group.is_trivial());
    EXPECT_TRUE(td.is_gorenstein());
}

TEST(Toric, FreeRankIsRaysMinusThree) {
    for (const auto &poly : {LatticePolygon::hull_of({{0, 0}, {2, 0}, {0, 1}}),
                             LatticePolygon::hull_of({{0, 0}, {1, 0}, {2, 1}, {1, 2}, {0, 1}}),
                             LatticePolygon::hull_of({{0, 0}, {1, 0}, {2, 1}, {2, 2}, {1, 2}, {0, 1}})}) {
        const auto td = ToricData::from_polygon(poly);
        EXPECT_EQ(td.class_group.free_rank, td.ray_count() - 3);
        // witness y = (0, 0, 1)
        ASSERT_TRUE(td.gorenstein_witness);
        EXPECT_EQ(td.lambda_of(*td.gorenstein_witness), std::vector<Integer>(td.ray_count(), 1));
    }
}

TEST(Toric, ClockwiseCycleIsRejected) {
    EXPECT_THROW(ToricData::from_vertex_cycle({{0, -1}, {-1, 0}, {0, 1}, {1, 0}}), Error);
    EXPECT_THROW(ToricData::from_vertex_cycle({{0, 0}, {1, 0}}), Error);
}

TEST(ClassOf, IdentityAndImageOfLambda) {
    const auto td = square();
    EXPECT_EQ(td.class_of({0, 0, 0, 0}), td.identity());
    EXPECT_EQ(td.class_of({1, 0, -1, 0}), td.identity());
    EXPECT_TRUE(td.is_isomorphic(ints({1, 0, -1, 0}), ints({0, 0, 0, 0})));
    EXPECT_FALSE(td.is_isomorphic(ints({0, 1, 0, 0}), ints({0, 0, 0, 0})));
    const auto u = ints({3, -1, 2, 5});
    EXPECT_TRUE(td.is_isomorphic(u, u));
}

TEST(ClassOf, SquareSummandsAreDistinct) {
    const auto td = square();
    const std::vector<DivClass> cs{td.identity(), td.class_of({0, 1, 0, 0}), td.class_of({1, 1, 0, 0}),
                                   td.class_of({-1, 0, 0, 0})};
    EXPECT_EQ(class_set(cs).size(), 4u);
}

TEST(ClassOf, AgreesWithExactSolve) {
    std::mt19937 rng(9);
    std::uniform_int_distribution<int> d(-3, 3);
    for (const auto &td : {square(), quad_z(), triangle()}) {
        for (int t = 0; t < 150; ++t) {
            std::vector<Integer> u(td.ray_count()), u2(td.ray_count());
            for (auto &x : u) x = d(rng);
            // half the time build u2 as a lambda translate of u
            if (t % 2 == 0) {
                const auto img = td.lambda_of(ints({d(rng), d(rng), d(rng)}));
                for (std::size_t i = 0; i < u.size(); ++i) u2[i] = u[i] + img[i];
            } else {
                for (auto &x : u2) x = d(rng);
            }
            const bool same = td.class_of(u) == td.class_of(u2);
            EXPECT_EQ(same, isomorphic_by_cramer(td, u, u2));
            EXPECT_EQ(same, td.is_isomorphic(u, u2));
        }
    }
}

TEST(ClassOf, WrongLengthThrows) {
    try {
        square().is_isomorphic(ints({1, 2}), ints({1, 2}));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
    }
}

TEST(DualClass, Involution) {
    const auto td = square();
    EXPECT_EQ(td.dual_class(td.identity()), td.identity());
    const auto c = td.class_of({0, 1, 0, 0});
    EXPECT_EQ(td.dual_class(td.dual_class(c)), c);
    const auto q = quad_z();
    const auto g = q.class_of({1, 0, 0, 0});
    const auto gd = q.dual_class(g);
    EXPECT_EQ(gd, q.class_of({-1, 0, 0, 0}));
    ASSERT_EQ(g.coords.size(), 1u);
    EXPECT_EQ(gd.coords[0], -g.coords[0]);
}

TEST(HomClass, Basics) {
    const auto td = square();
    const auto c = td.class_of({1, 1, 0, 0});
    EXPECT_EQ(td.hom_class(c, c), td.identity());
    EXPECT_EQ(td.hom_class(td.identity(), c), c);
}

TEST(HomClass, ShiftedMultiplesOfAGenerator) {
    const auto td = quad_z();
    std::vector<DivClass> cs;
    for (long long k = 0; k < 4; ++k) cs.push_back(td.class_of({k, 0, 0, 0}));
    const auto g = cs[1];
    ASSERT_TRUE(abs(g.coords[0]) == 1);
    // Hom(T_g, T_{kg}) = T_{(k-1)g}
    for (long long k = 0; k < 4; ++k) EXPECT_EQ(td.hom_class(g, cs[k]), td.class_of({k - 1, 0, 0, 0}));
}
