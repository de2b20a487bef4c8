#include "support.hpp"

#include <gtest/gtest.h>

using namespace dimer;
using dimer::testing::fixture;

namespace {

ErrorCode code_of(auto &&fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::ParseError;
}

LatticePolygon big_parallelogram() { return LatticePolygon::hull_of({{3, 0}, {0, 2}, {-2, 0}, {1, -2}}); }

} // namespace

TEST(Hexagonal, CountsAndSteadiness) {
    for (const auto &q : std::vector<QuotientLattice>{{{1, 0}, {0, 1}}, {{2, 0}, {0, 1}}, {{3, 0}, {1, 1}},
                                                      {{2, 0}, {0, 2}}, {{5, 0}, {2, 1}}, {{7, 0}, {2, 1}}}) {
        const auto m = build_hexagonal(q);
        const auto n = static_cast<std::size_t>(q.index());
        EXPECT_EQ(m.face_count(), n);
        EXPECT_EQ(m.node_count(), 2 * n);
        EXPECT_EQ(m.edge_count(), 3 * n);
        for (const auto &f : m.faces()) EXPECT_EQ(f.length(), 6u);
        EXPECT_TRUE(is_consistent(m).ok);
        EXPECT_EQ(classify(m).verdict, Verdict::Steady);
    }
}

TEST(Hexagonal, IndexOneIsHex1) {
    EXPECT_TRUE(find_isomorphism(build_hexagonal({{1, 0}, {0, 1}}), fixture("hex1.json")));
}

TEST(Hexagonal, Index7McKayQuiver) {
    const auto m = build_hexagonal({{7, 0}, {2, 1}});
    const auto q = dualize(m).first;
    EXPECT_EQ(q.vertex_count(), 7u);
    EXPECT_EQ(q.arrow_count(), 21u);
    EXPECT_TRUE(dimer::testing::matches_cyclic_mckay(q, 7, {1, 2, 4}));
    const auto ctx = NccrContext::build(m);
    EXPECT_EQ(ctx.toric.class_group.describe(), "Z/7");
    EXPECT_TRUE(find_isomorphism(m, fixture("hex7_124.json")));
}

TEST(Hexagonal, McKayOracleRejectsOtherWeights) {
    // (1,1,5) is not a relabeling of (1,2,4) mod 7
    const auto q = dualize(build_hexagonal({{7, 0}, {1, 1}})).first;
    EXPECT_FALSE(dimer::testing::matches_cyclic_mckay(q, 7, {1, 2, 4}));
}

TEST(Hexagonal, NegativeDeterminantBasis) {
    const auto m = build_hexagonal({{0, 1}, {2, 0}});
    EXPECT_EQ(m.face_count(), 2u);
    EXPECT_EQ(m.euler_characteristic(), 0);
    EXPECT_TRUE(is_consistent(m).ok);
    EXPECT_TRUE(find_isomorphism(m, build_hexagonal({{2, 0}, {0, 1}})));
}

TEST(Square, TwoByTwoIsTheFixture) {
    EXPECT_TRUE(find_isomorphism(build_square({{2, 0}, {0, 2}}), fixture("square2x2.json")));
}

TEST(Square, BadLattices) {
    EXPECT_EQ(code_of([] { build_square({{2, 0}, {1, 2}}); }), ErrorCode::ParityViolation);
    EXPECT_EQ(code_of([] { build_square({{2, 0}, {4, 0}}); }), ErrorCode::InvalidLattice);
    EXPECT_EQ(code_of([] { build_hexagonal({{1, 1}, {2, 2}}); }), ErrorCode::InvalidLattice);
}

TEST(Square, FacesAreTwiceTheArea) {
    for (const auto &q : std::vector<QuotientLattice>{{{2, 0}, {0, 2}}, {{4, 0}, {0, 2}}, {{2, 0}, {1, 3}},
                                                      {{4, 0}, {1, 1}}, {{1, 1}, {-1, 1}}, {{1, 1}, {1, -1}}}) {
        const auto m = build_square(q);
        EXPECT_EQ(m.face_count(), static_cast<std::size_t>(q.index()));
        for (const auto &f : m.faces()) EXPECT_EQ(f.length(), 4u);
        const auto poly = pm_polygon(m).polygon();
        EXPECT_EQ(static_cast<std::size_t>(poly.twice_area()), m.face_count());
    }
}

TEST(Square, FourByTwoSemiSteady) {
    const auto ctx = NccrContext::build(build_square({{4, 0}, {0, 2}}));
    EXPECT_EQ(ctx.quiver.vertex_count(), 8u);
    const auto c = classify(ctx);
    EXPECT_EQ(c.verdict, Verdict::SemiSteadyNotSteady);
    EXPECT_EQ(c.I.size(), 4u);
    EXPECT_EQ(c.I_star.size(), 4u);
    EXPECT_EQ(ctx.toric.class_group.torsion_order(), 4);
}

TEST(HananyVegh, UnitSquare) {
    const auto r = hanany_vegh_parallelogram(LatticePolygon::hull_of({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
    EXPECT_EQ(r.model.face_count(), 2u);
}

TEST(HananyVegh, DiamondGivesFourFaces) {
    const auto r = hanany_vegh_parallelogram(LatticePolygon::hull_of({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}));
    EXPECT_EQ(r.model.face_count(), 4u);
    EXPECT_TRUE(find_isomorphism(r.model, fixture("square2x2.json")));
}

TEST(HananyVegh, LargeParallelogram) {
    const auto target = big_parallelogram();
    const auto r = hanany_vegh_parallelogram(target);
    EXPECT_EQ(r.model.face_count(), 20u);
    const auto poly = pm_polygon(r.model).polygon();
    EXPECT_TRUE(affine_equivalent(poly, target));
    // the witness really maps the model's polygon onto the target
    EXPECT_EQ(poly.transformed(r.witness.linear, r.witness.shift), target);
}

TEST(HananyVegh, ResultsAreConsistentIsoradialSquares) {
    for (const auto &p : {LatticePolygon::hull_of({{0, 0}, {2, 0}, {2, 1}, {0, 1}}),
                          LatticePolygon::hull_of({{0, 0}, {2, 0}, {3, 1}, {1, 1}}),
                          LatticePolygon::hull_of({{0, 0}, {2, 1}, {3, 3}, {1, 2}}), big_parallelogram()}) {
        const auto r = hanany_vegh_parallelogram(p);
        const auto &m = r.model;
        EXPECT_TRUE(is_consistent(m).ok);
        EXPECT_TRUE(is_isoradial(m).ok);
        for (const auto &f : m.faces()) EXPECT_EQ(f.length(), 4u);
        EXPECT_TRUE(affine_equivalent(pm_polygon(m).polygon(), p));
        EXPECT_EQ(static_cast<std::int64_t>(m.face_count()), p.twice_area());
        EXPECT_GE(r.candidates_tried, 1u);
    }
}

TEST(HananyVegh, RejectsNonParallelograms) {
    EXPECT_EQ(code_of([] { hanany_vegh_parallelogram(LatticePolygon::hull_of({{0, 0}, {1, 0}, {0, 1}})); }),
              ErrorCode::NotParallelogram);
    EXPECT_EQ(code_of([] {
                  hanany_vegh_parallelogram(LatticePolygon::hull_of({{0, 0}, {3, 0}, {1, 1}, {0, 1}}));
              }),
              ErrorCode::NotParallelogram);
}

TEST(Isomorphism, PositiveAndNegative) {
    const auto sq = fixture("square2x2.json");
    const auto iso = find_isomorphism(sq, sq);
    ASSERT_TRUE(iso);
    EXPECT_EQ(std::abs(iso->homology.det()), 1);
    EXPECT_FALSE(find_isomorphism(sq, fixture("ex52_nonregular.json")));
    EXPECT_FALSE(find_isomorphism(sq, build_square({{4, 0}, {1, 1}})));
    EXPECT_FALSE(find_isomorphism(fixture("hex1.json"), sq));
    // relabeling by a JSON round trip keeps the model
    EXPECT_TRUE(find_isomorphism(sq, parse_model(to_json(sq).dump())));
}

TEST(Isomorphism, ColorSwapOfHexagonalStaysSteady) {
    const auto a = build_hexagonal({{3, 0}, {1, 1}});
    const auto sw = swap_colors(a);
    EXPECT_EQ(sw.face_count(), a.face_count());
    EXPECT_TRUE(is_consistent(sw).ok);
    EXPECT_EQ(classify(sw).verdict, Verdict::Steady);
}
