#include "support.hpp"

#include "cli_app.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace dimer;
using dimer::testing::fixture;
using dimer::testing::fixture_path;

namespace {

cli::CommandResult run(std::vector<std::string> args, const std::string &stdin_text = {}) {
    std::istringstream in(stdin_text);
    return cli::run(args, in);
}

} // namespace

TEST(Json, RoundTripKeepsTheEmbedding) {
    for (const auto &entry : dimer::testing::corpus()) {
        const auto back = parse_model(to_json(entry.model).dump());
        EXPECT_TRUE(same_embedding(entry.model, back)) << entry.name;
        EXPECT_EQ(to_json(back), to_json(entry.model));
    }
}

TEST(Json, MalformedInput) {
    for (const char *text : {"", "{", "[]", R"({"nodes": []})",
                             R"({"nodes":[{"id":"w","color":"grey"}],"edges":[],"rotations":{}})",
                             R"({"nodes":[{"id":"w","color":"white"}],"edges":[{"id":"e","white":"w","black":"w","offset":[0]}],"rotations":{}})"}) {
        try {
            parse_model(text);
            ADD_FAILURE() << text;
        } catch (const Error &e) {
            EXPECT_TRUE(e.code() == ErrorCode::ParseError || e.code() == ErrorCode::DanglingEdgeReference ||
                        e.code() == ErrorCode::NonBipartite)
                << text;
        }
    }
}

TEST(Json, MissingFile) {
    try {
        load_model(fixture_path("no_such_model.json"));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::ParseError);
    }
}

TEST(Export, DotAndTikzMentionEveryNode) {
    const auto m = fixture("square2x2.json");
    const auto dot = to_dot(m);
    const auto tikz = to_tikz(m);
    for (const auto &n : m.nodes()) {
        EXPECT_NE(dot.find(n.id), std::string::npos);
        EXPECT_NE(tikz.find(n.id), std::string::npos);
    }
    EXPECT_EQ(dot.rfind("graph", 0), 0u);
    EXPECT_EQ(to_dot(m), dot);
}

TEST(Cli, ClassifySquare) {
    const auto r = run({"classify", fixture_path("square2x2.json")});
    EXPECT_EQ(r.exit_code, 0) << r.err;
    EXPECT_NE(r.out.find("verdict: semi-steady (not steady)"), std::string::npos);
    EXPECT_NE(r.out.find("class group: Z + Z/2"), std::string::npos);
    EXPECT_EQ(r.out.find("FAILED"), std::string::npos);
}

TEST(Cli, ClassifyJson) {
    const auto r = run({"--json", "classify", fixture_path("hex7_124.json")});
    ASSERT_EQ(r.exit_code, 0) << r.err;
    const auto j = Json::parse(r.out);
    EXPECT_EQ(j["verdict"], "steady");
    EXPECT_EQ(j["classes"].size(), 7u);
}

TEST(Cli, ClassifyInconsistent) {
    const auto m = dimer::testing::add_chord(build_hexagonal({{2, 0}, {0, 1}}), 0, 1);
    const auto r = run({"classify", "-"}, to_json(m).dump());
    EXPECT_EQ(r.exit_code, 1);
    EXPECT_NE(r.err.find("not consistent"), std::string::npos);
}

TEST(Cli, CheckIsoradial) {
    const auto r = run({"check", "--isoradial", fixture_path("square2x2.json")});
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.out, "isoradial: true\n");
    const auto bad = run({"check", "--isoradial", fixture_path("ex52_nonregular.json")});
    EXPECT_EQ(bad.exit_code, 1);
    EXPECT_EQ(bad.out.rfind("isoradial: false", 0), 0u);
}

TEST(Cli, ValidateGarbage) {
    const auto r = run({"validate", "-"}, "not json at all");
    EXPECT_EQ(r.exit_code, 2);
    EXPECT_FALSE(r.err.empty());
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({}).exit_code, 2);
    EXPECT_EQ(run({"frobnicate"}).exit_code, 2);
    EXPECT_EQ(run({"build", "triangle"}).exit_code, 2);
    EXPECT_EQ(run({"build", "square", "--lattice", "2 0 1 0"}).exit_code, 2);
    EXPECT_EQ(run({"build", "square", "--lattice", "2 0 x 2"}).exit_code, 2);
}

TEST(Cli, BuildThenValidate) {
    const auto built = run({"build", "hex", "--lattice", "7 0 2 1"});
    ASSERT_EQ(built.exit_code, 0) << built.err;
    const auto v = run({"validate", "-"}, built.out);
    EXPECT_EQ(v.exit_code, 0);
    EXPECT_EQ(v.out, "valid: 14 nodes, 21 edges, 7 faces, euler characteristic 0\n");
    EXPECT_TRUE(find_isomorphism(parse_model(built.out), fixture("hex7_124.json")));
}

TEST(Cli, BuildHananyVegh) {
    const auto built = run({"build", "hv", "--polygon", "0,0 1,0 1,1 0,1"});
    ASSERT_EQ(built.exit_code, 0) << built.err;
    EXPECT_EQ(parse_model(built.out).face_count(), 2u);
    EXPECT_EQ(run({"build", "hv", "--polygon", "0,0 1,0 0,1"}).exit_code, 2);
}

TEST(Cli, ExportJsonIsAFixedPoint) {
    const auto a = run({"export", fixture_path("ex52_nonregular.json")});
    ASSERT_EQ(a.exit_code, 0);
    const auto b = run({"export", "-"}, a.out);
    EXPECT_EQ(a.out, b.out);
    EXPECT_TRUE(same_embedding(parse_model(a.out), fixture("ex52_nonregular.json")));
}

TEST(Cli, DeterministicOutput) {
    for (const auto &args : std::vector<std::vector<std::string>>{
             {"pms", "--list", fixture_path("square2x2.json")},
             {"polygon", fixture_path("hex7_124.json")},
             {"zigzags", fixture_path("ex52_nonregular.json")},
             {"quiver", fixture_path("square2x2.json")},
             {"export", "--format", "tikz", fixture_path("square2x2.json")}}) {
        const auto a = run(args), b = run(args);
        EXPECT_EQ(a.exit_code, 0) << a.err;
        EXPECT_EQ(a.out, b.out);
    }
}

TEST(Cli, PmsAndPolygon) {
    const auto pms = run({"--json", "pms", fixture_path("square2x2.json")});
    EXPECT_EQ(Json::parse(pms.out)["count"], 8);
    const auto poly = run({"--json", "polygon", fixture_path("square2x2.json")});
    const auto j = Json::parse(poly.out);
    EXPECT_EQ(j["hull"].size(), 4u);
    EXPECT_EQ(j["extremal"].size(), 4u);
}

TEST(Cli, ClassGroup) {
    const auto r = run({"clgroup", "--polygon", "1,0 0,1 -1,0 0,-1", "--u", "0,1,0,0", "--u", "1,0,-1,0"});
    EXPECT_EQ(r.exit_code, 0) << r.err;
    EXPECT_NE(r.out.find("Cl: Z + Z/2"), std::string::npos);
    const auto m = run({"clgroup", "--matrix", "2 0; 0 3"});
    EXPECT_NE(m.out.find("Cl: Z/6"), std::string::npos);
    EXPECT_EQ(run({"clgroup"}).exit_code, 2);
}
