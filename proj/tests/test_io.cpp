#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "moebius/moebius.hpp"
#include "support.hpp"

using namespace moebius;
using Catch::Approx;

TEST_CASE("off roundtrip") {
    Rng rng(61);
    const TangentPolytope poly = generate_test_polytope(PlatonicKind::Dodecahedron, 3, 1.2);
    std::ostringstream out;
    write_off(out, poly.vertices, poly.faces);

    std::istringstream in(out.str());
    const OffData data = read_off(in);
    REQUIRE(data.vertices.size() == poly.vertices.size());
    REQUIRE(data.faces == poly.faces);
    for (std::size_t i = 0; i < data.vertices.size(); ++i)
        REQUIRE(data.vertices[i] == poly.vertices[i]);  // 17 digits reproduce doubles
}

TEST_CASE("off reader tolerates comments and blank lines") {
    const std::string text = R"(# a comment
OFF
# counts
8 6 12

0.5 0.5 0.5
0.5 0.5 -0.5  # inline comment
0.5 -0.5 0.5
0.5 -0.5 -0.5
-0.5 0.5 0.5
-0.5 0.5 -0.5
-0.5 -0.5 0.5
-0.5 -0.5 -0.5
4 0 1 3 2
4 4 6 7 5
4 0 4 5 1
4 2 3 7 6
4 0 2 6 4
4 1 5 7 3
)";
    std::istringstream in(text);
    const OffData data = read_off(in);
    REQUIRE(data.vertices.size() == 8);
    REQUIRE(data.faces.size() == 6);
    REQUIRE(data.vertices[1] == Eigen::Vector3d(0.5, 0.5, -0.5));
}

TEST_CASE("off reader rejects malformed input") {
    SECTION("missing header") {
        std::istringstream in("8 6 12\n");
        REQUIRE_THROWS_AS(read_off(in), ParseError);
    }
    SECTION("truncated vertex list") {
        std::istringstream in("OFF\n4 1 0\n0 0 1\n0 1 0\n");
        REQUIRE_THROWS_AS(read_off(in), ParseError);
    }
    SECTION("face index out of range") {
        std::istringstream in("OFF\n3 1 3\n0 0 1\n0 1 0\n1 0 0\n3 0 1 9\n");
        REQUIRE_THROWS_AS(read_off(in), ParseError);
    }
    SECTION("face shorter than its count") {
        std::istringstream in("OFF\n3 1 3\n0 0 1\n0 1 0\n1 0 0\n4 0 1 2\n");
        REQUIRE_THROWS_AS(read_off(in), ParseError);
    }
}

TEST_CASE("point set json") {
    SECTION("roundtrip") {
        Rng rng(62);
        std::vector<SpherePoint> pts;
        for (int i = 0; i < 5; ++i) pts.push_back(random_sphere_point(rng, 2));
        std::ostringstream out;
        write_point_set(out, 2, pts);

        std::istringstream in(out.str());
        const PointSetFile ps = read_point_set(in);
        REQUIRE(ps.dim == 2);
        REQUIRE(ps.points.size() == 5);
        for (int i = 0; i < 5; ++i) REQUIRE(ps.points[i] == pts[i].coords());
    }
    SECTION("schema violations raise ParseError") {
        auto parse = [](const std::string& text) {
            std::istringstream in(text);
            return read_point_set(in);
        };
        REQUIRE_THROWS_AS(parse("not json"), ParseError);
        REQUIRE_THROWS_AS(parse("{\"points\": []}"), ParseError);
        REQUIRE_THROWS_AS(parse("{\"dim\": 2, \"points\": [[1, 0]]}"), ParseError);
        REQUIRE_THROWS_AS(parse("{\"dim\": 0, \"points\": []}"), ParseError);
        REQUIRE_THROWS_AS(parse("{\"dim\": 1, \"points\": [[1, \"x\"]]}"), ParseError);
    }
    SECTION("unit check and renormalization") {
        PointSetFile ps;
        ps.dim = 1;
        Eigen::VectorXd offish(2);
        offish << 1.0 + 1e-6, 0.0;
        ps.points = {offish, Eigen::Vector2d(0, 1), Eigen::Vector2d(-1, 0)};
        REQUIRE_THROWS_AS(to_configuration(ps, false), DegenerateInput);
        const PointConfiguration cfg = to_configuration(ps, true);
        REQUIRE(cfg.points()[0].coords().norm() == Approx(1.0).margin(1e-15));
    }
    SECTION("near-unit rows are snapped onto the sphere even without the flag") {
        PointSetFile ps;
        ps.dim = 1;
        Eigen::VectorXd offish(2);
        offish << 1.0 + 1e-10, 0.0;
        ps.points = {offish, Eigen::Vector2d(0, 1), Eigen::Vector2d(-1, 0)};
        const PointConfiguration cfg = to_configuration(ps, false);
        REQUIRE(cfg.points()[0].coords().norm() == 1.0);
    }
}
