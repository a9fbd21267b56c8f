#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "coxeterkit/acceptance.hpp"
#include "coxeterkit/lowdim.hpp"

using namespace coxeterkit;

namespace {

constexpr double kPi = std::numbers::pi;

std::string read_data(const std::string& name) {
    std::ifstream in(data_directory() + "/" + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

AngleAssignment all_angles(double a) {
    AngleAssignment s;
    s.default_angle = a;
    return s;
}

// Spherical law of cosines for the link triangle at a vertex.
double oracle_theta(double a1, double a2, double a3) {
    return std::acos((std::cos(a1) + std::cos(a2) * std::cos(a3)) / (std::sin(a2) * std::sin(a3)));
}

// Gram matrix of the four facets, built directly from the pair convention.
Mat oracle_gram(const std::array<double, 6>& a) {
    Mat g = Mat::Identity(4, 4);
    auto put = [&](int i, int j, double x) { g(i, j) = g(j, i) = -std::cos(x); };
    put(0, 1, a[0]);
    put(0, 2, a[1]);
    put(1, 2, a[2]);
    put(2, 3, a[3]);
    put(1, 3, a[4]);
    put(0, 3, a[5]);
    return g;
}

SpaceForm oracle_geometry(const Mat& g) {
    Eigen::SelfAdjointEigenSolver<Mat> es(g);
    double lo = es.eigenvalues()[0], hi = es.eigenvalues().cwiseAbs().maxCoeff();
    if (lo > 1e-9 * hi) return SpaceForm::Spherical;
    if (lo < -1e-9 * hi) return SpaceForm::Hyperbolic;
    return SpaceForm::Euclidean;
}

// Cube with vertex 7 cut off; the three faces around the cut form a prismatic circuit.
PlanarPolyhedronGraph truncated_corner_cube() {
    return PlanarPolyhedronGraph({{0, 1, 3, 2}, {0, 1, 5, 4}, {0, 2, 6, 4}, {1, 3, 7, 8, 5}, {2, 3, 7, 9, 6},
                                  {4, 5, 8, 9, 6}, {7, 8, 9}});
}

} // namespace

TEST(Lowdim, TriangleExamples) {
    EXPECT_EQ(triangle_geometry(kPi / 2, kPi / 2, kPi / 2), SpaceForm::Spherical);
    EXPECT_EQ(triangle_geometry(kPi / 2, kPi / 3, kPi / 6), SpaceForm::Euclidean);
    EXPECT_EQ(triangle_geometry(kPi / 2, kPi / 3, kPi / 7), SpaceForm::Hyperbolic);
    EXPECT_EQ(triangle_geometry(0, 0, 0), SpaceForm::Hyperbolic);
    EXPECT_THROW(triangle_geometry(0, kPi / 2, kPi / 2), Error);
}

TEST(Lowdim, TriangleGridAgreesWithGramSignature) {
    for (int p = 2; p <= 10; ++p)
        for (int q = 2; q <= 10; ++q)
            for (int r = 2; r <= 10; ++r) {
                Mat g = Mat::Identity(3, 3);
                g(0, 1) = g(1, 0) = -std::cos(kPi / p);
                g(1, 2) = g(2, 1) = -std::cos(kPi / q);
                g(0, 2) = g(2, 0) = -std::cos(kPi / r);
                EXPECT_EQ(triangle_geometry(kPi / p, kPi / q, kPi / r), oracle_geometry(g)) << p << q << r;
            }
}

TEST(Lowdim, LinkFaceAngleExamples) {
    auto right = link_face_angles(kPi / 2, kPi / 2, kPi / 2);
    for (double t : right) EXPECT_NEAR(t, kPi / 2, 1e-12);
    auto ideal = link_face_angles(kPi / 3, kPi / 3, kPi / 3);
    for (double t : ideal) EXPECT_NEAR(t, 0, 1e-7);
    auto mixed = link_face_angles(kPi / 2, kPi / 3, kPi / 3);
    EXPECT_NEAR(mixed[0], std::acos(1.0 / 3), 1e-12);
    EXPECT_NEAR(mixed[0], 1.23096, 1e-5);
    EXPECT_THROW(link_face_angles(kPi / 4, kPi / 4, kPi / 4), Error);
}

TEST(Lowdim, FaceAnglesBoundedByDihedralAnglesOnGrid) {
    int checked = 0;
    for (int i = 1; i <= 20; ++i)
        for (int j = 1; j <= 20; ++j)
            for (int k = 1; k <= 20; ++k) {
                double a1 = kPi / 2 * i / 20, a2 = kPi / 2 * j / 20, a3 = kPi / 2 * k / 20;
                if (a1 + a2 + a3 < kPi + 1e-12) continue;
                auto th = link_face_angles(a1, a2, a3);
                EXPECT_LE(th[0], a1 + 1e-12);
                EXPECT_LE(th[1], a2 + 1e-12);
                EXPECT_LE(th[2], a3 + 1e-12);
                EXPECT_NEAR(th[0], oracle_theta(a1, a2, a3), 1e-9);
                EXPECT_NEAR(th[1], oracle_theta(a2, a3, a1), 1e-9);
                EXPECT_NEAR(th[2], oracle_theta(a3, a1, a2), 1e-9);
                ++checked;
            }
    EXPECT_GT(checked, 1000);
}

TEST(Lowdim, TetrahedronExamples) {
    std::array<double, 6> right;
    right.fill(kPi / 2);
    EXPECT_EQ(tetrahedron_geometry(right).geometry, SpaceForm::Spherical);

    std::array<double, 6> third;
    third.fill(kPi / 3);
    TetrahedronResult ideal = tetrahedron_geometry(third);
    EXPECT_EQ(ideal.geometry, SpaceForm::Hyperbolic);
    EXPECT_EQ(ideal.ideal_vertices, (std::vector<int>{1, 2, 3, 4}));
    EXPECT_LT((tetrahedron_gram(third) - oracle_gram(third)).norm(), 1e-15);
}

TEST(Lowdim, AllIdealTetrahedraHaveEqualOppositeAngles) {
    const double choices[] = {kPi / 2, kPi / 3, kPi / 4, kPi / 6};
    int found = 0;
    std::array<double, 6> a;
    for (int code = 0; code < 4096; ++code) {
        for (int e = 0, c = code; e < 6; ++e, c /= 4) a[e] = choices[c % 4];
        // Vertex sums, vertex i opposite facet i.
        double s4 = a[0] + a[1] + a[2], s3 = a[0] + a[4] + a[5], s2 = a[1] + a[3] + a[5], s1 = a[2] + a[3] + a[4];
        auto eq = [](double x) { return std::abs(x - kPi) < 1e-12; };
        if (!(eq(s1) && eq(s2) && eq(s3) && eq(s4))) continue;
        TetrahedronResult r = tetrahedron_geometry(a);
        EXPECT_EQ(r.geometry, SpaceForm::Hyperbolic);
        EXPECT_EQ(r.ideal_vertices.size(), 4u);
        EXPECT_NEAR(a[0], a[3], 1e-12);
        EXPECT_NEAR(a[1], a[4], 1e-12);
        EXPECT_NEAR(a[2], a[5], 1e-12);
        ++found;
    }
    EXPECT_GT(found, 3);
}

TEST(Lowdim, RandomTetrahedraAgreeWithGramSignature) {
    std::mt19937 rng(1234);
    std::uniform_int_distribution<int> m(2, 7);
    int checked = 0, degenerate = 0;
    while (checked < 1000) {
        std::array<double, 6> a;
        for (double& x : a) x = kPi / m(rng);
        const double sums[4] = {a[2] + a[3] + a[4], a[1] + a[3] + a[5], a[0] + a[4] + a[5], a[0] + a[1] + a[2]};
        bool admissible = true;
        for (double s : sums) admissible = admissible && s >= kPi - 1e-12;
        if (!admissible) {
            EXPECT_THROW(tetrahedron_geometry(a), Error);
            continue;
        }
        std::vector<int> ideal;
        for (int v = 0; v < 4; ++v)
            if (std::abs(sums[v] - kPi) < 1e-12) ideal.push_back(v + 1);
        SpaceForm want = oracle_geometry(oracle_gram(a));
        if (!ideal.empty() && want != SpaceForm::Hyperbolic) {
            // A flat vertex link with a degenerate Gram matrix: no tetrahedron exists.
            EXPECT_THROW(tetrahedron_geometry(a), Error);
            ++degenerate;
            continue;
        }
        TetrahedronResult r = tetrahedron_geometry(a);
        EXPECT_EQ(r.geometry, want);
        EXPECT_EQ(r.ideal_vertices, ideal);
        ++checked;
    }
    EXPECT_GT(degenerate, 0);
}

TEST(Lowdim, PrismExamples) {
    std::array<double, 9> a;
    a.fill(kPi / 2);
    EXPECT_EQ(prism_realizable(a).failed_condition, 1);

    std::array<double, 9> b = {kPi / 3, kPi / 3, kPi / 4, kPi / 2, kPi / 2, kPi / 2, kPi / 2, kPi / 2, kPi / 2};
    PrismResult fb = prism_realizable(b);
    EXPECT_FALSE(fb.realizable);
    EXPECT_EQ(fb.failed_condition, 2);

    std::array<double, 9> c = b;
    c[8] = kPi / 3;
    PrismResult fc = prism_realizable(c);
    EXPECT_TRUE(fc.realizable);
    EXPECT_EQ(fc.failed_condition, 0);
}

TEST(Lowdim, PrismRejectsSmallVertexSums) {
    std::array<double, 9> a = {kPi / 3, kPi / 3, kPi / 4, kPi / 4, kPi / 4, kPi / 2, kPi / 2, kPi / 2, kPi / 2};
    EXPECT_THROW(prism_realizable(a), Error);
}

TEST(Lowdim, PolyhedralGraphBasics) {
    auto dodeca = PlanarPolyhedronGraph::from_json(read_data("dodecahedron.json"));
    EXPECT_EQ(dodeca.vertex_count(), 20);
    EXPECT_EQ(dodeca.face_count(), 12);
    EXPECT_EQ(dodeca.edges().size(), 30u);
    for (int v = 0; v < 20; ++v) EXPECT_EQ(dodeca.valence(v), 3);
    EXPECT_GE(dodeca.edge_between(0, 1), 0);
    EXPECT_THROW(PlanarPolyhedronGraph({{0, 1, 2}, {0, 1, 2}, {0, 1, 3}}), Error);

    PlanarPolyhedronGraph tet({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
    EXPECT_TRUE(tet.is_tetrahedron());
    PlanarPolyhedronGraph prism({{0, 1, 2}, {3, 4, 5}, {0, 1, 4, 3}, {1, 2, 5, 4}, {2, 0, 3, 5}});
    EXPECT_TRUE(prism.is_triangular_prism());
}

TEST(Lowdim, AndreevRightAngledDodecahedron) {
    auto p = PlanarPolyhedronGraph::from_json(read_data("dodecahedron.json"));
    AndreevResult r = andreev_check(p, AngleAssignment::from_json(read_data("right_angles.json")));
    EXPECT_TRUE(r.realizable) << r.witness;
}

TEST(Lowdim, AndreevSmallVertexAngles) {
    auto p = PlanarPolyhedronGraph::from_json(read_data("dodecahedron.json"));
    AngleAssignment a = all_angles(kPi / 2);
    const double at_vertex[3] = {kPi / 3, kPi / 3, kPi / 4};
    const auto& edges = p.vertex_edges(0);
    ASSERT_EQ(edges.size(), 3u);
    for (int i = 0; i < 3; ++i) a.set(p.edges()[edges[i]].f, p.edges()[edges[i]].g, at_vertex[i]);
    AndreevResult r = andreev_check(p, a);
    EXPECT_FALSE(r.realizable);
    EXPECT_EQ(r.condition, 1);
    EXPECT_EQ(r.vertices, (std::vector<int>{0}));
}

TEST(Lowdim, AndreevPreconditions) {
    PlanarPolyhedronGraph tet({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
    EXPECT_THROW(andreev_check(tet, all_angles(kPi / 3)), Error);
    PlanarPolyhedronGraph prism({{0, 1, 2}, {3, 4, 5}, {0, 1, 4, 3}, {1, 2, 5, 4}, {2, 0, 3, 5}});
    EXPECT_THROW(andreev_check(prism, all_angles(kPi / 3)), Error);
    auto ico = PlanarPolyhedronGraph::from_json(read_data("icosahedron.json"));
    EXPECT_THROW(andreev_check(ico, all_angles(kPi / 2)), Error);
    auto cube = PlanarPolyhedronGraph::from_json(read_data("cube.json"));
    EXPECT_THROW(andreev_check(cube, all_angles(kPi)), Error);
}

TEST(Lowdim, AndreevCubeFailsTheFourCircuitCondition) {
    auto cube = PlanarPolyhedronGraph::from_json(read_data("cube.json"));
    AndreevResult r = andreev_check(cube, all_angles(kPi / 2));
    EXPECT_FALSE(r.realizable);
    EXPECT_EQ(r.condition, 4);
    EXPECT_EQ(r.faces.size(), 4u);
}

TEST(Lowdim, AndreevPrismaticTriangle) {
    AndreevResult r = andreev_check(truncated_corner_cube(), all_angles(kPi / 2));
    EXPECT_FALSE(r.realizable);
    EXPECT_EQ(r.condition, 3);
    EXPECT_EQ(r.faces, (std::vector<int>{3, 4, 5}));
}

TEST(Lowdim, AndreevFourValentVertices) {
    auto oct = PlanarPolyhedronGraph::from_json(read_data("octahedron.json"));
    EXPECT_TRUE(andreev_check(oct, all_angles(kPi / 2)).realizable);
    AngleAssignment bent = all_angles(kPi / 2);
    const auto& e = oct.edges()[0];
    bent.set(e.f, e.g, kPi / 3);
    AndreevResult r = andreev_check(oct, bent);
    EXPECT_FALSE(r.realizable);
    EXPECT_EQ(r.condition, 2);
}

TEST(Lowdim, AngleAssignmentJson) {
    AngleAssignment a = AngleAssignment::from_json(R"({"default_pi_over": 2, "angles": [{"faces": [0, 1], "pi_over": 3}]})");
    EXPECT_NEAR(a.at(1, 0), kPi / 3, 1e-15);
    EXPECT_NEAR(a.at(2, 5), kPi / 2, 1e-15);
    EXPECT_THROW(AngleAssignment::from_json("{"), Error);
}
