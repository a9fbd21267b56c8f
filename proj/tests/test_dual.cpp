#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "coxeterkit/dual.hpp"
#include "coxeterkit/wythoff.hpp"
#include "coxeterkit/zoo.hpp"

using namespace coxeterkit;

namespace {

constexpr double kPi = std::numbers::pi;

// Uniform primal rescaled to unit circumradius.
Polytope unit(Polytope p) {
    for (auto& v : p.vertices) v.coords.normalize();
    return p;
}

Polytope wythoff(const std::vector<int>& marks, const std::vector<int>& rings) { return unit(build(from_schlafli(marks, rings))); }

std::vector<int> reversed(std::vector<int> f) {
    std::reverse(f.begin(), f.end());
    return f;
}

} // namespace

TEST(Dual, CubeAndOctahedron) {
    Polytope cube = wythoff({4, 3}, {1});
    DualPolytope q = dual_polytope(cube);
    EXPECT_EQ(q.polytope.f_vector(), (std::vector<int>{6, 12, 8}));
    EXPECT_EQ(q.polytope.f_vector(), reversed(cube.f_vector()));
    for (double a : ridge_angles(dual_polytope(wythoff({3, 4}, {1})))) EXPECT_NEAR(a, kPi / 2, 1e-12);
}

TEST(Dual, RhombicDodecahedron) {
    Polytope co = wythoff({4, 3}, {2});
    ASSERT_EQ(co.f_vector(), (std::vector<int>{12, 24, 14}));
    DualPolytope q = dual_polytope(co);
    // Oracle: the incidence transpose.
    EXPECT_EQ(static_cast<int>(q.polytope.vertices.size()), co.facets().size());
    EXPECT_EQ(q.polytope.facets().size(), static_cast<int>(co.vertices.size()));
    EXPECT_EQ(q.polytope.f_vector(), (std::vector<int>{14, 24, 12}));
    auto angles = ridge_angles(q);
    EXPECT_EQ(angles.size(), 24u);
    auto [lo, hi] = std::minmax_element(angles.begin(), angles.end());
    EXPECT_LT(*hi - *lo, 1e-8);
    EXPECT_NEAR(*lo, 2 * kPi / 3, 1e-9);
    // Vertices of degree 3 and 4 sit on two spheres.
    EXPECT_EQ(q.radii.size(), 2u);
}

TEST(Dual, IncidenceIsTransposed) {
    Polytope p = wythoff({3, 3, 3}, {2});
    DualPolytope q = dual_polytope(p);
    const FaceList& df = q.polytope.facets();
    for (int j = 0; j < df.size(); ++j)
        for (int i : df[j]) {
            auto f = p.facets()[i];
            EXPECT_TRUE(std::find(f.begin(), f.end(), j) != f.end());
        }
    for (int i = 0; i < static_cast<int>(q.polytope.vertices.size()); ++i)
        for (int j : p.facets()[i]) EXPECT_GT(std::abs(q.polytope.vertices[i].coords.dot(p.vertices[j].coords) - 1), -1e-12);
}

TEST(Dual, DoubleDualIsThePrimal) {
    for (auto [marks, rings] : std::vector<std::pair<std::vector<int>, std::vector<int>>>{
             {{4, 3}, {1}}, {{4, 3}, {2}}, {{5, 3}, {2}}, {{3, 3, 3}, {2}}, {{3, 4, 3}, {1}}, {{4, 3}, {1, 2}}}) {
        Polytope p = wythoff(marks, rings);
        DualPolytope q = dual_polytope(p);
        DualPolytope qq = dual_polytope(q.polytope);
        EXPECT_EQ(qq.polytope.f_vector(), p.f_vector());
        EXPECT_TRUE(same_lattice(qq.polytope, p));
        for (std::size_t i = 0; i < p.vertices.size(); ++i)
            EXPECT_LT((qq.polytope.vertices[i].coords - p.vertices[i].coords).norm(), 1e-9);
    }
}

TEST(Dual, PerturbedPrimalFailsTheSpreadCheck) {
    // A stretch keeps every facet planar but breaks uniformity.
    Polytope p = wythoff({4, 3}, {2});
    for (auto& v : p.vertices) v.coords[0] *= 1.1;
    DualPolytope q = dual_polytope(p);
    EXPECT_THROW(ridge_angles(q), Error);
}

TEST(Dual, CenterMustBeInterior) {
    Polytope p = wythoff({4, 3}, {1});
    std::vector<Vec> shifted;
    for (auto& v : p.vertices) shifted.push_back(v.coords + Vec::Constant(3, 2.0));
    EXPECT_THROW(dual_polytope(convex_hull(shifted)), Error);
}

TEST(Dual, RectifiedSimplexDualIsRightAngled) {
    Polytope p = wythoff({3, 3, 3}, {2});
    DualPolytope q = dual_polytope(p);
    HyperbolicRealization h = hyperbolic_realization(q);
    EXPECT_EQ(h.ideal_vertices.size(), 5u);
    EXPECT_EQ(h.real_vertices.size(), 5u);
    EXPECT_EQ(h.polytope.facets().size(), 10);
    for (double a : h.angles) EXPECT_NEAR(a, kPi / 2, 1e-6);
    for (int v : h.ideal_vertices) EXPECT_EQ(vertex_figure(h.polytope, v).f_vector(), (std::vector<int>{8, 12, 6}));
    // Radius classes follow the facet types of the primal; octahedra are nearer
    // the center, so their dual vertices form the outer, ideal class.
    for (std::size_t i = 0; i < q.polytope.vertices.size(); ++i) {
        const bool octahedral = p.facets()[static_cast<int>(i)].size() == 6;
        EXPECT_EQ(q.radius_class[i], octahedral ? 1 : 0) << i;
    }
    // Each facet is a 3-polytope with 6 faces.
    for (int f = 0; f < h.polytope.facets().size(); ++f)
        EXPECT_EQ(face_polytope(h.polytope, 3, f).faces[2].size(), 6);
}

TEST(Dual, DemicubeDualIsRightAngled) {
    Polytope p = unit(demicube(5));
    HyperbolicRealization h = hyperbolic_realization(dual_polytope(p));
    EXPECT_EQ(h.ideal_vertices.size(), 10u);
    EXPECT_EQ(h.real_vertices.size(), 16u);
    EXPECT_EQ(h.polytope.facets().size(), 16);
    for (double a : h.angles) EXPECT_NEAR(a, kPi / 2, 1e-6);
    for (int v : h.ideal_vertices)
        EXPECT_EQ(vertex_figure(h.polytope, v).f_vector(), (std::vector<int>{16, 32, 24, 8}));
}

TEST(Dual, NormalsAreLorentzianUnit) {
    HyperbolicRealization h = hyperbolic_realization(dual_polytope(wythoff({3, 3, 3}, {2})));
    auto lor = BilinearForm::lorentzian(4);
    for (auto& n : h.normals) EXPECT_NEAR(inner(lor, n, n), 1, 1e-9);
    for (int v : h.ideal_vertices) EXPECT_NEAR(inner(lor, h.polytope.vertices[v].coords, h.polytope.vertices[v].coords), 0, 1e-9);
}

TEST(Dual, OutsideTheBallIsRejected) {
    // Scaling by a radius below the outermost class pushes vertices out of the ball.
    DualPolytope q = dual_polytope(wythoff({4, 3}, {2}));
    q.radii.back() *= 0.9;
    EXPECT_THROW(hyperbolic_realization(q), Error);
}
