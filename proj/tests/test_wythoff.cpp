#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>

#include "coxeterkit/catalog.hpp"
#include "coxeterkit/wythoff.hpp"

using namespace coxeterkit;

namespace {

constexpr double kPi = std::numbers::pi;

int affine_dimension(const std::vector<Vec>& pts, const std::vector<int>& idx) {
    if (idx.size() <= 1) return 0;
    Mat m(pts[0].size(), idx.size() - 1);
    for (std::size_t i = 1; i < idx.size(); ++i) m.col(i - 1) = pts[idx[i]] - pts[idx[0]];
    Eigen::FullPivLU<Mat> lu(m);
    lu.setThreshold(1e-8);
    return static_cast<int>(lu.rank());
}

// Oracle f-vector of the convex hull of full-dimensional points: supporting
// hyperplanes through every d-subset, then closure of facet vertex sets under
// intersection, graded by affine dimension.
std::vector<int> brute_force_f_vector(const std::vector<Vec>& pts) {
    const int d = static_cast<int>(pts[0].size());
    const int n = static_cast<int>(pts.size());
    Vec center = Vec::Zero(d);
    for (auto& p : pts) center += p / n;
    std::set<std::vector<int>> facets;
    std::vector<int> pick(d);
    std::function<void(int, int)> rec = [&](int pos, int from) {
        if (pos == d) {
            Mat m(d - 1, d);
            for (int i = 1; i < d; ++i) m.row(i - 1) = (pts[pick[i]] - pts[pick[0]]).transpose();
            Eigen::FullPivLU<Mat> lu(m);
            lu.setThreshold(1e-9);
            if (lu.rank() != d - 1) return;
            Vec nrm = lu.kernel().col(0).normalized();
            double off = nrm.dot(pts[pick[0]]);
            if (nrm.dot(center) > off) { nrm = -nrm; off = -off; }
            std::vector<int> on;
            for (int i = 0; i < n; ++i) {
                double s = nrm.dot(pts[i]) - off;
                if (s > 1e-9) return;
                if (s > -1e-9) on.push_back(i);
            }
            facets.insert(on);
            return;
        }
        for (int i = from; i < n; ++i) {
            pick[pos] = i;
            rec(pos + 1, i + 1);
        }
    };
    rec(0, 0);
    std::set<std::vector<int>> faces(facets.begin(), facets.end());
    for (bool grew = true; grew;) {
        grew = false;
        std::vector<std::vector<int>> cur(faces.begin(), faces.end());
        for (std::size_t a = 0; a < cur.size(); ++a)
            for (auto& f : facets) {
                std::vector<int> meet;
                std::set_intersection(cur[a].begin(), cur[a].end(), f.begin(), f.end(), std::back_inserter(meet));
                if (!meet.empty() && faces.insert(meet).second) grew = true;
            }
    }
    std::vector<int> fv(d, 0);
    for (auto& f : faces) ++fv[affine_dimension(pts, f)];
    return fv;
}

std::vector<Vec> coords(const Polytope& p) {
    std::vector<Vec> out;
    for (auto& v : p.vertices) out.push_back(v.coords);
    return out;
}

CoxeterDiagram ringed(const std::vector<int>& marks, const std::vector<int>& rings) { return from_schlafli(marks, rings); }

std::vector<std::pair<FamilyLabel, CoxeterDiagram>> catalog(int max_nodes) {
    std::vector<int> marks;
    for (int i = 2; i <= 8; ++i) marks.push_back(i);
    marks.push_back(kInfinity);
    return Catalog::bundled().expand(max_nodes, marks);
}

std::uint64_t factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

long long boundary_euler(int rank) { return 1 - (rank % 2 == 0 ? 1 : -1); }

bool isometry_is_identity(const Isometry& g, int ambient) {
    Mat id = Mat::Identity(ambient, ambient);
    if ((g.linear - id).cwiseAbs().maxCoeff() > 1e-8) return false;
    return !g.affine() || g.translation.cwiseAbs().maxCoeff() <= 1e-8;
}

} // namespace

TEST(Wythoff, SingleRingSeedIsTheOppositeVertex) {
    for (auto marks : {std::vector<int>{4, 3, 5}, std::vector<int>{3, 4, 3}, std::vector<int>{4, 4}}) {
        CoxeterDiagram d = from_schlafli(marks, {});
        MirrorSystem m = diagram_mirrors(d);
        for (int i = 1; i <= d.size(); ++i) {
            Point p = seed_point(m, {i});
            for (int j = 0; j < m.size(); ++j) {
                if (j == i - 1) EXPECT_LT(m.side(j, p.coords), -1e-9);
                else EXPECT_NEAR(m.side(j, p.coords), 0, 1e-9);
            }
        }
    }
}

TEST(Wythoff, FullyRingedEuclideanTriangleSeedIsEquidistant) {
    MirrorSystem m = diagram_mirrors(from_schlafli({3, 6}, {}));
    ASSERT_TRUE(m.affine());
    Point p = seed_point(m, {1, 2, 3});
    double d0 = -m.side(0, p.coords);
    EXPECT_GT(d0, 0);
    for (int i = 1; i < 3; ++i) EXPECT_NEAR(-m.side(i, p.coords), d0, 1e-12);
    Mat g = m.gram();
    std::vector<double> angles = {std::acos(-g(0, 1)), std::acos(-g(1, 2)), std::acos(-g(0, 2))};
    std::sort(angles.begin(), angles.end());
    EXPECT_NEAR(angles[0], kPi / 6, 1e-12);
    EXPECT_NEAR(angles[1], kPi / 3, 1e-12);
    EXPECT_NEAR(angles[2], kPi / 2, 1e-12);
}

TEST(Wythoff, HyperbolicSeedDistancesAreEqual) {
    MirrorSystem m = diagram_mirrors(from_schlafli({4, 3, 5}, {}));
    for (std::set<int> rings : {std::set<int>{1, 2, 3, 4}, std::set<int>{1, 4}, std::set<int>{2, 3}}) {
        Point p = seed_point(m, rings);
        std::vector<double> dist;
        for (int r : rings) dist.push_back(std::asinh(std::abs(inner(m.form, p.coords, m.normals[r - 1]))));
        for (double x : dist) EXPECT_NEAR(x, dist.front(), 1e-12);
    }
}

TEST(Wythoff, IdealSeed) {
    MirrorSystem m = diagram_mirrors(from_schlafli({3, 3, 6}, {}));
    Point p = seed_point(m, {1});
    EXPECT_TRUE(p.ideal());
    EXPECT_NEAR(p.coords[0], 1, 1e-12);
    EXPECT_THROW(seed_point(m, {}), Error);
}

TEST(Wythoff, OrbitSizes) {
    auto orbit = [](const CoxeterDiagram& d) {
        MirrorSystem m = diagram_mirrors(d);
        std::vector<Isometry> gens;
        for (int i = 0; i < m.size(); ++i) gens.push_back(m.reflection(i));
        return orbit_closure(m.form, {seed_point(m, d.rings())}, gens);
    };
    auto oct = orbit(ringed({3, 4}, {1}));
    ASSERT_EQ(oct.size(), 6u);
    // An orthonormal frame and its negatives: every pair antipodal or orthogonal.
    for (auto& p : oct)
        for (auto& q : oct) {
            double c = p.coords.dot(q.coords) / (p.coords.norm() * q.coords.norm());
            EXPECT_TRUE(std::abs(c) < 1e-12 || std::abs(std::abs(c) - 1) < 1e-12) << c;
        }
    EXPECT_EQ(orbit(ringed({3, 4, 3}, {1})).size(), 24u);
    EXPECT_EQ(orbit(ringed({5, 3, 3}, {1, 2, 3, 4})).size(), 14400u);
}

TEST(Wythoff, OrbitCapIsEnforced) {
    CoxeterDiagram d = ringed({4, 4}, {1});
    MirrorSystem m = diagram_mirrors(d);
    std::vector<Isometry> gens;
    for (int i = 0; i < m.size(); ++i) gens.push_back(m.reflection(i));
    try {
        orbit_closure(m.form, {seed_point(m, d.rings())}, gens, 50);
        FAIL() << "no cap error";
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("51"), std::string::npos) << e.what();
    }
}

TEST(Wythoff, OrbitIndependentOfGeneratorOrder) {
    CoxeterDiagram d = ringed({5, 3, 3}, {1, 3});
    MirrorSystem m = diagram_mirrors(d);
    std::vector<Isometry> gens;
    for (int i = 0; i < m.size(); ++i) gens.push_back(m.reflection(i));
    auto base = orbit_closure(m.form, {seed_point(m, d.rings())}, gens);
    std::mt19937 rng(4);
    for (int t = 0; t < 5; ++t) {
        std::shuffle(gens.begin(), gens.end(), rng);
        auto other = orbit_closure(m.form, {seed_point(m, d.rings())}, gens);
        ASSERT_EQ(other.size(), base.size());
        for (std::size_t i = 0; i < base.size(); ++i) EXPECT_LT((other[i].coords - base[i].coords).norm(), 1e-9);
    }
}

TEST(Wythoff, BuildFVectorsAgainstBruteForceHulls) {
    struct Case { std::vector<int> marks; std::vector<int> rings; };
    std::vector<Case> cases = {
        {{3, 4}, {1}}, {{4, 3}, {1}}, {{3, 3}, {2}}, {{5, 3}, {1}}, {{3, 5}, {1}}, {{5, 3}, {2}},
        {{4, 3}, {1, 2}}, {{3, 5}, {1, 2}}, {{4, 3}, {1, 3}}, {{3, 3}, {1, 2, 3}},
        {{3, 3, 3}, {1}}, {{3, 3, 3}, {2}}, {{3, 3, 3}, {1, 2}}, {{4, 3, 3}, {1}}, {{3, 3, 4}, {1}},
        {{3, 4, 3}, {1}}, {{3, 4, 3}, {2}}, {{3, 3, 3}, {1, 4}},
    };
    for (auto& c : cases) {
        Polytope p = build(ringed(c.marks, c.rings));
        EXPECT_EQ(p.f_vector(), brute_force_f_vector(coords(p))) << c.marks.size() << " nodes";
    }
}

TEST(Wythoff, NamedBuilds) {
    Polytope oct = build(ringed({3, 4}, {1}));
    EXPECT_EQ(oct.f_vector(), (std::vector<int>{6, 12, 8}));

    Polytope c24 = build(ringed({3, 4, 3}, {1}));
    EXPECT_EQ(c24.vertices.size(), 24u);
    EXPECT_EQ(c24.facets().size(), 24);
    for (int i = 0; i < c24.facets().size(); ++i)
        EXPECT_EQ(face_polytope(c24, 3, i).f_vector(), (std::vector<int>{6, 12, 8}));
    for (int v = 0; v < 24; ++v) EXPECT_EQ(vertex_figure(c24, v).f_vector(), (std::vector<int>{8, 12, 6}));

    Polytope rect = build(ringed({3, 3, 3}, {2}));
    EXPECT_EQ(rect.vertices.size(), 10u);
    std::map<int, int> facet_sizes;
    for (int i = 0; i < rect.facets().size(); ++i) ++facet_sizes[static_cast<int>(rect.facets()[i].size())];
    EXPECT_EQ(facet_sizes, (std::map<int, int>{{4, 5}, {6, 5}}));
}

TEST(Wythoff, BuildRejectsRinglessDiagrams) {
    EXPECT_THROW(build(from_schlafli({4, 3}, {})), Error);
    BuildOptions tight;
    tight.cap = 100;
    EXPECT_THROW(build(ringed({5, 3, 3}, {1}), tight), Error);
}

TEST(Wythoff, HyperbolicBuildReturnsOneCell) {
    Polytope cube = build(ringed({4, 3, 5}, {1}));
    EXPECT_EQ(cube.geometry, SpaceForm::Hyperbolic);
    EXPECT_EQ(cube.f_vector(), (std::vector<int>{8, 12, 6}));
    for (double a : dihedral_angles(cube)) EXPECT_NEAR(a, 2 * kPi / 5, 1e-9);
}

TEST(Wythoff, SquareGridPatch) {
    TessellationPatch p = tessellation_patch(ringed({4, 4}, {1}), 2);
    EXPECT_EQ(p.geometry, SpaceForm::Euclidean);
    std::vector<Vec> centers;
    for (auto& c : p.cells) {
        Vec x = Vec::Zero(2);
        for (int v : c.vertices) x += p.points[v].coords / c.vertices.size();
        centers.push_back(x);
    }
    // Oracle: unit squares of a grid; the 8 squares around the base are present.
    const Vec base = centers[0];
    double side = 0;
    const auto& bv = p.cells[0].vertices;
    for (std::size_t i = 1; i < bv.size(); ++i) side = std::max(side, (p.points[bv[i]].coords - p.points[bv[0]].coords).cwiseAbs().maxCoeff());
    int around = 0;
    for (int dx = -1; dx <= 1; ++dx)
        for (int dy = -1; dy <= 1; ++dy) {
            if (!dx && !dy) continue;
            Vec want = base;
            Vec e1 = p.points[bv[1]].coords - p.points[bv[0]].coords;
            Vec e2(2);
            e2 << -e1[1], e1[0];
            want += dx * e1 + dy * e2;
            for (auto& c : centers) around += (c - want).norm() < 1e-9;
        }
    EXPECT_EQ(around, 8);
    EXPECT_EQ(p.cells.size(), 13u);
    EXPECT_GT(side, 0);
}

TEST(Wythoff, PatchAdjacencyAndDistinctCells) {
    TessellationPatch p = tessellation_patch(ringed({4, 4}, {1}), 3);
    std::set<std::vector<int>> seen;
    for (auto& c : p.cells) {
        std::vector<int> s = c.vertices;
        std::sort(s.begin(), s.end());
        EXPECT_TRUE(seen.insert(s).second);
    }
    for (auto [a, b] : p.adjacency) {
        EXPECT_LT(a, b);
        std::vector<int> sa = p.cells[a].vertices, sb = p.cells[b].vertices, meet;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(meet));
        EXPECT_EQ(meet.size(), 2u);
    }
    // Each inner square has four neighbours.
    std::map<int, int> degree;
    for (auto [a, b] : p.adjacency) { ++degree[a]; ++degree[b]; }
    EXPECT_EQ(degree[0], 4);
}

TEST(Wythoff, DepthZeroIsTheBaseCell) {
    TessellationPatch p = tessellation_patch(ringed({4, 3, 5}, {1}), 0);
    EXPECT_EQ(p.cells.size(), 1u);
    EXPECT_TRUE(p.adjacency.empty());
    EXPECT_THROW(tessellation_patch(ringed({4, 3}, {1}), 1), Error);
}

TEST(Wythoff, HyperbolicCubePatch) {
    TessellationPatch p = tessellation_patch(ringed({4, 3, 5}, {1}), 2);
    EXPECT_EQ(p.geometry, SpaceForm::Hyperbolic);
    EXPECT_GT(p.cells.size(), 7u);
    for (std::size_t i = 0; i < p.cells.size(); ++i) {
        Polytope c = p.cell_polytope(static_cast<int>(i));
        EXPECT_EQ(c.f_vector(), (std::vector<int>{8, 12, 6}));
        for (double a : dihedral_angles(c)) EXPECT_NEAR(a, 2 * kPi / 5, 1e-9);
    }
}

TEST(Wythoff, HeptagonalPatchStaysInTheDisc) {
    TessellationPatch p = tessellation_patch(ringed({7, 3}, {1}), 2);
    for (auto& x : p.points) EXPECT_LT(klein_project(x).norm(), 1.0);
    EXPECT_EQ(p.cell_types.front().f_vector(), (std::vector<int>{7, 7}));
}

TEST(Wythoff, GroupOrders) {
    // Oracle: closed formulas per family.
    EXPECT_EQ(group_order(from_schlafli({3, 3}, {})), factorial(4));
    EXPECT_EQ(group_order(from_schlafli({5, 3}, {})), 120u);
    EXPECT_EQ(group_order(from_schlafli({5, 3, 3}, {})), 14400u);
    EXPECT_EQ(group_order(CoxeterDiagram(1)), 2u);
    for (int n = 2; n <= 7; ++n) {
        std::vector<int> a(n - 1, 3), b(n - 1, 3);
        if (n >= 2) b[0] = 4;
        EXPECT_EQ(group_order(from_schlafli(a, {})), factorial(n + 1)) << "A" << n;
        if (n >= 2) EXPECT_EQ(group_order(from_schlafli(b, {})), (1ull << n) * factorial(n)) << "B" << n;
    }
    for (int p = 3; p <= 12; ++p) EXPECT_EQ(group_order(from_schlafli({p}, {})), 2ull * p);
    EXPECT_EQ(group_order(parse_diagram("nodes 4; 1-2; 2-3; 2-4")), 8ull * factorial(4) / 1);
    EXPECT_EQ(group_order(parse_diagram("nodes 6; 1-2; 2-3; 3-4; 4-5; 3-6")), 51840u);
    EXPECT_EQ(group_order(from_schlafli({3, 4, 3}, {})), 1152u);
    EXPECT_EQ(group_order(parse_diagram("nodes 3; 1-2:5")), 20u);
    EXPECT_FALSE(group_order(from_schlafli({4, 4}, {})));
    EXPECT_FALSE(group_order(from_schlafli({4, 3, 5}, {})));
}

TEST(Wythoff, VertexCountsMatchOrbitStabilizer) {
    std::mt19937 rng(8);
    for (auto& [label, d] : catalog(4)) {
        if (classify(d).geometry != Geometry::Spherical) continue;
        std::set<int> rings;
        for (int i = 1; i <= d.size(); ++i)
            if (rng() % 2) rings.insert(i);
        if (rings.empty()) rings.insert(1);
        CoxeterDiagram r = d;
        r.set_rings(rings);
        std::vector<int> unringed;
        for (int i = 1; i <= d.size(); ++i)
            if (!rings.count(i)) unringed.push_back(i);
        Polytope p = build(r);
        auto whole = *group_order(d);
        auto stab = unringed.empty() ? 1 : *group_order(d.induced(unringed));
        EXPECT_EQ(p.vertices.size(), whole / stab) << label.text();
    }
}

TEST(Wythoff, RegularFacetCountsMatchOrbitStabilizer) {
    for (auto marks : {std::vector<int>{3, 4, 3}, std::vector<int>{4, 3, 3}, std::vector<int>{5, 3, 3}, std::vector<int>{3, 3, 5}}) {
        CoxeterDiagram d = from_schlafli(marks);
        Polytope p = build(d);
        std::uint64_t whole = *group_order(d);
        std::uint64_t facet_stab = *group_order(d.induced({1, 2, 3}));
        EXPECT_EQ(static_cast<std::uint64_t>(p.facets().size()), whole / facet_stab);
    }
}

TEST(Wythoff, EqualEdgesAndEulerCharacteristic) {
    std::mt19937 rng(12);
    int built = 0;
    for (auto& [label, d] : catalog(5)) {
        if (classify(d).geometry != Geometry::Spherical) continue;
        if (d.size() == 5 && *group_order(d) > 4000) continue;
        for (int t = 0; t < 2; ++t) {
            std::set<int> rings;
            for (int i = 1; i <= d.size(); ++i)
                if (rng() % 2) rings.insert(i);
            if (rings.empty()) rings.insert(d.size());
            CoxeterDiagram r = d;
            r.set_rings(rings);
            Polytope p = build(r);
            auto e = edge_lengths(p);
            if (!e.empty()) {
                auto [lo, hi] = std::minmax_element(e.begin(), e.end());
                EXPECT_LT(*hi - *lo, 1e-8) << label.text();
            }
            EXPECT_EQ(p.euler_characteristic(), boundary_euler(p.rank)) << label.text();
            ++built;
        }
    }
    EXPECT_GT(built, 20);
}

TEST(Wythoff, CoxeterRelationsHold) {
    for (auto& [label, d] : catalog(8)) {
        MirrorSystem m = diagram_mirrors(d);
        for (int i = 1; i <= d.size(); ++i)
            for (int j = i + 1; j <= d.size(); ++j) {
                int mij = d.order(i, j);
                if (mij == 0) continue;
                Isometry rs = m.reflection(i - 1).then(m.reflection(j - 1));
                Isometry acc = rs;
                for (int t = 1; t < mij; ++t) acc = acc.then(rs);
                EXPECT_TRUE(isometry_is_identity(acc, m.form.ambient())) << label.text() << " " << i << "-" << j;
            }
    }
}

TEST(Wythoff, SymmetryClasses) {
    EXPECT_EQ(symmetry_class(build(ringed({4, 3}, {1})), ringed({4, 3}, {1})), SymmetryClass::Regular);
    CoxeterDiagram rect = ringed({3, 3, 3}, {2});
    EXPECT_EQ(symmetry_class(build(rect), rect), SymmetryClass::Semiregular);
    CoxeterDiagram cubocta = ringed({4, 3}, {2});
    EXPECT_EQ(symmetry_class(build(cubocta), cubocta), SymmetryClass::Semiregular);
    CoxeterDiagram trunc = ringed({4, 3}, {1, 2});
    EXPECT_EQ(symmetry_class(build(trunc), trunc), SymmetryClass::Semiregular);
    CoxeterDiagram trunc4 = ringed({3, 3, 3}, {1, 2});
    EXPECT_EQ(symmetry_class(build(trunc4), trunc4), SymmetryClass::Uniform);
    EXPECT_EQ(wythoff_chain_count(ringed({4, 3, 3}, {1})), 1u);
    EXPECT_GT(wythoff_chain_count(rect), 1u);
}

TEST(Wythoff, DemicubeSymmetryByDimension) {
    auto demi = [](int n) {
        CoxeterDiagram d(n);
        for (int i = 1; i + 1 < n; ++i) d.set_edge(i, i + 1, EdgeMark::finite(3));
        d.set_edge(n - 2, n, EdgeMark::finite(3));
        d.ring(n);
        return d;
    };
    CoxeterDiagram d5 = demi(5);
    EXPECT_EQ(symmetry_class(build(d5), d5), SymmetryClass::Semiregular);
    CoxeterDiagram d6 = demi(6);
    Polytope p6 = build(d6);
    EXPECT_EQ(p6.vertices.size(), 32u);
    EXPECT_EQ(symmetry_class(p6, d6), SymmetryClass::Uniform);
}
