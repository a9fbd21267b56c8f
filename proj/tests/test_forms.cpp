#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "coxeterkit/forms.hpp"

using namespace coxeterkit;

namespace {

Vec v2(double a, double b) { return (Vec(2) << a, b).finished(); }
Vec v3(double a, double b, double c) { return (Vec(3) << a, b, c).finished(); }

// Random unit normal for the form: any vector for the positive forms, a
// spacelike one rescaled to norm 1 in the Lorentzian case.
Vec random_normal(const BilinearForm& f, std::mt19937& rng) {
    std::normal_distribution<double> g;
    for (;;) {
        Vec v(f.ambient());
        for (int i = 0; i < v.size(); ++i) v[i] = g(rng);
        double q = inner(f, v, v);
        if (q > 1e-3) return v / std::sqrt(q);
    }
}

Vec random_hyperboloid_point(int n, std::mt19937& rng, double spread = 2.0) {
    std::normal_distribution<double> g(0.0, spread);
    Vec x(n + 1);
    double s = 0;
    for (int i = 1; i <= n; ++i) {
        x[i] = g(rng);
        s += x[i] * x[i];
    }
    x[0] = std::sqrt(1 + s);
    return x;
}

} // namespace

TEST(Forms, LorentzianMatrixHasOneNegativeEntryFirst) {
    Mat j = BilinearForm::lorentzian(3).matrix();
    ASSERT_EQ(j.rows(), 4);
    EXPECT_EQ(j(0, 0), -1);
    for (int i = 1; i < 4; ++i) EXPECT_EQ(j(i, i), 1);
    EXPECT_EQ((j.array() < 0).count(), 1);
}

TEST(Forms, InnerExamples) {
    EXPECT_DOUBLE_EQ(inner(BilinearForm::lorentzian(2), v3(1, 0, 0), v3(1, 0, 0)), -1);
    EXPECT_DOUBLE_EQ(inner(BilinearForm::euclidean(2), v2(1, 2), v2(3, 4)), 11);
    EXPECT_DOUBLE_EQ(inner(BilinearForm::lorentzian(2), v3(1, 1, 0), v3(1, 1, 0)), 0);
}

TEST(Forms, InnerIsSymmetric) {
    std::mt19937 rng(11);
    std::normal_distribution<double> g;
    for (auto f : {BilinearForm::euclidean(4), BilinearForm::spherical(3), BilinearForm::lorentzian(3)}) {
        for (int t = 0; t < 50; ++t) {
            Vec x(4), y(4);
            for (int i = 0; i < 4; ++i) { x[i] = g(rng); y[i] = g(rng); }
            EXPECT_NEAR(inner(f, x, y), inner(f, y, x), 1e-12);
        }
    }
}

TEST(Forms, ReflectionExamples) {
    Isometry r = reflection(BilinearForm::euclidean(2), v2(1, 0));
    Vec y = r.apply(v2(1, 2));
    EXPECT_NEAR(y[0], -1, 1e-15);
    EXPECT_NEAR(y[1], 2, 1e-15);

    auto lor = BilinearForm::lorentzian(2);
    Isometry s = reflection(lor, v3(0, 1, 0));
    Vec x = v3(std::sqrt(2.0), 1, 0);
    Vec z = s.apply(x);
    EXPECT_NEAR((z - v3(std::sqrt(2.0), -1, 0)).norm(), 0, 1e-12);
    EXPECT_NEAR(inner(lor, z, z), inner(lor, x, x), 1e-12);
}

TEST(Forms, ReflectionRejectsNonUnitNormal) {
    EXPECT_THROW(reflection(BilinearForm::euclidean(2), v2(2, 0)), Error);
    EXPECT_THROW(reflection(BilinearForm::lorentzian(2), v3(1, 0, 0)), Error);
}

TEST(Forms, RandomReflectionsAreInvolutiveIsometries) {
    std::mt19937 rng(2024);
    for (auto f : {BilinearForm::euclidean(4), BilinearForm::spherical(3), BilinearForm::lorentzian(3)}) {
        for (int t = 0; t < 100; ++t) {
            Isometry r = reflection(f, random_normal(f, rng));
            Mat sq = r.linear * r.linear;
            EXPECT_LT((sq - Mat::Identity(sq.rows(), sq.cols())).cwiseAbs().maxCoeff(), 1e-10) << to_string(f.kind);
            EXPECT_LT(isometry_defect(f, r), 1e-10);
        }
    }
}

TEST(Forms, AffineReflectionFixesItsMirror) {
    Vec v = v2(0.6, 0.8);
    Isometry r = affine_reflection(v, 2.0);
    Vec on = v * 2.0 + v2(-0.8, 0.6) * 3.0;
    EXPECT_NEAR((r.apply(on) - on).norm(), 0, 1e-12);
    Vec off = v2(5, -1);
    EXPECT_NEAR((r.apply(r.apply(off)) - off).norm(), 0, 1e-12);
}

TEST(Forms, NormalizeExamples) {
    auto lor = BilinearForm::lorentzian(2);
    Point a = normalize_point(lor, v3(2, 0, 0));
    EXPECT_EQ(a.kind, PointKind::Interior);
    EXPECT_NEAR((a.coords - v3(1, 0, 0)).norm(), 0, 1e-12);

    Point b = normalize_point(lor, v3(3, 3, 0));
    EXPECT_EQ(b.kind, PointKind::Ideal);
    EXPECT_NEAR((b.coords - v3(1, 1, 0)).norm(), 0, 1e-12);

    Point c = normalize_point(BilinearForm::spherical(2), v3(0, 2, 0));
    EXPECT_NEAR((c.coords - v3(0, 1, 0)).norm(), 0, 1e-12);
}

TEST(Forms, NormalizeRejectsSpacelikeVectors) {
    EXPECT_THROW(normalize_point(BilinearForm::lorentzian(2), v3(0, 1, 0)), Error);
}

TEST(Forms, KleinExamples) {
    auto lor = BilinearForm::lorentzian(2);
    EXPECT_NEAR(klein_project(normalize_point(lor, v3(1, 0, 0))).norm(), 0, 1e-15);
    Vec k = klein_project(normalize_point(lor, v3(1, 1, 0)));
    EXPECT_NEAR((k - v2(1, 0)).norm(), 0, 1e-15);
}

TEST(Forms, KleinNormsOfRandomPoints) {
    std::mt19937 rng(5);
    auto lor = BilinearForm::lorentzian(3);
    for (int t = 0; t < 200; ++t) {
        Vec x = random_hyperboloid_point(3, rng);
        EXPECT_LT(klein_project(normalize_point(lor, x)).norm(), 1.0);
        Vec ray = x;
        ray[0] = x.tail(3).norm();
        if (ray[0] < 1e-6) continue;
        Point ideal = normalize_point(lor, ray);
        EXPECT_TRUE(ideal.ideal());
        EXPECT_NEAR(klein_project(ideal).norm(), 1.0, 1e-10);
    }
}

TEST(Forms, HyperbolicDistance) {
    auto lor = BilinearForm::lorentzian(2);
    Point o = normalize_point(lor, v3(1, 0, 0));
    Point p = normalize_point(lor, v3(std::cosh(1.5), std::sinh(1.5), 0));
    EXPECT_NEAR(distance(lor, o, p), 1.5, 1e-12);
}

TEST(Forms, TransformedPointsStayOnTheModel) {
    std::mt19937 rng(9);
    auto lor = BilinearForm::lorentzian(3);
    for (int t = 0; t < 50; ++t) {
        Isometry r = reflection(lor, random_normal(lor, rng));
        Point p = normalize_point(lor, random_hyperboloid_point(3, rng, 1.0));
        Point q = transform(lor, r, p);
        EXPECT_NEAR(inner(lor, q.coords, q.coords), -1, 1e-9);
        EXPECT_GT(q.coords[0], 0);
    }
}

TEST(Forms, PointSetDeduplicatesAcrossCellBoundaries) {
    PointSet s(1e-6, 1e-7);
    Vec a = v2(0.5e-6 - 1e-12, 1);
    Vec b = v2(0.5e-6 + 1e-12, 1);
    EXPECT_TRUE(s.insert(a).second);
    auto [idx, inserted] = s.insert(b);
    EXPECT_FALSE(inserted);
    EXPECT_EQ(idx, 0);
    EXPECT_TRUE(s.insert(v2(0.5e-6, 1.001)).second);
    EXPECT_EQ(s.size(), 2);
    EXPECT_EQ(s.find(v2(7, 7)), -1);
}

TEST(Forms, CanonicalOrderIsLexicographic) {
    EXPECT_TRUE(canonical_less(v2(0, 5), v2(1, -5)));
    EXPECT_TRUE(canonical_less(v2(1, -5), v2(1, 0)));
    EXPECT_FALSE(canonical_less(v2(1, 0), v2(1, 1e-9)));
}
