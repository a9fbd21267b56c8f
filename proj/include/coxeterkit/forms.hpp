#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "coxeterkit/error.hpp"

namespace coxeterkit {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct Tolerance {
    double algebra = 1e-9;
    double dedupe = 1e-7;
};

enum class FormKind { Euclidean, Spherical, Lorentzian };

const char* to_string(FormKind kind);

// Model space of a polytope or tessellation.
enum class SpaceForm { Spherical, Euclidean, Hyperbolic };
const char* to_string(SpaceForm s);

// Euclidean(n) acts on R^n; Spherical(n) and Lorentzian(n) act on R^{n+1}.
struct BilinearForm {
    FormKind kind = FormKind::Euclidean;
    int dim = 0;

    static BilinearForm euclidean(int n) { return {FormKind::Euclidean, n}; }
    static BilinearForm spherical(int n) { return {FormKind::Spherical, n}; }
    static BilinearForm lorentzian(int n) { return {FormKind::Lorentzian, n}; }

    int ambient() const { return kind == FormKind::Euclidean ? dim : dim + 1; }
    Mat matrix() const;
    bool operator==(const BilinearForm&) const = default;
};

double inner(const BilinearForm& form, const Vec& x, const Vec& y);

enum class PointKind { Interior, Ideal };

struct Point {
    Vec coords;
    PointKind kind = PointKind::Interior;
    FormKind geometry = FormKind::Euclidean;

    bool ideal() const { return kind == PointKind::Ideal; }
};

// x -> linear * x + translation. The translation is empty for linear maps.
struct Isometry {
    Mat linear;
    Vec translation;

    static Isometry identity(int ambient);
    Vec apply(const Vec& x) const;
    Isometry then(const Isometry& next) const;  // next after this
    bool affine() const { return translation.size() != 0; }
};

Isometry reflection(const BilinearForm& form, const Vec& v, double tol = 1e-9);

// Mirror {x : v.x = offset} of Euclidean space, v a unit vector.
Isometry affine_reflection(const Vec& v, double offset, double tol = 1e-9);

Point normalize_point(const BilinearForm& form, const Vec& x, double tol = 1e-9);

// Applies g and returns the point in canonical form.
Point transform(const BilinearForm& form, const Isometry& g, const Point& p, double tol = 1e-9);

Vec klein_project(const Point& p);

// max |M^T J M - J| over the linear part.
double isometry_defect(const BilinearForm& form, const Isometry& g);

// Intrinsic distance between interior points.
double distance(const BilinearForm& form, const Point& p, const Point& q);

// Deduplicating store of points keyed by coordinates quantized at `cell`.
// Candidates found through the grid are confirmed by an explicit distance test.
class PointSet {
public:
    explicit PointSet(double cell = 1e-6, double confirm = 1e-7) : cell_(cell), confirm_(confirm) {}

    // Index of an equal point, or -1.
    int find(const Vec& x) const;
    // Inserts when absent; returns (index, inserted).
    std::pair<int, bool> insert(const Vec& x);

    int size() const { return static_cast<int>(points_.size()); }
    const Vec& operator[](int i) const { return points_[i]; }
    const std::vector<Vec>& points() const { return points_; }

private:
    std::vector<std::int64_t> key_of(const Vec& x) const;
    std::uint64_t hash_key(const std::vector<std::int64_t>& key) const;
    int probe(const Vec& x, std::vector<std::int64_t>& key, int axis) const;

    double cell_;
    double confirm_;
    std::vector<Vec> points_;
    std::unordered_multimap<std::uint64_t, int> grid_;
};

// Lexicographic order on coordinates quantized at `cell`; used for canonical output.
bool canonical_less(const Vec& a, const Vec& b, double cell = 1e-6);

} // namespace coxeterkit
