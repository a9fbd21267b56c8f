#include "coxeterkit/forms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace coxeterkit {

namespace {

void check_dim(const BilinearForm& form, const Vec& x) {
    if (x.size() != form.ambient())
        throw Error("forms", "vector of size " + std::to_string(x.size()) + " for ambient dimension " +
                                 std::to_string(form.ambient()));
}

} // namespace

const char* to_string(FormKind kind) {
    switch (kind) {
    case FormKind::Euclidean: return "euclidean";
    case FormKind::Spherical: return "spherical";
    case FormKind::Lorentzian: return "hyperbolic";
    }
    return "?";
}

Mat BilinearForm::matrix() const {
    Mat j = Mat::Identity(ambient(), ambient());
    if (kind == FormKind::Lorentzian) j(0, 0) = -1.0;
    return j;
}

double inner(const BilinearForm& form, const Vec& x, const Vec& y) {
    check_dim(form, x);
    check_dim(form, y);
    double s = x.dot(y);
    if (form.kind == FormKind::Lorentzian) s -= 2.0 * x[0] * y[0];
    return s;
}

Isometry Isometry::identity(int ambient) { return {Mat::Identity(ambient, ambient), Vec()}; }

Vec Isometry::apply(const Vec& x) const {
    Vec y = linear * x;
    if (affine()) y += translation;
    return y;
}

Isometry Isometry::then(const Isometry& next) const {
    Isometry out{next.linear * linear, Vec()};
    if (affine() || next.affine()) {
        Vec t = affine() ? Vec(next.linear * translation) : Vec::Zero(linear.rows());
        if (next.affine()) t += next.translation;
        out.translation = t;
    }
    return out;
}

Isometry reflection(const BilinearForm& form, const Vec& v, double tol) {
    check_dim(form, v);
    const double vv = inner(form, v, v);
    if (std::abs(vv - 1.0) > tol)
        throw Error("forms", "reflection needs a unit spacelike normal, got form(v,v) = " + std::to_string(vv));
    // x - 2 <x,v> v  ==  (I - 2 v v^T J) x
    Mat j = form.matrix();
    return {Mat::Identity(v.size(), v.size()) - 2.0 * v * (j * v).transpose(), Vec()};
}

Isometry affine_reflection(const Vec& v, double offset, double tol) {
    if (std::abs(v.squaredNorm() - 1.0) > tol) throw Error("forms", "affine mirror needs a unit normal");
    return {Mat::Identity(v.size(), v.size()) - 2.0 * v * v.transpose(), Vec(2.0 * offset * v)};
}

Point normalize_point(const BilinearForm& form, const Vec& x, double tol) {
    check_dim(form, x);
    Point p{x, PointKind::Interior, form.kind};
    switch (form.kind) {
    case FormKind::Euclidean: return p;
    case FormKind::Spherical: {
        const double n = x.norm();
        if (n <= tol) throw Error("forms", "zero vector is not a spherical point");
        p.coords = x / n;
        return p;
    }
    case FormKind::Lorentzian: {
        const double q = inner(form, x, x);
        const double scale = std::max(x.squaredNorm(), 1e-300);
        if (q < -tol * scale) {
            p.coords = x / std::sqrt(-q);
            if (p.coords[0] < 0) p.coords = -p.coords;
            return p;
        }
        if (q <= tol * scale) {
            if (std::abs(x[0]) <= tol) throw Error("forms", "zero vector is not a point");
            p.coords = x / x[0];
            p.kind = PointKind::Ideal;
            return p;
        }
        throw Error("forms", "spacelike vector is not a point of hyperbolic space");
    }
    }
    return p;
}

Point transform(const BilinearForm& form, const Isometry& g, const Point& p, double tol) {
    return normalize_point(form, g.apply(p.coords), tol);
}

Vec klein_project(const Point& p) {
    if (p.geometry != FormKind::Lorentzian) throw Error("forms", "Klein projection needs a hyperbolic point");
    return p.coords.tail(p.coords.size() - 1) / p.coords[0];
}

double isometry_defect(const BilinearForm& form, const Isometry& g) {
    Mat j = form.matrix();
    return (g.linear.transpose() * j * g.linear - j).cwiseAbs().maxCoeff();
}

double distance(const BilinearForm& form, const Point& p, const Point& q) {
    switch (form.kind) {
    case FormKind::Euclidean: return (p.coords - q.coords).norm();
    case FormKind::Spherical: return std::acos(std::clamp(p.coords.dot(q.coords), -1.0, 1.0));
    case FormKind::Lorentzian:
        if (p.ideal() || q.ideal()) throw Error("forms", "distance to an ideal point is infinite");
        return std::acosh(std::max(1.0, -inner(form, p.coords, q.coords)));
    }
    return 0;
}

std::vector<std::int64_t> PointSet::key_of(const Vec& x) const {
    std::vector<std::int64_t> key(x.size());
    for (int i = 0; i < x.size(); ++i) key[i] = std::llround(x[i] / cell_);
    return key;
}

std::uint64_t PointSet::hash_key(const std::vector<std::int64_t>& key) const {
    std::uint64_t h = 1469598103934665603ull;
    for (auto k : key) {
        h ^= static_cast<std::uint64_t>(k) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h *= 1099511628211ull;
    }
    return h;
}

int PointSet::probe(const Vec& x, std::vector<std::int64_t>& key, int axis) const {
    if (axis == static_cast<int>(key.size())) {
        auto [lo, hi] = grid_.equal_range(hash_key(key));
        for (auto it = lo; it != hi; ++it)
            if ((points_[it->second] - x).cwiseAbs().maxCoeff() <= confirm_) return it->second;
        return -1;
    }
    if (int r = probe(x, key, axis + 1); r >= 0) return r;
    // Near a cell boundary the twin may have rounded the other way.
    const double f = x[axis] / cell_ - static_cast<double>(key[axis]);
    if (std::abs(f) > 0.4) {
        const std::int64_t saved = key[axis];
        key[axis] += f > 0 ? 1 : -1;
        int r = probe(x, key, axis + 1);
        key[axis] = saved;
        return r;
    }
    return -1;
}

int PointSet::find(const Vec& x) const {
    auto key = key_of(x);
    return probe(x, key, 0);
}

std::pair<int, bool> PointSet::insert(const Vec& x) {
    if (int i = find(x); i >= 0) return {i, false};
    points_.push_back(x);
    grid_.emplace(hash_key(key_of(x)), size() - 1);
    return {size() - 1, true};
}

bool canonical_less(const Vec& a, const Vec& b, double cell) {
    for (int i = 0; i < std::min(a.size(), b.size()); ++i) {
        auto ka = std::llround(a[i] / cell), kb = std::llround(b[i] / cell);
        if (ka != kb) return ka < kb;
    }
    return a.size() < b.size();
}

const char* to_string(SpaceForm s) {
    switch (s) {
    case SpaceForm::Spherical: return "Spherical";
    case SpaceForm::Euclidean: return "Euclidean";
    case SpaceForm::Hyperbolic: return "Hyperbolic";
    }
    return "?";
}

} // namespace coxeterkit
