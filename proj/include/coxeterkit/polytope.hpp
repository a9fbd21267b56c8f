#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "coxeterkit/forms.hpp"

namespace coxeterkit {

// Variable-length index sets stored back to back.
class FaceList {
public:
    int size() const { return static_cast<int>(offsets_.size()) - 1; }
    bool empty() const { return size() == 0; }
    std::span<const int> operator[](int i) const {
        return {indices_.data() + offsets_[i], static_cast<std::size_t>(offsets_[i + 1] - offsets_[i])};
    }
    void push(std::span<const int> face) {
        indices_.insert(indices_.end(), face.begin(), face.end());
        offsets_.push_back(static_cast<int>(indices_.size()));
    }
    void push(const std::vector<int>& face) { push(std::span<const int>(face)); }
    std::vector<int> at(int i) const { auto s = (*this)[i]; return {s.begin(), s.end()}; }

private:
    std::vector<int> offsets_{0};
    std::vector<int> indices_;
};

// A convex polytope, or one cell of a tessellation. Spherical polytopes are
// embedded in the Euclidean space of form.ambient(); hyperbolic cells use
// hyperboloid coordinates. faces[r] holds the rank-r faces as sorted vertex
// index sets, with faces[0] the singletons.
struct Polytope {
    SpaceForm geometry = SpaceForm::Spherical;
    BilinearForm form;
    int rank = 0;
    std::vector<Point> vertices;
    std::vector<FaceList> faces;
    double edge_length = std::numeric_limits<double>::quiet_NaN();

    // Optional provenance: face_type[r][i] indexes type_nodes[r].
    std::vector<std::vector<int>> face_type;
    std::vector<std::vector<std::vector<int>>> type_nodes;

    const FaceList& facets() const { return faces[rank - 1]; }
    std::vector<int> f_vector() const;
    // Alternating sum f_0 - f_1 + ... over ranks 0..rank-1.
    long long euler_characteristic() const;
    Mat vertex_matrix() const;  // one column per vertex
};

// Convex hull of points, with the full face lattice. The points may lie in a
// proper affine subspace; rank is the dimension of their affine hull.
Polytope convex_hull(const std::vector<Vec>& points, double tol = 1e-8);

// Facets of P containing each vertex, sorted.
std::vector<std::vector<int>> vertex_facets(const Polytope& p);

// For each ridge, the two facets that contain it, in ridge order.
std::vector<std::pair<int, int>> ridge_facets(const Polytope& p);

// Outward facet normals: unit Euclidean normals in the affine hull for
// spherical and Euclidean geometry, Lorentzian unit normals n with
// <n, interior> < 0 for hyperbolic cells.
std::vector<Vec> facet_normals(const Polytope& p, double tol = 1e-8);

// arccos(-<n_i, n_j>) for each ridge, in ridge order.
std::vector<double> dihedral_angles(const Polytope& p, double tol = 1e-8);

std::vector<double> edge_lengths(const Polytope& p);

// Sub-polytope on the vertices of the given face, re-indexed.
Polytope face_polytope(const Polytope& p, int rank, int index);

// Vertex figure at v: neighbours of v, with one face for every face of P containing v.
Polytope vertex_figure(const Polytope& p, int v);

// Equal edges and concyclic vertices for polygons; for higher rank, all facets
// and vertex figures regular and mutually congruent (compared by their
// sorted pairwise distances).
bool geometrically_regular(const Polytope& p, double tol = 1e-8);

// Sorted pairwise distances; a congruence invariant.
std::vector<double> distance_profile(const Polytope& p);

// Identical face sets in every rank, with vertices matched by index.
bool same_lattice(const Polytope& a, const Polytope& b);

} // namespace coxeterkit
