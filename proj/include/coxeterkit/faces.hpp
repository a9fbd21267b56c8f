#pragma once

#include <string>
#include <vector>

#include "coxeterkit/gram.hpp"

namespace coxeterkit {

struct FaceRecord {
    enum class Kind { RealFace, IdealVertex };

    std::vector<int> facet_set;  // 0-based facet indices, sorted
    Kind kind = Kind::RealFace;
    int dim = 0;                 // 0 for ideal vertices
    Mat gram_block;
};

struct FaceLattice {
    int n = 0;                          // dimension of the polyhedron
    int facets = 0;                     // k
    bool verified = true;               // false for non-simplex inputs
    std::vector<FaceRecord> records;    // sorted by facet set
    std::vector<std::pair<int, int>> covers;  // (a, b): record a is a facet of record b

    // f[d] counts real faces of dimension d plus, for d = 0, ideal vertices.
    std::vector<int> f_vector() const;
    int ideal_vertices() const;
    int real_vertices() const;
    int find(const std::vector<int>& facet_set) const;  // record index or -1
    // a below b: J_b is a proper subset of J_a.
    bool contains(int b, int a) const;
};

// Faces and ideal vertices of a realisable Gram matrix through the spherical and
// Euclidean principal submatrices.
FaceLattice enumerate_faces(const Mat& g, int n, double tol = 1e-9);

struct Link {
    Mat gram;
    bool euclidean = false;  // horospherical link of an ideal vertex
};
Link link_of(const Mat& g, const std::vector<int>& facet_set, double tol = 1e-9);

struct VertexPoint {
    std::vector<int> facet_set;
    Point point;
};
// Vertex coordinates of a realised simplex.
std::vector<VertexPoint> simplex_vertices(const MirrorSystem& m, const FaceLattice& lattice, double tol = 1e-9);

// Orthogonal projection onto the face {x : <x, v_j> = 0 (or v_j.x = a_j), j in J}.
Point project_onto_face(const MirrorSystem& m, const std::vector<int>& facet_set, const Point& x, double tol = 1e-9);

std::string lattice_to_json(const FaceLattice& lattice);

} // namespace coxeterkit
