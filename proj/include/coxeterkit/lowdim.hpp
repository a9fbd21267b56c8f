#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "coxeterkit/gram.hpp"

namespace coxeterkit {

// Angle-sum rule, cross-checked against the 3x3 Gram signature.
SpaceForm triangle_geometry(double a, double b, double c, double tol = 1e-9);

// Face angles at a vertex with dihedral angles a1, a2, a3; theta_i is opposite a_i.
std::array<double, 3> link_face_angles(double a1, double a2, double a3, double tol = 1e-9);

// Facets F1..F4, with a1 = F1F2, a2 = F1F3, a3 = F2F3, a4 = F3F4, a5 = F2F4, a6 = F1F4.
// Vertex i is the one opposite facet Fi.
Mat tetrahedron_gram(const std::array<double, 6>& a);

struct TetrahedronResult {
    SpaceForm geometry = SpaceForm::Spherical;
    std::vector<int> ideal_vertices;  // 1-based, opposite facet index
    double theta_sum = 0;             // face angles of F4
    Signature signature;
};
TetrahedronResult tetrahedron_geometry(const std::array<double, 6>& a, double tol = 1e-9);

// a1..a3 on the lateral edges Q1Q2, Q2Q3, Q3Q1; a4..a6 on T Q1, T Q2, T Q3 for the top
// triangle T; a7..a9 on B Q1, B Q2, B Q3 for the bottom triangle B.
struct PrismResult {
    bool realizable = false;
    int failed_condition = 0;  // 1 or 2
};
PrismResult prism_realizable(const std::array<double, 9>& a, double tol = 1e-9);

// Polyhedral graph given by faces as cyclic vertex sequences (0-based ids).
class PlanarPolyhedronGraph {
public:
    struct Edge {
        int u, v;   // endpoints
        int f, g;   // incident faces, f < g
    };

    explicit PlanarPolyhedronGraph(std::vector<std::vector<int>> faces);
    static PlanarPolyhedronGraph from_json(const std::string& text);

    int vertex_count() const { return static_cast<int>(vertex_edges_.size()); }
    int face_count() const { return static_cast<int>(faces_.size()); }
    const std::vector<std::vector<int>>& faces() const { return faces_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& vertex_edges(int v) const { return vertex_edges_[v]; }
    std::vector<int> vertex_faces(int v) const;
    int valence(int v) const { return static_cast<int>(vertex_edges_[v].size()); }

    // Index of the edge shared by two faces, or -1.
    int edge_between(int f, int g) const;

    bool is_tetrahedron() const;
    bool is_triangular_prism() const;

private:
    std::vector<std::vector<int>> faces_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> vertex_edges_;
    std::map<std::pair<int, int>, int> face_pair_edge_;
};

// Dihedral angles keyed by the pair of faces meeting at an edge.
struct AngleAssignment {
    std::map<std::pair<int, int>, double> angles;
    double default_angle = -1;  // used for pairs not listed when positive

    double at(int f, int g) const;
    void set(int f, int g, double angle);
    static AngleAssignment from_json(const std::string& text);
};

struct AndreevResult {
    bool realizable = false;
    int condition = 0;          // first violated condition 1..5
    std::vector<int> faces;     // witness faces
    std::vector<int> vertices;  // witness vertices
    std::string witness;
};
AndreevResult andreev_check(const PlanarPolyhedronGraph& p, const AngleAssignment& angles, double tol = 1e-9);

} // namespace coxeterkit
