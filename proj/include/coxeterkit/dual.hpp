#pragma once

#include <memory>
#include <vector>

#include "coxeterkit/polytope.hpp"

namespace coxeterkit {

struct DualPolytope {
    Polytope polytope;
    std::shared_ptr<const Polytope> source;
    std::vector<Vec> facet_normals;   // unit; facet j is dual to primal vertex j
    std::vector<int> radius_class;    // per dual vertex, index into radii
    std::vector<double> radii;        // ascending
};

// Polar dual {x : <x, v> <= 1 for every vertex v}. Dual vertex i comes from
// primal facet i and dual facet j from primal vertex j.
DualPolytope dual_polytope(const Polytope& p, double tol = 1e-9);

// Ridge dihedral angles, one per primal edge. Throws when they are not all
// equal within `spread`.
std::vector<double> ridge_angles(const DualPolytope& q, double spread = 1e-8);

struct HyperbolicRealization {
    Polytope polytope;               // Lorentzian coordinates, faces as in the dual
    std::vector<Vec> normals;        // Lorentzian unit facet normals
    std::vector<double> angles;      // per primal edge
    std::vector<int> ideal_vertices;
    std::vector<int> real_vertices;
};

// Klein-model realisation with the outermost radius class on the unit sphere.
HyperbolicRealization hyperbolic_realization(const DualPolytope& q, double tol = 1e-9);

} // namespace coxeterkit
