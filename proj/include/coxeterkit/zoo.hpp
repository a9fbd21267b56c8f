#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "coxeterkit/diagram.hpp"
#include "coxeterkit/polytope.hpp"
#include "coxeterkit/wythoff.hpp"

namespace coxeterkit {

// ---- E8 -------------------------------------------------------------------

// A vector of (1/2)Z^8 stored as twice its coordinates.
using HalfVector = std::array<int, 8>;

Vec to_vec(const HalfVector& t);
// Four times the Euclidean product, exact.
long long dot4(const HalfVector& a, const HalfVector& b);
// Z^8 or (Z + 1/2)^8 with even coordinate sum.
bool in_e8(const HalfVector& t);

struct LatticeBasis {
    std::array<HalfVector, 8> basis;

    // Exact Gram matrix of the basis.
    std::array<std::array<int, 8>, 8> gram() const;
};

// e1-e2, e2-e3, e3-e4, e4-e5, e5-e6, e6+e7, -(e1+...+e8)/2, e6-e7.
LatticeBasis e8_basis();
// Cartan matrix of E8 in the same node order: the path 1-...-7 with node 8 on node 5.
std::array<std::array<int, 8>, 8> e8_cartan();
CoxeterDiagram e8_diagram();

// The 240 minimal vectors, in lexicographic order of their doubled coordinates.
std::vector<HalfVector> e8_roots();

// Orbit of e8 - e1 under the basis reflections, with the full face lattice.
Polytope build_421(const BuildOptions& opt = {});

// A point of Q^8 as integer numerators over a common positive denominator.
struct RationalPoint {
    std::array<long long, 8> num{};
    long long den = 1;
};

struct HoleNeighbors {
    int count = 0;
    double distance = 0;
    long long distance_sq_num = 0;  // squared distance = num / den
    long long distance_sq_den = 1;
    std::vector<HalfVector> nearest;
};

// Nearest lattice points to h, found by scanning every doubled coordinate
// within `bound` of 2h. The window provably holds all nearest points when their
// distance is at most bound / 2, and otherwise the call throws. With recheck
// set, the scan is repeated at bound + 1 and a disagreement throws.
HoleNeighbors hole_neighbors(const RationalPoint& h, int bound = 3, bool recheck = true);

// ---- Quaternions ------------------------------------------------------------

// (w, x, y, z) for w + xi + yj + zk.
using Quaternion = Eigen::Vector4d;
Quaternion qmul(const Quaternion& a, const Quaternion& b);

struct QuaternionGroup {
    std::string name;
    std::vector<Quaternion> elements;  // canonical order
};

// The 24 unit Hurwitz quaternions.
QuaternionGroup binary_tetrahedral();
// Closure of T*24 and (phi + phi^-1 i + j) / 2; validated to have order 120.
QuaternionGroup binary_icosahedral();
// True when the set is closed under products and inverses and contains 1.
bool is_group(const QuaternionGroup& g, double tol = 1e-9);

struct QuaternionPolytopes {
    QuaternionGroup t24;
    QuaternionGroup i120;
    std::vector<Vec> snub_vertices;  // I*120 minus T*24
    Polytope cell24;
    Polytope cell600;
    Polytope snub24;
};
QuaternionPolytopes quaternion_polytopes();

// ---- Seed-vector families -----------------------------------------------------

inline constexpr int kMaxFamilyDimension = 8;

// A_n with the given rings (1-based, node i between coordinates i and i+1):
// permutations of the seed (a_1, ..., a_{n+1}), a_1 = 0, a_{i+1} = a_i + [i ringed].
Polytope a_seed_polytope(int n, const std::set<int>& rings, const BuildOptions& opt = {});
std::vector<Vec> a_seed_vertices(int n, const std::set<int>& rings);

// B_n with node 1 the sign change of the first coordinate and node i (i >= 2)
// the swap of coordinates i-1 and i: signed permutations of (c_1, ..., c_n),
// c_1 = [1 ringed], c_i = c_{i-1} + sqrt(2) [i ringed].
Polytope b_seed_polytope(int n, const std::set<int>& rings, const BuildOptions& opt = {});
std::vector<Vec> b_seed_vertices(int n, const std::set<int>& rings);

// {2x - 1 : x in {0,1}^n with even coordinate sum}.
Polytope demicube(int n, const BuildOptions& opt = {});
std::vector<Vec> demicube_vertices(int n);
// D_n: path 1 - ... - (n-1), node n on node n-2, node n ringed.
CoxeterDiagram demicube_diagram(int n);

Polytope permutohedron(int n, const BuildOptions& opt = {});
Polytope omnitruncated_cube(int n, const BuildOptions& opt = {});

// ---- Diagonal slice --------------------------------------------------------------

// The hyperplane x_1 + ... + x_{n+1} = 0 cut by the unit cubes of Z^(n+1),
// in an orthonormal frame of the hyperplane. Cell type k - 1 is the slice
// with k unit coordinates (1 <= k <= n). Cells carry empty words.
TessellationPatch diagonal_slice_tessellation(int n, int depth);

// Layered variant for n = 3: the slab of cells between the planes x_1 = 0 and
// x_1 = 1, reached within `depth` crossings inside the slab, reflected
// repeatedly across its bounding planes. Cell layer holds the signed slab index,
// and adjacency is by shared 2-faces.
TessellationPatch layered_slice_tessellation(int depth);

} // namespace coxeterkit
