#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coxeterkit/diagram.hpp"
#include "coxeterkit/gram.hpp"
#include "coxeterkit/polytope.hpp"

namespace coxeterkit {

inline constexpr int kDefaultOrbitCap = 1000000;

// Seed of the Wythoff construction: on the unringed mirrors, at equal form
// value -c from the ringed ones. Returns the ideal vertex when that solution
// is null (single ring only).
Point seed_point(const MirrorSystem& m, const std::set<int>& rings, double tol = 1e-9);

// BFS closure under gens, deduplicated and sorted canonically. Throws when
// more than cap points appear.
std::vector<Point> orbit_closure(const BilinearForm& form, const std::vector<Point>& points,
                                 const std::vector<Isometry>& gens, int cap = kDefaultOrbitCap, double tol = 1e-9);

// Mirrors realising a diagram: the spherical k-node case acts linearly on R^k,
// the Euclidean case by affine mirrors of R^(k-1), the hyperbolic case on R^(k-1,1).
MirrorSystem diagram_mirrors(const CoxeterDiagram& d, double tol = 1e-9);

struct BuildOptions {
    int cap = kDefaultOrbitCap;
    double tol = 1e-9;
};

// Wythoff polytope of a ringed spherical diagram. For a Euclidean or hyperbolic
// simplex diagram, the first finite cell of the tessellation.
Polytope build(const CoxeterDiagram& d, const BuildOptions& opt = {});

// Same construction with explicitly given mirrors (e.g. a lattice basis). The
// mirror normals need not be unit; the seed is given directly.
Polytope build_from_mirrors(const CoxeterDiagram& d, const BilinearForm& form, const std::vector<Vec>& normals,
                            const Vec& seed, const BuildOptions& opt = {});

struct PatchCell {
    std::vector<int> word;      // generators applied to the base cell of its type, rightmost first
    int type = 0;               // index into TessellationPatch::cell_types
    std::vector<int> vertices;  // indices into TessellationPatch::points, in base-cell order
    int layer = 0;
};

struct TessellationPatch {
    SpaceForm geometry = SpaceForm::Euclidean;
    BilinearForm form;
    int depth = 0;
    std::vector<Point> points;
    std::vector<Polytope> cell_types;              // base cells
    std::vector<std::vector<int>> cell_type_nodes; // subdiagram of each type
    std::vector<PatchCell> cells;
    std::vector<std::pair<int, int>> adjacency;    // cells sharing a facet, i < j

    // Cell i as a stand-alone polytope in the patch coordinates.
    Polytope cell_polytope(int i) const;
};

// Cells reached from the base cell through at most `depth` facet crossings.
TessellationPatch tessellation_patch(const CoxeterDiagram& d, int depth, const BuildOptions& opt = {});

// Order of the reflection group; nullopt when infinite.
std::optional<std::uint64_t> group_order(const CoxeterDiagram& d, double tol = 1e-9);

enum class SymmetryClass { Regular, Semiregular, Uniform, None };
const char* to_string(SymmetryClass c);

// Number of chains D1 < D2 < ... < Dk of Coxeter-Wythoff subdiagrams with |Di| = i.
std::uint64_t wythoff_chain_count(const CoxeterDiagram& d);

SymmetryClass symmetry_class(const Polytope& p, const CoxeterDiagram& d, double tol = 1e-8);

} // namespace coxeterkit
