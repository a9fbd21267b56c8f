#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coxeterkit/polytope.hpp"
#include "coxeterkit/wythoff.hpp"

namespace coxeterkit {

enum class ExportFormat { Off, Obj, Svg, Json };
ExportFormat export_format_from_string(const std::string& s);  // "off", "obj", "svg", "json"
ExportFormat export_format_from_path(const std::string& path);  // by extension

// Vertices of a polygonal face in cyclic order.
std::vector<int> cyclic_order(const Polytope& p, int face_rank, int index);

// Vertex coordinates as written by the exporters: hyperboloid points go
// through the Klein projection, everything else is written as stored.
std::vector<Vec> export_coordinates(const Polytope& p);

// OFF:
//   OFF
//   V F E
//   one line per vertex, coordinates separated by spaces (%.17g)
//   one line per face: count then vertex indices
// Faces are the 2-faces in cyclic order for rank 3, the polygon itself for
// rank 2, and the facets as sorted index lists for rank >= 4.
std::string to_off(const Polytope& p);

// Wavefront OBJ of a polygon or 3-polytope with three ambient coordinates.
std::string to_obj(const Polytope& p);

// f-vector, symmetry class (when a diagram is given), edge length, geometry.
std::string to_json(const Polytope& p, const std::optional<SymmetryClass>& symmetry = std::nullopt);
std::string to_json(const TessellationPatch& patch);

// Cells of a 2-dimensional patch as polygons: the Klein disc for hyperbolic
// patches, a fitted box for Euclidean ones.
std::string to_svg(const TessellationPatch& patch);

// Dispatch; throws for combinations without a meaning.
std::string export_polytope(const Polytope& p, ExportFormat f, const std::optional<SymmetryClass>& symmetry = std::nullopt);
std::string export_patch(const TessellationPatch& patch, ExportFormat f);

void write_file(const std::string& path, const std::string& contents);

} // namespace coxeterkit
