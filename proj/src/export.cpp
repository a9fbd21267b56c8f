#include "coxeterkit/export.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace coxeterkit {

ExportFormat export_format_from_string(const std::string& s) {
    if (s == "off") return ExportFormat::Off;
    if (s == "obj") return ExportFormat::Obj;
    if (s == "svg") return ExportFormat::Svg;
    if (s == "json") return ExportFormat::Json;
    throw Error("export", "unknown format '" + s + "'");
}

ExportFormat export_format_from_path(const std::string& path) {
    auto dot = path.rfind('.');
    if (dot == std::string::npos) throw Error("export", "cannot infer a format from '" + path + "'");
    std::string ext = path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return export_format_from_string(ext);
}

std::vector<int> cyclic_order(const Polytope& p, int face_rank, int index) {
    if (face_rank != 2 || face_rank > p.rank) throw Error("export", "cyclic order needs a 2-face");
    std::vector<int> verts;
    if (face_rank == p.rank) {
        verts.resize(p.vertices.size());
        for (std::size_t i = 0; i < verts.size(); ++i) verts[i] = static_cast<int>(i);
    } else {
        verts = p.faces.at(face_rank).at(index);
    }
    std::map<int, std::vector<int>> adj;
    const FaceList& edges = p.faces.at(1);
    for (int e = 0; e < edges.size(); ++e) {
        auto s = edges[e];
        if (std::binary_search(verts.begin(), verts.end(), s[0]) && std::binary_search(verts.begin(), verts.end(), s[1])) {
            adj[s[0]].push_back(s[1]);
            adj[s[1]].push_back(s[0]);
        }
    }
    std::vector<int> out{verts.front()};
    int prev = -1, cur = verts.front();
    while (out.size() < verts.size()) {
        const auto& nb = adj[cur];
        if (nb.size() != 2) throw Error("export", "face boundary is not a cycle");
        int next = nb[0] == prev ? nb[1] : nb[0];
        prev = cur;
        cur = next;
        out.push_back(cur);
    }
    return out;
}

std::vector<Vec> export_coordinates(const Polytope& p) {
    std::vector<Vec> out;
    for (auto& v : p.vertices) out.push_back(v.geometry == FormKind::Lorentzian ? klein_project(v) : v.coords);
    return out;
}

namespace {

std::string number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string coordinate_line(const Vec& v) {
    std::string s;
    for (int i = 0; i < v.size(); ++i) {
        if (i) s += ' ';
        s += number(v[i]);
    }
    return s;
}

std::vector<std::vector<int>> off_faces(const Polytope& p) {
    std::vector<std::vector<int>> faces;
    if (p.rank == 2) {
        faces.push_back(cyclic_order(p, 2, 0));
    } else if (p.rank == 3) {
        for (int i = 0; i < p.faces[2].size(); ++i) faces.push_back(cyclic_order(p, 2, i));
    } else if (p.rank >= 4) {
        const FaceList& f = p.facets();
        for (int i = 0; i < f.size(); ++i) faces.push_back(f.at(i));
    } else {
        throw Error("export", "OFF needs rank at least 2");
    }
    return faces;
}

nlohmann::json double_or_null(double x) {
    return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

} // namespace

std::string to_off(const Polytope& p) {
    auto faces = off_faces(p);
    const int edges = p.rank >= 2 ? p.faces[1].size() : 0;
    std::ostringstream os;
    os << "OFF\n" << p.vertices.size() << ' ' << faces.size() << ' ' << edges << '\n';
    for (auto& v : export_coordinates(p)) os << coordinate_line(v) << '\n';
    for (auto& f : faces) {
        os << f.size();
        for (int i : f) os << ' ' << i;
        os << '\n';
    }
    return os.str();
}

std::string to_obj(const Polytope& p) {
    if (p.rank != 2 && p.rank != 3) throw Error("export", "OBJ needs a polygon or a 3-polytope");
    auto coords = export_coordinates(p);
    if (!coords.empty() && coords.front().size() > 3) throw Error("export", "OBJ needs at most three coordinates");
    std::ostringstream os;
    for (auto& v : coords) {
        os << 'v';
        for (int i = 0; i < 3; ++i) os << ' ' << number(i < v.size() ? v[i] : 0.0);
        os << '\n';
    }
    for (auto& f : off_faces(p)) {
        os << 'f';
        for (int i : f) os << ' ' << i + 1;
        os << '\n';
    }
    return os.str();
}

std::string to_json(const Polytope& p, const std::optional<SymmetryClass>& symmetry) {
    nlohmann::json j;
    j["geometry"] = to_string(p.geometry);
    j["rank"] = p.rank;
    j["f_vector"] = p.f_vector();
    j["edge_length"] = double_or_null(p.edge_length);
    j["symmetry"] = symmetry ? nlohmann::json(to_string(*symmetry)) : nlohmann::json(nullptr);
    int ideal = 0;
    for (auto& v : p.vertices) ideal += v.ideal();
    j["ideal_vertices"] = ideal;
    nlohmann::json verts = nlohmann::json::array();
    for (auto& v : export_coordinates(p)) verts.push_back(std::vector<double>(v.data(), v.data() + v.size()));
    j["vertices"] = verts;
    nlohmann::json facets = nlohmann::json::array();
    if (p.rank >= 1)
        for (int i = 0; i < p.facets().size(); ++i) facets.push_back(p.facets().at(i));
    j["facets"] = facets;
    return j.dump(2) + "\n";
}

std::string to_json(const TessellationPatch& patch) {
    nlohmann::json j;
    j["geometry"] = to_string(patch.geometry);
    j["depth"] = patch.depth;
    j["cell_count"] = patch.cells.size();
    nlohmann::json types = nlohmann::json::array();
    for (std::size_t t = 0; t < patch.cell_types.size(); ++t)
        types.push_back({{"nodes", patch.cell_type_nodes[t]}, {"f_vector", patch.cell_types[t].f_vector()}});
    j["cell_types"] = types;
    nlohmann::json pts = nlohmann::json::array();
    for (auto& p : patch.points) {
        Vec v = p.geometry == FormKind::Lorentzian ? klein_project(p) : p.coords;
        pts.push_back(std::vector<double>(v.data(), v.data() + v.size()));
    }
    j["points"] = pts;
    nlohmann::json cells = nlohmann::json::array();
    for (auto& c : patch.cells)
        cells.push_back({{"type", c.type}, {"layer", c.layer}, {"word", c.word}, {"vertices", c.vertices}});
    j["cells"] = cells;
    nlohmann::json adj = nlohmann::json::array();
    for (auto [a, b] : patch.adjacency) adj.push_back({a, b});
    j["adjacency"] = adj;
    return j.dump(2) + "\n";
}

std::string to_svg(const TessellationPatch& patch) {
    if (patch.cell_types.empty() || patch.cell_types.front().rank != 2)
        throw Error("export", "SVG export needs a 2-dimensional patch");
    std::vector<Vec> pts;
    for (auto& p : patch.points) pts.push_back(p.geometry == FormKind::Lorentzian ? klein_project(p) : p.coords);
    for (auto& v : pts)
        if (v.size() != 2) throw Error("export", "SVG export needs planar coordinates");

    const bool disc = patch.geometry == SpaceForm::Hyperbolic;
    double lo_x = -1, hi_x = 1, lo_y = -1, hi_y = 1;
    if (!disc && !pts.empty()) {
        lo_x = hi_x = pts[0][0];
        lo_y = hi_y = pts[0][1];
        for (auto& v : pts) {
            lo_x = std::min(lo_x, v[0]);
            hi_x = std::max(hi_x, v[0]);
            lo_y = std::min(lo_y, v[1]);
            hi_y = std::max(hi_y, v[1]);
        }
    }
    const double size = 512, margin = 8;
    const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
    const double scale = (size - 2 * margin) / span;
    auto sx = [&](double x) { return margin + (x - lo_x) * scale; };
    auto sy = [&](double y) { return size - margin - (y - lo_y) * scale; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\" viewBox=\"0 0 "
       << size << ' ' << size << "\">\n";
    if (disc)
        os << "<circle cx=\"" << number(sx(0)) << "\" cy=\"" << number(sy(0)) << "\" r=\"" << number(scale)
           << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (std::size_t i = 0; i < patch.cells.size(); ++i) {
        const PatchCell& c = patch.cells[i];
        auto order = cyclic_order(patch.cell_types[c.type], 2, 0);
        os << "<polygon data-type=\"" << c.type << "\" data-layer=\"" << c.layer << "\" points=\"";
        for (std::size_t t = 0; t < order.size(); ++t) {
            const Vec& v = pts[c.vertices[order[t]]];
            os << (t ? " " : "") << number(sx(v[0])) << ',' << number(sy(v[1]));
        }
        os << "\" fill=\"none\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string export_polytope(const Polytope& p, ExportFormat f, const std::optional<SymmetryClass>& symmetry) {
    switch (f) {
    case ExportFormat::Off: return to_off(p);
    case ExportFormat::Obj: return to_obj(p);
    case ExportFormat::Json: return to_json(p, symmetry);
    case ExportFormat::Svg: throw Error("export", "SVG export is for 2-dimensional patches");
    }
    throw Error("export", "unknown format");
}

std::string export_patch(const TessellationPatch& patch, ExportFormat f) {
    switch (f) {
    case ExportFormat::Svg: return to_svg(patch);
    case ExportFormat::Json: return to_json(patch);
    case ExportFormat::Off:
    case ExportFormat::Obj: throw Error("export", "patches export as svg or json; export single cells as off or obj");
    }
    throw Error("export", "unknown format");
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("export", "cannot open '" + path + "' for writing");
    out << contents;
    if (!out) throw Error("export", "failed writing '" + path + "'");
}

} // namespace coxeterkit
