#include "coxeterkit/lowdim.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace coxeterkit {

namespace {

constexpr double kPi = std::numbers::pi;

void check_angle(double a, double tol, bool allow_zero) {
    if (!(a <= kPi / 2 + tol) || !(allow_zero ? a >= -tol : a > tol))
        throw Error("lowdim", "dihedral angle " + std::to_string(a) + " outside " + (allow_zero ? "[0" : "(0") + ", pi/2]");
}

SpaceForm from_signature(const Signature& s, int k) {
    if (s.positive == k) return SpaceForm::Spherical;
    if (s.zero >= 1 && s.negative == 0) return SpaceForm::Euclidean;
    return SpaceForm::Hyperbolic;
}

SpaceForm by_sum(double sum, double tol) {
    if (sum > kPi + tol) return SpaceForm::Spherical;
    if (sum < kPi - tol) return SpaceForm::Hyperbolic;
    return SpaceForm::Euclidean;
}

// Agreement is only demanded away from the boundary of the criterion.
void cross_check(SpaceForm by_rule, SpaceForm by_gram, double margin, const char* what) {
    if (margin > 1e-6 && by_rule != by_gram)
        throw Error("lowdim", std::string("internal consistency: ") + what + " rule gives " + to_string(by_rule) +
                                  " but the Gram signature gives " + to_string(by_gram));
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

} // namespace

SpaceForm triangle_geometry(double a, double b, double c, double tol) {
    for (double x : {a, b, c}) check_angle(x, tol, true);
    const double sum = a + b + c;
    SpaceForm rule = by_sum(sum, tol);
    if (rule != SpaceForm::Hyperbolic)
        for (double x : {a, b, c})
            if (x <= tol) throw Error("lowdim", "an ideal vertex needs a hyperbolic triangle");
    Mat g(3, 3);
    g << 1, -std::cos(c), -std::cos(b), -std::cos(c), 1, -std::cos(a), -std::cos(b), -std::cos(a), 1;
    cross_check(rule, from_signature(signature(g), 3), std::abs(sum - kPi), "angle-sum");
    return rule;
}

std::array<double, 3> link_face_angles(double a1, double a2, double a3, double tol) {
    for (double x : {a1, a2, a3}) check_angle(x, tol, false);
    if (a1 + a2 + a3 < kPi - tol) throw Error("lowdim", "dihedral angles at a vertex must sum to at least pi");
    const std::array<double, 3> a{a1, a2, a3};
    std::array<double, 3> theta{};
    for (int i = 0; i < 3; ++i) {
        const double x = a[i], y = a[(i + 1) % 3], z = a[(i + 2) % 3];
        const double c = (std::cos(x) + std::cos(y) * std::cos(z)) / (std::sin(y) * std::sin(z));
        theta[i] = std::acos(std::clamp(c, -1.0, 1.0));
    }
    return theta;
}

Mat tetrahedron_gram(const std::array<double, 6>& a) {
    auto c = [&](int i) { return -std::cos(a[i - 1]); };
    Mat g(4, 4);
    g << 1, c(1), c(2), c(6),
         c(1), 1, c(3), c(5),
         c(2), c(3), 1, c(4),
         c(6), c(5), c(4), 1;
    return g;
}

TetrahedronResult tetrahedron_geometry(const std::array<double, 6>& a, double tol) {
    for (double x : a) check_angle(x, tol, false);
    auto al = [&](int i) { return a[i - 1]; };
    // Vertex i lies opposite facet Fi; its three edges.
    const std::array<std::array<int, 3>, 4> vertex_edges{{{3, 5, 4}, {2, 6, 4}, {1, 6, 5}, {1, 2, 3}}};
    TetrahedronResult r;
    for (int v = 0; v < 4; ++v) {
        double s = 0;
        for (int e : vertex_edges[v]) s += al(e);
        if (s < kPi - tol) throw Error("lowdim", "dihedral angles at vertex " + std::to_string(v + 1) + " sum below pi");
        if (s <= kPi + tol) r.ideal_vertices.push_back(v + 1);
    }
    // Face F4 meets vertices 1, 2, 3; its angle at each is opposite the edge not on F4.
    r.theta_sum = link_face_angles(al(3), al(5), al(4), tol)[0] + link_face_angles(al(2), al(6), al(4), tol)[0] +
                  link_face_angles(al(1), al(6), al(5), tol)[0];
    r.geometry = by_sum(r.theta_sum, 1e-9);
    r.signature = signature(tetrahedron_gram(a));
    cross_check(r.geometry, from_signature(r.signature, 4), std::abs(r.theta_sum - kPi), "face-angle");
    if (!r.ideal_vertices.empty() && r.geometry != SpaceForm::Hyperbolic)
        throw Error("lowdim", "ideal vertices need a hyperbolic tetrahedron");
    return r;
}

PrismResult prism_realizable(const std::array<double, 9>& a, double tol) {
    for (double x : a) check_angle(x, tol, false);
    auto al = [&](int i) { return a[i - 1]; };
    for (int i = 1; i <= 3; ++i) {
        const int next = i % 3 + 1;
        for (int cap : {3, 6}) {
            const double s = al(i) + al(cap + i) + al(cap + next);
            if (s < kPi - tol)
                throw Error("lowdim", std::string("dihedral angles at the ") + (cap == 3 ? "top" : "bottom") +
                                          " vertex Q" + std::to_string(i) + "Q" + std::to_string(next) + " sum below pi");
        }
    }
    PrismResult r;
    if (al(1) + al(2) + al(3) >= kPi - tol) { r.failed_condition = 1; return r; }
    bool all_right = true;
    for (int i = 4; i <= 9; ++i) all_right = all_right && near(al(i), kPi / 2, tol);
    if (all_right) { r.failed_condition = 2; return r; }
    r.realizable = true;
    return r;
}

PlanarPolyhedronGraph::PlanarPolyhedronGraph(std::vector<std::vector<int>> faces) : faces_(std::move(faces)) {
    int max_v = -1;
    for (auto& f : faces_) {
        if (f.size() < 3) throw Error("lowdim", "faces need at least 3 vertices");
        for (int v : f) {
            if (v < 0) throw Error("lowdim", "vertex ids are non-negative");
            max_v = std::max(max_v, v);
        }
    }
    vertex_edges_.assign(max_v + 1, {});
    std::map<std::pair<int, int>, std::vector<int>> edge_faces;
    for (int fi = 0; fi < face_count(); ++fi) {
        auto& f = faces_[fi];
        for (std::size_t i = 0; i < f.size(); ++i) {
            int u = f[i], v = f[(i + 1) % f.size()];
            edge_faces[{std::min(u, v), std::max(u, v)}].push_back(fi);
        }
    }
    for (auto& [uv, fs] : edge_faces) {
        if (fs.size() != 2 || fs[0] == fs[1])
            throw Error("lowdim", "edge " + std::to_string(uv.first) + "-" + std::to_string(uv.second) +
                                      " is not shared by exactly two faces");
        Edge e{uv.first, uv.second, std::min(fs[0], fs[1]), std::max(fs[0], fs[1])};
        if (face_pair_edge_.count({e.f, e.g})) throw Error("lowdim", "two faces share more than one edge");
        face_pair_edge_[{e.f, e.g}] = static_cast<int>(edges_.size());
        vertex_edges_[e.u].push_back(static_cast<int>(edges_.size()));
        vertex_edges_[e.v].push_back(static_cast<int>(edges_.size()));
        edges_.push_back(e);
    }
    for (int v = 0; v < vertex_count(); ++v)
        if (vertex_edges_[v].empty()) throw Error("lowdim", "vertex ids must be contiguous");
    if (vertex_count() - static_cast<int>(edges_.size()) + face_count() != 2)
        throw Error("lowdim", "graph violates V - E + F = 2");
}

PlanarPolyhedronGraph PlanarPolyhedronGraph::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw Error("lowdim", std::string("bad polyhedron JSON: ") + e.what());
    }
    if (!j.contains("faces")) throw Error("lowdim", "polyhedron JSON needs a 'faces' array");
    return PlanarPolyhedronGraph(j["faces"].get<std::vector<std::vector<int>>>());
}

std::vector<int> PlanarPolyhedronGraph::vertex_faces(int v) const {
    std::set<int> fs;
    for (int e : vertex_edges_[v]) { fs.insert(edges_[e].f); fs.insert(edges_[e].g); }
    return {fs.begin(), fs.end()};
}

int PlanarPolyhedronGraph::edge_between(int f, int g) const {
    auto it = face_pair_edge_.find({std::min(f, g), std::max(f, g)});
    return it == face_pair_edge_.end() ? -1 : it->second;
}

bool PlanarPolyhedronGraph::is_tetrahedron() const { return face_count() == 4 && vertex_count() == 4; }

bool PlanarPolyhedronGraph::is_triangular_prism() const {
    if (face_count() != 5 || vertex_count() != 6) return false;
    int tri = 0, quad = 0;
    for (auto& f : faces_) { tri += f.size() == 3; quad += f.size() == 4; }
    return tri == 2 && quad == 3;
}

double AngleAssignment::at(int f, int g) const {
    auto it = angles.find({std::min(f, g), std::max(f, g)});
    if (it != angles.end()) return it->second;
    if (default_angle > 0) return default_angle;
    throw Error("lowdim", "no angle for the edge between faces " + std::to_string(f) + " and " + std::to_string(g));
}

void AngleAssignment::set(int f, int g, double angle) { angles[{std::min(f, g), std::max(f, g)}] = angle; }

AngleAssignment AngleAssignment::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw Error("lowdim", std::string("bad angle JSON: ") + e.what());
    }
    AngleAssignment a;
    if (j.contains("default_angle")) a.default_angle = j["default_angle"].get<double>();
    if (j.contains("default_pi_over")) a.default_angle = kPi / j["default_pi_over"].get<double>();
    if (j.contains("angles"))
        for (auto& e : j["angles"]) {
            auto fs = e.at("faces").get<std::vector<int>>();
            if (fs.size() != 2) throw Error("lowdim", "angle entries name two faces");
            double v = e.contains("pi_over") ? kPi / e["pi_over"].get<double>() : e.at("angle").get<double>();
            a.set(fs[0], fs[1], v);
        }
    return a;
}

AndreevResult andreev_check(const PlanarPolyhedronGraph& p, const AngleAssignment& angles, double tol) {
    if (p.is_tetrahedron()) throw Error("lowdim", "Andreev's conditions exclude the tetrahedron");
    if (p.is_triangular_prism()) throw Error("lowdim", "Andreev's conditions exclude the triangular prism");
    for (int v = 0; v < p.vertex_count(); ++v)
        if (p.valence(v) != 3 && p.valence(v) != 4)
            throw Error("lowdim", "vertex " + std::to_string(v) + " has valence " + std::to_string(p.valence(v)));

    auto& edges = p.edges();
    std::vector<double> alpha(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
        alpha[e] = angles.at(edges[e].f, edges[e].g);
        check_angle(alpha[e], tol, false);
    }
    const double right = kPi / 2;
    auto fail = [](int cond, std::vector<int> faces, std::vector<int> verts, std::string why) {
        return AndreevResult{false, cond, std::move(faces), std::move(verts), std::move(why)};
    };

    for (int v = 0; v < p.vertex_count(); ++v) {
        if (p.valence(v) != 3) continue;
        double s = 0;
        for (int e : p.vertex_edges(v)) s += alpha[e];
        if (s < kPi - tol)
            return fail(1, p.vertex_faces(v), {v}, "angles at 3-valent vertex " + std::to_string(v) + " sum to " + std::to_string(s));
    }
    for (int v = 0; v < p.vertex_count(); ++v) {
        if (p.valence(v) != 4) continue;
        for (int e : p.vertex_edges(v))
            if (!near(alpha[e], right, tol))
                return fail(2, p.vertex_faces(v), {v}, "4-valent vertex " + std::to_string(v) + " has a non-right angle");
    }

    const int nf = p.face_count();
    auto endpoints_distinct = [&](const std::vector<int>& es) {
        std::set<int> pts;
        for (int e : es) { pts.insert(edges[e].u); pts.insert(edges[e].v); }
        return pts.size() == 2 * es.size();
    };
    for (int a = 0; a < nf; ++a)
        for (int b = a + 1; b < nf; ++b) {
            int eab = p.edge_between(a, b);
            if (eab < 0) continue;
            for (int c = b + 1; c < nf; ++c) {
                int ebc = p.edge_between(b, c), eca = p.edge_between(c, a);
                if (ebc < 0 || eca < 0 || !endpoints_distinct({eab, ebc, eca})) continue;
                double s = alpha[eab] + alpha[ebc] + alpha[eca];
                if (s >= kPi - tol)
                    return fail(3, {a, b, c}, {}, "prismatic 3-circuit with angle sum " + std::to_string(s));
            }
        }
    // 4-cycles a-b-c-d-a with a the smallest face and b < d.
    for (int a = 0; a < nf; ++a)
        for (int b = a + 1; b < nf; ++b) {
            int eab = p.edge_between(a, b);
            if (eab < 0) continue;
            for (int c = a + 1; c < nf; ++c) {
                int ebc = c == b ? -1 : p.edge_between(b, c);
                if (ebc < 0) continue;
                for (int d = b + 1; d < nf; ++d) {
                    if (d == c) continue;
                    int ecd = p.edge_between(c, d), eda = p.edge_between(d, a);
                    if (ecd < 0 || eda < 0 || !endpoints_distinct({eab, ebc, ecd, eda})) continue;
                    bool all_right = true;
                    for (int e : {eab, ebc, ecd, eda}) all_right = all_right && near(alpha[e], right, tol);
                    if (all_right) return fail(4, {a, b, c, d}, {}, "prismatic 4-circuit with four right angles");
                }
            }
        }
    // Faces f1, f3 meeting only at the 4-valent vertex v, and a face f2 away from v adjacent to both.
    for (int v = 0; v < p.vertex_count(); ++v) {
        if (p.valence(v) != 4) continue;
        std::vector<int> around = p.vertex_faces(v);
        for (std::size_t i = 0; i < around.size(); ++i)
            for (std::size_t j = i + 1; j < around.size(); ++j) {
                int f1 = around[i], f3 = around[j];
                if (p.edge_between(f1, f3) >= 0) continue;
                for (int f2 = 0; f2 < nf; ++f2) {
                    if (std::find(around.begin(), around.end(), f2) != around.end()) continue;
                    int e1 = p.edge_between(f1, f2), e2 = p.edge_between(f2, f3);
                    if (e1 < 0 || e2 < 0) continue;
                    if (near(alpha[e1], right, tol) && near(alpha[e2], right, tol))
                        return fail(5, {f1, f2, f3}, {v}, "faces through 4-valent vertex " + std::to_string(v) +
                                                              " joined by two right-angled edges");
                }
            }
    }
    AndreevResult ok;
    ok.realizable = true;
    return ok;
}

} // namespace coxeterkit
