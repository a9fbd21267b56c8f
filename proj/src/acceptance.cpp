#include "coxeterkit/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "coxeterkit/catalog.hpp"
#include "coxeterkit/dual.hpp"
#include "coxeterkit/lowdim.hpp"
#include "coxeterkit/wythoff.hpp"
#include "coxeterkit/zoo.hpp"

namespace coxeterkit {

namespace {

constexpr double kPi = std::numbers::pi;

struct Checks {
    int run = 0;
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what) {
        ++run;
        if (!ok) failures.push_back(what);
    }
    template <class F>
    void guard(const std::string& what, F&& f) {
        try {
            f();
        } catch (const std::exception& e) {
            ++run;
            failures.push_back(what + ": " + e.what());
        }
    }
    std::string summary() const {
        if (failures.empty()) return std::to_string(run) + " checks";
        std::string s = std::to_string(failures.size()) + "/" + std::to_string(run) + " failed: " + failures.front();
        if (failures.size() > 1) s += " (+" + std::to_string(failures.size() - 1) + " more)";
        return s;
    }
};

std::string fvec(const std::vector<int>& f) {
    std::string s = "(";
    for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + std::to_string(f[i]);
    return s + ")";
}

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("acceptance", "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Polytope build_symbol(const std::vector<int>& symbols, const std::set<int>& rings) {
    CoxeterDiagram d = from_schlafli(symbols, {});
    d.set_rings(rings);
    return build(d);
}

std::map<int, int> facet_sizes(const Polytope& p) {
    std::map<int, int> out;
    const FaceList& f = p.facets();
    for (int i = 0; i < f.size(); ++i) ++out[static_cast<int>(f[i].size())];
    return out;
}

double max_deviation(const std::vector<double>& xs, double target) {
    double d = 0;
    for (double x : xs) d = std::max(d, std::abs(x - target));
    return xs.empty() ? INFINITY : d;
}

// ---- 1 ----
void classification(Checks& c, AcceptanceTier) {
    const Catalog& cat = Catalog::bundled();
    std::vector<int> marks{2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, kInfinity};
    int checked = 0;
    for (auto& [label, d] : cat.expand(10, marks)) {
        const Geometry want = [&] {
            for (auto& f : cat.families())
                if (f.name == label.family && f.file == label.file) return f.geometry;
            return Geometry::NotASimplexDiagram;
        }();
        const int k = d.size();
        Signature s = signature(gram_from_diagram(d), 1e-9);
        Signature expect;
        switch (want) {
        case Geometry::Spherical: expect = {k, 0, 0}; break;
        case Geometry::Euclidean: expect = {k - 1, 0, 1}; break;
        case Geometry::HyperbolicCompact:
        case Geometry::HyperbolicNoncompact: expect = {k - 1, 1, 0}; break;
        default: continue;
        }
        c.expect(s == expect, label.text() + " has signature " + s.str() + ", expected " + expect.str());
        ++checked;
    }
    c.expect(checked > 300, "only " + std::to_string(checked) + " catalog diagrams were expanded");
}

// ---- 2 ----
void regular_catalog(Checks& c, AcceptanceTier) {
    struct Row {
        std::vector<int> symbols;
        std::vector<int> f;  // empty: vertices and facets only
        int vertices, facets;
    };
    const std::vector<Row> rows{
        {{3, 3}, {4, 6, 4}, 4, 4},
        {{3, 4}, {6, 12, 8}, 6, 8},
        {{5, 3}, {20, 30, 12}, 20, 12},
        {{3, 4, 3}, {}, 24, 24},
        {{3, 3, 5}, {}, 120, 600},
        {{5, 3, 3}, {}, 600, 120},
    };
    for (auto& r : rows) {
        std::string name = "{" + fvec(r.symbols).substr(1);
        name.back() = '}';
        c.guard(name, [&] {
            Polytope p = build_symbol(r.symbols, {1});
            auto f = p.f_vector();
            if (!r.f.empty()) c.expect(f == r.f, name + " f-vector " + fvec(f));
            c.expect(f.front() == r.vertices && f.back() == r.facets, name + " f-vector " + fvec(f));
        });
    }
}

// ---- 3 ----
void dihedral_angles_row(Checks& c, AcceptanceTier) {
    struct Row {
        std::vector<int> symbols;
        double angle;
    };
    for (auto& r : std::vector<Row>{{{4, 3}, kPi / 2}, {{3, 3, 4}, 2 * kPi / 3}, {{3, 4, 3}, 2 * kPi / 3}}) {
        c.guard("angles", [&] {
            Polytope p = build_symbol(r.symbols, {1});
            const double dev = max_deviation(dihedral_angles(p), r.angle);
            c.expect(dev <= 1e-9, "dihedral angle deviation " + std::to_string(dev));
        });
    }
    c.guard("{4,3,5} patch", [&] {
        TessellationPatch t = tessellation_patch(from_schlafli({4, 3, 5}, {1}), 1);
        c.expect(t.cells.size() > 1, "patch has a single cell");
        for (std::size_t i = 0; i < t.cells.size(); ++i) {
            Polytope cell = t.cell_polytope(static_cast<int>(i));
            c.expect(cell.f_vector() == std::vector<int>{8, 12, 6}, "patch cell is not a cube");
            const double dev = max_deviation(dihedral_angles(cell), 2 * kPi / 5);
            c.expect(dev <= 1e-6, "{4,3,5} cube angle deviation " + std::to_string(dev));
        }
    });
}

// ---- 4 ----
void semiregular_table(Checks& c, AcceptanceTier tier) {
    c.guard("rectified 4-simplex", [&] {
        CoxeterDiagram d = from_schlafli({3, 3, 3}, {2});
        Polytope p = build(d);
        auto fs = facet_sizes(p);
        c.expect(p.vertices.size() == 10, "rectified 4-simplex vertices " + std::to_string(p.vertices.size()));
        c.expect(fs == std::map<int, int>{{4, 5}, {6, 5}}, "rectified 4-simplex facets");
        c.expect(symmetry_class(p, d) == SymmetryClass::Semiregular, "rectified 4-simplex is not semiregular");
    });
    c.guard("5-demicube", [&] {
        Polytope p = demicube(5);
        auto fs = facet_sizes(p);
        c.expect(p.vertices.size() == 16, "5-demicube vertices " + std::to_string(p.vertices.size()));
        c.expect(fs == std::map<int, int>{{5, 16}, {8, 10}}, "5-demicube facets");
        c.expect(symmetry_class(p, demicube_diagram(5)) == SymmetryClass::Semiregular, "5-demicube is not semiregular");
    });
    if (tier == AcceptanceTier::Large)
        c.guard("4_21", [&] {
            Polytope p = build_421();
            auto fs = facet_sizes(p);
            c.expect(p.vertices.size() == 240, "4_21 vertices " + std::to_string(p.vertices.size()));
            c.expect(fs == std::map<int, int>{{8, 17280}, {14, 2160}}, "4_21 facets");
        });
}

// ---- 5 ----
void group_orders(Checks& c, AcceptanceTier) {
    struct Row {
        std::vector<int> symbols;
        std::uint64_t order;
    };
    for (auto& r : std::vector<Row>{{{3, 3}, 24}, {{4, 3}, 48}, {{5, 3}, 120}, {{5, 3, 3}, 14400}}) {
        auto o = group_order(from_schlafli(r.symbols, {1}));
        c.expect(o && *o == r.order, "group order " + (o ? std::to_string(*o) : std::string("infinite")));
    }
    c.guard("omnitruncated 120-cell", [&] {
        Polytope p = build_symbol({5, 3, 3}, {1, 2, 3, 4});
        c.expect(p.vertices.size() == 14400, "omnitruncated H4 vertices " + std::to_string(p.vertices.size()));
    });
}

// ---- 6 ----
void e8_suite(Checks& c, AcceptanceTier) {
    auto roots = e8_roots();
    c.expect(roots.size() == 240, "root count " + std::to_string(roots.size()));
    for (auto& r : roots) c.expect(dot4(r, r) == 8 && in_e8(r), "root of norm other than sqrt 2");
    c.expect(e8_basis().gram() == e8_cartan(), "basis Gram differs from the E8 matrix");
    RationalPoint deep;
    deep.num = {1, 0, 0, 0, 0, 0, 0, 0};
    auto hd = hole_neighbors(deep);
    c.expect(hd.count == 16 && hd.distance_sq_num == 1 && hd.distance_sq_den == 1 && std::abs(hd.distance - 1) <= 1e-12,
             "deep hole: " + std::to_string(hd.count) + " at " + std::to_string(hd.distance));
    RationalPoint shallow;
    shallow.num = {5, 1, 1, 1, 1, 1, 1, 1};
    shallow.den = 6;
    auto hs = hole_neighbors(shallow);
    c.expect(hs.count == 9 && hs.distance_sq_num == 8 && hs.distance_sq_den == 9 &&
                 std::abs(hs.distance - 2 * std::sqrt(2.0) / 3) <= 1e-12,
             "shallow hole: " + std::to_string(hs.count) + " at " + std::to_string(hs.distance));
}

// ---- 7 ----
void quaternion_suite(Checks& c, AcceptanceTier) {
    QuaternionPolytopes q = quaternion_polytopes();
    c.expect(q.t24.elements.size() == 24 && is_group(q.t24), "T*24");
    c.expect(q.i120.elements.size() == 120 && is_group(q.i120), "I*120");
    c.expect(q.snub_vertices.size() == 96 && q.snub24.vertices.size() == 96, "snub 24-cell vertices");
    c.expect(q.cell600.facets().size() == 600, "600-cell facets " + std::to_string(q.cell600.facets().size()));
    std::vector<int> valence(q.cell600.vertices.size(), 0);
    const FaceList& edges = q.cell600.faces[1];
    for (int e = 0; e < edges.size(); ++e)
        for (int v : edges[e]) ++valence[v];
    c.expect(std::all_of(valence.begin(), valence.end(), [](int x) { return x == 12; }), "600-cell vertex figures are not 12-valent");
}

// ---- 8 ----
SpaceForm as_space(Geometry g) {
    switch (g) {
    case Geometry::Spherical: return SpaceForm::Spherical;
    case Geometry::Euclidean: return SpaceForm::Euclidean;
    default: return SpaceForm::Hyperbolic;
    }
}

void low_dimension(Checks& c, AcceptanceTier) {
    int triangles = 0, tets = 0, rejected = 0;
    for (int a = 2; a <= 10; ++a)
        for (int b = 2; b <= 10; ++b)
            for (int cc = 2; cc <= 10; ++cc) {
                CoxeterDiagram d(3);
                if (a != 2) d.set_edge(2, 3, EdgeMark::finite(a));
                if (b != 2) d.set_edge(1, 3, EdgeMark::finite(b));
                if (cc != 2) d.set_edge(1, 2, EdgeMark::finite(cc));
                const SpaceForm by_rule = triangle_geometry(kPi / a, kPi / b, kPi / cc);
                const SpaceForm by_gram = as_space(geometry_of(d));
                c.expect(by_rule == by_gram, "triangle (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(cc) + ")");
                ++triangles;
            }
    std::array<int, 6> m{};
    std::function<void(int)> rec = [&](int i) {
        if (i == 6) {
            std::array<double, 6> ang;
            for (int t = 0; t < 6; ++t) ang[t] = kPi / m[t];
            // Facet pairs (1,2),(1,3),(2,3),(3,4),(2,4),(1,4).
            static const int pairs[6][2] = {{1, 2}, {1, 3}, {2, 3}, {3, 4}, {2, 4}, {1, 4}};
            CoxeterDiagram d(4);
            for (int t = 0; t < 6; ++t)
                if (m[t] != 2) d.set_edge(pairs[t][0], pairs[t][1], EdgeMark::finite(m[t]));
            const Geometry g = geometry_of(d);
            try {
                TetrahedronResult r = tetrahedron_geometry(ang);
                c.expect(g != Geometry::NotASimplexDiagram && r.geometry == as_space(g), "tetrahedron disagrees with its Gram signature");
                if (g == Geometry::HyperbolicNoncompact || g == Geometry::HyperbolicCompact) {
                    int euclidean_links = 0;
                    for (int v = 1; v <= 4; ++v) {
                        std::vector<int> nodes;
                        for (int f = 1; f <= 4; ++f)
                            if (f != v) nodes.push_back(f);
                        if (geometry_of(d.induced(nodes)) == Geometry::Euclidean) ++euclidean_links;
                    }
                    c.expect(euclidean_links == static_cast<int>(r.ideal_vertices.size()), "ideal vertex count disagrees");
                }
            } catch (const Error&) {
                c.expect(g == Geometry::NotASimplexDiagram, "rejected tetrahedron has a simplex Gram");
                ++rejected;
            }
            ++tets;
            return;
        }
        for (int v = 2; v <= 10; ++v) {
            m[i] = v;
            rec(i + 1);
        }
    };
    rec(0);
    std::array<double, 6> ideal;
    ideal.fill(kPi / 3);
    c.expect(tetrahedron_geometry(ideal).ideal_vertices.size() == 4, "regular ideal tetrahedron");
    c.expect(triangles == 729 && tets == 531441 && rejected > 0, "grid sizes");
}

// ---- 9 ----
void andreev(Checks& c, AcceptanceTier) {
    PlanarPolyhedronGraph dodeca = PlanarPolyhedronGraph::from_json(read_text(data_directory() + "/dodecahedron.json"));
    AngleAssignment right;
    right.default_angle = kPi / 2;
    AndreevResult r = andreev_check(dodeca, right);
    c.expect(r.realizable, "right-angled dodecahedron rejected: " + r.witness);
    for (int v = 0; v < dodeca.vertex_count(); ++v) {
        AngleAssignment a = right;
        for (int e : dodeca.vertex_edges(v)) {
            auto& edge = dodeca.edges()[e];
            a.set(edge.f, edge.g, kPi / 4);
        }
        AndreevResult bad = andreev_check(dodeca, a);
        c.expect(!bad.realizable && bad.condition == 1 && bad.vertices == std::vector<int>{v} &&
                     bad.faces == dodeca.vertex_faces(v),
                 "vertex " + std::to_string(v) + " violation has the wrong witness");
    }
}

// ---- 10 ----
void right_angled_duals(Checks& c, AcceptanceTier tier) {
    auto check = [&](const std::string& name, const Polytope& p, std::size_t ideal, std::size_t real) {
        DualPolytope q = dual_polytope(p);
        HyperbolicRealization h = hyperbolic_realization(q);
        c.expect(h.ideal_vertices.size() == ideal && h.real_vertices.size() == real,
                 name + " dual split " + std::to_string(h.ideal_vertices.size()) + "/" + std::to_string(h.real_vertices.size()));
        const double dev = max_deviation(h.angles, kPi / 2);
        c.expect(dev <= 1e-6, name + " dual angle deviation " + std::to_string(dev));
    };
    c.guard("rectified 4-simplex dual", [&] { check("rectified 4-simplex", build(from_schlafli({3, 3, 3}, {2})), 5, 5); });
    if (tier == AcceptanceTier::Large) c.guard("5-demicube dual", [&] { check("5-demicube", demicube(5), 10, 16); });
}

// ---- 11 ----
void property_suites(Checks& c, AcceptanceTier) {
    const std::vector<CoxeterDiagram> diagrams{
        from_schlafli({5, 3, 3}, {1}), from_schlafli({4, 3, 4}, {1}), from_schlafli({4, 3, 5}, {1}),
        from_schlafli({3, 3, 6}, {1}), from_schlafli({7, 3}, {1})};
    for (auto& d : diagrams) {
        MirrorSystem m = diagram_mirrors(d);
        const int n = m.form.ambient();
        for (int i = 0; i < m.size(); ++i) {
            Isometry r = m.reflection(i);
            Isometry rr = r.then(r);
            double dev = (rr.linear - Mat::Identity(n, n)).cwiseAbs().maxCoeff();
            if (rr.translation.size()) dev = std::max(dev, rr.translation.cwiseAbs().maxCoeff());
            c.expect(dev <= 1e-10, "reflection is not an involution");
            c.expect(isometry_defect(m.form, r) <= 1e-10, "reflection is not an isometry");
            for (int j = i + 1; j < m.size(); ++j) {
                const int order = d.order(i + 1, j + 1);
                if (order == 0) continue;
                Isometry rs = m.reflection(i).then(m.reflection(j)), acc = rs;
                for (int t = 1; t < order; ++t) acc = acc.then(rs);
                double e = (acc.linear - Mat::Identity(n, n)).cwiseAbs().maxCoeff();
                if (acc.translation.size()) e = std::max(e, acc.translation.cwiseAbs().maxCoeff());
                c.expect(e <= 1e-8, "Coxeter relation fails");
            }
        }
    }
    const std::vector<std::pair<std::vector<int>, std::set<int>>> seeds{
        {{3, 3}, {1}}, {{4, 3}, {2}}, {{5, 3}, {1, 3}}, {{3, 3, 3}, {2}}, {{4, 3, 3}, {1, 4}},
        {{3, 4, 3}, {1}}, {{5, 3, 3}, {2, 3}}, {{3, 3, 3, 3}, {1, 3}}, {{4, 3, 3, 3}, {5}}};
    for (auto& [sym, rings] : seeds) {
        c.guard("built polytope", [&] {
            Polytope p = build_symbol(sym, rings);
            auto e = edge_lengths(p);
            auto [lo, hi] = std::minmax_element(e.begin(), e.end());
            c.expect(*hi - *lo <= 1e-8, "unequal edges");
            c.expect(p.euler_characteristic() == (p.rank % 2 ? 2 : 0), "Euler characteristic");
            DualPolytope q = dual_polytope(p);
            auto f = p.f_vector(), g = q.polytope.f_vector();
            std::reverse(g.begin(), g.end());
            c.expect(f == g, "dual does not reverse the f-vector");
            DualPolytope qq = dual_polytope(q.polytope);
            c.expect(same_lattice(qq.polytope, p), "P** differs from P");
            double dev = 0;
            for (std::size_t v = 0; v < p.vertices.size(); ++v)
                dev = std::max(dev, (qq.polytope.vertices[v].coords - p.vertices[v].coords).cwiseAbs().maxCoeff());
            c.expect(dev <= 1e-9, "P** vertices moved");
        });
    }
    c.guard("orbit determinism", [&] {
        MirrorSystem m = diagram_mirrors(from_schlafli({5, 3, 3}, {1}));
        std::vector<Isometry> gens;
        for (int i = 0; i < m.size(); ++i) gens.push_back(m.reflection(i));
        Point seed = seed_point(m, {1, 2});
        auto a = orbit_closure(m.form, {seed}, gens);
        std::reverse(gens.begin(), gens.end());
        std::rotate(gens.begin(), gens.begin() + 1, gens.end());
        auto b = orbit_closure(m.form, {seed}, gens);
        bool same = a.size() == b.size();
        for (std::size_t i = 0; same && i < a.size(); ++i) same = (a[i].coords - b[i].coords).cwiseAbs().maxCoeff() <= 1e-9;
        c.expect(same, "orbit closure depends on generator order");
    });
}

struct Criterion {
    int id;
    const char* title;
    void (*run)(Checks&, AcceptanceTier);
};

const Criterion kCriteria[] = {
    {1, "Classification signatures of bundled diagrams", classification},
    {2, "Regular polytope f-vectors", regular_catalog},
    {3, "Dihedral-angle table", dihedral_angles_row},
    {4, "Semiregular table", semiregular_table},
    {5, "Group orders", group_orders},
    {6, "E8 suite", e8_suite},
    {7, "Quaternion suite", quaternion_suite},
    {8, "Low-dimension criteria", low_dimension},
    {9, "Andreev checker", andreev},
    {10, "Right-angled duals", right_angled_duals},
    {11, "Property suites", property_suites},
};

} // namespace

std::string data_directory() {
    if (const char* env = std::getenv("COXETERKIT_DATA")) return env;
#ifdef COXETERKIT_DATA_DIR
    return COXETERKIT_DATA_DIR;
#else
    return "data";
#endif
}

std::vector<AcceptanceRow> run_acceptance(AcceptanceTier tier, const std::vector<int>& only) {
    std::vector<AcceptanceRow> rows;
    for (const Criterion& k : kCriteria) {
        if (!only.empty() && std::find(only.begin(), only.end(), k.id) == only.end()) continue;
        AcceptanceRow row;
        row.id = k.id;
        row.title = k.title;
        const auto t0 = std::chrono::steady_clock::now();
        Checks c;
        c.guard(k.title, [&] { k.run(c, tier); });
        row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        row.passed = c.failures.empty();
        row.detail = c.summary();
        if (tier == AcceptanceTier::Fast && (k.id == 4 || k.id == 10)) row.detail += "; large-tier part skipped";
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string format_row(const AcceptanceRow& row) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s %2d  ", row.passed ? "PASS" : "FAIL", row.id);
    char time[32];
    std::snprintf(time, sizeof time, " [%.2fs]", row.seconds);
    return buf + row.title + " - " + row.detail + time;
}

} // namespace coxeterkit
