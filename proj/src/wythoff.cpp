#include "coxeterkit/wythoff.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

namespace coxeterkit {

namespace {

Isometry compose(const Isometry& outer, const Isometry& inner_map) { return inner_map.then(outer); }

// Reflection in the mirror orthogonal to v (any non-null length).
Isometry reflection_along(const BilinearForm& form, const Vec& v) {
    const double q = inner(form, v, v);
    if (q <= 0) throw Error("wythoff", "mirror normal must be spacelike");
    Isometry g;
    g.linear = Mat::Identity(v.size(), v.size()) - (2.0 / q) * v * (form.matrix() * v).transpose();
    return g;
}

std::vector<Isometry> generators(const MirrorSystem& m) {
    std::vector<Isometry> g;
    for (int i = 0; i < m.size(); ++i) g.push_back(m.reflection(i));
    return g;
}

std::uint64_t hash_face(const std::vector<int>& f) {
    std::uint64_t h = 1469598103934665603ull;
    for (int v : f) {
        h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull;
        h *= 1099511628211ull;
    }
    return h;
}

// Point orbit with an early exit: returns -1 when the orbit exceeds cap.
long long orbit_size(const BilinearForm& form, const Point& seed, const std::vector<Isometry>& gens, long long cap,
                     double tol) {
    PointSet set;
    std::vector<Point> pts{seed};
    set.insert(seed.coords);
    for (std::size_t q = 0; q < pts.size(); ++q)
        for (auto& g : gens) {
            Point x = transform(form, g, pts[q], tol);
            if (set.insert(x.coords).second) {
                pts.push_back(x);
                if (static_cast<long long>(pts.size()) > cap) return -1;
            }
        }
    return static_cast<long long>(pts.size());
}

struct Assembled {
    Polytope polytope;
    int seed_index = 0;
    // For each rank, the BFS parent face and the local generator that maps it
    // to the face (-1 for the base face of a type).
    std::vector<std::vector<int>> parent, via;
};

class FaceIndex {
public:
    int find(const FaceList& list, const std::vector<int>& f, std::uint64_t h) const {
        auto [lo, hi] = map_.equal_range(h);
        for (auto it = lo; it != hi; ++it) {
            auto s = list[it->second];
            if (s.size() == f.size() && std::equal(s.begin(), s.end(), f.begin())) return it->second;
        }
        return -1;
    }
    void add(std::uint64_t h, int idx) { map_.emplace(h, idx); }

private:
    std::unordered_multimap<std::uint64_t, int> map_;
};

// Wythoff polytope of the ringed spherical diagram `sub` acting through gens.
Assembled assemble(const CoxeterDiagram& sub, const BilinearForm& form, const std::vector<Isometry>& gens,
                   const Point& seed, SpaceForm geometry, const BuildOptions& opt) {
    const int r = sub.size();
    if (sub.rings().empty()) throw Error("wythoff", "the diagram has no ringed node");
    std::vector<int> all(r);
    std::iota(all.begin(), all.end(), 1);
    if (!coxeter_wythoff(sub, all)) throw Error("wythoff", "every component of the diagram needs a ringed node");

    Assembled out;
    Polytope& p = out.polytope;
    p.geometry = geometry;
    p.form = form;
    p.rank = r;
    p.vertices = orbit_closure(form, {seed}, gens, opt.cap, opt.tol);
    const int nv = static_cast<int>(p.vertices.size());

    PointSet index;
    for (auto& v : p.vertices) index.insert(v.coords);
    out.seed_index = index.find(seed.coords);
    std::vector<std::vector<int>> perm(r, std::vector<int>(nv));
    for (int g = 0; g < r; ++g)
        for (int v = 0; v < nv; ++v) {
            int j = index.find(transform(form, gens[g], p.vertices[v], opt.tol).coords);
            if (j < 0) throw Error("wythoff", "orbit is not closed under the generators");
            perm[g][v] = j;
        }

    p.faces.assign(r, FaceList{});
    p.face_type.assign(r, {});
    p.type_nodes.assign(r, {});
    out.parent.assign(r, {});
    out.via.assign(r, {});
    for (int v = 0; v < nv; ++v) {
        p.faces[0].push(std::vector<int>{v});
        p.face_type[0].push_back(0);
    }
    p.type_nodes[0].push_back({});

    std::vector<int> buf;
    for (int h = 1; h < r; ++h) {
        FaceIndex fi;
        FaceList& list = p.faces[h];
        for (auto& nodes : subdiagrams(sub, h, true)) {
            const int type = static_cast<int>(p.type_nodes[h].size());
            p.type_nodes[h].push_back(nodes);
            // Base face: orbit of the seed index under the subdiagram's generators.
            std::vector<int> base{out.seed_index};
            std::vector<char> in(nv, 0);
            in[out.seed_index] = 1;
            for (std::size_t q = 0; q < base.size(); ++q)
                for (int node : nodes) {
                    int w = perm[node - 1][base[q]];
                    if (!in[w]) { in[w] = 1; base.push_back(w); }
                }
            std::sort(base.begin(), base.end());
            const int start = list.size();
            list.push(base);
            fi.add(hash_face(base), start);
            p.face_type[h].push_back(type);
            out.parent[h].push_back(-1);
            out.via[h].push_back(-1);
            for (int q = start; q < list.size(); ++q)
                for (int g = 0; g < r; ++g) {
                    buf.clear();
                    for (int v : list[q]) buf.push_back(perm[g][v]);
                    std::sort(buf.begin(), buf.end());
                    const std::uint64_t hv = hash_face(buf);
                    if (fi.find(list, buf, hv) >= 0) continue;
                    fi.add(hv, list.size());
                    list.push(buf);
                    p.face_type[h].push_back(type);
                    out.parent[h].push_back(q);
                    out.via[h].push_back(g);
                }
        }
    }

    auto e = edge_lengths(p);
    if (!e.empty()) {
        auto [lo, hi] = std::minmax_element(e.begin(), e.end());
        if (std::isinf(*lo) && std::isinf(*hi)) p.edge_length = *hi;
        else if (*hi - *lo <= 1e-8 * std::max(1.0, *hi)) p.edge_length = *hi;
    }
    return out;
}

enum class Kind { Spherical, Euclidean, Hyperbolic };

Kind kind_of(const Mat& g, double tol) {
    Signature s = signature(g, tol);
    const int k = static_cast<int>(g.rows());
    if (s.positive == k) return Kind::Spherical;
    if (s.negative == 0) return Kind::Euclidean;
    return Kind::Hyperbolic;
}

// Size-n Coxeter-Wythoff subdiagrams with a finite group: the cell types.
std::vector<std::vector<int>> cell_types(const CoxeterDiagram& d, double tol) {
    std::vector<std::vector<int>> out;
    for (auto& t : subdiagrams(d, d.size() - 1, true))
        if (positive_definite(gram_from_diagram(d.induced(t)), tol)) out.push_back(t);
    return out;
}

void check_simplex_diagram(const CoxeterDiagram& d) {
    if (d.has_dashed()) throw Error("wythoff", "dashed edges do not bound a simplex");
    if (d.rings().empty()) throw Error("wythoff", "the diagram has no ringed node");
    if (!d.connected()) throw Error("wythoff", "the tessellation diagram must be connected");
}

} // namespace

const char* to_string(SymmetryClass c) {
    switch (c) {
    case SymmetryClass::Regular: return "regular";
    case SymmetryClass::Semiregular: return "semiregular";
    case SymmetryClass::Uniform: return "uniform";
    case SymmetryClass::None: return "none";
    }
    return "?";
}

MirrorSystem diagram_mirrors(const CoxeterDiagram& d, double tol) {
    const Mat g = gram_from_diagram(d);
    const int k = d.size();
    Signature s = signature(g, tol);
    if (s.positive == k) return recover_normals(g, k - 1, tol);
    if (s.negative == 0) return recover_normals(g, s.positive, tol);
    if (s.negative == 1 && s.zero == 0) return recover_normals(g, k - 1, tol);
    throw Error("wythoff", "diagram with signature " + s.str() + " has no simplex realization");
}

Point seed_point(const MirrorSystem& m, const std::set<int>& rings, double tol) {
    if (rings.empty()) throw Error("wythoff", "the seed needs at least one ringed node");
    const int k = m.size();
    for (int r : rings)
        if (r < 1 || r > k) throw Error("wythoff", "ringed node out of range");
    if (m.affine()) {
        const int n = m.form.dim;
        if (k != n + 1) throw Error("wythoff", "the seed needs a simplex");
        Mat a(k, n + 1);
        Vec b(k);
        for (int i = 0; i < k; ++i) {
            a.row(i).head(n) = m.normals[i].transpose();
            a(i, n) = rings.count(i + 1) ? 1.0 : 0.0;
            b[i] = m.offsets[i];
        }
        Vec x = a.fullPivLu().solve(b);
        if ((a * x - b).norm() > 1e-8) throw Error("wythoff", "seed equations are singular");
        if (x[n] <= tol) throw Error("wythoff", "seed lies outside the simplex");
        return {x.head(n), PointKind::Interior, FormKind::Euclidean};
    }
    const int amb = m.form.ambient();
    if (k != amb) throw Error("wythoff", "the seed needs a simplex");
    const Mat j = m.form.matrix();
    Mat a(k, amb);
    Vec b(k);
    for (int i = 0; i < k; ++i) {
        a.row(i) = (j * m.normals[i]).transpose();
        b[i] = rings.count(i + 1) ? -1.0 : 0.0;
    }
    Vec x = a.fullPivLu().solve(b);
    if ((a * x - b).norm() > 1e-8) throw Error("wythoff", "seed equations are singular");
    Point p;
    try {
        p = normalize_point(m.form, x, tol);
    } catch (const Error&) {
        throw Error("wythoff", "seed lies outside hyperbolic space");
    }
    if (p.ideal() && rings.size() > 1) throw Error("wythoff", "an ideal seed allows only one ringed node");
    return p;
}

std::vector<Point> orbit_closure(const BilinearForm& form, const std::vector<Point>& points,
                                 const std::vector<Isometry>& gens, int cap, double tol) {
    PointSet set;
    std::vector<Point> pts;
    for (auto& p : points)
        if (set.insert(p.coords).second) pts.push_back(p);
    for (std::size_t q = 0; q < pts.size(); ++q)
        for (auto& g : gens) {
            Point x = transform(form, g, pts[q], tol);
            if (set.insert(x.coords).second) {
                pts.push_back(x);
                if (static_cast<long long>(pts.size()) > cap)
                    throw Error("wythoff", "orbit exceeds the cap of " + std::to_string(cap) + " points (" +
                                               std::to_string(pts.size()) + " found)");
            }
        }
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return canonical_less(a.coords, b.coords); });
    return pts;
}

Polytope build(const CoxeterDiagram& d, const BuildOptions& opt) {
    if (d.size() == 0) throw Error("wythoff", "empty diagram");
    if (d.rings().empty()) throw Error("wythoff", "the diagram has no ringed node");
    const Mat g = gram_from_diagram(d);
    const Kind kind = kind_of(g, opt.tol);
    if (kind == Kind::Spherical) {
        MirrorSystem m = diagram_mirrors(d, opt.tol);
        Point seed = seed_point(m, d.rings(), opt.tol);
        return assemble(d, m.form, generators(m), seed, SpaceForm::Spherical, opt).polytope;
    }
    check_simplex_diagram(d);
    MirrorSystem m = diagram_mirrors(d, opt.tol);
    if (m.size() != m.form.dim + 1) throw Error("wythoff", "build needs a simplex diagram");
    Point seed = seed_point(m, d.rings(), opt.tol);
    auto types = cell_types(d, opt.tol);
    if (types.empty()) throw Error("wythoff", "the tessellation has no finite cell");
    const auto& t = types.front();
    std::vector<Isometry> gens;
    for (int node : t) gens.push_back(m.reflection(node - 1));
    return assemble(d.induced(t), m.form, gens, seed,
                    kind == Kind::Euclidean ? SpaceForm::Euclidean : SpaceForm::Hyperbolic, opt)
        .polytope;
}

Polytope build_from_mirrors(const CoxeterDiagram& d, const BilinearForm& form, const std::vector<Vec>& normals,
                            const Vec& seed, const BuildOptions& opt) {
    if (static_cast<int>(normals.size()) != d.size()) throw Error("wythoff", "one mirror per node is required");
    std::vector<Isometry> gens;
    for (auto& v : normals) gens.push_back(reflection_along(form, v));
    for (int i = 0; i < d.size(); ++i)
        for (int j = i + 1; j < d.size(); ++j) {
            const double c = inner(form, normals[i], normals[j]) /
                             std::sqrt(inner(form, normals[i], normals[i]) * inner(form, normals[j], normals[j]));
            const int m = d.order(i + 1, j + 1);
            if (m == 0 || std::abs(c + std::cos(M_PI / m)) > 1e-9)
                throw Error("wythoff", "mirror normals do not match the diagram");
        }
    for (int i = 0; i < d.size(); ++i) {
        const double v = inner(form, seed, normals[i]) / std::sqrt(inner(form, normals[i], normals[i]));
        const double scale = std::max(1.0, seed.norm());
        if (v > 1e-9 * scale) throw Error("wythoff", "seed lies outside the chamber");
        if ((v < -1e-9 * scale) != d.ringed(i + 1))
            throw Error("wythoff", "seed must lie on exactly the unringed mirrors");
    }
    Point p = normalize_point(form, seed, opt.tol);
    SpaceForm geometry = form.kind == FormKind::Lorentzian ? SpaceForm::Hyperbolic : SpaceForm::Spherical;
    return assemble(d, form, gens, p, geometry, opt).polytope;
}

Polytope TessellationPatch::cell_polytope(int i) const {
    const PatchCell& c = cells.at(i);
    Polytope p = cell_types.at(c.type);
    for (std::size_t v = 0; v < c.vertices.size(); ++v) p.vertices[v] = points[c.vertices[v]];
    return p;
}

namespace {

struct GroupElement {
    Isometry g;
    std::vector<int> word;
};

struct Neighbor {
    GroupElement s;
    int type = -1;
};

} // namespace

TessellationPatch tessellation_patch(const CoxeterDiagram& d, int depth, const BuildOptions& opt) {
    if (depth < 0) throw Error("wythoff", "depth must be non-negative");
    if (d.size() == 0) throw Error("wythoff", "empty diagram");
    const Mat gram = gram_from_diagram(d);
    const Kind kind = kind_of(gram, opt.tol);
    if (kind == Kind::Spherical) throw Error("wythoff", "spherical diagrams give polytopes; use build");
    check_simplex_diagram(d);
    const MirrorSystem m = diagram_mirrors(d, opt.tol);
    const int k = m.size();
    if (k != m.form.dim + 1) throw Error("wythoff", "tessellation patches need a simplex diagram");
    const BilinearForm& form = m.form;
    const std::vector<Isometry> gens = generators(m);
    const Point seed = seed_point(m, d.rings(), opt.tol);

    std::set<int> every;
    for (int i = 1; i <= k; ++i) every.insert(i);
    const Point generic = seed_point(m, every, opt.tol);

    TessellationPatch patch;
    patch.geometry = kind == Kind::Euclidean ? SpaceForm::Euclidean : SpaceForm::Hyperbolic;
    patch.form = form;
    patch.depth = depth;

    struct TypeData {
        std::vector<int> nodes;
        Assembled cell;
        std::vector<GroupElement> facet_map;      // W_T element mapping the base facet of its type
        std::vector<std::vector<int>> facet_type;  // global nodes of each facet's type
    };
    std::vector<TypeData> types;
    for (auto& t : cell_types(d, opt.tol)) {
        TypeData td;
        td.nodes = t;
        std::vector<Isometry> tg;
        for (int node : t) tg.push_back(gens[node - 1]);
        td.cell = assemble(d.induced(t), form, tg, seed, patch.geometry, opt);
        const int fr = td.cell.polytope.rank - 1;
        const FaceList& facets = td.cell.polytope.faces[fr];
        for (int f = 0; f < facets.size(); ++f) {
            GroupElement e{Isometry::identity(form.ambient()), {}};
            if (form.kind == FormKind::Euclidean) e.g.translation = Vec::Zero(form.ambient());
            const int par = td.cell.parent[fr][f];
            if (par >= 0) {
                const GroupElement& pe = td.facet_map[par];
                const int gen = t[td.cell.via[fr][f]] - 1;
                e.g = compose(gens[gen], pe.g);
                e.word = pe.word;
                e.word.insert(e.word.begin(), gen + 1);
            }
            td.facet_map.push_back(e);
            std::vector<int> nodes;
            for (int local : td.cell.polytope.type_nodes[fr][td.cell.polytope.face_type[fr][f]]) nodes.push_back(t[local - 1]);
            td.facet_type.push_back(nodes);
        }
        patch.cell_types.push_back(td.cell.polytope);
        patch.cell_type_nodes.push_back(t);
        types.push_back(std::move(td));
    }
    if (types.empty()) throw Error("wythoff", "the tessellation has no finite cell");

    auto cell_points = [&](const Isometry& g, int type) {
        std::vector<Point> pts;
        for (auto& v : types[type].cell.polytope.vertices) pts.push_back(transform(form, g, v, opt.tol));
        return pts;
    };

    // For each facet type, a stabiliser element s and a cell type with s(C) across the base facet.
    std::map<std::pair<int, std::vector<int>>, Neighbor> across;
    auto neighbor_of = [&](int type, const std::vector<int>& facet_nodes) -> const Neighbor& {
        auto key = std::make_pair(type, facet_nodes);
        auto it = across.find(key);
        if (it != across.end()) return it->second;

        // The facet may border a cell of infinite type (a horospherical or
        // Euclidean tiling); such cells are not represented.
        for (int b = 1; b <= k; ++b) {
            const auto& tn = types[type].nodes;
            if (std::binary_search(tn.begin(), tn.end(), b)) continue;
            std::vector<int> other = facet_nodes;
            other.push_back(b);
            std::sort(other.begin(), other.end());
            if (coxeter_wythoff(d, other) && !positive_definite(gram_from_diagram(d.induced(other)), opt.tol))
                return across.emplace(key, Neighbor{}).first->second;
        }

        // Base facet of this type: seed orbit under its generators.
        std::vector<Isometry> fg;
        for (int node : facet_nodes) fg.push_back(gens[node - 1]);
        std::vector<Point> base = orbit_closure(form, {seed}, fg, opt.cap, opt.tol);

        std::vector<int> stab = facet_nodes;
        for (int u = 1; u <= k; ++u) {
            if (std::binary_search(facet_nodes.begin(), facet_nodes.end(), u) || d.ringed(u)) continue;
            bool adjacent = false;
            for (int f : facet_nodes) adjacent = adjacent || d.edge(u, f).has_value();
            if (!adjacent) stab.push_back(u);
        }
        std::sort(stab.begin(), stab.end());

        PointSet own;
        for (auto& v : types[type].cell.polytope.vertices) own.insert(v.coords);

        PointSet seen;
        std::vector<GroupElement> elems;
        GroupElement id{Isometry::identity(form.ambient()), {}};
        if (form.kind == FormKind::Euclidean) id.g.translation = Vec::Zero(form.ambient());
        elems.push_back(id);
        seen.insert(generic.coords);
        for (std::size_t q = 0; q < elems.size(); ++q) {
            for (int t2 = 0; t2 < static_cast<int>(types.size()); ++t2) {
                const auto& tn = types[t2].nodes;
                if (!std::includes(tn.begin(), tn.end(), facet_nodes.begin(), facet_nodes.end())) continue;
                auto pts = cell_points(elems[q].g, t2);
                PointSet cell;
                for (auto& x : pts) cell.insert(x.coords);
                bool contains = std::all_of(base.begin(), base.end(), [&](const Point& b) { return cell.find(b.coords) >= 0; });
                if (!contains) continue;
                bool same = pts.size() == types[type].cell.polytope.vertices.size() &&
                            std::all_of(pts.begin(), pts.end(), [&](const Point& x) { return own.find(x.coords) >= 0; });
                if (same) continue;
                return across.emplace(key, Neighbor{elems[q], t2}).first->second;
            }
            if (static_cast<int>(elems.size()) > opt.cap) break;
            for (int node : stab) {
                Isometry g = compose(elems[q].g, gens[node - 1]);
                if (!seen.insert(transform(form, g, generic, opt.tol).coords).second) continue;
                std::vector<int> w = elems[q].word;
                w.push_back(node);
                elems.push_back({g, w});
            }
        }
        throw Error("wythoff", "no neighbouring cell found across a facet");
    };

    PointSet pool;
    auto intern = [&](const std::vector<Point>& pts) {
        std::vector<int> ids;
        for (auto& x : pts) {
            auto [i, inserted] = pool.insert(x.coords);
            if (inserted) patch.points.push_back(x);
            ids.push_back(i);
        }
        return ids;
    };
    std::map<std::vector<int>, int> cell_index;
    std::vector<Isometry> cell_iso;
    auto add_cell = [&](const GroupElement& e, int type, int layer) -> std::pair<int, bool> {
        auto ids = intern(cell_points(e.g, type));
        auto key = ids;
        std::sort(key.begin(), key.end());
        auto it = cell_index.find(key);
        if (it != cell_index.end()) return {it->second, false};
        const int idx = static_cast<int>(patch.cells.size());
        cell_index.emplace(key, idx);
        patch.cells.push_back({e.word, type, ids, layer});
        cell_iso.push_back(e.g);
        return {idx, true};
    };

    GroupElement id{Isometry::identity(form.ambient()), {}};
    if (form.kind == FormKind::Euclidean) id.g.translation = Vec::Zero(form.ambient());
    add_cell(id, 0, 0);
    std::set<std::pair<int, int>> adj;
    for (std::size_t c = 0; c < patch.cells.size(); ++c) {
        const int type = patch.cells[c].type;
        const int layer = patch.cells[c].layer;
        const Isometry g = cell_iso[c];
        const std::vector<int> word = patch.cells[c].word;
        const TypeData& td = types[type];
        for (std::size_t f = 0; f < td.facet_map.size(); ++f) {
            const Neighbor& nb = neighbor_of(type, td.facet_type[f]);
            if (nb.type < 0) continue;
            GroupElement e;
            e.g = compose(compose(g, td.facet_map[f].g), nb.s.g);
            e.word = word;
            e.word.insert(e.word.end(), td.facet_map[f].word.begin(), td.facet_map[f].word.end());
            e.word.insert(e.word.end(), nb.s.word.begin(), nb.s.word.end());
            int j;
            if (layer < depth) {
                j = add_cell(e, nb.type, layer + 1).first;
            } else {
                std::vector<int> ids;
                for (auto& x : cell_points(e.g, nb.type)) ids.push_back(pool.find(x.coords));
                std::sort(ids.begin(), ids.end());
                auto it = ids.front() < 0 ? cell_index.end() : cell_index.find(ids);
                j = it == cell_index.end() ? -1 : it->second;
            }
            if (j >= 0 && j != static_cast<int>(c)) adj.insert({std::min<int>(c, j), std::max<int>(c, j)});
        }
    }
    patch.adjacency.assign(adj.begin(), adj.end());
    return patch;
}

std::optional<std::uint64_t> group_order(const CoxeterDiagram& d, double tol) {
    const int k = d.size();
    if (k == 0) return 1;
    if (d.has_dashed() || d.has_parallel()) return std::nullopt;
    if (!positive_definite(gram_from_diagram(d), tol)) return std::nullopt;
    std::uint64_t total = 1;
    auto mul = [&](std::uint64_t a, std::uint64_t b) {
        std::uint64_t r;
        if (__builtin_mul_overflow(a, b, &r)) throw Error("wythoff", "group order overflows 64 bits");
        return r;
    };
    for (auto& comp : d.components()) {
        CoxeterDiagram c = d.induced(comp);
        c.set_rings({});
        const int r = c.size();
        std::uint64_t order;
        if (r == 1) {
            order = 2;
        } else if (r == 2) {
            order = 2ull * static_cast<std::uint64_t>(c.order(1, 2));
        } else {
            MirrorSystem m = diagram_mirrors(c, tol);
            auto gens = generators(m);
            long long best = -1;
            int best_node = -1;
            for (int i = 1; i <= r; ++i) {
                int degree = 0;
                for (int j = 1; j <= r; ++j) degree += j != i && c.edge(i, j).has_value();
                if (degree > 1) continue;
                Point seed = seed_point(m, {i}, tol);
                long long s = orbit_size(m.form, seed, gens, best < 0 ? kDefaultOrbitCap : best, tol);
                if (s > 0 && (best < 0 || s < best)) { best = s; best_node = i; }
            }
            if (best < 0) throw Error("wythoff", "orbit-stabilizer chain found no leaf orbit");
            std::vector<int> rest;
            for (int j = 1; j <= r; ++j)
                if (j != best_node) rest.push_back(j);
            order = mul(static_cast<std::uint64_t>(best), *group_order(c.induced(rest), tol));
        }
        total = mul(total, order);
    }
    return total;
}

std::uint64_t wythoff_chain_count(const CoxeterDiagram& d) {
    const int k = d.size();
    if (k > 24) throw Error("wythoff", "chain count supports at most 24 nodes");
    std::vector<std::uint64_t> count(1u << k, 0);
    count[0] = 1;
    for (std::uint32_t s = 1; s < (1u << k); ++s) {
        std::vector<int> nodes;
        for (int i = 0; i < k; ++i)
            if (s & (1u << i)) nodes.push_back(i + 1);
        if (!coxeter_wythoff(d, nodes)) continue;
        for (int i = 0; i < k; ++i)
            if (s & (1u << i)) count[s] += count[s & ~(1u << i)];
    }
    return count[(1u << k) - 1];
}

SymmetryClass symmetry_class(const Polytope& p, const CoxeterDiagram& d, double tol) {
    auto e = edge_lengths(p);
    bool uniform = true;
    if (!e.empty()) {
        auto [lo, hi] = std::minmax_element(e.begin(), e.end());
        uniform = (std::isinf(*lo) && std::isinf(*hi)) || *hi - *lo <= tol * std::max(1.0, *hi);
    }
    if (uniform && wythoff_chain_count(d) == 1) return SymmetryClass::Regular;
    if (!uniform) return SymmetryClass::None;
    if (p.rank < 2) return SymmetryClass::Uniform;
    const int fr = p.rank - 1;
    const FaceList& facets = p.facets();
    const bool typed = static_cast<int>(p.face_type.size()) > fr && !p.face_type[fr].empty();
    std::set<int> types_seen;
    std::vector<std::vector<double>> profiles;
    for (int i = 0; i < facets.size(); ++i) {
        if (typed) {
            if (!types_seen.insert(p.face_type[fr][i]).second) continue;
        } else {
            Polytope f = face_polytope(p, fr, i);
            auto prof = distance_profile(f);
            bool known = std::any_of(profiles.begin(), profiles.end(), [&](const std::vector<double>& q) {
                if (q.size() != prof.size()) return false;
                for (std::size_t j = 0; j < q.size(); ++j)
                    if (std::abs(q[j] - prof[j]) > tol) return false;
                return true;
            });
            if (known) continue;
            profiles.push_back(prof);
        }
        if (!geometrically_regular(face_polytope(p, fr, i), tol)) return SymmetryClass::Uniform;
    }
    return SymmetryClass::Semiregular;
}

} // namespace coxeterkit
