#include "coxeterkit/dual.hpp"

#include <algorithm>

namespace coxeterkit {

DualPolytope dual_polytope(const Polytope& p, double tol) {
    if (p.form.kind == FormKind::Lorentzian || p.geometry == SpaceForm::Hyperbolic)
        throw Error("dual", "polar duals need a polytope in Euclidean space");
    const int dim = p.form.ambient();
    if (p.rank != dim) throw Error("dual", "the polytope must span its ambient space");
    if (p.rank < 2) throw Error("dual", "polar duals need rank at least 2");

    DualPolytope q;
    q.source = std::make_shared<const Polytope>(p);
    Polytope& d = q.polytope;
    d.geometry = SpaceForm::Spherical;
    d.form = BilinearForm::euclidean(dim);
    d.rank = p.rank;

    const FaceList& facets = p.facets();
    for (int i = 0; i < facets.size(); ++i) {
        auto f = facets[i];
        Mat a(f.size(), dim);
        for (std::size_t r = 0; r < f.size(); ++r) a.row(r) = p.vertices[f[r]].coords.transpose();
        Vec ones = Vec::Ones(f.size());
        Vec x = a.colPivHouseholderQr().solve(ones);
        if (!x.allFinite() || (a * x - ones).cwiseAbs().maxCoeff() > tol)
            throw Error("dual", "facet hyperplane passes through the center; the center is not interior");
        for (auto& v : p.vertices)
            if (x.dot(v.coords) > 1 + 1e-7) throw Error("dual", "the center is not interior to the polytope");
        d.vertices.push_back({x, PointKind::Interior, FormKind::Euclidean});
    }
    for (auto& v : p.vertices) {
        const double r = v.coords.norm();
        if (r <= tol) throw Error("dual", "a vertex sits at the center");
        q.facet_normals.push_back(v.coords / r);
    }

    auto vf = vertex_facets(p);
    d.faces.assign(d.rank, FaceList{});
    std::vector<int> cur, tmp;
    for (int j = 0; j < d.rank; ++j) {
        const FaceList& primal = p.faces[p.rank - 1 - j];
        for (int i = 0; i < primal.size(); ++i) {
            auto g = primal[i];
            cur = vf[g[0]];
            for (std::size_t t = 1; t < g.size(); ++t) {
                tmp.clear();
                std::set_intersection(cur.begin(), cur.end(), vf[g[t]].begin(), vf[g[t]].end(), std::back_inserter(tmp));
                cur.swap(tmp);
            }
            if (j == 0 && cur.size() != 1) cur = {i};
            d.faces[j].push(cur);
        }
    }

    std::vector<std::pair<double, int>> norms;
    for (int i = 0; i < static_cast<int>(d.vertices.size()); ++i) norms.emplace_back(d.vertices[i].coords.norm(), i);
    std::sort(norms.begin(), norms.end());
    q.radius_class.assign(d.vertices.size(), 0);
    for (auto& [r, i] : norms) {
        if (q.radii.empty() || r - q.radii.back() > 1e-7 * std::max(1.0, r)) q.radii.push_back(r);
        q.radius_class[i] = static_cast<int>(q.radii.size()) - 1;
    }
    auto e = edge_lengths(d);
    if (!e.empty()) {
        auto [lo, hi] = std::minmax_element(e.begin(), e.end());
        if (*hi - *lo <= 1e-8 * std::max(1.0, *hi)) d.edge_length = *hi;
    }
    return q;
}

std::vector<double> ridge_angles(const DualPolytope& q, double spread) {
    if (!q.source) throw Error("dual", "dual has no primal");
    const FaceList& edges = q.source->faces.at(1);
    std::vector<double> out;
    for (int i = 0; i < edges.size(); ++i) {
        const Vec& a = q.facet_normals.at(edges[i][0]);
        const Vec& b = q.facet_normals.at(edges[i][1]);
        out.push_back(std::acos(std::clamp(-a.dot(b), -1.0, 1.0)));
    }
    if (!out.empty()) {
        auto [lo, hi] = std::minmax_element(out.begin(), out.end());
        if (*hi - *lo >= spread)
            throw Error("dual", "ridge dihedral angles differ by " + std::to_string(*hi - *lo));
    }
    return out;
}

HyperbolicRealization hyperbolic_realization(const DualPolytope& q, double tol) {
    if (q.radii.empty()) throw Error("dual", "dual has no radius classes");
    const double big = q.radii.back();
    const Polytope& d = q.polytope;
    const int n = d.form.ambient();
    const BilinearForm form = BilinearForm::lorentzian(n);

    HyperbolicRealization h;
    h.polytope.geometry = SpaceForm::Hyperbolic;
    h.polytope.form = form;
    h.polytope.rank = d.rank;
    h.polytope.faces = d.faces;
    for (int i = 0; i < static_cast<int>(d.vertices.size()); ++i) {
        Vec y = d.vertices[i].coords / big;
        const double r = y.norm();
        if (r > 1 + 1e-7) throw Error("dual", "a vertex lies outside the Klein ball");
        Vec x(n + 1);
        x[0] = 1;
        x.tail(n) = y;
        const bool ideal = q.radius_class[i] == static_cast<int>(q.radii.size()) - 1;
        Point p;
        if (ideal) {
            p = {x, PointKind::Ideal, FormKind::Lorentzian};
            h.ideal_vertices.push_back(i);
        } else {
            p = normalize_point(form, x, tol);
            h.real_vertices.push_back(i);
        }
        h.polytope.vertices.push_back(p);
    }
    const Polytope& primal = *q.source;
    for (std::size_t j = 0; j < q.facet_normals.size(); ++j) {
        const double hj = 1.0 / (big * primal.vertices[j].coords.norm());
        if (hj >= 1) throw Error("dual", "a facet hyperplane misses the Klein ball");
        Vec nv(n + 1);
        nv[0] = hj;
        nv.tail(n) = q.facet_normals[j];
        h.normals.push_back(nv / std::sqrt(1 - hj * hj));
    }
    const FaceList& edges = primal.faces.at(1);
    for (int i = 0; i < edges.size(); ++i) {
        const double c = inner(form, h.normals[edges[i][0]], h.normals[edges[i][1]]);
        h.angles.push_back(std::acos(std::clamp(-c, -1.0, 1.0)));
    }
    return h;
}

} // namespace coxeterkit
