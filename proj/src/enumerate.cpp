#include "coxeterkit/catalog.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <functional>

namespace coxeterkit {

namespace {

bool semidefinite(const Mat& g, double tol) {
    Eigen::SelfAdjointEigenSolver<Mat> es(g, Eigen::EigenvaluesOnly);
    const Vec& ev = es.eigenvalues();
    return ev[0] >= -tol * std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
}

// Invariant under relabelling; cheap pre-filter before the isomorphism test.
std::vector<std::string> fingerprint(const CoxeterDiagram& d) {
    std::vector<std::string> out;
    for (int i = 1; i <= d.size(); ++i) {
        std::vector<std::string> row;
        for (int j = 1; j <= d.size(); ++j)
            if (j != i) row.push_back(std::to_string(d.order(i, j)));
        std::sort(row.begin(), row.end());
        std::string s;
        for (auto& r : row) s += r + ",";
        out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

std::vector<EnumeratedSimplex> enumerate_hyperbolic_simplices(int k, const Catalog& catalog, double tol) {
    if (k < 4) throw Error("diagram", "enumeration starts at 4 nodes; triangles are parameter families");
    std::vector<CoxeterDiagram> bases;
    for (auto& [label, d] : catalog.expand(k - 1, {2, 3, 4, 5, 6})) {
        if (d.size() != k - 1 || !d.connected() || d.has_parallel()) continue;
        Geometry g = geometry_of(d, tol);
        if (g != Geometry::Spherical && g != Geometry::Euclidean) continue;
        if (std::none_of(bases.begin(), bases.end(), [&](auto& b) { return isomorphic(b, d); })) bases.push_back(d);
    }

    std::vector<EnumeratedSimplex> found;
    std::vector<std::vector<std::string>> prints;
    const int marks[] = {2, 3, 4, 5, 6};
    for (auto& base : bases) {
        CoxeterDiagram d(k);
        for (auto& [p, e] : base.edges()) d.set_edge(p.first, p.second, e);
        std::function<void(int)> dfs = [&](int j) {
            if (j > k - 1) {
                if (!d.connected()) return;
                Geometry geo = geometry_of(d, tol);
                if (geo != Geometry::HyperbolicCompact && geo != Geometry::HyperbolicNoncompact) return;
                auto fp = fingerprint(d);
                for (std::size_t i = 0; i < found.size(); ++i)
                    if (prints[i] == fp && isomorphic(found[i].diagram, d)) return;
                found.push_back({d, geo});
                prints.push_back(fp);
                return;
            }
            for (int m : marks) {
                CoxeterDiagram saved = d;
                if (m > 2) d.set_edge(j, k, EdgeMark::finite(m));
                Mat h = gram_from_diagram(d);
                // The new node together with base nodes 1..j must stay spherical or Euclidean.
                std::vector<int> rows;
                for (int i = 0; i < j; ++i) rows.push_back(i);
                rows.push_back(k - 1);
                bool ok = static_cast<int>(rows.size()) > k - 1 || semidefinite(principal(h, rows), tol);
                if (ok) dfs(j + 1);
                d = saved;
            }
        };
        dfs(1);
    }
    return found;
}

std::string catalog_record(const EnumeratedSimplex& s, const std::string& name) {
    std::string r = "[family]\nname = " + name + "\ngeometry = ";
    r += s.geometry == Geometry::HyperbolicCompact ? "hyperbolic-compact" : "hyperbolic-noncompact";
    r += "\nshape = explicit\nnodes = " + std::to_string(s.diagram.size()) + "\nedges = ";
    std::string text = render(s.diagram);
    auto semi = text.find(';');
    r += semi == std::string::npos ? "" : text.substr(semi + 2);
    return r + "\n";
}

} // namespace coxeterkit
