// Regenerates the hyperbolic simplex catalogs for 4 to 10 nodes.
#include <fstream>
#include <iostream>

#include "coxeterkit/catalog.hpp"

using namespace coxeterkit;

namespace {

std::vector<int> path_marks(const CoxeterDiagram& d) {
    std::vector<int> m;
    for (int i = 1; i < d.size(); ++i) m.push_back(d.order(i, i + 1));
    return m;
}

// A linear diagram relabelled along its path, oriented so the mark sequence is smallest.
std::optional<CoxeterDiagram> as_path(const CoxeterDiagram& d) {
    const int k = d.size();
    if (static_cast<int>(d.edges().size()) != k - 1) return std::nullopt;
    std::vector<int> deg(k + 1, 0);
    for (auto& [p, _] : d.edges()) { ++deg[p.first]; ++deg[p.second]; }
    int start = 0;
    for (int i = 1; i <= k; ++i) {
        if (deg[i] > 2) return std::nullopt;
        if (deg[i] == 1 && !start) start = i;
    }
    std::vector<int> order{start};
    while (static_cast<int>(order.size()) < k) {
        int next = 0;
        for (int j = 1; j <= k; ++j)
            if (d.edge(order.back(), j) && std::find(order.begin(), order.end(), j) == order.end()) next = j;
        if (!next) return std::nullopt;
        order.push_back(next);
    }
    CoxeterDiagram fwd = d.induced(order);
    std::reverse(order.begin(), order.end());
    CoxeterDiagram bwd = d.induced(order);
    return path_marks(bwd) < path_marks(fwd) ? bwd : fwd;
}

struct Record {
    bool compact;
    std::string name;  // empty for non-linear diagrams
    EnumeratedSimplex simplex;
};

} // namespace

int main(int argc, char** argv) {
    const std::string outdir = argc > 1 ? argv[1] : ".";
    const Catalog& base = Catalog::bundled();
    std::ofstream compact(outdir + "/hyperbolic_compact.cat"), ideal(outdir + "/hyperbolic_noncompact.cat");
    compact << "# Compact hyperbolic Coxeter simplexes with 4 or more nodes (generated by enumerate_simplices).\n";
    ideal << "# Non-compact hyperbolic Coxeter simplexes with 4 or more nodes (generated by enumerate_simplices).\n";
    for (int k = 4; k <= 11; ++k) {
        std::vector<Record> records;
        for (auto& s : enumerate_hyperbolic_simplices(k, base)) {
            Record r{s.geometry == Geometry::HyperbolicCompact, "", s};
            if (auto p = as_path(s.diagram)) {
                r.simplex.diagram = *p;
                r.name = "[";
                for (int m : path_marks(*p)) r.name += (r.name.size() > 1 ? "," : "") + std::to_string(m);
                r.name += "]";
            }
            records.push_back(r);
        }
        std::stable_sort(records.begin(), records.end(), [](const Record& a, const Record& b) {
            if (a.compact != b.compact) return a.compact;
            if (a.name.empty() != b.name.empty()) return !a.name.empty();
            if (!a.name.empty()) return a.name < b.name;
            return render(a.simplex.diagram) < render(b.simplex.diagram);
        });
        int nc = 0, ni = 0;
        for (auto& r : records) {
            int idx = r.compact ? ++nc : ++ni;
            std::string name = r.name.empty() ? std::string(r.compact ? "Hc" : "Hn") + std::to_string(k) + "_" + std::to_string(idx) : r.name;
            (r.compact ? compact : ideal) << "\n" << catalog_record(r.simplex, name);
        }
        std::cerr << k << " nodes: " << nc << " compact, " << ni << " non-compact\n";
    }
}
