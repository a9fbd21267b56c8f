#include "coxeterkit/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

#ifndef COXETERKIT_CATALOG_DIR
#define COXETERKIT_CATALOG_DIR "catalog"
#endif

namespace coxeterkit {

const char* to_string(Geometry g) {
    switch (g) {
    case Geometry::Spherical: return "Spherical";
    case Geometry::Euclidean: return "Euclidean";
    case Geometry::HyperbolicCompact: return "HyperbolicCompact";
    case Geometry::HyperbolicNoncompact: return "HyperbolicNoncompact";
    case Geometry::NotASimplexDiagram: return "NotASimplexDiagram";
    }
    return "?";
}

Geometry geometry_from_string(const std::string& s) {
    if (s == "spherical") return Geometry::Spherical;
    if (s == "euclidean") return Geometry::Euclidean;
    if (s == "hyperbolic-compact") return Geometry::HyperbolicCompact;
    if (s == "hyperbolic-noncompact") return Geometry::HyperbolicNoncompact;
    throw Error("diagram", "unknown catalog geometry '" + s + "'");
}

namespace {

std::string format_param(double v) {
    if (std::isinf(v)) return "inf";
    return std::to_string(static_cast<long>(std::llround(v)));
}

// Recursive descent over: || && ! comparisons + - * / unary minus, numbers, names, inf.
class ExprParser {
public:
    ExprParser(const std::string& s, const std::map<std::string, double>& vars) : s_(s), vars_(vars) {}

    double run() {
        double v = parse_or();
        skip();
        if (pos_ != s_.size()) fail("trailing characters");
        return v;
    }

private:
    void skip() { while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_; }
    bool eat(const char* tok) {
        skip();
        std::size_t n = std::char_traits<char>::length(tok);
        if (s_.compare(pos_, n, tok) == 0) { pos_ += n; return true; }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw Error("diagram", "expression '" + s_ + "': " + msg);
    }

    double parse_or() {
        double v = parse_and();
        while (eat("||")) { double r = parse_and(); v = (v != 0 || r != 0) ? 1 : 0; }
        return v;
    }
    double parse_and() {
        double v = parse_cmp();
        while (eat("&&")) { double r = parse_cmp(); v = (v != 0 && r != 0) ? 1 : 0; }
        return v;
    }
    double parse_cmp() {
        double v = parse_sum();
        for (;;) {
            if (eat("<=")) v = v <= parse_sum();
            else if (eat(">=")) v = v >= parse_sum();
            else if (eat("==")) v = v == parse_sum();
            else if (eat("!=")) v = v != parse_sum();
            else if (eat("<")) v = v < parse_sum();
            else if (eat(">")) v = v > parse_sum();
            else return v;
        }
    }
    double parse_sum() {
        double v = parse_product();
        for (;;) {
            if (eat("+")) v += parse_product();
            else if (eat("-")) v -= parse_product();
            else return v;
        }
    }
    double parse_product() {
        double v = parse_unary();
        for (;;) {
            if (eat("*")) v *= parse_unary();
            else if (eat("/")) v /= parse_unary();
            else return v;
        }
    }
    double parse_unary() {
        if (eat("-")) return -parse_unary();
        if (eat("!")) return parse_unary() == 0 ? 1 : 0;
        return parse_atom();
    }
    double parse_atom() {
        skip();
        if (eat("(")) {
            double v = parse_or();
            if (!eat(")")) fail("missing ')'");
            return v;
        }
        if (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
            std::size_t used = 0;
            double v = std::stod(s_.substr(pos_), &used);
            pos_ += used;
            return v;
        }
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        std::string name = s_.substr(start, pos_ - start);
        if (name.empty()) fail("unexpected character");
        if (name == "inf") return std::numeric_limits<double>::infinity();
        auto it = vars_.find(name);
        if (it == vars_.end()) fail("unknown name '" + name + "'");
        return it->second;
    }

    const std::string& s_;
    const std::map<std::string, double>& vars_;
    std::size_t pos_ = 0;
};

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) {
        cur = trim(cur);
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

std::optional<EdgeMark> mark_from_value(double v, bool& ok) {
    ok = true;
    if (std::isinf(v)) return EdgeMark::parallel();
    long m = std::lround(v);
    if (std::abs(v - static_cast<double>(m)) > 1e-12 || m < 2) { ok = false; return std::nullopt; }
    if (m == 2) return std::nullopt;
    return EdgeMark::finite(static_cast<int>(m));
}

} // namespace

double eval_expression(const std::string& expr, const std::map<std::string, double>& vars) {
    return ExprParser(expr, vars).run();
}

std::string FamilyLabel::text() const {
    // Node-count parameters are appended, mark parameters go in parentheses.
    std::string out = family;
    std::string marks;
    for (auto& [k, v] : params) {
        if (k == "n") out += format_param(v);
        else marks += (marks.empty() ? "" : ",") + format_param(v);
    }
    if (!marks.empty()) out += "(" + marks + ")";
    return out;
}

std::vector<CatalogFamily> parse_catalog(const std::string& text, const std::string& file) {
    std::vector<CatalogFamily> out;
    std::istringstream is(text);
    std::string raw;
    int line = 0;
    CatalogFamily* cur = nullptr;
    auto fail = [&](const std::string& msg) { throw Error("diagram", file + ":" + std::to_string(line) + ": " + msg); };
    while (std::getline(is, raw)) {
        ++line;
        std::string s = trim(raw.substr(0, raw.find('#')));
        if (s.empty()) continue;
        if (s == "[family]") {
            out.emplace_back();
            cur = &out.back();
            cur->file = file;
            cur->line = line;
            continue;
        }
        auto eq = s.find('=');
        if (eq == std::string::npos) fail("expected key = value");
        if (!cur) fail("record before the first [family] header");
        std::string key = trim(s.substr(0, eq)), value = trim(s.substr(eq + 1));
        if (key == "name") cur->name = value;
        else if (key == "geometry") cur->geometry = geometry_from_string(value);
        else if (key == "int_params") cur->int_params = split(value, ',');
        else if (key == "mark_params") cur->mark_params = split(value, ',');
        else if (key == "constraint") cur->constraint = value;
        else if (key == "shape") cur->shape = value;
        else if (key == "nodes") cur->nodes = value;
        else if (key == "marks") cur->marks = value;
        else if (key == "leaves") cur->leaves = split(value, ',');
        else if (key == "edges") cur->edges = value;
        else fail("unknown key '" + key + "'");
    }
    for (auto& f : out) {
        if (f.name.empty() || f.shape.empty() || f.nodes.empty())
            throw Error("diagram", file + ":" + std::to_string(f.line) + ": record needs name, shape and nodes");
        if (f.shape != "path" && f.shape != "cycle" && f.shape != "explicit")
            throw Error("diagram", file + ":" + std::to_string(f.line) + ": unknown shape '" + f.shape + "'");
    }
    return out;
}

std::string Catalog::default_directory() {
    if (const char* env = std::getenv("COXETERKIT_CATALOG"); env && *env) return env;
    return COXETERKIT_CATALOG_DIR;
}

Catalog Catalog::load(const std::string& directory) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(directory)) throw Error("diagram", "catalog directory '" + directory + "' not found");
    std::vector<fs::path> files;
    for (auto& e : fs::directory_iterator(directory))
        if (e.path().extension() == ".cat") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    Catalog c;
    for (auto& p : files) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        auto fams = parse_catalog(ss.str(), p.filename().string());
        c.families_.insert(c.families_.end(), fams.begin(), fams.end());
    }
    if (c.families_.empty()) throw Error("diagram", "catalog directory '" + directory + "' holds no .cat files");
    return c;
}

const Catalog& Catalog::bundled() {
    static const Catalog c = load(default_directory());
    return c;
}

std::optional<CoxeterDiagram> Catalog::instantiate(const CatalogFamily& f,
                                                    const std::map<std::string, double>& params) const {
    if (eval_expression(f.constraint, params) == 0) return std::nullopt;
    const double nv = eval_expression(f.nodes, params);
    const long nodes = std::lround(nv);
    if (nodes < 1 || nodes > 64 || std::abs(nv - static_cast<double>(nodes)) > 1e-12) return std::nullopt;

    if (f.shape == "explicit") return parse_diagram("nodes " + std::to_string(nodes) + "; " + f.edges);

    CoxeterDiagram d(static_cast<int>(nodes));
    const long path_len = nodes - static_cast<long>(f.leaves.size());
    const long needed = f.shape == "cycle" ? nodes : path_len - 1;
    if (path_len < 1 || (f.shape == "cycle" && (nodes < 3 || !f.leaves.empty()))) return std::nullopt;

    std::vector<std::string> items = split(f.marks, ',');
    int stars = 0;
    for (auto& it : items) stars += it.back() == '*';
    if (stars > 1) throw Error("diagram", f.file + ":" + std::to_string(f.line) + ": at most one repeated mark");
    const long fixed = static_cast<long>(items.size()) - stars;
    if (stars == 0 ? fixed != needed : fixed > needed) return std::nullopt;
    std::vector<double> marks;
    for (auto& it : items) {
        if (it.back() == '*') {
            double v = eval_expression(it.substr(0, it.size() - 1), params);
            for (long r = 0; r < needed - fixed; ++r) marks.push_back(v);
        } else {
            marks.push_back(eval_expression(it, params));
        }
    }
    for (long i = 0; i < needed; ++i) {
        bool ok = true;
        auto m = mark_from_value(marks[i], ok);
        if (!ok) return std::nullopt;
        int a = static_cast<int>(i) + 1;
        int b = (f.shape == "cycle" && i == nodes - 1) ? 1 : a + 1;
        if (m) d.set_edge(a, b, *m);
    }
    for (std::size_t l = 0; l < f.leaves.size(); ++l) {
        const long at = std::lround(eval_expression(f.leaves[l], params));
        const long node = path_len + static_cast<long>(l) + 1;
        if (at < 1 || at >= node) return std::nullopt;
        d.set_edge(static_cast<int>(at), static_cast<int>(node), EdgeMark::finite(3));
    }
    return d;
}

namespace {

// Calls f for every assignment of family parameters over the given domains.
void for_each_assignment(const CatalogFamily& f, int max_int, const std::vector<double>& mark_domain,
                         const std::function<void(const std::map<std::string, double>&)>& fn) {
    std::vector<std::string> names = f.int_params;
    names.insert(names.end(), f.mark_params.begin(), f.mark_params.end());
    std::map<std::string, double> vars;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == names.size()) { fn(vars); return; }
        if (i < f.int_params.size()) {
            for (int v = 0; v <= max_int; ++v) { vars[names[i]] = v; rec(i + 1); }
        } else {
            for (double v : mark_domain) { vars[names[i]] = v; rec(i + 1); }
        }
    };
    rec(0);
}

double mark_value(int m) { return m == kInfinity ? std::numeric_limits<double>::infinity() : m; }

} // namespace

std::optional<FamilyLabel> Catalog::identify(const CoxeterDiagram& d, Geometry g) const {
    std::set<double> domain{2.0};
    for (auto& [_, e] : d.edges()) {
        if (e.kind == EdgeMark::Kind::Finite) domain.insert(e.m);
        else if (e.kind == EdgeMark::Kind::Parallel) domain.insert(std::numeric_limits<double>::infinity());
    }
    std::vector<double> marks(domain.begin(), domain.end());
    for (auto& f : families_) {
        if (f.geometry != g) continue;
        std::optional<FamilyLabel> found;
        for_each_assignment(f, d.size() + 1, marks, [&](const std::map<std::string, double>& vars) {
            if (found) return;
            auto inst = instantiate(f, vars);
            if (inst && inst->size() == d.size() && isomorphic(*inst, d)) found = FamilyLabel{f.name, vars, f.file};
        });
        if (found) return found;
    }
    return std::nullopt;
}

std::vector<std::pair<FamilyLabel, CoxeterDiagram>> Catalog::expand(int max_nodes,
                                                                    const std::vector<int>& marks_domain) const {
    std::vector<double> marks;
    for (int m : marks_domain) marks.push_back(mark_value(m));
    std::vector<std::pair<FamilyLabel, CoxeterDiagram>> out;
    for (auto& f : families_) {
        for_each_assignment(f, max_nodes + 1, marks, [&](const std::map<std::string, double>& vars) {
            auto inst = instantiate(f, vars);
            if (inst && inst->size() <= max_nodes) out.push_back({FamilyLabel{f.name, vars, f.file}, *inst});
        });
    }
    return out;
}

Geometry geometry_of(const CoxeterDiagram& d, double tol) {
    if (d.has_dashed()) return Geometry::NotASimplexDiagram;
    const int k = d.size();
    Mat g = gram_from_diagram(d);
    Signature s = signature(g, tol);
    if (s.positive == k) return Geometry::Spherical;
    if (s.positive == k - 1 && s.zero == 1) return euclidean_type(g, tol) ? Geometry::Euclidean : Geometry::NotASimplexDiagram;
    if (s.positive == k - 1 && s.negative == 1) {
        bool ideal = false;
        for (int drop = 0; drop < k; ++drop) {
            std::vector<int> rows;
            for (int i = 0; i < k; ++i)
                if (i != drop) rows.push_back(i);
            Mat h = principal(g, rows);
            if (positive_definite(h, tol)) continue;
            if (euclidean_type(h, tol) && matrix_rank(h, tol) == k - 2) { ideal = true; continue; }
            return Geometry::NotASimplexDiagram;
        }
        return ideal ? Geometry::HyperbolicNoncompact : Geometry::HyperbolicCompact;
    }
    return Geometry::NotASimplexDiagram;
}

Classification classify(const CoxeterDiagram& d, double tol) { return classify(d, Catalog::bundled(), tol); }

Classification classify(const CoxeterDiagram& d, const Catalog& catalog, double tol) {
    if (!d.connected())
        throw Error("diagram", "diagram is disconnected; classify each connected component separately");
    Classification c;
    c.signature = signature(gram_from_diagram(d), tol);
    c.geometry = geometry_of(d, tol);
    if (c.geometry == Geometry::NotASimplexDiagram) return c;
    c.family = catalog.identify(d, c.geometry);
    if (!c.family && (c.geometry == Geometry::Spherical || c.geometry == Geometry::Euclidean)) {
        for (Geometry other : {Geometry::Spherical, Geometry::Euclidean, Geometry::HyperbolicCompact,
                               Geometry::HyperbolicNoncompact}) {
            if (other == c.geometry) continue;
            if (auto l = catalog.identify(d, other))
                throw Error("diagram", "internal consistency: signature gives " + std::string(to_string(c.geometry)) +
                                           " but the catalog lists " + l->text() + " as " + to_string(other));
        }
        throw Error("diagram", std::string("internal consistency: ") + to_string(c.geometry) +
                                   " diagram missing from the catalog: " + render(d));
    }
    return c;
}

} // namespace coxeterkit
