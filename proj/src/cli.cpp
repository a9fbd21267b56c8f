#include "coxeterkit/cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "coxeterkit/acceptance.hpp"
#include "coxeterkit/catalog.hpp"
#include "coxeterkit/dual.hpp"
#include "coxeterkit/export.hpp"
#include "coxeterkit/faces.hpp"
#include "coxeterkit/wythoff.hpp"
#include "coxeterkit/zoo.hpp"

namespace coxeterkit {

namespace {

struct Options {
    std::string schlafli;
    std::string diagram;
    std::string gram;
    std::string ring;
    std::string out;
    std::string format;
    std::string suite = "fast";
    std::string object;
    std::string hole = "1,0,0,0,0,0,0,0";
    std::vector<int> criteria;
    int depth = 1;
    int n = 4;
    int dim = 0;
    double tol = 1e-9;
    int cap = kDefaultOrbitCap;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cli", "cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string join(const std::vector<int>& v, const char* sep = " ") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
    return s;
}

CoxeterDiagram input_diagram(const Options& o) {
    if (o.schlafli.empty() == o.diagram.empty()) throw CLI::ValidationError("exactly one of --schlafli and --diagram is required");
    CoxeterDiagram d;
    if (!o.schlafli.empty()) {
        d = from_schlafli(parse_schlafli(o.schlafli), {});
        if (o.ring.empty()) d.ring(1);
    } else {
        d = parse_diagram(std::filesystem::exists(o.diagram) ? read_file(o.diagram) : o.diagram);
        if (d.rings().empty() && o.ring.empty()) d.ring(1);
    }
    if (!o.ring.empty()) {
        auto r = parse_ring_list(o.ring);
        d.set_rings({r.begin(), r.end()});
    }
    return d;
}

// Gram matrix from --gram (text or JSON file) or from the diagram.
std::pair<Mat, int> input_gram(const Options& o) {
    if (!o.gram.empty()) {
        std::string text = read_file(o.gram);
        Mat g = text.find('[') != std::string::npos ? matrix_from_json(text) : matrix_from_text(text);
        return {g, o.dim > 0 ? o.dim : static_cast<int>(g.rows()) - 1};
    }
    CoxeterDiagram d = input_diagram(o);
    return {gram_from_diagram(d), o.dim > 0 ? o.dim : d.size() - 1};
}

BuildOptions build_options(const Options& o) { return {o.cap, o.tol}; }

ExportFormat output_format(const Options& o, ExportFormat fallback) {
    if (!o.format.empty()) return export_format_from_string(o.format);
    if (!o.out.empty()) return export_format_from_path(o.out);
    return fallback;
}

void emit(const Options& o, std::ostream& out, const std::string& text) {
    if (o.out.empty())
        out << text;
    else
        write_file(o.out, text);
}

void print_polytope(const Polytope& p, std::ostream& out) {
    out << "geometry " << to_string(p.geometry) << "\n";
    out << "f-vector " << join(p.f_vector()) << "\n";
    if (std::isfinite(p.edge_length)) out << "edge-length " << p.edge_length << "\n";
}

int do_classify(const Options& o, std::ostream& out) {
    CoxeterDiagram d = input_diagram(o);
    Classification c = classify(d, o.tol);
    if (o.format == "json") {
        nlohmann::json j;
        j["geometry"] = to_string(c.geometry);
        j["signature"] = c.signature.str();
        j["family"] = c.family ? nlohmann::json(c.family->text()) : nlohmann::json(nullptr);
        out << j.dump(2) << "\n";
        return 0;
    }
    out << to_string(c.geometry) << "\n";
    if (c.family) out << "family " << c.family->text() << "\n";
    out << "signature " << c.signature.str() << "\n";
    return 0;
}

int do_realize(const Options& o, std::ostream& out) {
    auto [g, n] = input_gram(o);
    Realizability r = vinberg_realizable(g, n, o.tol);
    nlohmann::json j;
    j["realizable"] = r.realizable;
    j["compact"] = r.compact;
    j["reason"] = r.reason;
    j["witness"] = r.witness;
    j["warnings"] = r.warnings;
    if (r.realizable) {
        MirrorSystem m = recover_normals(g, n, o.tol);
        nlohmann::json normals = nlohmann::json::array();
        for (auto& v : m.normals) normals.push_back(std::vector<double>(v.data(), v.data() + v.size()));
        j["form"] = to_string(m.form.kind);
        j["normals"] = normals;
        if (m.affine()) j["offsets"] = m.offsets;
    }
    emit(o, out, j.dump(2) + "\n");
    return r.realizable ? 0 : 1;
}

int do_faces(const Options& o, std::ostream& out) {
    auto [g, n] = input_gram(o);
    FaceLattice lat = enumerate_faces(g, n, o.tol);
    if (o.format == "json" || !o.out.empty()) {
        emit(o, out, lattice_to_json(lat) + "\n");
        return 0;
    }
    out << "f-vector " << join(lat.f_vector()) << "\n";
    out << "real-vertices " << lat.real_vertices() << "\n";
    out << "ideal-vertices " << lat.ideal_vertices() << "\n";
    if (!lat.verified) out << "unverified (more than n + 1 facets)\n";
    return 0;
}

int do_build(const Options& o, std::ostream& out) {
    CoxeterDiagram d = input_diagram(o);
    Polytope p = build(d, build_options(o));
    std::optional<SymmetryClass> sym;
    if (p.geometry == SpaceForm::Spherical) sym = symmetry_class(p, d);
    if (!o.out.empty() || !o.format.empty()) {
        emit(o, out, export_polytope(p, output_format(o, ExportFormat::Json), sym));
        if (o.out.empty()) return 0;
    }
    print_polytope(p, out);
    if (sym) out << "symmetry " << to_string(*sym) << "\n";
    return 0;
}

int do_tessellate(const Options& o, std::ostream& out) {
    CoxeterDiagram d = input_diagram(o);
    TessellationPatch t = tessellation_patch(d, o.depth, build_options(o));
    if (!o.out.empty() || !o.format.empty()) {
        emit(o, out, export_patch(t, output_format(o, ExportFormat::Json)));
        if (o.out.empty()) return 0;
    }
    out << "geometry " << to_string(t.geometry) << "\n";
    out << "cells " << t.cells.size() << "\n";
    out << "cell-types " << t.cell_types.size() << "\n";
    out << "points " << t.points.size() << "\n";
    return 0;
}

int do_dual(const Options& o, std::ostream& out) {
    CoxeterDiagram d = input_diagram(o);
    Polytope p = build(d, build_options(o));
    DualPolytope q = dual_polytope(p, o.tol);
    if (!o.out.empty() || !o.format.empty()) {
        emit(o, out, export_polytope(q.polytope, output_format(o, ExportFormat::Json)));
        if (o.out.empty()) return 0;
    }
    out << "f-vector " << join(q.polytope.f_vector()) << "\n";
    out << "radius-classes " << q.radii.size() << "\n";
    HyperbolicRealization h = hyperbolic_realization(q, o.tol);
    auto [lo, hi] = std::minmax_element(h.angles.begin(), h.angles.end());
    out << "hyperbolic ideal " << h.ideal_vertices.size() << " real " << h.real_vertices.size() << "\n";
    out << "angles " << *lo << " " << *hi << " (pi/2 = " << std::numbers::pi / 2 << ")\n";
    return 0;
}

RationalPoint parse_hole(const std::string& text) {
    RationalPoint h;
    std::string s = text;
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        h.den = std::stoll(s.substr(slash + 1));
        s = s.substr(0, slash);
    }
    std::stringstream ss(s);
    std::string tok;
    int i = 0;
    while (std::getline(ss, tok, ',')) {
        if (i >= 8) throw Error("cli", "a hole has 8 coordinates");
        h.num[i++] = std::stoll(tok);
    }
    if (i != 8) throw Error("cli", "a hole has 8 coordinates");
    return h;
}

int do_zoo(const Options& o, std::ostream& out) {
    const std::string& w = o.object;
    auto polytope = [&](const Polytope& p) {
        if (!o.out.empty() || !o.format.empty()) {
            emit(o, out, export_polytope(p, output_format(o, ExportFormat::Json)));
            if (o.out.empty()) return 0;
        }
        print_polytope(p, out);
        return 0;
    };
    auto patch = [&](const TessellationPatch& t) {
        if (!o.out.empty() || !o.format.empty()) {
            emit(o, out, export_patch(t, output_format(o, ExportFormat::Json)));
            if (o.out.empty()) return 0;
        }
        out << "cells " << t.cells.size() << "\n";
        return 0;
    };
    if (w == "e8-roots") {
        std::ostringstream text;
        for (auto& r : e8_roots()) {
            Vec v = to_vec(r);
            for (int i = 0; i < 8; ++i) text << (i ? " " : "") << v[i];
            text << "\n";
        }
        emit(o, out, text.str());
        return 0;
    }
    if (w == "421") return polytope(build_421(build_options(o)));
    if (w == "hole") {
        HoleNeighbors h = hole_neighbors(parse_hole(o.hole));
        out << "nearest " << h.count << "\n";
        out << "distance " << h.distance << " (squared " << h.distance_sq_num << "/" << h.distance_sq_den << ")\n";
        return 0;
    }
    if (w == "cell24" || w == "cell600" || w == "snub24") {
        QuaternionPolytopes q = quaternion_polytopes();
        return polytope(w == "cell24" ? q.cell24 : w == "cell600" ? q.cell600 : q.snub24);
    }
    if (w == "demicube") return polytope(demicube(o.n, build_options(o)));
    if (w == "permutohedron") return polytope(permutohedron(o.n, build_options(o)));
    if (w == "omnitruncated-cube") return polytope(omnitruncated_cube(o.n, build_options(o)));
    if (w == "slice") return patch(diagonal_slice_tessellation(o.n, o.depth));
    if (w == "layered-slice") return patch(layered_slice_tessellation(o.depth));
    throw CLI::ValidationError("unknown zoo object '" + w + "'");
}

int do_verify(const Options& o, std::ostream& out) {
    AcceptanceTier tier;
    if (o.suite == "fast")
        tier = AcceptanceTier::Fast;
    else if (o.suite == "large" || o.suite == "acceptance")
        tier = AcceptanceTier::Large;
    else
        throw CLI::ValidationError("--suite must be fast, large or acceptance");
    bool ok = true;
    for (auto& row : run_acceptance(tier, o.criteria)) {
        out << format_row(row) << std::endl;
        ok = ok && row.passed;
    }
    return ok ? 0 : 1;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Coxeter polytopes and tessellations", "coxeterkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value file with option defaults");
    app.add_option("--schlafli", o.schlafli, "Schlafli symbol, e.g. 4,3,5 (0 or inf for infinity)");
    app.add_option("--diagram", o.diagram, "Diagram file, or inline diagram text");
    app.add_option("--gram", o.gram, "Gram matrix file (text rows or JSON)");
    app.add_option("--dim", o.dim, "Dimension n for a Gram matrix input");
    app.add_option("--ring", o.ring, "Ringed nodes, e.g. 1,3");
    app.add_option("--depth", o.depth, "Tessellation depth")->check(CLI::NonNegativeNumber);
    app.add_option("--out", o.out, "Output file");
    app.add_option("--format", o.format, "off, obj, svg or json")->check(CLI::IsMember({"off", "obj", "svg", "json"}));
    app.add_option("--tol", o.tol, "Numerical tolerance")->check(CLI::PositiveNumber);
    app.add_option("--cap", o.cap, "Orbit size cap")->check(CLI::PositiveNumber);
    app.add_option("--suite", o.suite, "Verification tier")->check(CLI::IsMember({"fast", "large", "acceptance"}));
    app.add_option("--criteria", o.criteria, "Acceptance rows to run (default all)");
    app.add_option("--n", o.n, "Dimension for zoo families");
    app.add_option("--hole", o.hole, "Hole for 'zoo hole': eight numerators, optional /denominator");

    struct Verb {
        const char* name;
        const char* help;
        int (*fn)(const Options&, std::ostream&);
    };
    const Verb verbs[] = {
        {"classify", "Geometry and family of a diagram", do_classify},
        {"realize", "Vinberg realisability and mirror normals", do_realize},
        {"faces", "Face lattice from the Gram matrix", do_faces},
        {"build", "Wythoff polytope (first cell for tessellations)", do_build},
        {"tessellate", "Patch of a Euclidean or hyperbolic tessellation", do_tessellate},
        {"dual", "Polar dual and its hyperbolic realisation", do_dual},
        {"zoo", "Special constructions", do_zoo},
        {"verify", "Acceptance table", do_verify},
    };
    std::vector<std::pair<CLI::App*, const Verb*>> subs;
    for (const Verb& v : verbs) {
        CLI::App* s = app.add_subcommand(v.name, v.help);
        s->fallthrough();
        if (std::string(v.name) == "zoo")
            s->add_option("object", o.object,
                          "e8-roots, 421, hole, cell24, cell600, snub24, demicube, permutohedron, omnitruncated-cube, slice, layered-slice")
                ->required();
        subs.emplace_back(s, &v);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 2;
    }

    try {
        for (auto& [s, v] : subs)
            if (s->parsed()) return v->fn(o, out);
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 2;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace coxeterkit
