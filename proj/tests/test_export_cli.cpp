#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sys/wait.h>
#include <sstream>

#include "coxeterkit/catalog.hpp"
#include "coxeterkit/cli.hpp"
#include "coxeterkit/export.hpp"
#include "coxeterkit/wythoff.hpp"

using namespace coxeterkit;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code;
    std::string out, err;
};

CliResult cli(std::vector<std::string> args) {
    args.insert(args.begin(), "coxeterkit");
    std::vector<const char*> argv;
    for (auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "coxeterkit_tests";
    fs::create_directories(dir);
    return dir / name;
}

// Minimal OFF reader: header, counts, vertices, faces.
struct OffMesh {
    int v = 0, f = 0, e = 0;
    std::vector<std::vector<double>> vertices;
    std::vector<std::vector<int>> faces;
};

OffMesh read_off(const std::string& text) {
    std::istringstream in(text);
    std::string header;
    in >> header;
    EXPECT_EQ(header, "OFF");
    OffMesh m;
    in >> m.v >> m.f >> m.e;
    std::string line;
    std::getline(in, line);
    for (int i = 0; i < m.v; ++i) {
        std::getline(in, line);
        std::istringstream ls(line);
        std::vector<double> c;
        double x;
        while (ls >> x) c.push_back(x);
        m.vertices.push_back(c);
    }
    for (int i = 0; i < m.f; ++i) {
        int k;
        in >> k;
        std::vector<int> face(k);
        for (int& x : face) in >> x;
        m.faces.push_back(face);
    }
    return m;
}

} // namespace

TEST(Export, OctahedronOff) {
    Polytope p = build(from_schlafli({3, 4}, {1}));
    std::string text = to_off(p);
    std::istringstream in(text);
    std::string l1, l2;
    std::getline(in, l1);
    std::getline(in, l2);
    EXPECT_EQ(l1, "OFF");
    EXPECT_EQ(l2, "6 8 12");
    OffMesh m = read_off(text);
    ASSERT_EQ(m.faces.size(), 8u);
    for (auto& f : m.faces) {
        EXPECT_EQ(f.size(), 3u);
        for (int i : f) EXPECT_TRUE(i >= 0 && i < 6);
    }
    for (auto& v : m.vertices) EXPECT_EQ(v.size(), 3u);
}

TEST(Export, OffFacesAreCyclic) {
    // Consecutive vertices of each face pentagon bound an edge of the dodecahedron.
    Polytope p = build(from_schlafli({5, 3}, {1}));
    OffMesh m = read_off(to_off(p));
    EXPECT_EQ(m.v, 20);
    EXPECT_EQ(m.f, 12);
    EXPECT_EQ(m.e, 30);
    std::set<std::pair<int, int>> edges;
    for (int e = 0; e < p.faces[1].size(); ++e) edges.insert({p.faces[1][e][0], p.faces[1][e][1]});
    for (auto& f : m.faces)
        for (std::size_t i = 0; i < f.size(); ++i) {
            int a = f[i], b = f[(i + 1) % f.size()];
            EXPECT_TRUE(edges.count({std::min(a, b), std::max(a, b)}));
        }
}

TEST(Export, ObjIsWellFormed) {
    Polytope p = build(from_schlafli({4, 3}, {1, 2}));
    std::istringstream in(to_obj(p));
    std::string line;
    int verts = 0, faces = 0;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "v") {
            double x, y, z;
            EXPECT_TRUE(static_cast<bool>(ls >> x >> y >> z));
            ++verts;
        } else if (tag == "f") {
            int i, k = 0;
            while (ls >> i) {
                EXPECT_GE(i, 1);
                EXPECT_LE(i, verts);
                ++k;
            }
            EXPECT_GE(k, 3);
            ++faces;
        } else {
            ADD_FAILURE() << line;
        }
    }
    EXPECT_EQ(verts, 24);
    EXPECT_EQ(faces, 14);
    EXPECT_THROW(to_obj(build(from_schlafli({3, 3, 3}, {1}))), Error);
}

TEST(Export, HyperbolicSvgStaysInTheDisc) {
    TessellationPatch t = tessellation_patch(from_schlafli({7, 3}, {1}), 2);
    std::string svg = to_svg(t);
    std::smatch m;
    ASSERT_TRUE(std::regex_search(svg, m, std::regex("<circle cx=\"([^\"]+)\" cy=\"([^\"]+)\" r=\"([^\"]+)\"")));
    const double cx = std::stod(m[1]), cy = std::stod(m[2]), r = std::stod(m[3]);
    std::regex poly("points=\"([^\"]+)\"");
    int polygons = 0, points = 0;
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), poly); it != std::sregex_iterator(); ++it) {
        ++polygons;
        std::string pts = (*it)[1];
        std::replace(pts.begin(), pts.end(), ',', ' ');
        std::istringstream ps(pts);
        double x, y;
        int k = 0;
        while (ps >> x >> y) {
            EXPECT_LT(std::hypot(x - cx, y - cy), r);
            ++k;
            ++points;
        }
        EXPECT_EQ(k, 7);
    }
    EXPECT_EQ(polygons, static_cast<int>(t.cells.size()));
    EXPECT_GT(points, 0);
    EXPECT_THROW(to_svg(tessellation_patch(from_schlafli({4, 3, 5}, {1}), 1)), Error);
}

TEST(Export, JsonReportsSymmetry) {
    CoxeterDiagram d = from_schlafli({3, 3, 3}, {2});
    Polytope p = build(d);
    auto j = nlohmann::json::parse(to_json(p, symmetry_class(p, d)));
    EXPECT_EQ(j["symmetry"], "semiregular");
    EXPECT_EQ(j["f_vector"], (std::vector<int>{10, 30, 30, 10}));
    EXPECT_EQ(j["vertices"].size(), 10u);
    EXPECT_EQ(j["facets"].size(), 10u);
    EXPECT_EQ(j["rank"], 4);
    auto plain = nlohmann::json::parse(to_json(p));
    EXPECT_TRUE(plain["symmetry"].is_null());
}

TEST(Export, FormatDispatch) {
    EXPECT_EQ(export_format_from_path("a/b.OFF"), ExportFormat::Off);
    EXPECT_EQ(export_format_from_path("x.svg"), ExportFormat::Svg);
    EXPECT_THROW(export_format_from_path("noext"), Error);
    EXPECT_THROW(export_format_from_string("ply"), Error);
    Polytope p = build(from_schlafli({3, 3}, {1}));
    EXPECT_THROW(export_polytope(p, ExportFormat::Svg), Error);
    TessellationPatch t = tessellation_patch(from_schlafli({4, 4}, {1}), 1);
    EXPECT_THROW(export_patch(t, ExportFormat::Off), Error);
    EXPECT_NO_THROW(nlohmann::json::parse(export_patch(t, ExportFormat::Json)));
}

TEST(Cli, Classify) {
    auto r = cli({"classify", "--schlafli", "4,3,5"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), to_string(classify(from_schlafli({4, 3, 5})).geometry));
    EXPECT_NE(r.out.find("signature"), std::string::npos);
    auto j = cli({"classify", "--diagram", "nodes 3; 1-2:4; 2-3", "--format", "json"});
    EXPECT_EQ(j.code, 0);
    EXPECT_EQ(nlohmann::json::parse(j.out)["geometry"], to_string(SpaceForm::Spherical));
}

TEST(Cli, BuildWritesOff) {
    fs::path path = scratch("cell24.off");
    fs::remove(path);
    auto r = cli({"build", "--schlafli", "3,4,3", "--ring", "1", "--out", path.string()});
    EXPECT_EQ(r.code, 0) << r.err;
    OffMesh m = read_off(slurp(path));
    EXPECT_EQ(m.v, 24);
    EXPECT_EQ(m.f, 24);
    EXPECT_EQ(m.e, 96);
    EXPECT_NE(r.out.find("f-vector 24 96 96 24"), std::string::npos);
}

TEST(Cli, BuildMatchesTheLibrary) {
    CoxeterDiagram d = from_schlafli({3, 3, 3}, {2});
    Polytope p = build(d);
    auto r = cli({"build", "--schlafli", "3,3,3", "--ring", "2", "--format", "json"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, to_json(p, symmetry_class(p, d)));
    auto off = cli({"build", "--schlafli", "3,4", "--format", "off"});
    EXPECT_EQ(off.out, to_off(build(from_schlafli({3, 4}, {1}))));
}

TEST(Cli, OtherVerbs) {
    auto t = cli({"tessellate", "--schlafli", "4,4", "--depth", "2"});
    EXPECT_EQ(t.code, 0) << t.err;
    EXPECT_NE(t.out.find("cells 13"), std::string::npos);
    auto f = cli({"faces", "--schlafli", "4,3,5"});
    EXPECT_EQ(f.code, 0) << f.err;
    EXPECT_NE(f.out.find("f-vector 4 6 4"), std::string::npos);
    auto rz = cli({"realize", "--schlafli", "4,3,5"});
    EXPECT_EQ(rz.code, 0) << rz.err;
    EXPECT_TRUE(nlohmann::json::parse(rz.out)["realizable"].get<bool>());
    auto u = cli({"realize", "--diagram", "nodes 3; 1-2:d=1; 2-3:d=1; 1-3:d=1"});
    EXPECT_EQ(u.code, 1);
    auto z = cli({"zoo", "hole", "--hole", "5,1,1,1,1,1,1,1/6"});
    EXPECT_EQ(z.code, 0) << z.err;
    EXPECT_NE(z.out.find("nearest 9"), std::string::npos);
    EXPECT_NE(z.out.find("8/9"), std::string::npos);
    auto dm = cli({"zoo", "demicube", "--n", "5"});
    EXPECT_NE(dm.out.find("f-vector 16 80 160 120 26"), std::string::npos);
    auto du = cli({"dual", "--schlafli", "3,4", "--ring", "2"});
    EXPECT_EQ(du.code, 0) << du.err;
    EXPECT_NE(du.out.find("f-vector 14 24 12"), std::string::npos);
}

TEST(Cli, Verify) {
    auto r = cli({"verify", "--criteria", "1", "--criteria", "2"});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 2);
    EXPECT_EQ(r.out.rfind("PASS", 0), 0u);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(cli({}).code, 2);
    EXPECT_EQ(cli({"classify", "--bogus"}).code, 2);
    EXPECT_EQ(cli({"classify"}).code, 2);
    EXPECT_EQ(cli({"classify", "--schlafli", "4,3", "--diagram", "nodes 2"}).code, 2);
    EXPECT_EQ(cli({"build", "--schlafli", "3,3", "--format", "ply"}).code, 2);
    EXPECT_EQ(cli({"zoo", "unicorn"}).code, 2);
    auto bad = cli({"classify", "--diagram", "nodes 3; 1-4"});
    EXPECT_EQ(bad.code, 2);
    EXPECT_NE(bad.err.find("1"), std::string::npos);
    EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST(Cli, ComputationErrorsExitOne) {
    EXPECT_EQ(cli({"build", "--schlafli", "3,3,5", "--cap", "100"}).code, 1);
    EXPECT_EQ(cli({"tessellate", "--schlafli", "3,3"}).code, 1);
}

TEST(Cli, ConfigFile) {
    fs::path cfg = scratch("opts.ini");
    std::ofstream(cfg) << "schlafli = \"4,3,5\"\ndepth = 2\n";
    auto r = cli({"classify", "--config", cfg.string()});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, cli({"classify", "--schlafli", "4,3,5"}).out);
}

TEST(Cli, Binary) {
    fs::path out = scratch("bin_out.txt");
    std::string cmd = std::string("\"") + COXETERKIT_CLI_PATH + "\" classify --schlafli 5,3,4 > \"" + out.string() + "\"";
    EXPECT_EQ(std::system(cmd.c_str()), 0);
    EXPECT_EQ(slurp(out), cli({"classify", "--schlafli", "5,3,4"}).out);
    std::string bad = std::string("\"") + COXETERKIT_CLI_PATH + "\" classify --nope 2> /dev/null";
    int status = std::system(bad.c_str());
    EXPECT_EQ(WEXITSTATUS(status), 2);
}
