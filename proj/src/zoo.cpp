#include "coxeterkit/zoo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>

namespace coxeterkit {

// ---- E8 -------------------------------------------------------------------

Vec to_vec(const HalfVector& t) {
    Vec v(8);
    for (int i = 0; i < 8; ++i) v[i] = 0.5 * t[i];
    return v;
}

long long dot4(const HalfVector& a, const HalfVector& b) {
    long long s = 0;
    for (int i = 0; i < 8; ++i) s += static_cast<long long>(a[i]) * b[i];
    return s;
}

bool in_e8(const HalfVector& t) {
    const int parity = std::abs(t[0]) % 2;
    long long sum = 0;
    for (int x : t) {
        if (std::abs(x) % 2 != parity) return false;
        sum += x;
    }
    // sum of the coordinates is sum / 2; it must be even
    return sum % 4 == 0;
}

std::array<std::array<int, 8>, 8> LatticeBasis::gram() const {
    std::array<std::array<int, 8>, 8> g{};
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            const long long d = dot4(basis[i], basis[j]);
            if (d % 4 != 0) throw Error("zoo", "basis products are not integers");
            g[i][j] = static_cast<int>(d / 4);
        }
    return g;
}

LatticeBasis e8_basis() {
    LatticeBasis b;
    for (auto& v : b.basis) v.fill(0);
    for (int i = 0; i < 5; ++i) {
        b.basis[i][i] = 2;
        b.basis[i][i + 1] = -2;
    }
    b.basis[5][5] = 2;
    b.basis[5][6] = 2;
    b.basis[6].fill(-1);
    b.basis[7][5] = 2;
    b.basis[7][6] = -2;
    return b;
}

std::array<std::array<int, 8>, 8> e8_cartan() {
    return {{
        {2, -1, 0, 0, 0, 0, 0, 0},
        {-1, 2, -1, 0, 0, 0, 0, 0},
        {0, -1, 2, -1, 0, 0, 0, 0},
        {0, 0, -1, 2, -1, 0, 0, 0},
        {0, 0, 0, -1, 2, -1, 0, -1},
        {0, 0, 0, 0, -1, 2, -1, 0},
        {0, 0, 0, 0, 0, -1, 2, 0},
        {0, 0, 0, 0, -1, 0, 0, 2},
    }};
}

CoxeterDiagram e8_diagram() {
    auto c = e8_cartan();
    CoxeterDiagram d(8);
    for (int i = 0; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j)
            if (c[i][j] == -1) d.set_edge(i + 1, j + 1, EdgeMark::finite(3));
    return d;
}

std::vector<HalfVector> e8_roots() {
    std::vector<HalfVector> out;
    for (int i = 0; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j)
            for (int si : {-2, 2})
                for (int sj : {-2, 2}) {
                    HalfVector t{};
                    t[i] = si;
                    t[j] = sj;
                    out.push_back(t);
                }
    for (int mask = 0; mask < 256; ++mask) {
        if (std::popcount(static_cast<unsigned>(mask)) % 2 != 0) continue;
        HalfVector t;
        for (int i = 0; i < 8; ++i) t[i] = (mask >> i) & 1 ? -1 : 1;
        out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Polytope build_421(const BuildOptions& opt) {
    CoxeterDiagram d = e8_diagram();
    d.ring(1);
    auto b = e8_basis();
    std::vector<Vec> normals;
    for (auto& v : b.basis) normals.push_back(to_vec(v));
    Vec seed = Vec::Zero(8);
    seed[0] = -1;
    seed[7] = 1;
    return build_from_mirrors(d, BilinearForm::euclidean(8), normals, seed, opt);
}

namespace {

struct HoleScan {
    long long best = -1;  // squared distance times (2 den)^2
    std::vector<HalfVector> nearest;
};

HoleScan scan_hole(const RationalPoint& h, int bound) {
    // Doubled coordinates t with |t_i - 2 h_i| <= bound, i.e. |x_i - h_i| <= bound / 2.
    std::array<long long, 8> lo{};
    for (int i = 0; i < 8; ++i) {
        const long long twice = 2 * h.num[i];
        lo[i] = twice / h.den - bound - 1;
    }
    std::array<long long, 8> goal{};
    for (int i = 0; i < 8; ++i) goal[i] = 2 * h.num[i];
    const long long limit = static_cast<long long>(bound) * h.den;

    std::array<std::vector<int>, 8> range;
    for (int i = 0; i < 8; ++i)
        for (long long t = lo[i]; t <= lo[i] + 2 * bound + 3; ++t) {
            const long long e = t * h.den - goal[i];
            if (e <= limit && e >= -limit) range[i].push_back(static_cast<int>(t));
        }

    HoleScan out;
    HalfVector t{};
    std::array<std::size_t, 8> at{};
    for (int i = 0; i < 8; ++i) {
        if (range[i].empty()) return out;
        t[i] = range[i][0];
    }
    while (true) {
        if (in_e8(t)) {
            long long dist = 0;
            for (int i = 0; i < 8; ++i) {
                const long long e = t[i] * h.den - goal[i];
                dist += e * e;
            }
            if (out.best < 0 || dist < out.best) {
                out.best = dist;
                out.nearest.assign(1, t);
            } else if (dist == out.best) {
                out.nearest.push_back(t);
            }
        }
        int j = 0;
        while (j < 8 && at[j] + 1 == range[j].size()) {
            at[j] = 0;
            t[j] = range[j][0];
            ++j;
        }
        if (j == 8) break;
        t[j] = range[j][++at[j]];
    }
    std::sort(out.nearest.begin(), out.nearest.end());
    return out;
}

} // namespace

HoleNeighbors hole_neighbors(const RationalPoint& h, int bound, bool recheck) {
    if (h.den <= 0) throw Error("zoo", "denominator must be positive");
    if (bound < 1) throw Error("zoo", "coefficient bound must be positive");
    HoleScan s = scan_hole(h, bound);
    if (recheck) {
        HoleScan wide = scan_hole(h, bound + 1);
        if (wide.best != s.best || wide.nearest != s.nearest)
            throw Error("zoo", "nearest lattice points change when the coefficient bound grows");
    }
    if (s.best < 0 || 4 * s.best > static_cast<long long>(bound) * bound * 4 * h.den * h.den)
        throw Error("zoo", "no lattice point inside the search window is provably nearest");
    HoleNeighbors out;
    out.count = static_cast<int>(s.nearest.size());
    out.nearest = s.nearest;
    long long num = s.best;
    long long den = 4 * h.den * h.den;
    const long long g = std::gcd(num, den);
    if (g > 0) {
        num /= g;
        den /= g;
    }
    out.distance_sq_num = num;
    out.distance_sq_den = den;
    out.distance = std::sqrt(static_cast<double>(num) / static_cast<double>(den));
    return out;
}

// ---- Quaternions ------------------------------------------------------------

Quaternion qmul(const Quaternion& a, const Quaternion& b) {
    return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
            a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
            a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
            a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
}

namespace {

void canonical_sort(std::vector<Quaternion>& q) {
    std::sort(q.begin(), q.end(), [](const Quaternion& a, const Quaternion& b) {
        return canonical_less(Vec(a), Vec(b));
    });
}

QuaternionGroup closure(const std::string& name, const std::vector<Quaternion>& gens, std::size_t limit) {
    PointSet seen;
    std::vector<Quaternion> elems;
    Quaternion one(1, 0, 0, 0);
    seen.insert(Vec(one));
    elems.push_back(one);
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (auto& g : gens) {
            Quaternion p = qmul(elems[i], g);
            if (seen.insert(Vec(p)).second) {
                elems.push_back(p);
                if (elems.size() > limit) throw Error("zoo", name + " closure exceeds its expected order");
            }
        }
    canonical_sort(elems);
    return {name, elems};
}

} // namespace

QuaternionGroup binary_tetrahedral() {
    std::vector<Quaternion> e;
    for (int i = 0; i < 4; ++i)
        for (double s : {-1.0, 1.0}) {
            Quaternion q = Quaternion::Zero();
            q[i] = s;
            e.push_back(q);
        }
    for (int mask = 0; mask < 16; ++mask) {
        Quaternion q;
        for (int i = 0; i < 4; ++i) q[i] = (mask >> i) & 1 ? -0.5 : 0.5;
        e.push_back(q);
    }
    canonical_sort(e);
    return {"T*24", e};
}

QuaternionGroup binary_icosahedral() {
    const double phi = (1 + std::sqrt(5.0)) / 2;
    const Quaternion i(0, 1, 0, 0);
    const Quaternion w(0.5, 0.5, 0.5, 0.5);
    const Quaternion b(phi / 2, 0.5 / phi, 0.5, 0);
    QuaternionGroup g = closure("I*120", {i, w, b}, 120);
    if (g.elements.size() != 120) throw Error("zoo", "I*120 closure has the wrong order");
    PointSet in;
    for (auto& q : g.elements) in.insert(Vec(q));
    for (auto& q : binary_tetrahedral().elements)
        if (in.find(Vec(q)) < 0) throw Error("zoo", "T*24 is not contained in I*120");
    return g;
}

bool is_group(const QuaternionGroup& g, double tol) {
    PointSet in(std::max(tol * 100, 1e-9), tol * 100);
    for (auto& q : g.elements) in.insert(Vec(q));
    if (in.find(Vec(Quaternion(1, 0, 0, 0))) < 0) return false;
    for (auto& a : g.elements) {
        Quaternion inv(a[0], -a[1], -a[2], -a[3]);
        if (std::abs(a.norm() - 1) > tol || in.find(Vec(inv)) < 0) return false;
        for (auto& b : g.elements)
            if (in.find(Vec(qmul(a, b))) < 0) return false;
    }
    return true;
}

QuaternionPolytopes quaternion_polytopes() {
    QuaternionPolytopes out;
    out.t24 = binary_tetrahedral();
    out.i120 = binary_icosahedral();
    PointSet t;
    std::vector<Vec> tv, iv;
    for (auto& q : out.t24.elements) {
        t.insert(Vec(q));
        tv.push_back(Vec(q));
    }
    for (auto& q : out.i120.elements) {
        iv.push_back(Vec(q));
        if (t.find(Vec(q)) < 0) out.snub_vertices.push_back(Vec(q));
    }
    out.cell24 = convex_hull(tv);
    out.cell600 = convex_hull(iv);
    out.snub24 = convex_hull(out.snub_vertices);
    return out;
}

// ---- Seed-vector families -----------------------------------------------------

namespace {

void check_dimension(int n, int lo) {
    if (n < lo || n > kMaxFamilyDimension)
        throw Error("zoo", "dimension " + std::to_string(n) + " outside [" + std::to_string(lo) + ", " +
                               std::to_string(kMaxFamilyDimension) + "]");
}

void check_rings(int n, const std::set<int>& rings) {
    if (rings.empty()) throw Error("zoo", "at least one node must be ringed");
    for (int r : rings)
        if (r < 1 || r > n) throw Error("zoo", "ring index out of range");
}

CoxeterDiagram path_diagram(int n, int first_mark, const std::set<int>& rings) {
    std::vector<int> symbols(n - 1, 3);
    if (n > 1) symbols[0] = first_mark;
    CoxeterDiagram d = from_schlafli(symbols, {});
    d.set_rings(rings);
    return d;
}

// Orbit vertices must be exactly the explicit set.
void check_vertex_set(const Polytope& p, const std::vector<Vec>& explicit_set) {
    PointSet s;
    for (auto& v : explicit_set) s.insert(v);
    if (s.size() != static_cast<int>(p.vertices.size())) throw Error("zoo", "orbit and seed-vector rule disagree");
    for (auto& v : p.vertices)
        if (s.find(v.coords) < 0) throw Error("zoo", "orbit and seed-vector rule disagree");
}

std::vector<Vec> signed_permutations(Vec c) {
    PointSet seen;
    std::vector<Vec> out;
    std::sort(c.data(), c.data() + c.size());
    const int n = static_cast<int>(c.size());
    do {
        for (int mask = 0; mask < (1 << n); ++mask) {
            Vec v = c;
            for (int i = 0; i < n; ++i)
                if (mask >> i & 1) v[i] = -v[i];
            if (seen.insert(v).second) out.push_back(v);
        }
    } while (std::next_permutation(c.data(), c.data() + c.size()));
    return out;
}

} // namespace

std::vector<Vec> a_seed_vertices(int n, const std::set<int>& rings) {
    check_dimension(n, 1);
    check_rings(n, rings);
    std::vector<double> a(n + 1, 0.0);
    for (int i = 1; i <= n; ++i) a[i] = a[i - 1] + (rings.count(i) ? 1.0 : 0.0);
    std::sort(a.begin(), a.end());
    std::vector<Vec> out;
    do {
        out.push_back(Eigen::Map<Vec>(a.data(), n + 1));
    } while (std::next_permutation(a.begin(), a.end()));
    return out;
}

Polytope a_seed_polytope(int n, const std::set<int>& rings, const BuildOptions& opt) {
    check_dimension(n, 1);
    check_rings(n, rings);
    std::vector<Vec> normals;
    for (int i = 0; i < n; ++i) {
        Vec v = Vec::Zero(n + 1);
        v[i] = 1;
        v[i + 1] = -1;
        normals.push_back(v);
    }
    Vec seed(n + 1);
    seed[0] = 0;
    for (int i = 1; i <= n; ++i) seed[i] = seed[i - 1] + (rings.count(i) ? 1.0 : 0.0);
    Polytope p = build_from_mirrors(path_diagram(n, 3, rings), BilinearForm::euclidean(n + 1), normals, seed, opt);
    check_vertex_set(p, a_seed_vertices(n, rings));
    return p;
}

std::vector<Vec> b_seed_vertices(int n, const std::set<int>& rings) {
    check_dimension(n, 2);
    check_rings(n, rings);
    Vec c(n);
    c[0] = rings.count(1) ? 1.0 : 0.0;
    for (int i = 2; i <= n; ++i) c[i - 1] = c[i - 2] + (rings.count(i) ? std::sqrt(2.0) : 0.0);
    return signed_permutations(c);
}

Polytope b_seed_polytope(int n, const std::set<int>& rings, const BuildOptions& opt) {
    check_dimension(n, 2);
    check_rings(n, rings);
    std::vector<Vec> normals;
    Vec first = Vec::Zero(n);
    first[0] = -1;
    normals.push_back(first);
    for (int i = 1; i < n; ++i) {
        Vec v = Vec::Zero(n);
        v[i - 1] = 1;
        v[i] = -1;
        normals.push_back(v);
    }
    Vec seed(n);
    seed[0] = rings.count(1) ? 1.0 : 0.0;
    for (int i = 2; i <= n; ++i) seed[i - 1] = seed[i - 2] + (rings.count(i) ? std::sqrt(2.0) : 0.0);
    Polytope p = build_from_mirrors(path_diagram(n, 4, rings), BilinearForm::euclidean(n), normals, seed, opt);
    check_vertex_set(p, b_seed_vertices(n, rings));
    return p;
}

std::vector<Vec> demicube_vertices(int n) {
    check_dimension(n, 3);
    std::vector<Vec> out;
    for (int mask = 0; mask < (1 << n); ++mask) {
        if (std::popcount(static_cast<unsigned>(mask)) % 2 != 0) continue;
        Vec v(n);
        for (int i = 0; i < n; ++i) v[i] = (mask >> i & 1) ? 1.0 : -1.0;
        out.push_back(v);
    }
    return out;
}

CoxeterDiagram demicube_diagram(int n) {
    check_dimension(n, 3);
    CoxeterDiagram d(n);
    for (int i = 1; i + 1 < n; ++i) d.set_edge(i, i + 1, EdgeMark::finite(3));
    d.set_edge(n - 2, n, EdgeMark::finite(3));
    d.ring(n);
    return d;
}

Polytope demicube(int n, const BuildOptions& opt) {
    CoxeterDiagram d = demicube_diagram(n);
    std::vector<Vec> normals;
    for (int i = 0; i + 1 < n; ++i) {
        Vec v = Vec::Zero(n);
        v[i] = 1;
        v[i + 1] = -1;
        normals.push_back(v);
    }
    Vec last = Vec::Zero(n);
    last[n - 2] = 1;
    last[n - 1] = 1;
    normals.push_back(last);
    Polytope p = build_from_mirrors(d, BilinearForm::euclidean(n), normals, -Vec::Ones(n), opt);
    check_vertex_set(p, demicube_vertices(n));
    return p;
}

Polytope permutohedron(int n, const BuildOptions& opt) {
    std::set<int> all;
    for (int i = 1; i <= n; ++i) all.insert(i);
    return a_seed_polytope(n, all, opt);
}

Polytope omnitruncated_cube(int n, const BuildOptions& opt) {
    check_dimension(n, 2);
    std::set<int> all;
    for (int i = 1; i <= n; ++i) all.insert(i);
    return b_seed_polytope(n, all, opt);
}

// ---- Diagonal slice --------------------------------------------------------------

namespace {

Mat hyperplane_frame(int n) {
    const int m = n + 1;
    Mat frame = Mat::Zero(n, m);
    for (int j = 1; j <= n; ++j) {
        const double s = std::sqrt(static_cast<double>(j) * (j + 1));
        for (int i = 0; i < j; ++i) frame(j - 1, i) = 1 / s;
        frame(j - 1, j) = -j / s;
    }
    return frame;
}

// Base polytopes of the slice cells, one per k, in frame coordinates, together
// with their 0/1 vertex patterns in Z^(n+1).
struct SliceTypes {
    std::vector<Polytope> polytopes;
    std::vector<std::vector<Vec>> unit;
};

SliceTypes slice_types(int n, const Mat& frame) {
    SliceTypes out;
    for (int k = 1; k <= n; ++k) {
        Polytope t = a_seed_polytope(n, {n + 1 - k});
        std::vector<Vec> unit;
        Vec shift = Vec::Zero(n + 1);
        shift[0] = -k;
        for (auto& v : t.vertices) {
            unit.push_back(v.coords);
            v = {Vec(frame * (v.coords + shift)), PointKind::Interior, FormKind::Euclidean};
        }
        t.geometry = SpaceForm::Euclidean;
        t.form = BilinearForm::euclidean(n);
        out.polytopes.push_back(std::move(t));
        out.unit.push_back(std::move(unit));
    }
    return out;
}

int slice_level(const std::vector<int>& z) { return -std::accumulate(z.begin(), z.end(), 0); }

// Cubes sharing a full-dimensional facet of the slice with cube z.
std::vector<std::vector<int>> slice_neighbours(const std::vector<int>& z, int n) {
    std::vector<std::vector<int>> out;
    const int k = slice_level(z);
    for (int i = 0; i <= n; ++i) {
        if (k >= 2) {
            auto y = z;
            ++y[i];
            out.push_back(y);
        }
        if (k <= n - 1) {
            auto y = z;
            --y[i];
            out.push_back(y);
        }
    }
    return out;
}

// Cubes reached from the cube at -e_1 within depth crossings, optionally
// keeping the first coordinate fixed.
std::vector<std::vector<int>> slice_cubes(int n, int depth, bool stay_in_slab, std::vector<int>* layers) {
    std::map<std::vector<int>, int> index;
    std::vector<std::vector<int>> cubes;
    std::vector<int> start(n + 1, 0);
    start[0] = -1;
    index[start] = 0;
    cubes.push_back(start);
    layers->assign(1, 0);
    std::size_t frontier = 0;
    for (int layer = 1; layer <= depth; ++layer) {
        const std::size_t end = cubes.size();
        for (std::size_t c = frontier; c < end; ++c)
            for (auto& y : slice_neighbours(cubes[c], n)) {
                if (stay_in_slab && y[0] != start[0]) continue;
                if (index.count(y)) continue;
                index[y] = static_cast<int>(cubes.size());
                cubes.push_back(y);
                layers->push_back(layer);
            }
        frontier = end;
    }
    return cubes;
}

void add_slice_cell(TessellationPatch& patch, PointSet& pool, const Mat& frame, const std::vector<Vec>& corners,
                    int type, int layer) {
    PatchCell c;
    c.type = type;
    c.layer = layer;
    for (auto& x : corners) {
        Vec p = frame * x;
        auto [id, fresh] = pool.insert(p);
        if (fresh) patch.points.push_back({p, PointKind::Interior, FormKind::Euclidean});
        c.vertices.push_back(id);
    }
    patch.cells.push_back(std::move(c));
}

void adjacency_by_facets(TessellationPatch& patch) {
    std::map<std::vector<int>, std::vector<int>> owners;
    for (std::size_t i = 0; i < patch.cells.size(); ++i) {
        const PatchCell& c = patch.cells[i];
        const FaceList& facets = patch.cell_types[c.type].facets();
        for (int f = 0; f < facets.size(); ++f) {
            std::vector<int> key;
            for (int v : facets[f]) key.push_back(c.vertices[v]);
            std::sort(key.begin(), key.end());
            owners[key].push_back(static_cast<int>(i));
        }
    }
    patch.adjacency.clear();
    for (auto& [key, cells] : owners) {
        if (cells.size() > 2) throw Error("zoo", "a facet is shared by more than two cells");
        if (cells.size() == 2) patch.adjacency.emplace_back(std::min(cells[0], cells[1]), std::max(cells[0], cells[1]));
    }
    std::sort(patch.adjacency.begin(), patch.adjacency.end());
}

} // namespace

TessellationPatch diagonal_slice_tessellation(int n, int depth) {
    if (n < 2) throw Error("zoo", "the diagonal slice needs n >= 2");
    check_dimension(n, 2);
    if (depth < 0) throw Error("zoo", "depth must be non-negative");
    const Mat frame = hyperplane_frame(n);
    SliceTypes types = slice_types(n, frame);

    TessellationPatch patch;
    patch.geometry = SpaceForm::Euclidean;
    patch.form = BilinearForm::euclidean(n);
    patch.depth = depth;
    patch.cell_types = types.polytopes;
    for (int k = 1; k <= n; ++k) patch.cell_type_nodes.push_back({n + 1 - k});

    std::vector<int> layers;
    auto cubes = slice_cubes(n, depth, false, &layers);
    PointSet pool;
    for (std::size_t c = 0; c < cubes.size(); ++c) {
        const int k = slice_level(cubes[c]);
        Vec base(n + 1);
        for (int i = 0; i <= n; ++i) base[i] = cubes[c][i];
        std::vector<Vec> corners;
        for (auto& v : types.unit[k - 1]) corners.push_back(base + v);
        add_slice_cell(patch, pool, frame, corners, k - 1, layers[c]);
    }
    adjacency_by_facets(patch);
    return patch;
}

TessellationPatch layered_slice_tessellation(int depth) {
    if (depth < 0) throw Error("zoo", "depth must be non-negative");
    const int n = 3;
    const Mat frame = hyperplane_frame(n);
    SliceTypes types = slice_types(n, frame);

    TessellationPatch patch;
    patch.geometry = SpaceForm::Euclidean;
    patch.form = BilinearForm::euclidean(n);
    patch.depth = depth;
    patch.cell_types = types.polytopes;
    for (int k = 1; k <= n; ++k) patch.cell_type_nodes.push_back({n + 1 - k});

    // The slab -1 <= x_1 <= 0 holds the cubes with first coordinate -1.
    std::vector<int> unused;
    auto cubes = slice_cubes(n, depth, true, &unused);
    struct Cell {
        std::vector<Vec> corners;
        int type;
    };
    std::vector<Cell> slab;
    for (auto& z : cubes) {
        const int k = slice_level(z);
        Vec base(n + 1);
        for (int i = 0; i <= n; ++i) base[i] = z[i];
        Cell c{{}, k - 1};
        for (auto& v : types.unit[k - 1]) c.corners.push_back(base + v);
        slab.push_back(std::move(c));
    }
    // Reflection of the hyperplane across {x_1 = c}; its normal there is e_1 - (1/4)(1,1,1,1).
    Vec normal = Vec::Constant(n + 1, -1.0 / (n + 1));
    normal[0] += 1;
    const double nn = normal.squaredNorm();
    auto reflect = [&](const std::vector<Vec>& pts, double c) {
        std::vector<Vec> out;
        for (auto& x : pts) out.push_back(x - 2 * (x[0] - c) / nn * normal);
        return out;
    };

    PointSet pool;
    for (auto& c : slab) add_slice_cell(patch, pool, frame, c.corners, c.type, 0);
    std::vector<Cell> up = slab, down = slab;
    for (int j = 1; j <= depth; ++j) {
        // Slab j is the mirror image of slab j - 1 across its far plane.
        for (auto& c : up) {
            c.corners = reflect(c.corners, j - 1);
            add_slice_cell(patch, pool, frame, c.corners, c.type, j);
        }
        for (auto& c : down) {
            c.corners = reflect(c.corners, -j);
            add_slice_cell(patch, pool, frame, c.corners, c.type, -j);
        }
    }
    adjacency_by_facets(patch);
    return patch;
}

} // namespace coxeterkit
