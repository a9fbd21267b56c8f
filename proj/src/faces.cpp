#include "coxeterkit/faces.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdint>

namespace coxeterkit {

std::vector<int> FaceLattice::f_vector() const {
    std::vector<int> f(std::max(n, 1), 0);
    for (auto& r : records)
        if (r.dim < n) ++f[r.dim];
    return f;
}

int FaceLattice::ideal_vertices() const {
    return static_cast<int>(std::count_if(records.begin(), records.end(),
                                          [](const FaceRecord& r) { return r.kind == FaceRecord::Kind::IdealVertex; }));
}

int FaceLattice::real_vertices() const {
    return static_cast<int>(std::count_if(records.begin(), records.end(), [](const FaceRecord& r) {
        return r.kind == FaceRecord::Kind::RealFace && r.dim == 0;
    }));
}

int FaceLattice::find(const std::vector<int>& facet_set) const {
    std::vector<int> s = facet_set;
    std::sort(s.begin(), s.end());
    auto it = std::lower_bound(records.begin(), records.end(), s,
                               [](const FaceRecord& r, const std::vector<int>& v) { return r.facet_set < v; });
    return it != records.end() && it->facet_set == s ? static_cast<int>(it - records.begin()) : -1;
}

bool FaceLattice::contains(int b, int a) const {
    const auto& jb = records.at(b).facet_set;
    const auto& ja = records.at(a).facet_set;
    return jb.size() < ja.size() && std::includes(ja.begin(), ja.end(), jb.begin(), jb.end());
}

FaceLattice enumerate_faces(const Mat& g, int n, double tol) {
    const int k = static_cast<int>(g.rows());
    if (g.cols() != k || (g - g.transpose()).cwiseAbs().maxCoeff() > tol) throw Error("faces", "Gram matrix must be square and symmetric");
    if (k > 20) throw Error("faces", "face enumeration supports at most 20 facets");
    if (n < 1) throw Error("faces", "dimension must be positive");

    FaceLattice lat;
    lat.n = n;
    lat.facets = k;
    const bool spherical_simplex = k == n + 1 && positive_definite(g, tol);
    const bool euclidean_simplex = k == n + 1 && euclidean_type(g, tol) && matrix_rank(g, tol) == n;
    if (!spherical_simplex && !euclidean_simplex) {
        Realizability r = vinberg_realizable(g, n, tol);
        if (!r.realizable) throw Error("faces", "Gram matrix is not realizable: " + r.reason);
        lat.verified = k == n + 1;
    }

    std::vector<std::uint32_t> euclid_masks;
    std::vector<FaceRecord> euclid;
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
        std::vector<int> j;
        for (int i = 0; i < k; ++i)
            if (mask & (1u << i)) j.push_back(i);
        Mat sub = principal(g, j);
        if (static_cast<int>(j.size()) <= n && positive_definite(sub, tol)) {
            lat.records.push_back({j, FaceRecord::Kind::RealFace, n - static_cast<int>(j.size()), sub});
        } else if (!spherical_simplex && !euclidean_simplex && euclidean_type(sub, tol) && matrix_rank(sub, tol) == n - 1) {
            euclid_masks.push_back(mask);
            euclid.push_back({j, FaceRecord::Kind::IdealVertex, 0, sub});
        }
    }
    for (std::size_t a = 0; a < euclid.size(); ++a) {
        bool maximal = true;
        for (std::size_t b = 0; b < euclid.size() && maximal; ++b)
            if (a != b && (euclid_masks[a] & euclid_masks[b]) == euclid_masks[a]) maximal = false;
        if (maximal) lat.records.push_back(euclid[a]);
    }
    std::sort(lat.records.begin(), lat.records.end(),
              [](const FaceRecord& x, const FaceRecord& y) { return x.facet_set < y.facet_set; });

    std::vector<std::uint32_t> masks;
    for (auto& r : lat.records) {
        std::uint32_t m = 0;
        for (int i : r.facet_set) m |= 1u << i;
        masks.push_back(m);
    }
    for (std::size_t a = 0; a < lat.records.size(); ++a)
        for (std::size_t b = 0; b < lat.records.size(); ++b) {
            if (a == b || lat.records[a].dim + 1 != lat.records[b].dim) continue;
            if ((masks[a] & masks[b]) == masks[b] && masks[a] != masks[b])
                lat.covers.emplace_back(static_cast<int>(a), static_cast<int>(b));
        }
    return lat;
}

Link link_of(const Mat& g, const std::vector<int>& facet_set, double tol) {
    if (facet_set.empty()) throw Error("faces", "empty facet set");
    for (int i : facet_set)
        if (i < 0 || i >= g.rows()) throw Error("faces", "facet index out of range");
    Mat sub = principal(g, facet_set);
    if (positive_definite(sub, tol)) return {sub, false};
    if (euclidean_type(sub, tol)) return {sub, true};
    throw Error("faces", "facet set indexes neither a face nor an ideal vertex");
}

namespace {

Vec null_direction(const Mat& a, int expect_rank, double tol) {
    Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
    const Vec& s = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < s.size(); ++i) rank += s[i] > tol * std::max(1.0, s[0]);
    if (rank != expect_rank || a.cols() - rank != 1) throw Error("faces", "degenerate orthogonal complement");
    return svd.matrixV().col(a.cols() - 1);
}

} // namespace

std::vector<VertexPoint> simplex_vertices(const MirrorSystem& m, const FaceLattice& lattice, double tol) {
    const int k = m.size();
    if (k != lattice.facets) throw Error("faces", "mirror system and lattice differ in facet count");
    const int n = lattice.n;
    if (k != n + 1) throw Error("faces", "simplex_vertices needs a simplex");
    const Mat j = m.form.matrix();
    std::vector<VertexPoint> out;
    for (auto& r : lattice.records) {
        const bool ideal = r.kind == FaceRecord::Kind::IdealVertex;
        if (!ideal && r.dim != 0) continue;
        std::vector<int> rest;
        for (int i = 0; i < k; ++i)
            if (!std::binary_search(r.facet_set.begin(), r.facet_set.end(), i)) rest.push_back(i);
        Vec x;
        if (m.affine()) {
            if (ideal) throw Error("faces", "Euclidean simplexes have no ideal vertices");
            Mat a(n, n);
            Vec b(n);
            for (int t = 0; t < n; ++t) {
                a.row(t) = m.normals[r.facet_set[t]].transpose();
                b[t] = m.offsets[r.facet_set[t]];
            }
            Eigen::FullPivLU<Mat> lu(a);
            if (lu.rank() < n) throw Error("faces", "degenerate orthogonal complement");
            x = lu.solve(b);
            out.push_back({r.facet_set, {x, PointKind::Interior, FormKind::Euclidean}});
            continue;
        }
        if (ideal) {
            auto blocks = decompose(r.gram_block);
            std::vector<int> block;
            for (int i : blocks.front()) block.push_back(i);
            PerronResult pr = perron(principal(r.gram_block, block), tol);
            x = Vec::Zero(m.form.ambient());
            for (std::size_t t = 0; t < block.size(); ++t) x += std::abs(pr.eigvec[t]) * m.normals[r.facet_set[block[t]]];
        } else {
            Mat a(r.facet_set.size(), m.form.ambient());
            for (std::size_t t = 0; t < r.facet_set.size(); ++t) a.row(t) = (j * m.normals[r.facet_set[t]]).transpose();
            x = null_direction(a, static_cast<int>(r.facet_set.size()), tol);
            double side = 0;
            for (int i : rest) side += inner(m.form, x, m.normals[i]);
            if (side > 0) x = -x;
        }
        Point p = normalize_point(m.form, x, tol);
        if (ideal && !p.ideal()) throw Error("faces", "ideal vertex vector is not null");
        out.push_back({r.facet_set, p});
    }
    return out;
}

Point project_onto_face(const MirrorSystem& m, const std::vector<int>& facet_set, const Point& x, double tol) {
    if (facet_set.empty()) return x;
    Mat h = principal(m.gram(), facet_set);
    if (!positive_definite(h, tol)) throw Error("faces", "projection needs a spherical facet set");
    Eigen::LDLT<Mat> ldlt(h);
    Vec c(facet_set.size());
    for (std::size_t t = 0; t < facet_set.size(); ++t) {
        const Vec& v = m.normals[facet_set[t]];
        c[t] = m.affine() ? v.dot(x.coords) - m.offsets[facet_set[t]] : inner(m.form, x.coords, v);
    }
    Vec w = ldlt.solve(c);
    Vec y = x.coords;
    for (std::size_t t = 0; t < facet_set.size(); ++t) y -= w[t] * m.normals[facet_set[t]];
    return normalize_point(m.form, y, tol);
}

std::string lattice_to_json(const FaceLattice& lat) {
    nlohmann::json j;
    j["n"] = lat.n;
    j["facets"] = lat.facets;
    j["verified"] = lat.verified;
    j["f_vector"] = lat.f_vector();
    j["ideal_vertices"] = lat.ideal_vertices();
    nlohmann::json recs = nlohmann::json::array();
    for (auto& r : lat.records)
        recs.push_back({{"facets", r.facet_set},
                        {"kind", r.kind == FaceRecord::Kind::IdealVertex ? "ideal_vertex" : "face"},
                        {"dim", r.dim}});
    j["records"] = recs;
    nlohmann::json cov = nlohmann::json::array();
    for (auto [a, b] : lat.covers) cov.push_back({a, b});
    j["covers"] = cov;
    return j.dump(2);
}

} // namespace coxeterkit
