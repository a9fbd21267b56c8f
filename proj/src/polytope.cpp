#include "coxeterkit/polytope.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace coxeterkit {

std::vector<int> Polytope::f_vector() const {
    std::vector<int> f;
    for (auto& list : faces) f.push_back(list.size());
    return f;
}

long long Polytope::euler_characteristic() const {
    long long chi = 0;
    for (int r = 0; r < static_cast<int>(faces.size()); ++r) chi += (r % 2 ? -1 : 1) * static_cast<long long>(faces[r].size());
    return chi;
}

Mat Polytope::vertex_matrix() const {
    Mat m(form.ambient(), static_cast<int>(vertices.size()));
    for (std::size_t i = 0; i < vertices.size(); ++i) m.col(i) = vertices[i].coords;
    return m;
}

namespace {

// Orthonormal basis of the affine hull of the columns, centered at their mean.
struct AffineFrame {
    Vec center;
    Mat basis;  // ambient x dim
};

AffineFrame affine_frame(const Mat& pts, double tol) {
    AffineFrame f;
    f.center = pts.rowwise().mean();
    Mat c = pts.colwise() - f.center;
    if (c.cols() == 0 || c.cwiseAbs().maxCoeff() <= tol) {
        f.basis = Mat(pts.rows(), 0);
        return f;
    }
    Eigen::JacobiSVD<Mat> svd(c, Eigen::ComputeThinU);
    const Vec& s = svd.singularValues();
    int d = 0;
    while (d < s.size() && s[d] > tol * std::sqrt(static_cast<double>(c.cols()))) ++d;
    f.basis = svd.matrixU().leftCols(d);
    return f;
}

// Gift wrapping over the face lattice, memoized on vertex sets. The points must
// be in convex position.
class HullBuilder {
public:
    HullBuilder(const Mat& pts, double tol) : pts_(pts), tol_(tol) {}

    const std::vector<std::vector<int>>& facets_of(const std::vector<int>& ids) {
        auto it = memo_.find(ids);
        if (it != memo_.end()) return it->second;
        auto result = compute(ids);
        return memo_.emplace(ids, std::move(result)).first->second;
    }

private:
    std::vector<std::vector<int>> compute(const std::vector<int>& ids) {
        const int m = static_cast<int>(ids.size());
        Mat sub(pts_.rows(), m);
        for (int i = 0; i < m; ++i) sub.col(i) = pts_.col(ids[i]);
        AffineFrame frame = affine_frame(sub, tol_);
        const int r = static_cast<int>(frame.basis.cols());
        if (r == 0) return {};
        Mat z = frame.basis.transpose() * (sub.colwise() - frame.center);

        if (r == 1) {
            int lo = 0, hi = 0;
            for (int i = 1; i < m; ++i) {
                if (z(0, i) < z(0, lo)) lo = i;
                if (z(0, i) > z(0, hi)) hi = i;
            }
            for (int i = 0; i < m; ++i)
                if (i != lo && i != hi) throw Error("polytope", "convex hull input is not in convex position");
            return {{ids[lo]}, {ids[hi]}};
        }

        auto on_plane = [&](const Vec& n, double h) {
            std::vector<int> s;
            for (int i = 0; i < m; ++i)
                if (std::abs(n.dot(z.col(i)) - h) <= tol_) s.push_back(i);
            return s;
        };
        auto rank_of = [&](const std::vector<int>& s) {
            Mat c(r, s.size());
            for (std::size_t i = 0; i < s.size(); ++i) c.col(i) = z.col(s[i]);
            return static_cast<int>(affine_frame(c, tol_).basis.cols());
        };
        // Rotate the supporting plane (n, through z0) about its contact set toward w.
        auto rotate = [&](const Vec& n, const Vec& w, const Vec& z0, const std::vector<int>& contact) {
            std::vector<char> in(m, 0);
            for (int i : contact) in[i] = 1;
            double best = 10;
            for (int i = 0; i < m; ++i) {
                if (in[i]) continue;
                Vec d = z.col(i) - z0;
                double t = std::atan2(-n.dot(d), w.dot(d));
                best = std::min(best, t);
            }
            if (best > 9) throw Error("polytope", "hull rotation found no contact");
            Vec nn = std::cos(best) * n + std::sin(best) * w;
            nn.normalize();
            return std::make_pair(nn, nn.dot(z0));
        };
        auto complement_direction = [&](const Vec& n, const Mat& q, const Vec& away) -> Vec {
            Vec t = away - q * (q.transpose() * away);
            t -= n * n.dot(t);
            if (t.norm() > tol_) return t.normalized();
            // Any unit vector orthogonal to n and q.
            Mat a(r, q.cols() + 1);
            a << n, q;
            Eigen::JacobiSVD<Mat> svd(a.transpose(), Eigen::ComputeFullV);
            return svd.matrixV().col(r - 1);
        };

        // Initial facet: tangent plane at the farthest point, rotated until it has rank r-1.
        int far = 0;
        for (int i = 1; i < m; ++i)
            if (z.col(i).norm() > z.col(far).norm()) far = i;
        Vec n = z.col(far).normalized();
        double h = n.dot(z.col(far));
        std::vector<int> contact = on_plane(n, h);
        while (rank_of(contact) < r - 1) {
            Mat c(r, contact.size());
            for (std::size_t i = 0; i < contact.size(); ++i) c.col(i) = z.col(contact[i]);
            AffineFrame f = affine_frame(c, tol_);
            Vec w = complement_direction(n, f.basis, Vec::Zero(r));
            auto [nn, hh] = rotate(n, w, z.col(contact[0]), contact);
            n = nn;
            h = hh;
            contact = on_plane(n, h);
        }

        struct Found { std::vector<int> local; Vec n; double h; };
        std::vector<Found> found;
        std::set<std::vector<int>> seen;
        auto to_global = [&](const std::vector<int>& local) {
            std::vector<int> g;
            for (int i : local) g.push_back(ids[i]);
            std::sort(g.begin(), g.end());
            return g;
        };
        std::map<int, int> local_of;
        for (int i = 0; i < m; ++i) local_of[ids[i]] = i;

        found.push_back({contact, n, h});
        seen.insert(to_global(contact));
        for (std::size_t q = 0; q < found.size(); ++q) {
            Found cur = found[q];
            Vec centroid = Vec::Zero(r);
            for (int i : cur.local) centroid += z.col(i);
            centroid /= static_cast<double>(cur.local.size());
            const auto ridges = facets_of(to_global(cur.local));
            for (auto& ridge : ridges) {
                std::vector<int> rl;
                for (int g : ridge) rl.push_back(local_of.at(g));
                Mat c(r, rl.size());
                for (std::size_t i = 0; i < rl.size(); ++i) c.col(i) = z.col(rl[i]);
                AffineFrame f = affine_frame(c, tol_);
                const Vec z0 = z.col(rl[0]);
                Vec w = -complement_direction(cur.n, f.basis, centroid - z0);
                auto [nn, hh] = rotate(cur.n, w, z0, cur.local);
                auto next = on_plane(nn, hh);
                auto key = to_global(next);
                if (seen.insert(key).second) found.push_back({next, nn, hh});
            }
        }
        std::vector<std::vector<int>> out(seen.begin(), seen.end());
        return out;
    }

    const Mat& pts_;
    double tol_;
    std::map<std::vector<int>, std::vector<std::vector<int>>> memo_;
};

bool subset_of(std::span<const int> a, const std::vector<char>& mask) {
    for (int v : a)
        if (!mask[v]) return false;
    return true;
}

} // namespace

Polytope convex_hull(const std::vector<Vec>& points, double tol) {
    if (points.empty()) throw Error("polytope", "convex hull of no points");
    const int dim = static_cast<int>(points[0].size());
    Mat pts(dim, static_cast<int>(points.size()));
    double scale = 1;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != dim) throw Error("polytope", "convex hull points differ in dimension");
        pts.col(i) = points[i];
        scale = std::max(scale, points[i].cwiseAbs().maxCoeff());
    }
    const double t = tol * scale;
    AffineFrame frame = affine_frame(pts, t);
    const int d = static_cast<int>(frame.basis.cols());

    Polytope p;
    p.geometry = SpaceForm::Spherical;
    p.form = BilinearForm::euclidean(dim);
    p.rank = d;
    for (auto& x : points) p.vertices.push_back({x, PointKind::Interior, FormKind::Euclidean});
    p.faces.resize(std::max(d, 1));

    std::vector<int> all(points.size());
    std::iota(all.begin(), all.end(), 0);
    if (d == 0) {
        if (points.size() != 1) throw Error("polytope", "repeated hull points");
        p.faces[0].push(all);
        return p;
    }
    HullBuilder hb(pts, t);
    std::vector<std::set<std::vector<int>>> by_rank(d);
    std::vector<std::vector<int>> frontier = hb.facets_of(all);
    for (int r = d - 1; r >= 0; --r) {
        by_rank[r].insert(frontier.begin(), frontier.end());
        std::set<std::vector<int>> below;
        if (r > 0)
            for (auto& f : by_rank[r])
                for (auto& g : hb.facets_of(f)) below.insert(g);
        frontier.assign(below.begin(), below.end());
    }
    if (static_cast<int>(by_rank[0].size()) != static_cast<int>(points.size()))
        throw Error("polytope", "convex hull input is not in convex position");
    for (int r = 0; r < d; ++r)
        for (auto& f : by_rank[r]) p.faces[r].push(f);
    if (d >= 2) {
        auto e = edge_lengths(p);
        auto [lo, hi] = std::minmax_element(e.begin(), e.end());
        if (*hi - *lo <= 1e-8 * std::max(1.0, *hi)) p.edge_length = *hi;
    }
    return p;
}

std::vector<std::vector<int>> vertex_facets(const Polytope& p) {
    std::vector<std::vector<int>> vf(p.vertices.size());
    const FaceList& f = p.facets();
    for (int i = 0; i < f.size(); ++i)
        for (int v : f[i]) vf[v].push_back(i);
    return vf;
}

std::vector<std::pair<int, int>> ridge_facets(const Polytope& p) {
    if (p.rank < 2) throw Error("polytope", "ridges need rank at least 2");
    auto vf = vertex_facets(p);
    const FaceList& ridges = p.faces[p.rank - 2];
    std::vector<std::pair<int, int>> out;
    out.reserve(ridges.size());
    std::vector<int> cur, tmp;
    for (int i = 0; i < ridges.size(); ++i) {
        auto r = ridges[i];
        cur = vf[r[0]];
        for (std::size_t j = 1; j < r.size() && cur.size() > 2; ++j) {
            tmp.clear();
            std::set_intersection(cur.begin(), cur.end(), vf[r[j]].begin(), vf[r[j]].end(), std::back_inserter(tmp));
            cur.swap(tmp);
        }
        if (cur.size() != 2) throw Error("polytope", "a ridge lies in " + std::to_string(cur.size()) + " facets");
        out.emplace_back(cur[0], cur[1]);
    }
    return out;
}

std::vector<Vec> facet_normals(const Polytope& p, double tol) {
    const FaceList& facets = p.facets();
    std::vector<Vec> out;
    out.reserve(facets.size());
    if (p.form.kind == FormKind::Lorentzian) {
        const Mat j = p.form.matrix();
        Vec inside = Vec::Zero(p.form.ambient());
        for (auto& v : p.vertices) inside += v.coords;
        for (int i = 0; i < facets.size(); ++i) {
            auto f = facets[i];
            Mat a(f.size(), p.form.ambient());
            for (std::size_t r = 0; r < f.size(); ++r) a.row(r) = (j * p.vertices[f[r]].coords).transpose();
            Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
            Vec n = svd.matrixV().col(p.form.ambient() - 1);
            const double q = inner(p.form, n, n);
            if (q <= tol) throw Error("polytope", "hyperbolic facet hyperplane is not spacelike");
            n /= std::sqrt(q);
            if (inner(p.form, n, inside) > 0) n = -n;
            out.push_back(n);
        }
        return out;
    }
    AffineFrame frame = affine_frame(p.vertex_matrix(), tol);
    if (frame.basis.cols() != p.rank) throw Error("polytope", "vertices do not span the polytope's rank");
    for (int i = 0; i < facets.size(); ++i) {
        auto f = facets[i];
        Mat c(p.rank, f.size());
        for (std::size_t r = 0; r < f.size(); ++r)
            c.col(r) = frame.basis.transpose() * (p.vertices[f[r]].coords - frame.center);
        Vec mid = c.rowwise().mean();
        Eigen::JacobiSVD<Mat> svd(c.colwise() - mid, Eigen::ComputeFullU);
        Vec n = svd.matrixU().col(p.rank - 1);
        if (n.dot(mid) < 0) n = -n;
        out.push_back(frame.basis * n);
    }
    return out;
}

std::vector<double> dihedral_angles(const Polytope& p, double tol) {
    auto normals = facet_normals(p, tol);
    std::vector<double> out;
    for (auto [a, b] : ridge_facets(p)) {
        double c = p.form.kind == FormKind::Lorentzian ? inner(p.form, normals[a], normals[b]) : normals[a].dot(normals[b]);
        out.push_back(std::acos(std::clamp(-c, -1.0, 1.0)));
    }
    return out;
}

std::vector<double> edge_lengths(const Polytope& p) {
    std::vector<double> out;
    if (p.faces.size() < 2) return out;
    const FaceList& e = p.faces[1];
    for (int i = 0; i < e.size(); ++i) {
        const Point& a = p.vertices[e[i][0]];
        const Point& b = p.vertices[e[i][1]];
        if (p.form.kind == FormKind::Lorentzian) {
            out.push_back(a.ideal() || b.ideal() ? std::numeric_limits<double>::infinity() : distance(p.form, a, b));
        } else {
            out.push_back((a.coords - b.coords).norm());
        }
    }
    return out;
}

Polytope face_polytope(const Polytope& p, int rank, int index) {
    if (rank < 0 || rank >= static_cast<int>(p.faces.size()) || index < 0 || index >= p.faces[rank].size())
        throw Error("polytope", "no such face");
    Polytope q;
    q.geometry = p.geometry;
    q.form = p.form;
    q.rank = rank;
    auto verts = p.faces[rank][index];
    std::vector<int> remap(p.vertices.size(), -1);
    std::vector<char> mask(p.vertices.size(), 0);
    for (std::size_t i = 0; i < verts.size(); ++i) {
        remap[verts[i]] = static_cast<int>(i);
        mask[verts[i]] = 1;
        q.vertices.push_back(p.vertices[verts[i]]);
    }
    q.faces.resize(std::max(rank, 1));
    if (rank == 0) {
        q.faces[0].push(std::vector<int>{0});
        return q;
    }
    std::vector<int> buf;
    for (int r = 0; r < rank; ++r) {
        const FaceList& list = p.faces[r];
        for (int i = 0; i < list.size(); ++i) {
            if (!subset_of(list[i], mask)) continue;
            buf.clear();
            for (int v : list[i]) buf.push_back(remap[v]);
            std::sort(buf.begin(), buf.end());
            q.faces[r].push(buf);
        }
    }
    q.edge_length = p.edge_length;
    return q;
}

Polytope vertex_figure(const Polytope& p, int v) {
    if (p.rank < 2) throw Error("polytope", "vertex figures need rank at least 2");
    std::vector<int> nbr;
    const FaceList& edges = p.faces[1];
    for (int i = 0; i < edges.size(); ++i) {
        auto e = edges[i];
        if (e[0] == v) nbr.push_back(e[1]);
        else if (e[1] == v) nbr.push_back(e[0]);
    }
    std::sort(nbr.begin(), nbr.end());
    std::vector<int> remap(p.vertices.size(), -1);
    Polytope q;
    q.geometry = p.geometry;
    q.form = p.form;
    q.rank = p.rank - 1;
    for (std::size_t i = 0; i < nbr.size(); ++i) {
        remap[nbr[i]] = static_cast<int>(i);
        q.vertices.push_back(p.vertices[nbr[i]]);
    }
    q.faces.resize(q.rank);
    std::vector<int> buf;
    for (int r = 1; r < p.rank; ++r) {
        const FaceList& list = p.faces[r];
        for (int i = 0; i < list.size(); ++i) {
            auto f = list[i];
            if (!std::binary_search(f.begin(), f.end(), v)) continue;
            buf.clear();
            for (int u : f)
                if (remap[u] >= 0) buf.push_back(remap[u]);
            q.faces[r - 1].push(buf);
        }
    }
    return q;
}

namespace {

std::vector<double> profile_of(const Polytope& p, std::span<const int> ids) {
    std::vector<double> d;
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = i + 1; j < ids.size(); ++j)
            d.push_back((p.vertices[ids[i]].coords - p.vertices[ids[j]].coords).norm());
    std::sort(d.begin(), d.end());
    return d;
}

bool same_profile(const std::vector<double>& a, const std::vector<double>& b, double tol) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > tol) return false;
    return true;
}

} // namespace

std::vector<double> distance_profile(const Polytope& p) {
    std::vector<int> all(p.vertices.size());
    std::iota(all.begin(), all.end(), 0);
    return profile_of(p, all);
}

bool geometrically_regular(const Polytope& p, double tol) {
    if (p.rank <= 1) return true;
    auto e = edge_lengths(p);
    auto [lo, hi] = std::minmax_element(e.begin(), e.end());
    if (*hi - *lo > tol * std::max(1.0, *hi)) return false;
    if (p.rank == 2) {
        Vec c = Vec::Zero(p.form.ambient());
        for (auto& v : p.vertices) c += v.coords;
        c /= static_cast<double>(p.vertices.size());
        double r0 = (p.vertices[0].coords - c).norm();
        for (auto& v : p.vertices)
            if (std::abs((v.coords - c).norm() - r0) > tol * std::max(1.0, r0)) return false;
        return true;
    }
    const FaceList& facets = p.facets();
    auto ref = profile_of(p, facets[0]);
    for (int i = 1; i < facets.size(); ++i)
        if (!same_profile(ref, profile_of(p, facets[i]), tol)) return false;
    if (!geometrically_regular(face_polytope(p, p.rank - 1, 0), tol)) return false;

    Polytope fig0 = vertex_figure(p, 0);
    auto fref = distance_profile(fig0);
    std::vector<std::vector<int>> nbr(p.vertices.size());
    const FaceList& edges = p.faces[1];
    for (int i = 0; i < edges.size(); ++i) {
        nbr[edges[i][0]].push_back(edges[i][1]);
        nbr[edges[i][1]].push_back(edges[i][0]);
    }
    for (std::size_t v = 1; v < p.vertices.size(); ++v)
        if (!same_profile(fref, profile_of(p, nbr[v]), tol)) return false;
    return geometrically_regular(fig0, tol);
}

bool same_lattice(const Polytope& a, const Polytope& b) {
    if (a.rank != b.rank || a.vertices.size() != b.vertices.size() || a.faces.size() != b.faces.size()) return false;
    for (std::size_t r = 0; r < a.faces.size(); ++r) {
        if (a.faces[r].size() != b.faces[r].size()) return false;
        std::vector<std::vector<int>> fa, fb;
        for (int i = 0; i < a.faces[r].size(); ++i) fa.push_back(a.faces[r].at(i));
        for (int i = 0; i < b.faces[r].size(); ++i) fb.push_back(b.faces[r].at(i));
        std::sort(fa.begin(), fa.end());
        std::sort(fb.begin(), fb.end());
        if (fa != fb) return false;
    }
    return true;
}

} // namespace coxeterkit
