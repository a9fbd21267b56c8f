#include "coxeterkit/gram.hpp"

#include <Eigen/Eigenvalues>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace coxeterkit {

std::string Signature::str() const {
    return "(" + std::to_string(positive) + "," + std::to_string(negative) + "," + std::to_string(zero) + ")";
}

Mat gram_from_diagram(const CoxeterDiagram& d) {
    const int k = d.size();
    Mat g = Mat::Identity(k, k);
    for (auto& [p, mark] : d.edges()) {
        double v = 0;
        switch (mark.kind) {
        case EdgeMark::Kind::Finite: v = -std::cos(std::numbers::pi / mark.m); break;
        case EdgeMark::Kind::Parallel: v = -1.0; break;
        case EdgeMark::Kind::Ultraparallel: v = -std::cosh(mark.d); break;
        }
        g(p.first - 1, p.second - 1) = g(p.second - 1, p.first - 1) = v;
    }
    return g;
}

namespace {

Vec eigenvalues(const Mat& g) {
    if (g.rows() == 0) return Vec();
    Eigen::SelfAdjointEigenSolver<Mat> es(g, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

double threshold(const Vec& ev, double tol) {
    return ev.size() == 0 ? 0.0 : tol * std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
}

} // namespace

Signature signature(const Mat& g, double tol) {
    Vec ev = eigenvalues(g);
    const double t = threshold(ev, tol);
    Signature s;
    for (double l : ev) {
        if (l > t) ++s.positive;
        else if (l < -t) ++s.negative;
        else ++s.zero;
    }
    return s;
}

Mat principal(const Mat& g, const std::vector<int>& rows) {
    const int m = static_cast<int>(rows.size());
    Mat out(m, m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) out(a, b) = g(rows[a], rows[b]);
    return out;
}

bool positive_definite(const Mat& g, double tol) {
    if (g.rows() == 0) return true;
    Signature s = signature(g, tol);
    return s.positive == g.rows();
}

int matrix_rank(const Mat& g, double tol) {
    Signature s = signature(g, tol);
    return s.positive + s.negative;
}

std::vector<std::vector<int>> decompose(const Mat& g, double tol) {
    const int k = static_cast<int>(g.rows());
    std::vector<int> comp(k, -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < k; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> block{s}, stack{s};
        comp[s] = static_cast<int>(out.size());
        while (!stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            for (int j = 0; j < k; ++j)
                if (comp[j] < 0 && j != i && std::abs(g(i, j)) > tol) {
                    comp[j] = comp[s];
                    block.push_back(j);
                    stack.push_back(j);
                }
        }
        std::sort(block.begin(), block.end());
        out.push_back(block);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool euclidean_type(const Mat& g, double tol) {
    if (g.rows() == 0) return false;
    for (auto& block : decompose(g)) {
        Signature s = signature(principal(g, block), tol);
        if (s.negative != 0 || s.zero != 1) return false;
    }
    return true;
}

PerronResult perron(const Mat& g, double tol) {
    const int k = static_cast<int>(g.rows());
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (i != j && g(i, j) > tol) throw Error("gram", "positive off-diagonal entry; Perron structure needs G = I - B with B >= 0");
    if (decompose(g).size() != 1) throw Error("gram", "matrix is decomposable");
    Eigen::SelfAdjointEigenSolver<Mat> es(g);
    PerronResult r{es.eigenvalues()[0], es.eigenvectors().col(0)};
    if (r.eigvec.sum() < 0) r.eigvec = -r.eigvec;
    r.eigvec.normalize();
    return r;
}

PairRelation pair_relation(double g, double tol) {
    if (g > 1.0 + tol) throw Error("gram", "Gram entry above 1");
    if (std::abs(g + 1.0) <= tol) return {PairRelation::Kind::Parallel, 0.0};
    if (g < -1.0) return {PairRelation::Kind::Ultraparallel, std::acosh(-g)};
    return {PairRelation::Kind::Incident, std::acos(std::clamp(-g, -1.0, 1.0))};
}

namespace {

template <typename F>
void for_each_subset(int k, int size, F&& f) {
    if (size < 0 || size > k) return;
    std::vector<int> pick(size);
    std::iota(pick.begin(), pick.end(), 0);
    for (;;) {
        f(pick);
        int i = size - 1;
        while (i >= 0 && pick[i] == k - size + i) --i;
        if (i < 0) return;
        ++pick[i];
        for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
}

bool contains(const std::vector<int>& big, const std::vector<int>& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

} // namespace

Realizability vinberg_realizable(const Mat& g, int n, double tol) {
    const int k = static_cast<int>(g.rows());
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (i != j && g(i, j) > tol) throw Error("gram", "off-diagonal entry > 0: only non-obtuse Gram matrices are supported");
    if (k > 20) throw Error("gram", "exhaustive submatrix enumeration is limited to 20 facets");

    Realizability r;
    Signature s = signature(g, tol);
    Signature want{n, 1, k - n - 1};
    if (!(s == want)) {
        r.failed_condition = 0;
        r.reason = "signature " + s.str() + " differs from " + want.str();
        return r;
    }

    std::vector<std::vector<int>> spherical_n, spherical_n1, euclidean;
    for_each_subset(k, n, [&](const std::vector<int>& j) {
        if (positive_definite(principal(g, j), tol)) spherical_n.push_back(j);
    });
    for_each_subset(k, n - 1, [&](const std::vector<int>& j) {
        if (positive_definite(principal(g, j), tol)) spherical_n1.push_back(j);
    });
    for (int size = n; size <= std::min(k, 2 * (n - 1)); ++size)
        for_each_subset(k, size, [&](const std::vector<int>& j) {
            Mat h = principal(g, j);
            if (euclidean_type(h, tol) && matrix_rank(h, tol) == n - 1) euclidean.push_back(j);
        });
    r.spherical_vertices = static_cast<int>(spherical_n.size());
    r.euclidean_vertices = static_cast<int>(euclidean.size());

    // Condition (1) asks for a vertex of the closure in H^n with a neighbourhood
    // there; an ideal vertex (Euclidean block of rank n-1) qualifies as well.
    if (spherical_n.empty() && euclidean.empty()) {
        r.failed_condition = 1;
        r.reason = "no spherical principal submatrix of rank " + std::to_string(n) +
                   " and no Euclidean one of rank " + std::to_string(n - 1);
        return r;
    }
    if (spherical_n.empty()) r.warnings.push_back("every vertex is ideal");
    for (auto& j : spherical_n1) {
        int count = 0;
        for (auto& big : spherical_n) count += contains(big, j);
        for (auto& big : euclidean) count += contains(big, j);
        if (count < 2) {
            r.failed_condition = 2;
            r.witness = j;
            r.reason = "spherical submatrix of rank " + std::to_string(n - 1) + " extends in " + std::to_string(count) +
                       " way(s) instead of 2";
            return r;
        }
        if (count > 2) {
            std::string w = "{";
            for (int x : j) w += std::to_string(x) + (x == j.back() ? "" : ",");
            r.warnings.push_back("subset " + w + "} extends in " + std::to_string(count) + " ways");
        }
    }
    r.realizable = true;
    r.compact = euclidean.empty();
    return r;
}

Mat MirrorSystem::gram() const {
    const int k = size();
    Mat g(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) g(i, j) = inner(form, normals[i], normals[j]);
    return g;
}

Isometry MirrorSystem::reflection(int i) const {
    if (affine()) return affine_reflection(normals[i], offsets[i]);
    return coxeterkit::reflection(form, normals[i]);
}

double MirrorSystem::side(int i, const Vec& x) const {
    if (affine()) return normals[i].dot(x) - offsets[i];
    return inner(form, x, normals[i]);
}

MirrorSystem recover_normals(const Mat& g, int n, double tol) {
    const int k = static_cast<int>(g.rows());
    Signature s = signature(g, tol);
    Eigen::SelfAdjointEigenSolver<Mat> es(g);
    const Vec ev = es.eigenvalues();
    const Mat q = es.eigenvectors();
    const double t = threshold(ev, tol);

    std::vector<int> pos, neg;
    for (int i = 0; i < k; ++i) {
        if (ev[i] > t) pos.push_back(i);
        else if (ev[i] < -t) neg.push_back(i);
    }

    MirrorSystem m;
    auto build = [&](const std::vector<int>& cols) {
        for (int i = 0; i < k; ++i) {
            Vec v(cols.size());
            for (std::size_t c = 0; c < cols.size(); ++c) v[c] = q(i, cols[c]) * std::sqrt(std::abs(ev[cols[c]]));
            m.normals.push_back(v);
        }
    };

    if (s.negative == 0 && s.positive == n + 1) {
        m.form = BilinearForm::spherical(n);
        build(pos);
    } else if (s.negative == 0 && s.positive == n && s.zero >= 1) {
        m.form = BilinearForm::euclidean(n);
        build(pos);
        m.offsets.assign(k, 1.0);
    } else if (s.negative == 1 && s.positive == n) {
        m.form = BilinearForm::lorentzian(n);
        std::vector<int> cols = neg;
        cols.insert(cols.end(), pos.begin(), pos.end());
        build(cols);
        // Orient so that the Perron combination is a future interior point.
        PerronResult p = perron(g, tol);
        Vec x = Vec::Zero(n + 1);
        for (int i = 0; i < k; ++i) x += p.eigvec[i] * m.normals[i];
        if (x[0] < 0)
            for (auto& v : m.normals) v = -v;
    } else {
        throw Error("gram", "signature " + s.str() + " fits no geometry of dimension " + std::to_string(n));
    }
    return m;
}

std::string matrix_to_text(const Mat& g) {
    std::ostringstream os;
    os.precision(17);
    for (int i = 0; i < g.rows(); ++i) {
        for (int j = 0; j < g.cols(); ++j) os << (j ? " " : "") << g(i, j);
        os << "\n";
    }
    return os.str();
}

Mat matrix_from_text(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::vector<double> row;
        double v;
        while (ls >> v) row.push_back(v);
        if (!ls.eof()) throw Error("gram", "bad matrix entry in line '" + line + "'");
        if (!row.empty()) rows.push_back(row);
    }
    const int k = static_cast<int>(rows.size());
    Mat g(k, k);
    for (int i = 0; i < k; ++i) {
        if (static_cast<int>(rows[i].size()) != k) throw Error("gram", "matrix is not square");
        for (int j = 0; j < k; ++j) g(i, j) = rows[i][j];
    }
    return g;
}

std::string matrix_to_json(const Mat& g) {
    nlohmann::json j = nlohmann::json::array();
    for (int i = 0; i < g.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < g.cols(); ++c) row.push_back(g(i, c));
        j.push_back(row);
    }
    return j.dump();
}

Mat matrix_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw Error("gram", std::string("bad JSON matrix: ") + e.what());
    }
    if (!j.is_array()) throw Error("gram", "JSON matrix must be an array of arrays");
    const int k = static_cast<int>(j.size());
    Mat g(k, k);
    for (int i = 0; i < k; ++i) {
        if (!j[i].is_array() || static_cast<int>(j[i].size()) != k) throw Error("gram", "matrix is not square");
        for (int c = 0; c < k; ++c) g(i, c) = j[i][c].get<double>();
    }
    return g;
}

} // namespace coxeterkit
