#pragma once

#include <string>
#include <vector>

#include "coxeterkit/diagram.hpp"
#include "coxeterkit/forms.hpp"

namespace coxeterkit {

// Matrices here are indexed from 0; facet i of a diagram is row i-1.

struct Signature {
    int positive = 0;
    int negative = 0;
    int zero = 0;

    bool operator==(const Signature&) const = default;
    std::string str() const;
};

Mat gram_from_diagram(const CoxeterDiagram& d);

// Eigenvalues within tol * max|lambda| of zero count as zero.
Signature signature(const Mat& g, double tol = 1e-9);

Mat principal(const Mat& g, const std::vector<int>& rows);

bool positive_definite(const Mat& g, double tol = 1e-9);

// Positive semidefinite with every indecomposable block of corank exactly 1.
bool euclidean_type(const Mat& g, double tol = 1e-9);

int matrix_rank(const Mat& g, double tol = 1e-9);

std::vector<std::vector<int>> decompose(const Mat& g, double tol = 1e-12);

struct PerronResult {
    double lambda_min = 0;
    Vec eigvec;
};
PerronResult perron(const Mat& g, double tol = 1e-9);

struct PairRelation {
    enum class Kind { Incident, Parallel, Ultraparallel };
    Kind kind = Kind::Incident;
    double value = 0;  // angle for Incident, distance for Ultraparallel
};
PairRelation pair_relation(double g, double tol = 1e-9);

struct Realizability {
    bool realizable = false;
    bool compact = false;
    int failed_condition = -1;  // 0 signature, 1 or 2 for the two subset conditions
    std::string reason;
    std::vector<int> witness;
    std::vector<std::string> warnings;
    int spherical_vertices = 0;
    int euclidean_vertices = 0;
};
Realizability vinberg_realizable(const Mat& g, int n, double tol = 1e-9);

// Unit normals v_i with form(v_i, v_j) = g_ij. Euclidean systems are affine:
// mirror i is {x : v_i . x = offsets[i]}, and the simplex is {v_i . x <= offsets[i]}.
// Otherwise the chamber is {x : form(x, v_i) <= 0}.
struct MirrorSystem {
    BilinearForm form;
    std::vector<Vec> normals;
    std::vector<double> offsets;

    int size() const { return static_cast<int>(normals.size()); }
    bool affine() const { return form.kind == FormKind::Euclidean && !offsets.empty(); }
    Mat gram() const;
    Isometry reflection(int i) const;
    // Signed value of x against mirror i: negative inside the chamber.
    double side(int i, const Vec& x) const;
};

MirrorSystem recover_normals(const Mat& g, int n, double tol = 1e-9);

std::string matrix_to_text(const Mat& g);
Mat matrix_from_text(const std::string& text);
std::string matrix_to_json(const Mat& g);
Mat matrix_from_json(const std::string& text);

} // namespace coxeterkit
