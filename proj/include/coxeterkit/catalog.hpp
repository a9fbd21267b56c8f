#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coxeterkit/diagram.hpp"
#include "coxeterkit/gram.hpp"

namespace coxeterkit {

enum class Geometry { Spherical, Euclidean, HyperbolicCompact, HyperbolicNoncompact, NotASimplexDiagram };

const char* to_string(Geometry g);
Geometry geometry_from_string(const std::string& s);

// One catalog record. See catalog/README for the file format.
struct CatalogFamily {
    std::string name;
    Geometry geometry = Geometry::Spherical;
    std::vector<std::string> int_params;   // node-count parameters, e.g. n
    std::vector<std::string> mark_params;  // edge-mark parameters, e.g. p, q
    std::string constraint = "1";
    std::string shape;                     // path, cycle, explicit
    std::string nodes;                     // expression
    std::string marks;                     // path/cycle mark list
    std::vector<std::string> leaves;       // branch attachments (expressions)
    std::string edges;                     // explicit edge list
    std::string file;
    int line = 0;
};

struct FamilyLabel {
    std::string family;
    std::map<std::string, double> params;
    std::string file;

    std::string text() const;  // "A3", "I2(5)", "tri(3,3,4)"
};

// Evaluates the small expression language of catalog files.
double eval_expression(const std::string& expr, const std::map<std::string, double>& vars);

class Catalog {
public:
    static Catalog load(const std::string& directory);
    // Directory from COXETERKIT_CATALOG, otherwise the bundled one.
    static const Catalog& bundled();
    static std::string default_directory();

    const std::vector<CatalogFamily>& families() const { return families_; }

    // Diagram of the family for the given parameters, or nullopt when the
    // constraint fails or the template is degenerate.
    std::optional<CoxeterDiagram> instantiate(const CatalogFamily& f, const std::map<std::string, double>& params) const;

    std::optional<FamilyLabel> identify(const CoxeterDiagram& d, Geometry g) const;

    // Every instance of every family with at most max_nodes nodes; mark
    // parameters range over marks_domain (0 = infinity).
    std::vector<std::pair<FamilyLabel, CoxeterDiagram>> expand(int max_nodes, const std::vector<int>& marks_domain) const;

private:
    std::vector<CatalogFamily> families_;
};

std::vector<CatalogFamily> parse_catalog(const std::string& text, const std::string& file);

struct Classification {
    Geometry geometry = Geometry::NotASimplexDiagram;
    std::optional<FamilyLabel> family;
    Signature signature;
};

Classification classify(const CoxeterDiagram& d, double tol = 1e-9);
Classification classify(const CoxeterDiagram& d, const Catalog& catalog, double tol = 1e-9);

// Signature rule alone, without catalog lookup and without the connectivity check.
Geometry geometry_of(const CoxeterDiagram& d, double tol = 1e-9);


// All connected hyperbolic simplex diagrams on k >= 4 nodes up to isomorphism,
// grown from the connected spherical and Euclidean diagrams on k-1 nodes of
// `catalog` by attaching one node with marks in {2,...,6}.
struct EnumeratedSimplex {
    CoxeterDiagram diagram;
    Geometry geometry;
};
std::vector<EnumeratedSimplex> enumerate_hyperbolic_simplices(int k, const Catalog& catalog, double tol = 1e-9);

// Catalog record text for an enumerated diagram.
std::string catalog_record(const EnumeratedSimplex& s, const std::string& name);

} // namespace coxeterkit
