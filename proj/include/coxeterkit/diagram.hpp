#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coxeterkit/error.hpp"

namespace coxeterkit {

struct EdgeMark {
    enum class Kind { Finite, Parallel, Ultraparallel };

    Kind kind = Kind::Finite;
    int m = 3;         // Finite
    double d = 0.0;    // Ultraparallel

    static EdgeMark finite(int m);
    static EdgeMark parallel() { return {Kind::Parallel, 0, 0.0}; }
    static EdgeMark ultraparallel(double d);

    bool operator==(const EdgeMark&) const = default;
    std::string str() const;  // "5", "inf", "d=0.5"
};

// Node indices are 1-based. A pair without an edge has mark 2.
class CoxeterDiagram {
public:
    using Pair = std::pair<int, int>;

    CoxeterDiagram() = default;
    explicit CoxeterDiagram(int nodes);

    int size() const { return nodes_; }

    void set_edge(int i, int j, EdgeMark mark);
    std::optional<EdgeMark> edge(int i, int j) const;
    const std::map<Pair, EdgeMark>& edges() const { return edges_; }

    // Finite mark of the pair, 2 when absent, 0 for thick or dashed edges.
    int order(int i, int j) const;

    void ring(int i);
    void set_rings(const std::set<int>& rings);
    bool ringed(int i) const { return rings_.count(i) != 0; }
    const std::set<int>& rings() const { return rings_; }

    bool has_dashed() const;
    bool has_parallel() const;
    std::vector<std::vector<int>> components() const;
    bool connected() const { return components().size() <= 1; }

    // Induced diagram on the given nodes, relabelled 1..m in the given order.
    CoxeterDiagram induced(const std::vector<int>& nodes) const;

    bool operator==(const CoxeterDiagram&) const = default;

private:
    void check_node(int i) const;

    int nodes_ = 0;
    std::map<Pair, EdgeMark> edges_;
    std::set<int> rings_;
};

class ParseError : public Error {
public:
    ParseError(int line, int column, const std::string& message);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

CoxeterDiagram parse_diagram(std::string_view text);
std::string render(const CoxeterDiagram& d);

// A symbol value of 0 stands for infinity.
constexpr int kInfinity = 0;
std::vector<int> parse_schlafli(std::string_view text);
std::vector<int> parse_ring_list(std::string_view text);
CoxeterDiagram from_schlafli(const std::vector<int>& symbols, const std::vector<int>& rings = {1});

// True when every connected component of the induced diagram holds a ringed node.
bool coxeter_wythoff(const CoxeterDiagram& d, const std::vector<int>& nodes);

std::vector<std::vector<int>> subdiagrams(const CoxeterDiagram& d, int size, bool require_ring);

// Isomorphism of diagrams including edge marks (rings ignored).
bool isomorphic(const CoxeterDiagram& a, const CoxeterDiagram& b);

} // namespace coxeterkit
