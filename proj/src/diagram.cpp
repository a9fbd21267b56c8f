#include "coxeterkit/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>

namespace coxeterkit {

EdgeMark EdgeMark::finite(int m) {
    if (m < 3) throw Error("diagram", "edge mark must be at least 3, got " + std::to_string(m));
    return {Kind::Finite, m, 0.0};
}

EdgeMark EdgeMark::ultraparallel(double d) {
    if (!(d > 0.0)) throw Error("diagram", "ultraparallel distance must be positive");
    return {Kind::Ultraparallel, 0, d};
}

std::string EdgeMark::str() const {
    switch (kind) {
    case Kind::Finite: return std::to_string(m);
    case Kind::Parallel: return "inf";
    case Kind::Ultraparallel: {
        char buf[64];
        std::snprintf(buf, sizeof buf, "d=%.17g", d);
        return buf;
    }
    }
    return "?";
}

CoxeterDiagram::CoxeterDiagram(int nodes) : nodes_(nodes) {
    if (nodes < 1) throw Error("diagram", "a diagram needs at least one node");
}

void CoxeterDiagram::check_node(int i) const {
    if (i < 1 || i > nodes_)
        throw Error("diagram", "node " + std::to_string(i) + " out of range 1.." + std::to_string(nodes_));
}

void CoxeterDiagram::set_edge(int i, int j, EdgeMark mark) {
    check_node(i);
    check_node(j);
    if (i == j) throw Error("diagram", "loop at node " + std::to_string(i));
    if (mark.kind == EdgeMark::Kind::Finite && mark.m < 3) throw Error("diagram", "edge mark below 3");
    if (mark.kind == EdgeMark::Kind::Ultraparallel && !(mark.d > 0)) throw Error("diagram", "distance <= 0");
    edges_[{std::min(i, j), std::max(i, j)}] = mark;
}

std::optional<EdgeMark> CoxeterDiagram::edge(int i, int j) const {
    auto it = edges_.find({std::min(i, j), std::max(i, j)});
    if (it == edges_.end()) return std::nullopt;
    return it->second;
}

int CoxeterDiagram::order(int i, int j) const {
    auto e = edge(i, j);
    if (!e) return 2;
    return e->kind == EdgeMark::Kind::Finite ? e->m : 0;
}

void CoxeterDiagram::ring(int i) {
    check_node(i);
    rings_.insert(i);
}

void CoxeterDiagram::set_rings(const std::set<int>& rings) {
    for (int r : rings) check_node(r);
    rings_ = rings;
}

bool CoxeterDiagram::has_dashed() const {
    return std::any_of(edges_.begin(), edges_.end(),
                       [](auto& e) { return e.second.kind == EdgeMark::Kind::Ultraparallel; });
}

bool CoxeterDiagram::has_parallel() const {
    return std::any_of(edges_.begin(), edges_.end(),
                       [](auto& e) { return e.second.kind == EdgeMark::Kind::Parallel; });
}

std::vector<std::vector<int>> CoxeterDiagram::components() const {
    std::vector<int> parent(nodes_ + 1);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> root = [&](int x) { return parent[x] == x ? x : parent[x] = root(parent[x]); };
    for (auto& [p, _] : edges_) parent[root(p.first)] = root(p.second);
    std::map<int, std::vector<int>> groups;
    for (int i = 1; i <= nodes_; ++i) groups[root(i)].push_back(i);
    std::vector<std::vector<int>> out;
    for (auto& [_, g] : groups) out.push_back(g);
    std::sort(out.begin(), out.end());
    return out;
}

CoxeterDiagram CoxeterDiagram::induced(const std::vector<int>& nodes) const {
    CoxeterDiagram sub(static_cast<int>(nodes.size()));
    for (std::size_t a = 0; a < nodes.size(); ++a) {
        check_node(nodes[a]);
        if (ringed(nodes[a])) sub.ring(static_cast<int>(a) + 1);
        for (std::size_t b = a + 1; b < nodes.size(); ++b)
            if (auto e = edge(nodes[a], nodes[b])) sub.set_edge(static_cast<int>(a) + 1, static_cast<int>(b) + 1, *e);
    }
    return sub;
}

ParseError::ParseError(int line, int column, const std::string& message)
    : Error("diagram", "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line), column_(column) {}

namespace {

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    void skip_blank() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (c == ' ' || c == '\t' || c == '\r') {
                advance();
            } else {
                break;
            }
        }
    }

    bool at_end() { skip_blank(); return pos_ >= text_.size(); }
    bool at_separator() {
        skip_blank();
        return pos_ >= text_.size() || text_[pos_] == ';' || text_[pos_] == '\n';
    }
    void eat_separators() {
        for (;;) {
            skip_blank();
            if (pos_ < text_.size() && (text_[pos_] == ';' || text_[pos_] == '\n')) advance();
            else break;
        }
    }
    char peek() { skip_blank(); return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        advance();
    }

    std::string word() {
        skip_blank();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) advance();
        return std::string(text_.substr(start, pos_ - start));
    }

    bool next_is_digit() { skip_blank(); return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])); }

    long integer() {
        skip_blank();
        if (!next_is_digit()) fail("expected an integer");
        long v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + (text_[pos_] - '0');
            if (v > 1000000) fail("integer too large");
            advance();
        }
        return v;
    }

    double real() {
        skip_blank();
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        double v = 0;
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr == first) fail("expected a number");
        while (text_.data() + pos_ < ptr) advance();
        return v;
    }

    std::pair<int, int> here() const { return {line_, col_}; }
    [[noreturn]] void fail(const std::string& msg) { throw ParseError(line_, col_, msg); }
    [[noreturn]] static void fail_at(std::pair<int, int> at, const std::string& msg) {
        throw ParseError(at.first, at.second, msg);
    }

private:
    void advance() {
        if (text_[pos_] == '\n') { ++line_; col_ = 1; }
        else ++col_;
        ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

} // namespace

CoxeterDiagram parse_diagram(std::string_view text) {
    Lexer lex(text);
    std::optional<CoxeterDiagram> d;
    auto require_nodes = [&](std::pair<int, int> at) {
        if (!d) Lexer::fail_at(at, "'nodes' must be declared first");
    };
    auto node_index = [&]() {
        auto at = lex.here();
        lex.skip_blank();
        at = lex.here();
        long v = lex.integer();
        if (v < 1 || v > d->size())
            Lexer::fail_at(at, "node index " + std::to_string(v) + " out of range 1.." + std::to_string(d->size()));
        return static_cast<int>(v);
    };

    lex.eat_separators();
    while (!lex.at_end()) {
        lex.skip_blank();
        auto at = lex.here();
        if (lex.next_is_digit()) {
            require_nodes(at);
            int i = node_index();
            lex.expect('-');
            int j = node_index();
            if (i == j) Lexer::fail_at(at, "edge joins node " + std::to_string(i) + " to itself");
            if (d->edge(i, j)) Lexer::fail_at(at, "duplicate edge " + std::to_string(i) + "-" + std::to_string(j));
            EdgeMark mark = EdgeMark::finite(3);
            if (lex.peek() == ':') {
                lex.expect(':');
                lex.skip_blank();
                auto label_at = lex.here();
                if (lex.next_is_digit()) {
                    long m = lex.integer();
                    if (m < 3) Lexer::fail_at(label_at, "edge mark must be at least 3, got " + std::to_string(m));
                    mark = EdgeMark::finite(static_cast<int>(m));
                } else {
                    std::string w = lex.word();
                    if (w == "inf") {
                        mark = EdgeMark::parallel();
                    } else if (w == "d") {
                        lex.expect('=');
                        auto num_at = lex.here();
                        double dist = lex.real();
                        if (!(dist > 0) || !std::isfinite(dist))
                            Lexer::fail_at(num_at, "ultraparallel distance must be positive");
                        mark = EdgeMark::ultraparallel(dist);
                    } else {
                        Lexer::fail_at(label_at, "expected an integer, 'inf' or 'd=' after ':'");
                    }
                }
            }
            d->set_edge(i, j, mark);
        } else {
            std::string w = lex.word();
            if (w == "nodes") {
                if (d) Lexer::fail_at(at, "'nodes' declared twice");
                auto num_at = lex.here();
                long k = lex.integer();
                if (k < 1) Lexer::fail_at(num_at, "a diagram needs at least one node");
                d.emplace(static_cast<int>(k));
            } else if (w == "ring") {
                require_nodes(at);
                if (lex.at_separator()) lex.fail("'ring' needs at least one node");
                while (!lex.at_separator()) d->ring(node_index());
            } else {
                Lexer::fail_at(at, w.empty() ? "unexpected character" : "unknown statement '" + w + "'");
            }
        }
        if (!lex.at_separator()) lex.fail("expected ';' or end of line");
        lex.eat_separators();
    }
    if (!d) lex.fail("missing 'nodes' declaration");
    return *d;
}

std::string render(const CoxeterDiagram& d) {
    std::string out = "nodes " + std::to_string(d.size());
    for (auto& [p, mark] : d.edges()) {
        out += "; " + std::to_string(p.first) + "-" + std::to_string(p.second);
        if (!(mark.kind == EdgeMark::Kind::Finite && mark.m == 3)) out += ":" + mark.str();
    }
    if (!d.rings().empty()) {
        out += "; ring";
        for (int r : d.rings()) out += " " + std::to_string(r);
    }
    return out;
}

std::vector<int> parse_schlafli(std::string_view text) {
    std::vector<int> out;
    std::string s(text);
    std::erase_if(s, [](char c) { return c == '{' || c == '}' || c == ' '; });
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t comma = s.find(',', start);
        std::string tok = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (tok == "inf") {
            out.push_back(kInfinity);
        } else {
            int v = 0;
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty())
                throw Error("diagram", "bad Schlafli entry '" + tok + "'");
            out.push_back(v);
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

std::vector<int> parse_ring_list(std::string_view text) {
    std::vector<int> out;
    for (int v : parse_schlafli(text)) {
        if (v < 1) throw Error("diagram", "ring indices are positive integers");
        out.push_back(v);
    }
    return out;
}

CoxeterDiagram from_schlafli(const std::vector<int>& symbols, const std::vector<int>& rings) {
    if (symbols.empty()) throw Error("diagram", "empty Schlafli symbol");
    CoxeterDiagram d(static_cast<int>(symbols.size()) + 1);
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        int k = symbols[i];
        if (k != kInfinity && k < 3) throw Error("diagram", "Schlafli entries must be at least 3");
        d.set_edge(static_cast<int>(i) + 1, static_cast<int>(i) + 2,
                   k == kInfinity ? EdgeMark::parallel() : EdgeMark::finite(k));
    }
    for (int r : rings) d.ring(r);
    return d;
}

bool coxeter_wythoff(const CoxeterDiagram& d, const std::vector<int>& nodes) {
    if (nodes.empty()) return false;
    CoxeterDiagram sub = d.induced(nodes);
    for (auto& comp : sub.components())
        if (std::none_of(comp.begin(), comp.end(), [&](int i) { return sub.ringed(i); })) return false;
    return true;
}

std::vector<std::vector<int>> subdiagrams(const CoxeterDiagram& d, int size, bool require_ring) {
    const int k = d.size();
    if (size < 1 || size > k) throw Error("diagram", "subdiagram size out of range");
    std::vector<std::vector<int>> out;
    std::vector<int> pick(size);
    std::iota(pick.begin(), pick.end(), 1);
    for (;;) {
        if (!require_ring || coxeter_wythoff(d, pick)) out.push_back(pick);
        int i = size - 1;
        while (i >= 0 && pick[i] == k - size + i + 1) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
    return out;
}

namespace {

std::string mark_key(const std::optional<EdgeMark>& e) { return e ? e->str() : "2"; }

std::vector<std::string> node_invariant(const CoxeterDiagram& d, int i) {
    std::vector<std::string> v;
    for (int j = 1; j <= d.size(); ++j)
        if (j != i && d.edge(i, j)) v.push_back(mark_key(d.edge(i, j)));
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace

bool isomorphic(const CoxeterDiagram& a, const CoxeterDiagram& b) {
    const int k = a.size();
    if (k != b.size() || a.edges().size() != b.edges().size()) return false;
    std::vector<std::vector<std::string>> ia(k + 1), ib(k + 1);
    for (int i = 1; i <= k; ++i) { ia[i] = node_invariant(a, i); ib[i] = node_invariant(b, i); }
    {
        auto sa = ia, sb = ib;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return false;
    }
    std::vector<int> map(k + 1, 0);
    std::vector<bool> used(k + 1, false);
    std::function<bool(int)> extend = [&](int i) {
        if (i > k) return true;
        for (int j = 1; j <= k; ++j) {
            if (used[j] || ia[i] != ib[j]) continue;
            bool ok = true;
            for (int p = 1; p < i && ok; ++p) ok = mark_key(a.edge(p, i)) == mark_key(b.edge(map[p], j));
            if (!ok) continue;
            map[i] = j;
            used[j] = true;
            if (extend(i + 1)) return true;
            used[j] = false;
        }
        return false;
    };
    return extend(1);
}

} // namespace coxeterkit
