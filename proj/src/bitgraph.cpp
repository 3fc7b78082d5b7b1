#include "ctxkit/bitgraph.hpp"

#include <bit>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "ctxkit/errors.hpp"

namespace ctxkit {

BitGraph::BitGraph(int n) : n_(n), words_((n + 63) / 64), rows_(static_cast<size_t>(n) * words_, 0) {}

long BitGraph::edge_count() const {
    long twice = 0;
    for (int v = 0; v < n_; ++v)
        twice += degree(v);
    return twice / 2;
}

void BitGraph::add_edge(int u, int v) {
    if (u == v)
        throw input_error("self-loop rejected");
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
        throw input_error("edge endpoint out of range");
    rows_[static_cast<size_t>(u) * words_ + (v >> 6)] |= 1ULL << (v & 63);
    rows_[static_cast<size_t>(v) * words_ + (u >> 6)] |= 1ULL << (u & 63);
}

bool BitGraph::adjacent(int u, int v) const {
    return (rows_[static_cast<size_t>(u) * words_ + (v >> 6)] >> (v & 63)) & 1;
}

int BitGraph::degree(int v) const {
    int d = 0;
    const std::uint64_t* r = row(v);
    for (int w = 0; w < words_; ++w)
        d += std::popcount(r[w]);
    return d;
}

std::vector<std::pair<int, int>> BitGraph::edge_list() const {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n_; ++u) {
        for (int v = u + 1; v < n_; ++v) {
            if (adjacent(u, v))
                edges.emplace_back(u, v);
        }
    }
    return edges;
}

BitGraph BitGraph::induced(const std::vector<int>& vertices) const {
    BitGraph g(static_cast<int>(vertices.size()));
    for (size_t i = 0; i < vertices.size(); ++i) {
        for (size_t j = i + 1; j < vertices.size(); ++j) {
            if (adjacent(vertices[i], vertices[j]))
                g.add_edge(static_cast<int>(i), static_cast<int>(j));
        }
    }
    return g;
}

BitGraph BitGraph::complement() const {
    BitGraph g(n_);
    for (int u = 0; u < n_; ++u) {
        for (int v = u + 1; v < n_; ++v) {
            if (!adjacent(u, v))
                g.add_edge(u, v);
        }
    }
    return g;
}

VertexSet BitGraph::full_set() const {
    VertexSet s(words_, ~0ULL);
    if (n_ & 63)
        s[words_ - 1] = (~0ULL) >> (64 - (n_ & 63));
    if (n_ == 0)
        s.assign(words_, 0);
    return s;
}

int BitGraph::popcount(const VertexSet& s) {
    int c = 0;
    for (std::uint64_t w : s)
        c += std::popcount(w);
    return c;
}

void BitGraph::subtract_neighbors(VertexSet& s, int v) const {
    const std::uint64_t* r = row(v);
    for (int w = 0; w < words_; ++w)
        s[w] &= ~r[w];
}

void BitGraph::intersect_neighbors(VertexSet& s, int v) const {
    const std::uint64_t* r = row(v);
    for (int w = 0; w < words_; ++w)
        s[w] &= r[w];
}

std::vector<int> BitGraph::set_to_vertices(const VertexSet& s) const {
    std::vector<int> out;
    for (int w = 0; w < words_; ++w) {
        std::uint64_t bits = s[w];
        while (bits) {
            int b = std::countr_zero(bits);
            out.push_back(w * 64 + b);
            bits &= bits - 1;
        }
    }
    return out;
}

bool BitGraph::is_independent_set(const std::vector<int>& vertices) const {
    for (size_t i = 0; i < vertices.size(); ++i) {
        for (size_t j = i + 1; j < vertices.size(); ++j) {
            if (adjacent(vertices[i], vertices[j]))
                return false;
        }
    }
    return true;
}

bool BitGraph::is_clique(const std::vector<int>& vertices) const {
    for (size_t i = 0; i < vertices.size(); ++i) {
        for (size_t j = i + 1; j < vertices.size(); ++j) {
            if (!adjacent(vertices[i], vertices[j]))
                return false;
        }
    }
    return true;
}

BitGraph BitGraph::read_dimacs(std::istream& in) {
    std::string line;
    int n = -1;
    long m = -1;
    BitGraph g;
    long edges_seen = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c')
            continue;
        std::istringstream ls(line);
        char kind;
        ls >> kind;
        if (kind == 'p') {
            std::string fmt;
            ls >> fmt >> n >> m;
            if (!ls || fmt != "edge" || n < 0)
                throw input_error("bad DIMACS problem line: '" + line + "'");
            g = BitGraph(n);
        } else if (kind == 'e') {
            int u, v;
            ls >> u >> v;
            if (!ls || n < 0)
                throw input_error("bad DIMACS edge line: '" + line + "'");
            if (u < 1 || v < 1 || u > n || v > n)
                throw input_error("DIMACS edge endpoint out of range: '" + line + "'");
            if (u != v && !g.adjacent(u - 1, v - 1)) {
                g.add_edge(u - 1, v - 1);
                ++edges_seen;
            }
        } else {
            throw input_error("unrecognized DIMACS line: '" + line + "'");
        }
    }
    if (n < 0)
        throw input_error("DIMACS input has no problem line");
    if (m >= 0 && edges_seen != m)
        throw input_error("DIMACS edge count mismatch: header says " + std::to_string(m) +
                          ", found " + std::to_string(edges_seen));
    return g;
}

void BitGraph::write_dimacs(std::ostream& out) const {
    auto edges = edge_list();
    out << "p edge " << n_ << " " << edges.size() << "\n";
    for (auto [u, v] : edges)
        out << "e " << (u + 1) << " " << (v + 1) << "\n";
}

}  // namespace ctxkit
