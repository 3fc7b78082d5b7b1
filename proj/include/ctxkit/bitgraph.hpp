#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace ctxkit {

/// Candidate subsets of vertices inside the solver are plain word vectors.
using VertexSet = std::vector<std::uint64_t>;

/// Simple undirected graph over vertices 0..n-1 with a packed adjacency
/// matrix. Rows double as neighborhood bitsets for the MIS solver's inner
/// loops; the edge list is derivable and used for export.
class BitGraph {
public:
    BitGraph() = default;
    explicit BitGraph(int n);

    int vertex_count() const { return n_; }
    int words_per_row() const { return words_; }
    long edge_count() const;

    void add_edge(int u, int v);
    bool adjacent(int u, int v) const;
    int degree(int v) const;

    const std::uint64_t* row(int v) const { return rows_.data() + static_cast<size_t>(v) * words_; }

    /// Edges as (u,v) with u < v, sorted lexicographically.
    std::vector<std::pair<int, int>> edge_list() const;

    /// Induced subgraph on the given vertices (kept in the given order).
    BitGraph induced(const std::vector<int>& vertices) const;

    /// Complement graph (no self-loops).
    BitGraph complement() const;

    // --- vertex-set helpers -------------------------------------------------
    VertexSet empty_set() const { return VertexSet(words_, 0); }
    VertexSet full_set() const;
    static void set_bit(VertexSet& s, int v) { s[v >> 6] |= 1ULL << (v & 63); }
    static void clear_bit(VertexSet& s, int v) { s[v >> 6] &= ~(1ULL << (v & 63)); }
    static bool test_bit(const VertexSet& s, int v) { return (s[v >> 6] >> (v & 63)) & 1; }
    static int popcount(const VertexSet& s);
    /// s := s & ~row(v) (drop v's neighbors from s).
    void subtract_neighbors(VertexSet& s, int v) const;
    /// s := s & row(v).
    void intersect_neighbors(VertexSet& s, int v) const;
    std::vector<int> set_to_vertices(const VertexSet& s) const;

    /// True iff the listed vertices are pairwise nonadjacent.
    bool is_independent_set(const std::vector<int>& vertices) const;
    /// True iff the listed vertices are pairwise adjacent.
    bool is_clique(const std::vector<int>& vertices) const;

    // --- DIMACS -------------------------------------------------------------
    /// "p edge n m" header plus "e u v" lines, 1-indexed. Comment lines
    /// starting with 'c' are ignored on input.
    static BitGraph read_dimacs(std::istream& in);
    void write_dimacs(std::ostream& out) const;

private:
    int n_ = 0;
    int words_ = 0;
    std::vector<std::uint64_t> rows_;
};

}  // namespace ctxkit
