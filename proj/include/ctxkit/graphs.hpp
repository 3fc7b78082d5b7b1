#pragma once

#include <optional>
#include <vector>

#include "ctxkit/bitgraph.hpp"
#include "ctxkit/rational.hpp"

namespace ctxkit {

/// Value and certificate of an independence-number computation. The witness
/// is always an independent set whose cardinality (or total weight) equals
/// the value; tests re-verify this edge by edge.
struct MisResult {
    Rational value;
    std::vector<int> witness;  // sorted vertex indices
    bool exact = true;         // false when a stop threshold ended the search early
};

struct MisOptions {
    /// Exact MIS is exponential; refuse instances above this many vertices.
    int vertex_cap = 2000;
    /// If > 0, stop the search as soon as an independent set of at least this
    /// cardinality is found; the result is then a lower bound, not the optimum.
    int stop_at = 0;
    /// Optional clique partition (class index per vertex, e.g. the context of
    /// each event in an exclusivity graph) used as the root clique cover when
    /// it beats the greedy one.
    const std::vector<int>* clique_partition = nullptr;
    /// Witnesses are post-processed to the lexicographically smallest optimal
    /// set when the graph has at most this many vertices; above it the
    /// (deterministic) branch-and-bound witness is returned as-is.
    int lex_min_cap = 64;
};

/// Exact (unweighted) maximum independent set by branch and bound with a
/// greedy clique-cover bound.
MisResult independence_number(const BitGraph& g, const MisOptions& opt = {});

/// Exact weighted maximum: maximizes the sum of weights over independent
/// sets. Weights must be nonnegative.
MisResult independence_number(const BitGraph& g, const std::vector<Rational>& weights,
                              const MisOptions& opt = {});

/// Size of the largest independent set containing v: 1 + MIS of the
/// non-neighborhood. The witness contains v.
MisResult independence_degree(const BitGraph& g, int v, const MisOptions& opt = {});

struct MinIndependenceResult {
    int value = 0;
    int witness_vertex = -1;       // first vertex (in scan order) attaining the minimum
    std::vector<int> witness_set;  // a largest independent set containing that vertex
};

/// Minimum of the independence degree over all vertices. Vertices are scanned
/// in ascending non-neighborhood size and each per-vertex solve stops early
/// once it matches the running minimum. `threads` = 0 means use all cores.
MinIndependenceResult minimal_independence_number(const BitGraph& g, int threads = 0,
                                                  const MisOptions& opt = {});

/// First vertex (in the same scan order) whose independence degree is
/// strictly below `threshold`, if any. This is the cheap predicate form used
/// by the logical-contextuality criterion.
std::optional<int> find_vertex_with_degree_below(const BitGraph& g, int threshold,
                                                 int threads = 0, const MisOptions& opt = {});

/// All maximal cliques (Bron-Kerbosch with pivoting), each sorted, the list
/// sorted for deterministic output. Isolated vertices yield singleton cliques.
std::vector<std::vector<int>> maximal_cliques(const BitGraph& g, const MisOptions& opt = {});

/// The fractional packing number: the exact optimum of
///   max sum_i w_i p_i  s.t.  sum_{i in Q} p_i <= 1 for every maximal clique Q,  p >= 0,
/// solved in exact rational arithmetic.
Rational fractional_packing_number(const BitGraph& g, const std::vector<Rational>& weights,
                                   const MisOptions& opt = {});

}  // namespace ctxkit
