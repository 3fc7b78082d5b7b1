#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "ctxkit/bitgraph.hpp"
#include "ctxkit/rational.hpp"
#include "ctxkit/scenario.hpp"

namespace ctxkit {

/// The exclusivity graph of a measurement scenario, or an induced support
/// graph of an empirical model. Vertices are observable events ordered by
/// (context index, lexicographic outcome tuple); two events are adjacent iff
/// they assign different outcomes to a shared measurement. The packed
/// adjacency matrix is the source of truth; the edge list is derived for
/// export. Immutable after construction.
struct ExclusivityGraph {
    std::vector<ObservableEvent> events;  // one per vertex
    std::vector<int> original_index;      // parent-graph vertex ids (identity for a full graph)
    std::vector<int> context_of;          // context clique partition
    BitGraph adjacency;
    std::optional<std::vector<Rational>> weights;  // absent = unit weights

    int vertex_count() const { return adjacency.vertex_count(); }

    /// Unit weights unless explicitly set.
    std::vector<Rational> effective_weights() const;

    /// Vertex index of an observable event in this graph, or -1 when the
    /// event is not a vertex (possible for support graphs).
    int find_vertex(const ObservableEvent& e) const;

    /// Induced subgraph on the given vertices; original_index entries are
    /// carried over so witnesses still name events of the parent scenario.
    ExclusivityGraph induced(const std::vector<int>& vertices) const;
};

/// Builds the full exclusivity graph of a scenario: one vertex per formal
/// observable event of every context.
ExclusivityGraph exclusivity_graph(const MeasurementScenario& s);

/// The support graph of a model: the induced subgraph of the scenario's
/// exclusivity graph on the events of nonzero probability. The possibility
/// threshold is exact.
ExclusivityGraph support_graph(const EmpiricalModel& model);

/// DIMACS export of the adjacency plus a JSON sidecar mapping the 1-indexed
/// DIMACS vertices to (context, outcome tuple) pairs.
void write_dimacs_with_map(const ExclusivityGraph& g, const MeasurementScenario& s,
                           std::ostream& graph_out, std::ostream& map_out);

}  // namespace ctxkit
