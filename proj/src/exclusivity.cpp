#include "ctxkit/exclusivity.hpp"

#include <algorithm>
#include <ostream>

#include "ctxkit/errors.hpp"

namespace ctxkit {

std::vector<Rational> ExclusivityGraph::effective_weights() const {
    if (weights.has_value())
        return *weights;
    return std::vector<Rational>(vertex_count(), Rational(1));
}

int ExclusivityGraph::find_vertex(const ObservableEvent& e) const {
    for (int v = 0; v < vertex_count(); ++v) {
        if (events[v] == e)
            return v;
    }
    return -1;
}

ExclusivityGraph ExclusivityGraph::induced(const std::vector<int>& vertices) const {
    ExclusivityGraph g;
    g.adjacency = adjacency.induced(vertices);
    for (int v : vertices) {
        g.events.push_back(events.at(v));
        g.original_index.push_back(original_index.at(v));
        g.context_of.push_back(context_of.at(v));
        if (weights.has_value()) {
            if (!g.weights.has_value())
                g.weights.emplace();
            g.weights->push_back((*weights)[v]);
        }
    }
    return g;
}

ExclusivityGraph exclusivity_graph(const MeasurementScenario& s) {
    ExclusivityGraph g;
    for (int c = 0; c < s.context_count(); ++c) {
        for (long r = 0; r < s.event_count(c); ++r) {
            g.events.push_back(ObservableEvent{c, s.unrank_outcomes(c, r)});
            g.context_of.push_back(c);
            g.original_index.push_back(static_cast<int>(g.events.size()) - 1);
        }
    }
    const int n = static_cast<int>(g.events.size());
    g.adjacency = BitGraph(n);

    // Vertex ranges and shared-measurement positions per context pair.
    std::vector<long> first(s.context_count() + 1, 0);
    for (int c = 0; c < s.context_count(); ++c)
        first[c + 1] = first[c] + s.event_count(c);

    for (int c = 0; c < s.context_count(); ++c) {
        // Events of a common context are pairwise inconsistent.
        for (long a = 0; a < s.event_count(c); ++a) {
            for (long b = a + 1; b < s.event_count(c); ++b)
                g.adjacency.add_edge(static_cast<int>(first[c] + a),
                                     static_cast<int>(first[c] + b));
        }
        for (int c2 = c + 1; c2 < s.context_count(); ++c2) {
            // positions of shared measurements inside each context's tuple
            std::vector<std::pair<int, int>> shared;
            const auto& m1 = s.context(c);
            const auto& m2 = s.context(c2);
            size_t i = 0, j = 0;
            while (i < m1.size() && j < m2.size()) {
                if (m1[i] == m2[j]) {
                    shared.emplace_back(static_cast<int>(i), static_cast<int>(j));
                    ++i, ++j;
                } else if (m1[i] < m2[j]) {
                    ++i;
                } else {
                    ++j;
                }
            }
            if (shared.empty())
                continue;
            for (long a = 0; a < s.event_count(c); ++a) {
                const auto& ta = g.events[first[c] + a].outcomes;
                for (long b = 0; b < s.event_count(c2); ++b) {
                    const auto& tb = g.events[first[c2] + b].outcomes;
                    for (auto [pa, pb] : shared) {
                        if (ta[pa] != tb[pb]) {
                            g.adjacency.add_edge(static_cast<int>(first[c] + a),
                                                 static_cast<int>(first[c2] + b));
                            break;
                        }
                    }
                }
            }
        }
    }
    return g;
}

ExclusivityGraph support_graph(const EmpiricalModel& model) {
    ExclusivityGraph full = exclusivity_graph(model.scenario());
    std::vector<int> possible;
    for (int v = 0; v < full.vertex_count(); ++v) {
        const ObservableEvent& e = full.events[v];
        if (model.probability(e.context, model.scenario().rank_outcomes(e.context, e.outcomes)) != 0)
            possible.push_back(v);
    }
    return full.induced(possible);
}

void write_dimacs_with_map(const ExclusivityGraph& g, const MeasurementScenario& s,
                           std::ostream& graph_out, std::ostream& map_out) {
    g.adjacency.write_dimacs(graph_out);
    map_out << "[\n";
    for (int v = 0; v < g.vertex_count(); ++v) {
        const ObservableEvent& e = g.events[v];
        map_out << "  {\"vertex\": " << (v + 1) << ", \"context\": " << e.context
                << ", \"outcomes\": \"";
        for (Outcome o : e.outcomes)
            map_out << static_cast<int>(o);
        map_out << "\", \"measurements\": [";
        const auto& ctx = s.context(e.context);
        for (size_t i = 0; i < ctx.size(); ++i) {
            if (i > 0)
                map_out << ", ";
            map_out << '"' << s.measurement_name(ctx[i]) << '"';
        }
        map_out << "]}" << (v + 1 < g.vertex_count() ? "," : "") << "\n";
    }
    map_out << "]\n";
}

}  // namespace ctxkit
