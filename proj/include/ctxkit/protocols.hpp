#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ctxkit/scenario.hpp"

namespace ctxkit {

/// A measurement protocol: either empty (on the empty scenario) or a first
/// measurement together with one continuation protocol per outcome on the
/// induced scenario. Subtrees are shared across protocols.
struct MeasurementProtocol {
    std::string first;  // empty string = the empty protocol
    std::vector<std::shared_ptr<const MeasurementProtocol>> continuations;  // size d or empty

    bool is_empty() const { return first.empty(); }
};

using ProtocolPtr = std::shared_ptr<const MeasurementProtocol>;

/// The induced scenario at A: measurements are the B != A sharing a context
/// with A; contexts are C \ {A} for the contexts C containing A. May be the
/// empty scenario.
MeasurementScenario induced_scenario(const MeasurementScenario& s, const std::string& name);

/// Number of measurement protocols on the scenario, exactly.
mpz_class count_protocols(const MeasurementScenario& s);

/// All measurement protocols. Throws cap_error (naming the count) when there
/// are more than `cap`.
std::vector<ProtocolPtr> enumerate_protocols(const MeasurementScenario& s, long cap = 1000000);

/// A protocol outcome: the observable event queried along one root-to-leaf
/// path. Its domain is always exactly one context of the ambient scenario;
/// for the empty protocol on the empty scenario, event.context is -1.
struct ProtocolOutcome {
    std::vector<std::pair<std::string, Outcome>> path;  // (measurement, outcome) per stage
    ObservableEvent event;                              // the event s(alpha)
};

/// All outcomes of a protocol over the ambient scenario, with their events.
std::vector<ProtocolOutcome> protocol_outcomes(const MeasurementScenario& ambient,
                                               const ProtocolPtr& protocol);

/// The contextuality-scenario hypergraph: vertices are all observable events
/// of the scenario, one hyperedge {s(alpha)} per protocol (deduplicated).
struct ContextualityHypergraph {
    std::vector<ObservableEvent> vertices;      // exclusivity-graph vertex order
    std::vector<std::vector<int>> hyperedges;   // sorted vertex index lists
};

ContextualityHypergraph contextuality_hypergraph(const MeasurementScenario& s,
                                                 long cap = 1000000);

struct Theorem4Report {
    bool isomorphic = true;
    /// First vertex pair on which the two graphs disagree.
    std::optional<std::pair<int, int>> counterexample;
    long protocol_count = 0;
    long hyperedge_count = 0;
};

/// Checks that the exclusivity graph equals the complement of the
/// non-orthogonality graph of the protocol hypergraph, vertex for vertex.
Theorem4Report verify_theorem4(const MeasurementScenario& s, long cap = 1000000);

}  // namespace ctxkit
