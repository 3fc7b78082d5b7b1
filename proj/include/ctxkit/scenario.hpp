#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ctxkit/rational.hpp"

namespace ctxkit {

using Outcome = std::uint8_t;

/// A measurement scenario: a finite set of measurement labels together with
/// the family of contexts (maximal comeasurable subsets) and a uniform
/// outcome arity d >= 2. Contexts must form an antichain and cover every
/// measurement. Immutable after construction.
///
/// The empty scenario (no measurements, no contexts) is permitted; it arises
/// as the base case of induced scenarios in the protocols module.
class MeasurementScenario {
public:
    /// Builds and validates. Context members may be listed in any order;
    /// they are stored sorted by measurement index. Context order itself is
    /// preserved as given (it fixes vertex numbering downstream).
    static MeasurementScenario make(std::vector<std::string> measurement_names,
                                    const std::vector<std::vector<std::string>>& context_names,
                                    int outcome_arity);

    /// Same, with contexts given directly as measurement indices.
    static MeasurementScenario make_indexed(std::vector<std::string> measurement_names,
                                            std::vector<std::vector<int>> contexts,
                                            int outcome_arity);

    int measurement_count() const { return static_cast<int>(measurements_.size()); }
    int context_count() const { return static_cast<int>(contexts_.size()); }
    int outcome_arity() const { return outcome_arity_; }
    bool empty() const { return measurements_.empty(); }

    const std::vector<std::string>& measurements() const { return measurements_; }
    const std::string& measurement_name(int m) const { return measurements_.at(m); }
    int measurement_index(const std::string& name) const;  // throws input_error if unknown

    /// Context c as a sorted list of measurement indices.
    const std::vector<int>& context(int c) const { return contexts_.at(c); }
    const std::vector<std::vector<int>>& contexts() const { return contexts_; }
    int context_size(int c) const { return static_cast<int>(contexts_.at(c).size()); }

    /// Number of formal events of context c, d^|C|.
    long event_count(int c) const;
    /// Sum of d^|C| over all contexts.
    long total_event_count() const;

    /// Rank of an outcome tuple within its context (lexicographic, first
    /// measurement most significant) and its inverse.
    long rank_outcomes(int c, const std::vector<Outcome>& outcomes) const;
    std::vector<Outcome> unrank_outcomes(int c, long rank) const;

    bool operator==(const MeasurementScenario& other) const = default;

private:
    std::vector<std::string> measurements_;
    std::vector<std::vector<int>> contexts_;
    int outcome_arity_ = 2;
};

/// A joint outcome assignment to an arbitrary measurement subset S, not
/// necessarily contained in a context.
struct FormalEvent {
    std::vector<int> domain;        // sorted measurement indices
    std::vector<Outcome> outcomes;  // aligned with domain

    bool operator==(const FormalEvent&) const = default;
};

/// A joint outcome assignment to exactly one context's measurements.
struct ObservableEvent {
    int context = 0;
    std::vector<Outcome> outcomes;  // aligned with the context's sorted measurements

    bool operator==(const ObservableEvent&) const = default;
    FormalEvent as_formal(const MeasurementScenario& s) const;
};

/// A deterministic global outcome assignment, one outcome per measurement.
struct CanonicalHiddenVariable {
    std::vector<Outcome> outcomes;  // size = measurement_count

    bool operator==(const CanonicalHiddenVariable&) const = default;
    ObservableEvent restrict_to_context(const MeasurementScenario& s, int c) const;
};

/// A probability distribution over the formal events of a measurement subset,
/// stored densely by outcome rank.
struct Distribution {
    std::vector<int> domain;      // sorted measurement indices
    int outcome_arity = 2;
    std::vector<Rational> probs;  // size d^|domain|, lexicographic by tuple

    long rank(const std::vector<Outcome>& outcomes) const;
    std::vector<Outcome> unrank(long r) const;
};

/// Restriction of a formal event to a subset of its domain.
/// Throws input_error if sub_domain is not a subset of e.domain.
FormalEvent coarse_grain(const FormalEvent& e, const std::vector<int>& sub_domain);

/// Marginal of p onto sub_domain: each value is the sum of p over all
/// extensions. Throws input_error if sub_domain is not a subset of p.domain.
Distribution marginalize(const Distribution& p, const std::vector<int>& sub_domain);

/// Per-context probability tables over one scenario. Construction checks that
/// every table is complete, entrywise in [0,1], and sums to exactly 1;
/// nonsignalling is a separate check so that signalling data remains
/// representable.
class EmpiricalModel {
public:
    EmpiricalModel(MeasurementScenario scenario, std::vector<std::vector<Rational>> tables);

    const MeasurementScenario& scenario() const { return scenario_; }
    const std::vector<std::vector<Rational>>& tables() const { return tables_; }

    const Rational& probability(int context, long event_rank) const;
    const Rational& probability(const ObservableEvent& e) const;

    /// Marginal of context c's table onto a measurement subset.
    Distribution context_distribution(int c) const;

    bool operator==(const EmpiricalModel&) const = default;

private:
    MeasurementScenario scenario_;
    std::vector<std::vector<Rational>> tables_;  // tables_[c][event_rank]
};

struct NonsignallingReport {
    bool holds = true;
    // First violating pair of contexts, set when holds is false.
    std::optional<std::pair<int, int>> violating_pair;
};

/// Exact check that all pairwise context marginals agree on intersections.
NonsignallingReport is_nonsignalling(const EmpiricalModel& model);

/// The deterministic model that assigns probability 1 in every context to the
/// restriction of lambda. Always nonsignalling.
EmpiricalModel induced_model_of_hidden_variable(const CanonicalHiddenVariable& lambda,
                                                const MeasurementScenario& s);

/// Convex mixture of models over a common scenario. Weights must be
/// nonnegative and sum to 1.
EmpiricalModel mix_models(const std::vector<std::pair<Rational, EmpiricalModel>>& parts);

/// A random valid scenario for property sweeps: random context subsets
/// reduced to an antichain, uncovered measurements patched in as singletons.
/// Deterministic for a fixed generator state.
MeasurementScenario sample_scenario(std::mt19937& rng, int max_measurements, int max_contexts,
                                    int outcome_arity);

/// A uniformly random global assignment on the scenario.
CanonicalHiddenVariable sample_hidden_variable(std::mt19937& rng, const MeasurementScenario& s);

}  // namespace ctxkit
