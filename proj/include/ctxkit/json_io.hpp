#pragma once

#include <json.hpp>

#include "ctxkit/logic.hpp"
#include "ctxkit/scenario.hpp"

namespace ctxkit {

using Json = nlohmann::ordered_json;

/// {"outcome_arity": d, "measurements": [names], "contexts": [[names]]}
Json scenario_to_json(const MeasurementScenario& s);
MeasurementScenario scenario_from_json(const Json& j);

/// {"scenario": {...}, "tables": [{"context": i, "probs": {"<tuple>": "num/den"}}]}
/// Outcome tuples are digit strings in context order; model IO therefore
/// requires outcome arity at most 10. Rationals are "num/den" strings.
Json model_to_json(const EmpiricalModel& model);
EmpiricalModel model_from_json(const Json& j);

/// {"weights": [{"context": i, "outcomes": "<tuple>", "weight": "num/den"}]}
std::vector<EventWeight> weights_from_json(const Json& j, const MeasurementScenario& s);

/// Classification report with every numeric field as an exact "num/den"
/// string and witnesses spelled out as events.
Json report_to_json(const ClassificationReport& report, const MeasurementScenario& s);

Json event_to_json(const ObservableEvent& e, const MeasurementScenario& s);

}  // namespace ctxkit
