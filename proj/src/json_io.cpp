#include "ctxkit/json_io.hpp"

#include "ctxkit/errors.hpp"

namespace ctxkit {

namespace {

std::string tuple_string(const std::vector<Outcome>& outcomes) {
    std::string s;
    for (Outcome o : outcomes)
        s += static_cast<char>('0' + o);
    return s;
}

std::vector<Outcome> parse_tuple(const std::string& s, int expected_len, int arity) {
    std::vector<Outcome> out;
    for (char c : s) {
        if (c == ',')
            continue;
        if (c < '0' || c > '9')
            throw input_error("bad outcome tuple '" + s + "'");
        const int v = c - '0';
        if (v >= arity)
            throw input_error("outcome " + std::to_string(v) + " out of range in tuple '" + s +
                              "'");
        out.push_back(static_cast<Outcome>(v));
    }
    if (static_cast<int>(out.size()) != expected_len)
        throw input_error("outcome tuple '" + s + "' has wrong length");
    return out;
}

void require_small_arity(const MeasurementScenario& s) {
    if (s.outcome_arity() > 10)
        throw input_error("model JSON uses digit tuples; outcome arity above 10 is unsupported");
}

}  // namespace

Json scenario_to_json(const MeasurementScenario& s) {
    Json j;
    j["outcome_arity"] = s.outcome_arity();
    j["measurements"] = s.measurements();
    Json contexts = Json::array();
    for (int c = 0; c < s.context_count(); ++c) {
        Json ctx = Json::array();
        for (int m : s.context(c))
            ctx.push_back(s.measurement_name(m));
        contexts.push_back(std::move(ctx));
    }
    j["contexts"] = std::move(contexts);
    return j;
}

MeasurementScenario scenario_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("outcome_arity") || !j.contains("measurements") ||
        !j.contains("contexts"))
        throw input_error("scenario JSON needs outcome_arity, measurements and contexts");
    std::vector<std::string> names;
    for (const auto& n : j.at("measurements"))
        names.push_back(n.get<std::string>());
    std::vector<std::vector<std::string>> contexts;
    for (const auto& ctx : j.at("contexts")) {
        std::vector<std::string> c;
        for (const auto& n : ctx)
            c.push_back(n.get<std::string>());
        contexts.push_back(std::move(c));
    }
    return MeasurementScenario::make(std::move(names), contexts, j.at("outcome_arity").get<int>());
}

Json model_to_json(const EmpiricalModel& model) {
    const auto& s = model.scenario();
    require_small_arity(s);
    Json j;
    j["scenario"] = scenario_to_json(s);
    Json tables = Json::array();
    for (int c = 0; c < s.context_count(); ++c) {
        Json entry;
        entry["context"] = c;
        Json probs;
        for (long r = 0; r < s.event_count(c); ++r)
            probs[tuple_string(s.unrank_outcomes(c, r))] = format_rational(model.probability(c, r));
        entry["probs"] = std::move(probs);
        tables.push_back(std::move(entry));
    }
    j["tables"] = std::move(tables);
    return j;
}

EmpiricalModel model_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("scenario") || !j.contains("tables"))
        throw input_error("model JSON needs scenario and tables");
    MeasurementScenario s = scenario_from_json(j.at("scenario"));
    require_small_arity(s);
    std::vector<std::vector<Rational>> tables(s.context_count());
    for (int c = 0; c < s.context_count(); ++c)
        tables[c].assign(s.event_count(c), Rational(0));
    std::vector<bool> seen(s.context_count(), false);
    for (const auto& entry : j.at("tables")) {
        const int c = entry.at("context").get<int>();
        if (c < 0 || c >= s.context_count())
            throw input_error("table names unknown context " + std::to_string(c));
        if (seen[c])
            throw input_error("duplicate table for context " + std::to_string(c));
        seen[c] = true;
        for (const auto& [tuple, value] : entry.at("probs").items()) {
            const auto outcomes = parse_tuple(tuple, s.context_size(c), s.outcome_arity());
            tables[c][s.rank_outcomes(c, outcomes)] = parse_rational(value.get<std::string>());
        }
    }
    for (int c = 0; c < s.context_count(); ++c) {
        if (!seen[c])
            throw input_error("no table for context " + std::to_string(c));
    }
    return EmpiricalModel(std::move(s), std::move(tables));
}

std::vector<EventWeight> weights_from_json(const Json& j, const MeasurementScenario& s) {
    if (!j.is_object() || !j.contains("weights"))
        throw input_error("weights JSON needs a 'weights' array");
    std::vector<EventWeight> out;
    for (const auto& entry : j.at("weights")) {
        const int c = entry.at("context").get<int>();
        if (c < 0 || c >= s.context_count())
            throw input_error("weight names unknown context " + std::to_string(c));
        EventWeight w;
        w.event.context = c;
        w.event.outcomes = parse_tuple(entry.at("outcomes").get<std::string>(),
                                       s.context_size(c), s.outcome_arity());
        w.weight = parse_rational(entry.at("weight").get<std::string>());
        out.push_back(std::move(w));
    }
    return out;
}

Json event_to_json(const ObservableEvent& e, const MeasurementScenario& s) {
    Json j;
    j["context"] = e.context;
    j["outcomes"] = tuple_string(e.outcomes);
    Json names = Json::array();
    for (int m : s.context(e.context))
        names.push_back(s.measurement_name(m));
    j["measurements"] = std::move(names);
    return j;
}

Json report_to_json(const ClassificationReport& report, const MeasurementScenario& s) {
    Json j;
    j["nonsignalling"] = report.nonsignalling;
    j["contexts"] = report.context_count;
    j["support_size"] = report.support_size;
    j["alpha_support"] = std::to_string(report.alpha_support);
    j["strongly_contextual"] = report.strongly_contextual;
    j["logically_contextual"] = report.logically_contextual;
    if (report.minimal_independence.has_value())
        j["minimal_independence"] = std::to_string(*report.minimal_independence);
    if (report.noncontextual.has_value())
        j["noncontextual"] = *report.noncontextual;
    else
        j["noncontextual"] = "not computed";
    if (report.noncontextual_fraction.has_value())
        j["noncontextual_fraction"] = format_rational(*report.noncontextual_fraction);
    else
        j["noncontextual_fraction"] = "not computed";

    Json witnesses;
    witnesses["alpha_independent_set"] = report.alpha_witness;
    if (report.logical_witness_event.has_value())
        witnesses["logical_witness_event"] = event_to_json(*report.logical_witness_event, s);
    if (report.global_assignment.has_value()) {
        Json lambda;
        for (int m = 0; m < s.measurement_count(); ++m)
            lambda[s.measurement_name(m)] = static_cast<int>(report.global_assignment->outcomes[m]);
        witnesses["global_assignment"] = std::move(lambda);
    }
    if (report.joint_distribution.has_value()) {
        Json joint;
        const auto& probs = *report.joint_distribution;
        const int d = s.outcome_arity();
        for (size_t idx = 0; idx < probs.size(); ++idx) {
            if (probs[idx] == 0)
                continue;
            std::string key;
            long r = static_cast<long>(idx);
            std::vector<Outcome> outcomes(s.measurement_count());
            for (int i = s.measurement_count() - 1; i >= 0; --i) {
                outcomes[i] = static_cast<Outcome>(r % d);
                r /= d;
            }
            for (Outcome o : outcomes)
                key += static_cast<char>('0' + o);
            joint[key] = format_rational(probs[idx]);
        }
        witnesses["joint_distribution"] = std::move(joint);
    }
    j["witnesses"] = std::move(witnesses);
    if (!report.notes.empty())
        j["notes"] = report.notes;
    return j;
}

}  // namespace ctxkit
