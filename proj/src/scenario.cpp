#include "ctxkit/scenario.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ctxkit/errors.hpp"

namespace ctxkit {

namespace {

long pow_long(int base, int exp) {
    long r = 1;
    for (int i = 0; i < exp; ++i) {
        if (r > (1L << 56) / base)
            throw cap_error("event count overflow: " + std::to_string(base) + "^" +
                            std::to_string(exp));
        r *= base;
    }
    return r;
}

bool is_subset(const std::vector<int>& a, const std::vector<int>& b) {
    // both sorted
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

MeasurementScenario MeasurementScenario::make(
    std::vector<std::string> measurement_names,
    const std::vector<std::vector<std::string>>& context_names, int outcome_arity) {
    std::map<std::string, int> index;
    for (int i = 0; i < static_cast<int>(measurement_names.size()); ++i) {
        if (!index.emplace(measurement_names[i], i).second)
            throw input_error("duplicate measurement name '" + measurement_names[i] + "'");
    }
    std::vector<std::vector<int>> contexts;
    contexts.reserve(context_names.size());
    for (const auto& ctx : context_names) {
        std::vector<int> c;
        for (const auto& name : ctx) {
            auto it = index.find(name);
            if (it == index.end())
                throw input_error("context references unknown measurement '" + name + "'");
            c.push_back(it->second);
        }
        contexts.push_back(std::move(c));
    }
    return make_indexed(std::move(measurement_names), std::move(contexts), outcome_arity);
}

MeasurementScenario MeasurementScenario::make_indexed(std::vector<std::string> measurement_names,
                                                      std::vector<std::vector<int>> contexts,
                                                      int outcome_arity) {
    if (outcome_arity < 2)
        throw input_error("outcome arity must be at least 2");

    const int m = static_cast<int>(measurement_names.size());
    if (m == 0) {
        if (!contexts.empty())
            throw input_error("contexts given for an empty measurement set");
        MeasurementScenario s;
        s.outcome_arity_ = outcome_arity;
        return s;
    }

    std::vector<bool> covered(m, false);
    for (auto& c : contexts) {
        if (c.empty())
            throw input_error("empty context");
        std::sort(c.begin(), c.end());
        if (std::adjacent_find(c.begin(), c.end()) != c.end())
            throw input_error("context lists a measurement twice");
        for (int x : c) {
            if (x < 0 || x >= m)
                throw input_error("context references measurement index out of range");
            covered[x] = true;
        }
    }
    for (int i = 0; i < m; ++i) {
        if (!covered[i])
            throw input_error("measurement '" + measurement_names[i] + "' is in no context");
    }
    const int n = static_cast<int>(contexts.size());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j)
                continue;
            if (contexts[i].size() <= contexts[j].size() && is_subset(contexts[i], contexts[j])) {
                if (contexts[i] == contexts[j])
                    throw input_error("duplicate context at positions " + std::to_string(i) +
                                      " and " + std::to_string(j));
                throw input_error("antichain violation: context " + std::to_string(i) +
                                  " is a proper subset of context " + std::to_string(j));
            }
        }
    }

    MeasurementScenario s;
    s.measurements_ = std::move(measurement_names);
    s.contexts_ = std::move(contexts);
    s.outcome_arity_ = outcome_arity;
    return s;
}

int MeasurementScenario::measurement_index(const std::string& name) const {
    for (int i = 0; i < measurement_count(); ++i) {
        if (measurements_[i] == name)
            return i;
    }
    throw input_error("unknown measurement '" + name + "'");
}

long MeasurementScenario::event_count(int c) const {
    return pow_long(outcome_arity_, context_size(c));
}

long MeasurementScenario::total_event_count() const {
    long total = 0;
    for (int c = 0; c < context_count(); ++c)
        total += event_count(c);
    return total;
}

long MeasurementScenario::rank_outcomes(int c, const std::vector<Outcome>& outcomes) const {
    if (static_cast<int>(outcomes.size()) != context_size(c))
        throw input_error("outcome tuple length does not match context size");
    long r = 0;
    for (Outcome o : outcomes) {
        if (o >= outcome_arity_)
            throw input_error("outcome out of range");
        r = r * outcome_arity_ + o;
    }
    return r;
}

std::vector<Outcome> MeasurementScenario::unrank_outcomes(int c, long rank) const {
    const int k = context_size(c);
    std::vector<Outcome> out(k);
    for (int i = k - 1; i >= 0; --i) {
        out[i] = static_cast<Outcome>(rank % outcome_arity_);
        rank /= outcome_arity_;
    }
    return out;
}

FormalEvent ObservableEvent::as_formal(const MeasurementScenario& s) const {
    return FormalEvent{s.context(context), outcomes};
}

ObservableEvent CanonicalHiddenVariable::restrict_to_context(const MeasurementScenario& s,
                                                             int c) const {
    ObservableEvent e;
    e.context = c;
    for (int m : s.context(c))
        e.outcomes.push_back(outcomes.at(m));
    return e;
}

long Distribution::rank(const std::vector<Outcome>& out) const {
    long r = 0;
    for (Outcome o : out)
        r = r * outcome_arity + o;
    return r;
}

std::vector<Outcome> Distribution::unrank(long r) const {
    const int k = static_cast<int>(domain.size());
    std::vector<Outcome> out(k);
    for (int i = k - 1; i >= 0; --i) {
        out[i] = static_cast<Outcome>(r % outcome_arity);
        r /= outcome_arity;
    }
    return out;
}

FormalEvent coarse_grain(const FormalEvent& e, const std::vector<int>& sub_domain) {
    std::vector<int> sub = sub_domain;
    std::sort(sub.begin(), sub.end());
    if (!is_subset(sub, e.domain))
        throw input_error("coarse-graining domain is not a subset of the event's domain");
    FormalEvent result;
    result.domain = sub;
    result.outcomes.reserve(sub.size());
    for (int m : sub) {
        auto it = std::lower_bound(e.domain.begin(), e.domain.end(), m);
        result.outcomes.push_back(e.outcomes[it - e.domain.begin()]);
    }
    return result;
}

Distribution marginalize(const Distribution& p, const std::vector<int>& sub_domain) {
    std::vector<int> sub = sub_domain;
    std::sort(sub.begin(), sub.end());
    if (!is_subset(sub, p.domain))
        throw input_error("marginalization domain is not a subset of the distribution's domain");

    const int d = p.outcome_arity;
    Distribution out;
    out.domain = sub;
    out.outcome_arity = d;
    long size = 1;
    for (size_t i = 0; i < sub.size(); ++i)
        size *= d;
    out.probs.assign(size, Rational(0));

    // positions of sub inside p.domain
    std::vector<int> pos;
    pos.reserve(sub.size());
    for (int m : sub) {
        auto it = std::lower_bound(p.domain.begin(), p.domain.end(), m);
        pos.push_back(static_cast<int>(it - p.domain.begin()));
    }

    const int k = static_cast<int>(p.domain.size());
    std::vector<Outcome> tuple(k, 0);
    for (long r = 0; r < static_cast<long>(p.probs.size()); ++r) {
        long rr = r;
        for (int i = k - 1; i >= 0; --i) {
            tuple[i] = static_cast<Outcome>(rr % d);
            rr /= d;
        }
        long sub_rank = 0;
        for (int i : pos)
            sub_rank = sub_rank * d + tuple[i];
        out.probs[sub_rank] += p.probs[r];
    }
    return out;
}

EmpiricalModel::EmpiricalModel(MeasurementScenario scenario,
                               std::vector<std::vector<Rational>> tables)
    : scenario_(std::move(scenario)), tables_(std::move(tables)) {
    if (static_cast<int>(tables_.size()) != scenario_.context_count())
        throw input_error("model must supply exactly one table per context");
    for (int c = 0; c < scenario_.context_count(); ++c) {
        const auto& t = tables_[c];
        if (static_cast<long>(t.size()) != scenario_.event_count(c))
            throw input_error("table for context " + std::to_string(c) + " has wrong size");
        Rational sum(0);
        for (const Rational& q : t) {
            if (q < 0 || q > 1)
                throw input_error("probability outside [0,1] in context " + std::to_string(c));
            sum += q;
        }
        if (sum != 1)
            throw input_error("table for context " + std::to_string(c) +
                              " sums to " + format_rational(sum) + ", not 1");
    }
}

const Rational& EmpiricalModel::probability(int context, long event_rank) const {
    return tables_.at(context).at(event_rank);
}

const Rational& EmpiricalModel::probability(const ObservableEvent& e) const {
    return tables_.at(e.context).at(scenario_.rank_outcomes(e.context, e.outcomes));
}

Distribution EmpiricalModel::context_distribution(int c) const {
    Distribution d;
    d.domain = scenario_.context(c);
    d.outcome_arity = scenario_.outcome_arity();
    d.probs = tables_.at(c);
    return d;
}

NonsignallingReport is_nonsignalling(const EmpiricalModel& model) {
    const auto& s = model.scenario();
    for (int c1 = 0; c1 < s.context_count(); ++c1) {
        for (int c2 = c1 + 1; c2 < s.context_count(); ++c2) {
            std::vector<int> shared;
            std::set_intersection(s.context(c1).begin(), s.context(c1).end(),
                                  s.context(c2).begin(), s.context(c2).end(),
                                  std::back_inserter(shared));
            if (shared.empty())
                continue;
            Distribution m1 = marginalize(model.context_distribution(c1), shared);
            Distribution m2 = marginalize(model.context_distribution(c2), shared);
            if (m1.probs != m2.probs)
                return {false, std::make_pair(c1, c2)};
        }
    }
    return {true, std::nullopt};
}

EmpiricalModel induced_model_of_hidden_variable(const CanonicalHiddenVariable& lambda,
                                                const MeasurementScenario& s) {
    if (static_cast<int>(lambda.outcomes.size()) != s.measurement_count())
        throw input_error("hidden variable must assign an outcome to every measurement");
    for (Outcome o : lambda.outcomes) {
        if (o >= s.outcome_arity())
            throw input_error("hidden variable outcome out of range");
    }
    std::vector<std::vector<Rational>> tables;
    tables.reserve(s.context_count());
    for (int c = 0; c < s.context_count(); ++c) {
        std::vector<Rational> t(s.event_count(c), Rational(0));
        ObservableEvent e = lambda.restrict_to_context(s, c);
        t[s.rank_outcomes(c, e.outcomes)] = 1;
        tables.push_back(std::move(t));
    }
    return EmpiricalModel(s, std::move(tables));
}

MeasurementScenario sample_scenario(std::mt19937& rng, int max_measurements, int max_contexts,
                                    int outcome_arity) {
    std::uniform_int_distribution<int> mdist(std::min(2, max_measurements), max_measurements);
    const int m = mdist(rng);
    std::vector<std::string> names;
    for (int i = 0; i < m; ++i)
        names.push_back("m" + std::to_string(i));

    std::uniform_int_distribution<int> cdist(1, max_contexts);
    const int want = cdist(rng);
    std::vector<std::vector<int>> drawn;
    std::bernoulli_distribution member(0.5);
    for (int c = 0; c < want; ++c) {
        std::vector<int> ctx;
        for (int i = 0; i < m; ++i) {
            if (member(rng))
                ctx.push_back(i);
        }
        if (ctx.empty())
            ctx.push_back(std::uniform_int_distribution<int>(0, m - 1)(rng));
        drawn.push_back(std::move(ctx));
    }
    // antichain reduction: drop contexts contained in another (keeping the
    // first of any duplicate pair)
    std::vector<std::vector<int>> kept;
    for (size_t i = 0; i < drawn.size(); ++i) {
        bool dominated = false;
        for (size_t j = 0; j < drawn.size() && !dominated; ++j) {
            if (i == j)
                continue;
            const bool subset = std::includes(drawn[j].begin(), drawn[j].end(), drawn[i].begin(),
                                              drawn[i].end());
            if (subset && (drawn[i].size() < drawn[j].size() || j < i))
                dominated = true;
        }
        if (!dominated)
            kept.push_back(drawn[i]);
    }
    std::vector<bool> covered(m, false);
    for (const auto& ctx : kept) {
        for (int x : ctx)
            covered[x] = true;
    }
    for (int i = 0; i < m; ++i) {
        if (!covered[i])
            kept.push_back({i});
    }
    return MeasurementScenario::make_indexed(std::move(names), std::move(kept), outcome_arity);
}

CanonicalHiddenVariable sample_hidden_variable(std::mt19937& rng, const MeasurementScenario& s) {
    CanonicalHiddenVariable lambda;
    std::uniform_int_distribution<int> odist(0, s.outcome_arity() - 1);
    for (int i = 0; i < s.measurement_count(); ++i)
        lambda.outcomes.push_back(static_cast<Outcome>(odist(rng)));
    return lambda;
}

EmpiricalModel mix_models(const std::vector<std::pair<Rational, EmpiricalModel>>& parts) {
    if (parts.empty())
        throw input_error("cannot mix an empty family of models");
    const auto& s = parts.front().second.scenario();
    Rational total(0);
    for (const auto& [w, m] : parts) {
        if (w < 0)
            throw input_error("negative mixture weight");
        if (!(m.scenario() == s))
            throw input_error("mixture components live on different scenarios");
        total += w;
    }
    if (total != 1)
        throw input_error("mixture weights sum to " + format_rational(total) + ", not 1");

    std::vector<std::vector<Rational>> tables;
    for (int c = 0; c < s.context_count(); ++c) {
        std::vector<Rational> t(s.event_count(c), Rational(0));
        for (const auto& [w, m] : parts) {
            for (long r = 0; r < static_cast<long>(t.size()); ++r)
                t[r] += w * m.tables()[c][r];
        }
        tables.push_back(std::move(t));
    }
    return EmpiricalModel(s, std::move(tables));
}

}  // namespace ctxkit
