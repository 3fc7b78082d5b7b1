#include "ctxkit/protocols.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ctxkit/bitgraph.hpp"
#include "ctxkit/errors.hpp"
#include "ctxkit/exclusivity.hpp"

namespace ctxkit {

namespace {

std::string scenario_key(const MeasurementScenario& s) {
    std::vector<std::string> parts;
    for (int c = 0; c < s.context_count(); ++c) {
        std::string ctx;
        for (int m : s.context(c))
            ctx += s.measurement_name(m) + ",";
        parts.push_back(ctx);
    }
    std::sort(parts.begin(), parts.end());
    std::string key;
    for (const auto& p : parts)
        key += p + ";";
    return key;
}

}  // namespace

MeasurementScenario induced_scenario(const MeasurementScenario& s, const std::string& name) {
    const int a = s.measurement_index(name);
    std::set<int> kept;
    std::vector<std::vector<int>> contexts;
    for (int c = 0; c < s.context_count(); ++c) {
        const auto& ctx = s.context(c);
        if (std::find(ctx.begin(), ctx.end(), a) == ctx.end())
            continue;
        std::vector<int> reduced;
        for (int m : ctx) {
            if (m != a) {
                reduced.push_back(m);
                kept.insert(m);
            }
        }
        if (!reduced.empty())
            contexts.push_back(std::move(reduced));
    }
    // Reindex onto the surviving measurements, preserving name identity.
    std::vector<std::string> names;
    std::map<int, int> remap;
    for (int m : kept) {
        remap[m] = static_cast<int>(names.size());
        names.push_back(s.measurement_name(m));
    }
    for (auto& ctx : contexts) {
        for (int& m : ctx)
            m = remap.at(m);
    }
    return MeasurementScenario::make_indexed(std::move(names), std::move(contexts),
                                             s.outcome_arity());
}

namespace {

mpz_class count_protocols_memo(const MeasurementScenario& s,
                               std::map<std::string, mpz_class>& memo) {
    if (s.empty())
        return 1;
    const std::string key = scenario_key(s);
    auto it = memo.find(key);
    if (it != memo.end())
        return it->second;
    mpz_class total = 0;
    for (int m = 0; m < s.measurement_count(); ++m) {
        const mpz_class sub = count_protocols_memo(induced_scenario(s, s.measurement_name(m)),
                                                   memo);
        mpz_class power;
        mpz_pow_ui(power.get_mpz_t(), sub.get_mpz_t(), s.outcome_arity());
        total += power;
    }
    memo.emplace(key, total);
    return total;
}

using ProtocolList = std::vector<ProtocolPtr>;

const ProtocolList& enumerate_memo(const MeasurementScenario& s,
                                   std::map<std::string, ProtocolList>& memo) {
    const std::string key = scenario_key(s);
    auto it = memo.find(key);
    if (it != memo.end())
        return it->second;
    ProtocolList list;
    if (s.empty()) {
        list.push_back(std::make_shared<MeasurementProtocol>());
    } else {
        const int d = s.outcome_arity();
        for (int m = 0; m < s.measurement_count(); ++m) {
            const std::string& name = s.measurement_name(m);
            const ProtocolList& subs = enumerate_memo(induced_scenario(s, name), memo);
            // every function f: O -> sub-protocols
            std::vector<size_t> choice(d, 0);
            for (;;) {
                auto node = std::make_shared<MeasurementProtocol>();
                node->first = name;
                for (int o = 0; o < d; ++o)
                    node->continuations.push_back(subs[choice[o]]);
                list.push_back(std::move(node));
                int pos = d - 1;
                while (pos >= 0 && ++choice[pos] == subs.size()) {
                    choice[pos] = 0;
                    --pos;
                }
                if (pos < 0)
                    break;
            }
        }
    }
    return memo.emplace(key, std::move(list)).first->second;
}

}  // namespace

mpz_class count_protocols(const MeasurementScenario& s) {
    std::map<std::string, mpz_class> memo;
    return count_protocols_memo(s, memo);
}

std::vector<ProtocolPtr> enumerate_protocols(const MeasurementScenario& s, long cap) {
    const mpz_class count = count_protocols(s);
    if (count > cap)
        throw cap_error("scenario admits " + count.get_str() +
                        " measurement protocols, above the cap of " + std::to_string(cap));
    std::map<std::string, ProtocolList> memo;
    return enumerate_memo(s, memo);
}

std::vector<ProtocolOutcome> protocol_outcomes(const MeasurementScenario& ambient,
                                               const ProtocolPtr& protocol) {
    const int d = ambient.outcome_arity();

    struct Partial {
        std::vector<std::pair<std::string, Outcome>> path;
    };
    std::vector<Partial> done;
    auto walk = [&](auto&& self, const ProtocolPtr& node, Partial partial) -> void {
        if (node->is_empty()) {
            done.push_back(std::move(partial));
            return;
        }
        for (int o = 0; o < d; ++o) {
            Partial next = partial;
            next.path.emplace_back(node->first, static_cast<Outcome>(o));
            self(self, node->continuations.at(o), std::move(next));
        }
    };
    walk(walk, protocol, Partial{});

    std::vector<ProtocolOutcome> outcomes;
    outcomes.reserve(done.size());
    for (auto& partial : done) {
        if (partial.path.empty()) {
            // Base case: the empty protocol on the empty scenario has one
            // outcome and no event to report.
            ProtocolOutcome alpha;
            alpha.event.context = -1;
            outcomes.push_back(std::move(alpha));
            continue;
        }
        // The queried set must be exactly one context of the ambient scenario.
        std::vector<int> domain;
        for (const auto& [name, o] : partial.path)
            domain.push_back(ambient.measurement_index(name));
        std::vector<int> sorted = domain;
        std::sort(sorted.begin(), sorted.end());
        int context = -1;
        for (int c = 0; c < ambient.context_count(); ++c) {
            if (ambient.context(c) == sorted) {
                context = c;
                break;
            }
        }
        if (context < 0)
            throw std::logic_error("protocol outcome does not land on a context");
        ObservableEvent e;
        e.context = context;
        e.outcomes.resize(sorted.size());
        for (const auto& [name, o] : partial.path) {
            const int m = ambient.measurement_index(name);
            const auto it = std::lower_bound(sorted.begin(), sorted.end(), m);
            e.outcomes[it - sorted.begin()] = o;
        }
        outcomes.push_back(ProtocolOutcome{std::move(partial.path), std::move(e)});
    }
    return outcomes;
}

namespace {

std::vector<long> context_offsets(const MeasurementScenario& s) {
    std::vector<long> first(s.context_count() + 1, 0);
    for (int c = 0; c < s.context_count(); ++c)
        first[c + 1] = first[c] + s.event_count(c);
    return first;
}

}  // namespace

ContextualityHypergraph contextuality_hypergraph(const MeasurementScenario& s, long cap) {
    ContextualityHypergraph h;
    for (int c = 0; c < s.context_count(); ++c) {
        for (long r = 0; r < s.event_count(c); ++r)
            h.vertices.push_back(ObservableEvent{c, s.unrank_outcomes(c, r)});
    }
    const auto offsets = context_offsets(s);
    std::set<std::vector<int>> edges;
    for (const ProtocolPtr& t : enumerate_protocols(s, cap)) {
        std::vector<int> edge;
        for (const ProtocolOutcome& alpha : protocol_outcomes(s, t)) {
            const long rank = s.rank_outcomes(alpha.event.context, alpha.event.outcomes);
            edge.push_back(static_cast<int>(offsets[alpha.event.context] + rank));
        }
        std::sort(edge.begin(), edge.end());
        edge.erase(std::unique(edge.begin(), edge.end()), edge.end());
        edges.insert(std::move(edge));
    }
    h.hyperedges.assign(edges.begin(), edges.end());
    return h;
}

Theorem4Report verify_theorem4(const MeasurementScenario& s, long cap) {
    Theorem4Report report;
    report.protocol_count = count_protocols(s).get_si();

    const ContextualityHypergraph h = contextuality_hypergraph(s, cap);
    report.hyperedge_count = static_cast<long>(h.hyperedges.size());
    const int n = static_cast<int>(h.vertices.size());

    // Complement of the non-orthogonality graph: distinct events adjacent iff
    // they share a hyperedge.
    BitGraph cohyperedge(n);
    for (const auto& edge : h.hyperedges) {
        for (size_t i = 0; i < edge.size(); ++i) {
            for (size_t j = i + 1; j < edge.size(); ++j) {
                if (!cohyperedge.adjacent(edge[i], edge[j]))
                    cohyperedge.add_edge(edge[i], edge[j]);
            }
        }
    }

    const ExclusivityGraph ex = exclusivity_graph(s);
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (ex.adjacency.adjacent(u, v) != cohyperedge.adjacent(u, v)) {
                report.isomorphic = false;
                report.counterexample = std::make_pair(u, v);
                return report;
            }
        }
    }
    report.isomorphic = true;
    return report;
}

}  // namespace ctxkit
