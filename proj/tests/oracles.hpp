#pragma once

// Independent test oracles: brute-force enumerations kept deliberately free
// of the solver code paths they check, plus seeded random generators.

#include <algorithm>
#include <random>
#include <vector>

#include "ctxkit/bitgraph.hpp"
#include "ctxkit/rational.hpp"
#include "ctxkit/scenario.hpp"

namespace oracles {

/// Maximum independent set by enumeration of all 2^n subsets. n <= 24.
inline int brute_force_mis(const ctxkit::BitGraph& g) {
    const int n = g.vertex_count();
    std::vector<std::uint32_t> adj(n, 0);
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            if (v != u && g.adjacent(u, v))
                adj[u] |= 1u << v;
        }
    }
    int best = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        bool independent = true;
        for (int v = 0; v < n && independent; ++v) {
            if ((mask >> v) & 1)
                independent = (adj[v] & mask) == 0;
        }
        if (independent)
            best = std::max(best, __builtin_popcount(mask));
    }
    return best;
}

/// Weighted variant of the same enumeration.
inline ctxkit::Rational brute_force_weighted_mis(const ctxkit::BitGraph& g,
                                                 const std::vector<ctxkit::Rational>& w) {
    const int n = g.vertex_count();
    std::vector<std::uint32_t> adj(n, 0);
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            if (v != u && g.adjacent(u, v))
                adj[u] |= 1u << v;
        }
    }
    ctxkit::Rational best(0);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        bool independent = true;
        ctxkit::Rational weight(0);
        for (int v = 0; v < n && independent; ++v) {
            if ((mask >> v) & 1) {
                independent = (adj[v] & mask) == 0;
                weight += w[v];
            }
        }
        if (independent && weight > best)
            best = weight;
    }
    return best;
}

/// Largest independent set containing `v`, by enumeration.
inline int brute_force_independence_degree(const ctxkit::BitGraph& g, int v) {
    const int n = g.vertex_count();
    std::vector<std::uint32_t> adj(n, 0);
    for (int u = 0; u < n; ++u) {
        for (int w = 0; w < n; ++w) {
            if (w != u && g.adjacent(u, w))
                adj[u] |= 1u << w;
        }
    }
    int best = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (!((mask >> v) & 1))
            continue;
        bool independent = true;
        for (int u = 0; u < n && independent; ++u) {
            if ((mask >> u) & 1)
                independent = (adj[u] & mask) == 0;
        }
        if (independent)
            best = std::max(best, __builtin_popcount(mask));
    }
    return best;
}

inline ctxkit::BitGraph random_graph(std::mt19937& rng, int n, double edge_probability) {
    ctxkit::BitGraph g(n);
    std::bernoulli_distribution coin(edge_probability);
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (coin(rng))
                g.add_edge(u, v);
        }
    }
    return g;
}

/// A random valid scenario: contexts are drawn as random subsets, reduced to
/// an antichain, with uncovered measurements patched in as singletons.
inline ctxkit::MeasurementScenario random_scenario(std::mt19937& rng, int max_measurements = 5,
                                                   int max_contexts = 5, int arity = 2) {
    std::uniform_int_distribution<int> mdist(2, max_measurements);
    const int m = mdist(rng);
    std::vector<std::string> names;
    for (int i = 0; i < m; ++i)
        names.push_back("m" + std::to_string(i));

    std::uniform_int_distribution<int> cdist(1, max_contexts);
    const int want = cdist(rng);
    std::vector<std::vector<int>> contexts;
    std::bernoulli_distribution member(0.5);
    for (int c = 0; c < want; ++c) {
        std::vector<int> ctx;
        for (int i = 0; i < m; ++i) {
            if (member(rng))
                ctx.push_back(i);
        }
        if (ctx.empty())
            ctx.push_back(std::uniform_int_distribution<int>(0, m - 1)(rng));
        contexts.push_back(std::move(ctx));
    }
    // antichain reduction: drop contexts contained in another
    std::vector<std::vector<int>> kept;
    for (size_t i = 0; i < contexts.size(); ++i) {
        bool dominated = false;
        for (size_t j = 0; j < contexts.size() && !dominated; ++j) {
            if (i == j)
                continue;
            const bool subset = std::includes(contexts[j].begin(), contexts[j].end(),
                                              contexts[i].begin(), contexts[i].end());
            if (subset && (contexts[i].size() < contexts[j].size() || j < i))
                dominated = true;
        }
        if (!dominated)
            kept.push_back(contexts[i]);
    }
    // cover every measurement
    std::vector<bool> covered(m, false);
    for (const auto& ctx : kept) {
        for (int x : ctx)
            covered[x] = true;
    }
    for (int i = 0; i < m; ++i) {
        if (!covered[i])
            kept.push_back({i});
    }
    return ctxkit::MeasurementScenario::make_indexed(std::move(names), std::move(kept), arity);
}

/// Random deterministic global assignment.
inline ctxkit::CanonicalHiddenVariable random_hidden_variable(std::mt19937& rng,
                                                              const ctxkit::MeasurementScenario& s) {
    ctxkit::CanonicalHiddenVariable lambda;
    std::uniform_int_distribution<int> odist(0, s.outcome_arity() - 1);
    for (int i = 0; i < s.measurement_count(); ++i)
        lambda.outcomes.push_back(static_cast<ctxkit::Outcome>(odist(rng)));
    return lambda;
}

}  // namespace oracles
