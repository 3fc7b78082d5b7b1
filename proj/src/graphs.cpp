#include "ctxkit/graphs.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <thread>

#include "ctxkit/errors.hpp"
#include "ctxkit/simplex.hpp"

namespace ctxkit {

namespace {

void check_cap(const BitGraph& g, const MisOptions& opt) {
    if (g.vertex_count() > opt.vertex_cap)
        throw cap_error("graph has " + std::to_string(g.vertex_count()) +
                        " vertices, above the solver cap of " + std::to_string(opt.vertex_cap) +
                        " (raise --cap-vertices to override)");
}

/// Branch-and-bound maximum independent set. The bound at each node is a
/// greedy clique cover of the candidate set: an independent set meets each
/// clique at most once, so the number of cliques covering the candidates
/// bounds what the node can still add.
class MisSolver {
public:
    MisSolver(const BitGraph& g, const std::vector<int>* partition)
        : g_(g), partition_(partition) {}

    /// Maximum independent set inside `candidates` on top of `preset`
    /// already-chosen vertices. `seed` acts as an incumbent value (without a
    /// witness) for pruning; `stop_at` ends the search once the total
    /// incumbent (preset included) reaches it.
    MisResult solve(const VertexSet& candidates, int preset, int seed, int stop_at) {
        best_ = seed;
        best_set_.clear();
        have_witness_ = false;
        stopped_ = false;
        stop_inner_ = 0;
        if (stop_at > 0) {
            if (stop_at <= preset) {
                // The preset alone meets the threshold; nothing to search.
                return MisResult{Rational(preset), {}, false};
            }
            stop_inner_ = stop_at - preset;
        }
        current_.clear();
        if (BitGraph::popcount(candidates) > 0)
            expand(candidates, true);
        MisResult r;
        r.value = Rational(best_ + preset);
        r.witness = best_set_;
        r.exact = !stopped_;
        return r;
    }

    bool found_witness() const { return have_witness_; }

private:
    void expand(const VertexSet& candidates, bool root) {
        if (stopped_)
            return;
        auto verts = g_.set_to_vertices(candidates);
        if (root && partition_ != nullptr) {
            // Exclusivity-graph root: group by context so every context
            // clique packs into a single cover class, giving the |C| bound.
            std::stable_sort(verts.begin(), verts.end(),
                             [&](int a, int b) { return (*partition_)[a] < (*partition_)[b]; });
        }
        // Greedy clique cover. common[q] holds the common neighborhood of
        // clique q's members, so "v may join q" is one bit test.
        std::vector<VertexSet> common;
        std::vector<int> clique_of(verts.size());
        for (size_t i = 0; i < verts.size(); ++i) {
            const int v = verts[i];
            size_t q = 0;
            for (; q < common.size(); ++q) {
                if (BitGraph::test_bit(common[q], v))
                    break;
            }
            if (q == common.size())
                common.push_back(g_.full_set());
            g_.intersect_neighbors(common[q], v);
            clique_of[i] = static_cast<int>(q);
        }
        // Sort candidates by cover class: the first i vertices lie in at most
        // clique_of[i]+1 cliques, so any independent subset of them has size
        // at most clique_of[i]+1.
        std::vector<int> idx(verts.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(),
                         [&](int a, int b) { return clique_of[a] < clique_of[b]; });

        std::vector<int> ordered(verts.size());
        std::vector<int> bound(verts.size());
        for (size_t i = 0; i < idx.size(); ++i) {
            ordered[i] = verts[idx[i]];
            bound[i] = clique_of[idx[i]] + 1;
        }

        VertexSet remaining = candidates;
        const int size = static_cast<int>(current_.size());
        for (int i = static_cast<int>(ordered.size()) - 1; i >= 0; --i) {
            if (stopped_)
                return;
            if (size + bound[i] <= best_)
                return;  // the whole remaining prefix cannot beat the incumbent
            const int v = ordered[i];
            BitGraph::clear_bit(remaining, v);
            VertexSet next = remaining;
            g_.subtract_neighbors(next, v);
            current_.push_back(v);
            if (BitGraph::popcount(next) == 0) {
                if (static_cast<int>(current_.size()) > best_) {
                    best_ = static_cast<int>(current_.size());
                    best_set_ = current_;
                    std::sort(best_set_.begin(), best_set_.end());
                    have_witness_ = true;
                    if (stop_inner_ > 0 && best_ >= stop_inner_)
                        stopped_ = true;
                }
            } else {
                expand(next, false);
            }
            current_.pop_back();
        }
    }

    const BitGraph& g_;
    const std::vector<int>* partition_;
    int best_ = 0;
    bool have_witness_ = false;
    bool stopped_ = false;
    int stop_inner_ = 0;
    std::vector<int> best_set_;
    std::vector<int> current_;
};

/// Is there an independent set of at least k vertices inside `candidates`?
/// Seeds the incumbent with k-1, so branches that cannot reach k are pruned
/// immediately; "no" answers are far cheaper than full optimization.
bool independent_set_exists(const BitGraph& g, const VertexSet& candidates, int k,
                            std::vector<int>* witness_out) {
    if (k <= 0)
        return true;
    MisSolver solver(g, nullptr);
    MisResult r = solver.solve(candidates, 0, k - 1, k);
    if (solver.found_witness() && static_cast<int>(r.witness.size()) >= k) {
        if (witness_out != nullptr)
            *witness_out = r.witness;
        return true;
    }
    return false;
}

/// Lexicographically smallest independent set of the given (optimal) size,
/// built by a chain of decision solves.
std::vector<int> lex_min_witness(const BitGraph& g, int alpha) {
    std::vector<int> included;
    VertexSet pool = g.full_set();
    for (int v = 0; v < g.vertex_count() && static_cast<int>(included.size()) < alpha; ++v) {
        if (!BitGraph::test_bit(pool, v))
            continue;
        VertexSet next = pool;
        BitGraph::clear_bit(next, v);
        g.subtract_neighbors(next, v);
        const int need = alpha - static_cast<int>(included.size()) - 1;
        if (need == 0 || independent_set_exists(g, next, need, nullptr)) {
            included.push_back(v);
            pool = next;
        } else {
            BitGraph::clear_bit(pool, v);
        }
    }
    return included;
}

/// Greedy clique cover bound weighted by the heaviest member of each clique.
Rational weighted_cover_bound(const BitGraph& g, const VertexSet& candidates,
                              const std::vector<Rational>& weights) {
    std::vector<VertexSet> common;
    std::vector<Rational> heaviest;
    for (int v : g.set_to_vertices(candidates)) {
        size_t q = 0;
        for (; q < common.size(); ++q) {
            if (BitGraph::test_bit(common[q], v))
                break;
        }
        if (q == common.size()) {
            common.push_back(g.full_set());
            heaviest.emplace_back(0);
        }
        g.intersect_neighbors(common[q], v);
        if (weights[v] > heaviest[q])
            heaviest[q] = weights[v];
    }
    return std::accumulate(heaviest.begin(), heaviest.end(), Rational(0));
}

class WeightedMisSolver {
public:
    WeightedMisSolver(const BitGraph& g, const std::vector<Rational>& weights)
        : g_(g), weights_(weights) {}

    MisResult solve(const VertexSet& candidates) {
        best_ = 0;
        best_set_.clear();
        current_.clear();
        current_weight_ = 0;
        expand(candidates);
        return MisResult{best_, best_set_, true};
    }

private:
    void expand(const VertexSet& candidates) {
        auto verts = g_.set_to_vertices(candidates);
        if (verts.empty()) {
            if (current_weight_ > best_) {
                best_ = current_weight_;
                best_set_ = current_;
            }
            return;
        }
        if (current_weight_ + weighted_cover_bound(g_, candidates, weights_) <= best_)
            return;
        const int v = verts.front();
        // include v
        VertexSet next = candidates;
        BitGraph::clear_bit(next, v);
        g_.subtract_neighbors(next, v);
        current_.push_back(v);
        current_weight_ += weights_[v];
        expand(next);
        current_.pop_back();
        current_weight_ -= weights_[v];
        // exclude v
        VertexSet rest = candidates;
        BitGraph::clear_bit(rest, v);
        expand(rest);
    }

    const BitGraph& g_;
    const std::vector<Rational>& weights_;
    Rational best_;
    Rational current_weight_;
    std::vector<int> best_set_;
    std::vector<int> current_;
};

int scan_thread_count(int threads) {
    if (threads > 0)
        return threads;
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

/// Scan order for per-vertex degree solves: ascending non-neighborhood size.
std::vector<int> scan_order(const BitGraph& g) {
    std::vector<int> order(g.vertex_count());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        const int na = g.vertex_count() - g.degree(a);
        const int nb = g.vertex_count() - g.degree(b);
        if (na != nb)
            return na < nb;
        return a < b;
    });
    return order;
}

}  // namespace

MisResult independence_number(const BitGraph& g, const MisOptions& opt) {
    check_cap(g, opt);
    if (g.vertex_count() == 0)
        return MisResult{Rational(0), {}, true};
    MisSolver solver(g, opt.clique_partition);
    MisResult r = solver.solve(g.full_set(), 0, 0, opt.stop_at);
    if (r.exact && opt.stop_at == 0 && g.vertex_count() <= opt.lex_min_cap) {
        const int alpha = static_cast<int>(r.value.get_num().get_si());
        r.witness = lex_min_witness(g, alpha);
    }
    return r;
}

MisResult independence_number(const BitGraph& g, const std::vector<Rational>& weights,
                              const MisOptions& opt) {
    check_cap(g, opt);
    if (static_cast<int>(weights.size()) != g.vertex_count())
        throw input_error("weight vector length does not match vertex count");
    for (const Rational& w : weights) {
        if (w < 0)
            throw input_error("negative vertex weight");
    }
    // Zero-weight vertices never help; drop them and solve the rest.
    std::vector<int> keep;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (weights[v] != 0)
            keep.push_back(v);
    }
    if (keep.empty())
        return MisResult{Rational(0), {}, true};

    BitGraph sub = g.induced(keep);
    bool uniform = true;
    for (int v : keep) {
        if (weights[v] != weights[keep.front()])
            uniform = false;
    }
    MisResult inner;
    if (uniform) {
        MisOptions sub_opt = opt;
        sub_opt.clique_partition = nullptr;
        sub_opt.stop_at = 0;
        inner = independence_number(sub, sub_opt);
        inner.value *= weights[keep.front()];
    } else {
        std::vector<Rational> sub_weights;
        sub_weights.reserve(keep.size());
        for (int v : keep)
            sub_weights.push_back(weights[v]);
        WeightedMisSolver solver(sub, sub_weights);
        inner = solver.solve(sub.full_set());
    }
    for (int& v : inner.witness)
        v = keep[v];
    std::sort(inner.witness.begin(), inner.witness.end());
    return inner;
}

MisResult independence_degree(const BitGraph& g, int v, const MisOptions& opt) {
    check_cap(g, opt);
    if (v < 0 || v >= g.vertex_count())
        throw input_error("independence degree of unknown vertex " + std::to_string(v));
    VertexSet candidates = g.full_set();
    BitGraph::clear_bit(candidates, v);
    g.subtract_neighbors(candidates, v);
    MisSolver solver(g, nullptr);
    MisResult r = solver.solve(candidates, 1, 0, opt.stop_at);
    r.witness.push_back(v);
    std::sort(r.witness.begin(), r.witness.end());
    return r;
}

MinIndependenceResult minimal_independence_number(const BitGraph& g, int threads,
                                                  const MisOptions& opt) {
    check_cap(g, opt);
    if (g.vertex_count() == 0)
        throw input_error("minimal independence number of an empty graph");

    struct Entry {
        int degree = 0;
        bool exact = false;
        std::vector<int> witness;
    };
    const auto order = scan_order(g);
    std::vector<Entry> entries(order.size());
    std::atomic<int> next{0};
    std::atomic<int> running_min{g.vertex_count() + 1};
    const int nthreads = std::min<int>(scan_thread_count(threads), g.vertex_count());

    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= static_cast<int>(order.size()))
                return;
            // Early-stop against the running minimum: a stopped solve proves
            // degree >= the snapshot, which can never attain a later minimum.
            MisOptions per = opt;
            per.stop_at = running_min.load();
            MisResult r = independence_degree(g, order[i], per);
            const int deg = static_cast<int>(r.value.get_num().get_si());
            entries[i] = Entry{deg, r.exact, std::move(r.witness)};
            if (r.exact) {
                int seen = running_min.load();
                while (deg < seen && !running_min.compare_exchange_weak(seen, deg)) {
                }
            }
        }
    };
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }

    int min_value = g.vertex_count() + 1;
    for (const Entry& e : entries) {
        if (e.exact && e.degree < min_value)
            min_value = e.degree;
    }
    // The witness is the first vertex in scan order attaining the minimum.
    // An early-stopped entry can still hide a degree equal to the minimum
    // (its snapshot may have been the final value already), so re-solve those
    // exactly until the first attaining vertex is pinned down.
    MinIndependenceResult result;
    result.value = min_value;
    for (size_t i = 0; i < entries.size(); ++i) {
        Entry& e = entries[i];
        if (!e.exact) {
            MisOptions per = opt;
            per.stop_at = min_value + 1;
            MisResult r = independence_degree(g, order[i], per);
            e.degree = static_cast<int>(r.value.get_num().get_si());
            e.exact = r.exact;
            e.witness = std::move(r.witness);
            if (e.exact && e.degree < min_value)
                throw std::logic_error("min-independence rescan found a smaller degree");
        }
        if (e.exact && e.degree == min_value) {
            result.witness_vertex = order[i];
            result.witness_set = e.witness;
            break;
        }
    }
    if (result.witness_vertex < 0)
        throw std::logic_error("min-independence scan lost its witness");
    return result;
}

std::optional<int> find_vertex_with_degree_below(const BitGraph& g, int threshold, int threads,
                                                 const MisOptions& opt) {
    check_cap(g, opt);
    if (g.vertex_count() == 0)
        return std::nullopt;
    const auto order = scan_order(g);
    std::atomic<int> next{0};
    std::atomic<int> found{-1};  // index into order[] of the earliest hit
    const int nthreads = std::min<int>(scan_thread_count(threads), g.vertex_count());

    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= static_cast<int>(order.size()))
                return;
            const int hit = found.load();
            if (hit >= 0 && hit < i)
                return;  // an earlier vertex already answered
            MisOptions per = opt;
            per.stop_at = threshold;  // only exactness below the threshold matters
            MisResult r = independence_degree(g, order[i], per);
            if (r.exact && r.value < threshold) {
                int seen = found.load();
                while ((seen < 0 || i < seen) && !found.compare_exchange_weak(seen, i)) {
                }
            }
        }
    };
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }
    const int hit = found.load();
    if (hit < 0)
        return std::nullopt;
    return order[hit];
}

namespace {

void bron_kerbosch(const BitGraph& g, VertexSet& r, VertexSet p, VertexSet x,
                   std::vector<std::vector<int>>& out) {
    if (BitGraph::popcount(p) == 0 && BitGraph::popcount(x) == 0) {
        out.push_back(g.set_to_vertices(r));
        return;
    }
    // pivot: vertex of P u X with the most neighbors in P
    int pivot = -1, most = -1;
    for (const VertexSet* s : {&p, &x}) {
        for (int u : g.set_to_vertices(*s)) {
            VertexSet tmp = p;
            g.intersect_neighbors(tmp, u);
            const int c = BitGraph::popcount(tmp);
            if (c > most) {
                most = c;
                pivot = u;
            }
        }
    }
    VertexSet ext = p;
    if (pivot >= 0)
        g.subtract_neighbors(ext, pivot);
    for (int v : g.set_to_vertices(ext)) {
        VertexSet p2 = p, x2 = x;
        g.intersect_neighbors(p2, v);
        g.intersect_neighbors(x2, v);
        BitGraph::set_bit(r, v);
        bron_kerbosch(g, r, std::move(p2), std::move(x2), out);
        BitGraph::clear_bit(r, v);
        BitGraph::clear_bit(p, v);
        BitGraph::set_bit(x, v);
    }
}

}  // namespace

std::vector<std::vector<int>> maximal_cliques(const BitGraph& g, const MisOptions& opt) {
    check_cap(g, opt);
    std::vector<std::vector<int>> out;
    if (g.vertex_count() == 0)
        return out;
    VertexSet r = g.empty_set();
    bron_kerbosch(g, r, g.full_set(), g.empty_set(), out);
    std::sort(out.begin(), out.end());
    return out;
}

Rational fractional_packing_number(const BitGraph& g, const std::vector<Rational>& weights,
                                   const MisOptions& opt) {
    check_cap(g, opt);
    if (static_cast<int>(weights.size()) != g.vertex_count())
        throw input_error("weight vector length does not match vertex count");
    if (g.vertex_count() == 0)
        return Rational(0);
    const auto cliques = maximal_cliques(g, opt);
    LinearProgram lp;
    lp.variable_count = g.vertex_count();
    lp.objective = weights;
    for (const auto& q : cliques) {
        LinearConstraint row;
        row.coefficients.assign(g.vertex_count(), Rational(0));
        for (int v : q)
            row.coefficients[v] = 1;
        row.relation = LinearConstraint::Relation::LessEq;
        row.rhs = 1;
        lp.constraints.push_back(std::move(row));
    }
    SimplexResult r = solve_lp(lp);
    if (r.status != SimplexResult::Status::Optimal)
        throw std::logic_error("packing LP must be feasible and bounded");
    return r.value;
}

}  // namespace ctxkit
