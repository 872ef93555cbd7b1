#include "bnsl/orient_constraint.hpp"

#include <algorithm>
#include <tuple>

#include "bnsl/info.hpp"
#include "bnsl/parallel.hpp"

namespace bnsl {

IndependenceFn g_test_independence(const Dataset& ds, double alpha, int max_cond) {
    return [&ds, alpha, max_cond](int x, int y, const std::vector<int>& s) {
        return ci_test(ds, x, y, s, alpha, max_cond).independent;
    };
}

IndependenceFn dsep_independence(const NetworkModel& model) {
    return [&model](int x, int y, const std::vector<int>& s) { return d_separated(model, x, y, s); };
}

namespace {

struct Triple {
    int a, c, d;  // a < d, both adjacent to c, a and d nonadjacent
};

enum class TripleVerdict { NotCollider, OrientStep2, OrientStep3, Unresolved };

// Walks k-subsets of `pool` (which is sorted ascending) in lexicographic
// order; returns false when predicate never returned true.
bool any_subset(const std::vector<int>& pool, int k,
                const std::function<bool(const std::vector<int>&)>& predicate) {
    int n = static_cast<int>(pool.size());
    if (k > n) return false;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    std::vector<int> subset(k);
    while (true) {
        for (int i = 0; i < k; ++i) subset[i] = pool[idx[i]];
        if (predicate(subset)) return true;
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return false;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

TripleVerdict judge_triple(const Triple& t, const std::vector<PcSet>& pc_sets,
                           const IndependenceFn& independent, int max_cond) {
    // Step 1: conditioning on the middle variable separates the endpoints.
    if (independent(t.a, t.d, {t.c})) return TripleVerdict::NotCollider;
    // Step 2: marginally independent but dependent given the middle.
    if (independent(t.a, t.d, {})) return TripleVerdict::OrientStep2;

    // Step 3: search each endpoint's PC set (middle and other endpoint
    // removed) for a set that separates the endpoints but stops doing so
    // once the middle variable joins it. Sizes stay one below max_cond so
    // the augmented test is always within the cap.
    auto pool_for = [&](int endpoint) {
        std::vector<int> pool;
        for (int v : pc_sets[endpoint].members)
            if (v != t.c && v != t.a && v != t.d) pool.push_back(v);
        std::sort(pool.begin(), pool.end());
        return pool;
    };
    for (int endpoint : {t.a, t.d}) {
        std::vector<int> pool = pool_for(endpoint);
        int max_size = std::min<int>(static_cast<int>(pool.size()), max_cond - 1);
        for (int k = 1; k <= max_size; ++k) {
            bool found = any_subset(pool, k, [&](const std::vector<int>& s) {
                if (!independent(t.a, t.d, s)) return false;
                std::vector<int> with_c = s;
                with_c.push_back(t.c);
                return !independent(t.a, t.d, with_c);
            });
            if (found) return TripleVerdict::OrientStep3;
        }
    }
    return TripleVerdict::Unresolved;
}

}  // namespace

Pdag find_vstructures(const Skeleton& sk, const std::vector<PcSet>& pc_sets,
                      const IndependenceFn& independent, int max_cond, int threads,
                      VstructureStats* stats) {
    Pdag pdag(sk.n_vars);
    for (auto [i, j] : sk.edges) pdag.add_undirected(i, j);

    std::vector<std::vector<int>> nbrs = sk.neighbor_lists();
    std::vector<Triple> triples;
    for (int c = 0; c < sk.n_vars; ++c) {
        const auto& around = nbrs[c];
        for (std::size_t u = 0; u < around.size(); ++u) {
            for (std::size_t w = u + 1; w < around.size(); ++w) {
                int a = around[u], d = around[w];
                if (!sk.has_edge(a, d)) triples.push_back({a, c, d});
            }
        }
    }
    std::sort(triples.begin(), triples.end(), [](const Triple& x, const Triple& y) {
        return std::tie(x.a, x.c, x.d) < std::tie(y.a, y.c, y.d);
    });

    std::vector<TripleVerdict> verdicts(triples.size(), TripleVerdict::Unresolved);
    parallel_for(triples.size(), threads, [&](std::size_t i) {
        verdicts[i] = judge_triple(triples[i], pc_sets, independent, max_cond);
    });

    VstructureStats local;
    local.triples = static_cast<int64_t>(triples.size());
    for (std::size_t i = 0; i < triples.size(); ++i) {
        const Triple& t = triples[i];
        switch (verdicts[i]) {
            case TripleVerdict::NotCollider:
                ++local.rejected_step1;
                break;
            case TripleVerdict::Unresolved:
                ++local.unresolved;
                break;
            case TripleVerdict::OrientStep2:
            case TripleVerdict::OrientStep3: {
                if (verdicts[i] == TripleVerdict::OrientStep2)
                    ++local.oriented_step2;
                else
                    ++local.oriented_step3;
                // Commit both arrowheads; an opposite arrowhead committed by
                // an earlier triple wins and the clash is counted.
                for (int tail : {t.a, t.d}) {
                    if (pdag.has_directed(t.c, tail)) {
                        ++local.conflicts;
                    } else {
                        pdag.orient(tail, t.c);  // no-op when already tail->c
                    }
                }
                break;
            }
        }
    }
    if (stats) *stats = local;
    return pdag;
}

Pdag find_vstructures(const Skeleton& sk, const Dataset& ds, const std::vector<PcSet>& pc_sets,
                      double alpha, int max_cond, int threads, VstructureStats* stats) {
    return find_vstructures(sk, pc_sets, g_test_independence(ds, alpha, max_cond), max_cond,
                            threads, stats);
}

// ---------------------------------------------------------------------------
// Meek rules.
// ---------------------------------------------------------------------------

namespace {

// R1: some w -> u with w, v nonadjacent forces u -> v.
bool rule1_fires(const Pdag& p, int u, int v) {
    for (auto [w, to] : p.directed_edges)
        if (to == u && w != v && !p.adjacent(w, v)) return true;
    return false;
}

// R2: a directed path u -> w -> v alongside the undirected u - v.
bool rule2_fires(const Pdag& p, int u, int v) {
    for (auto [from, w] : p.directed_edges) {
        if (from != u) continue;
        if (p.has_directed(w, v)) return true;
    }
    return false;
}

// R3: u - w1, u - w2, w1 -> v, w2 -> v with w1, w2 nonadjacent.
bool rule3_fires(const Pdag& p, int u, int v) {
    std::vector<int> spokes;
    for (int w = 0; w < p.n_vars; ++w)
        if (w != v && p.has_undirected(u, w) && p.has_directed(w, v)) spokes.push_back(w);
    for (std::size_t i = 0; i < spokes.size(); ++i)
        for (std::size_t j = i + 1; j < spokes.size(); ++j)
            if (!p.adjacent(spokes[i], spokes[j])) return true;
    return false;
}

// R4: chains u - w and w -> z -> v with w, v nonadjacent and u, z adjacent.
bool rule4_fires(const Pdag& p, int u, int v) {
    for (int w = 0; w < p.n_vars; ++w) {
        if (w == v || !p.has_undirected(u, w) || p.adjacent(w, v)) continue;
        for (auto [from, z] : p.directed_edges) {
            if (from != w || z == u || z == v) continue;
            if (p.has_directed(z, v) && p.adjacent(u, z)) return true;
        }
    }
    return false;
}

}  // namespace

Pdag meek_rules(Pdag p) {
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::pair<int, int>> snapshot(p.undirected_edges.begin(),
                                                  p.undirected_edges.end());
        for (auto [i, j] : snapshot) {
            if (!p.has_undirected(i, j)) continue;  // oriented earlier this pass
            for (auto [u, v] : {std::pair{i, j}, std::pair{j, i}}) {
                if (rule1_fires(p, u, v) || rule2_fires(p, u, v) || rule3_fires(p, u, v) ||
                    rule4_fires(p, u, v)) {
                    p.orient(u, v);
                    changed = true;
                    break;
                }
            }
        }
    }
    return p;
}

}  // namespace bnsl
