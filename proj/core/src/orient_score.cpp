#include "bnsl/orient_score.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include "bnsl/parallel.hpp"

namespace bnsl {

namespace {

// Dense counting is used while the family table stays small; larger (but
// capped) parent spaces fall back to a hash map over observed cells, whose
// keys are sorted before summation so the float accumulation order is fixed.
constexpr int64_t kDenseFamilyCells = int64_t{1} << 16;

}  // namespace

double local_bdeu(const Dataset& ds, int x, const std::vector<int>& parents, double ess) {
    if (ds.n_samples == 0) throw std::invalid_argument("local_bdeu: empty dataset");
    if (x < 0 || x >= ds.n_vars()) throw std::invalid_argument("local_bdeu: variable index out of range");
    if (ess <= 0.0) throw std::invalid_argument("local_bdeu: ess must be positive");

    int64_t q = 1;
    for (int p : parents) {
        if (p < 0 || p >= ds.n_vars()) throw std::invalid_argument("local_bdeu: parent index out of range");
        if (p == x) throw std::invalid_argument("local_bdeu: variable cannot parent itself");
        q *= ds.cardinalities[p];
        if (q > kMaxParentConfigs)
            throw std::invalid_argument("local_bdeu: parent configuration count exceeds cap");
    }
    int r = ds.cardinalities[x];
    double alpha_j = ess / static_cast<double>(q);
    double alpha_jk = ess / static_cast<double>(q * r);

    // Strides over the parent list (last parent fastest); cell key j*r + k.
    std::vector<int64_t> strides(parents.size(), 1);
    for (int i = static_cast<int>(parents.size()) - 2; i >= 0; --i)
        strides[i] = strides[i + 1] * ds.cardinalities[parents[i + 1]];

    std::vector<std::pair<int64_t, int64_t>> cells;  // (key, count), key-sorted
    if (q * r <= kDenseFamilyCells) {
        std::vector<int64_t> dense(static_cast<std::size_t>(q * r), 0);
        for (std::size_t row = 0; row < ds.n_samples; ++row) {
            int64_t j = 0;
            for (std::size_t i = 0; i < parents.size(); ++i)
                j += strides[i] * ds.columns[parents[i]][row];
            ++dense[static_cast<std::size_t>(j * r + ds.columns[x][row])];
        }
        for (int64_t key = 0; key < q * r; ++key)
            if (dense[static_cast<std::size_t>(key)] > 0)
                cells.push_back({key, dense[static_cast<std::size_t>(key)]});
    } else {
        std::unordered_map<int64_t, int64_t> sparse;
        sparse.reserve(ds.n_samples);
        for (std::size_t row = 0; row < ds.n_samples; ++row) {
            int64_t j = 0;
            for (std::size_t i = 0; i < parents.size(); ++i)
                j += strides[i] * ds.columns[parents[i]][row];
            ++sparse[j * r + ds.columns[x][row]];
        }
        cells.assign(sparse.begin(), sparse.end());
        std::sort(cells.begin(), cells.end());
    }

    // Parent configurations absent from the data contribute lnG(a_j) -
    // lnG(a_j) = 0, so only observed cells are summed.
    double score = 0.0;
    std::size_t i = 0;
    while (i < cells.size()) {
        int64_t j = cells[i].first / r;
        int64_t n_j = 0;
        std::size_t begin = i;
        while (i < cells.size() && cells[i].first / r == j) {
            n_j += cells[i].second;
            ++i;
        }
        score += std::lgamma(alpha_j) - std::lgamma(alpha_j + static_cast<double>(n_j));
        for (std::size_t t = begin; t < i; ++t)
            score += std::lgamma(alpha_jk + static_cast<double>(cells[t].second)) - std::lgamma(alpha_jk);
    }
    return score;
}

double total_bdeu(const Dataset& ds, const Dag& g, double ess) {
    auto parents = g.parent_lists();
    double total = 0.0;
    for (int v = 0; v < g.n_vars; ++v) total += local_bdeu(ds, v, parents[v], ess);
    return total;
}

double ScoreCache::local(int x, const std::vector<int>& parents) const {
    std::vector<int> key_parents = parents;
    std::sort(key_parents.begin(), key_parents.end());
    std::pair<int, std::vector<int>> key{x, std::move(key_parents)};
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = table_.find(key);
        if (it != table_.end()) return it->second;
    }
    double value = local_bdeu(*ds_, x, key.second, ess_);
    std::lock_guard<std::mutex> lock(mu_);
    return table_.emplace(std::move(key), value).first->second;
}

// ---------------------------------------------------------------------------
// Hill climbing.
// ---------------------------------------------------------------------------

namespace {

enum class OpKind { Add = 0, Reverse = 1, Delete = 2 };  // tie-break priority

struct Operator {
    OpKind kind;
    int i, j;  // Add/Delete/Reverse act on arc i->j
    double delta = 0.0;
    bool feasible = true;
};

// Does a directed path from `from` reach `to`?
bool has_path(const std::vector<std::set<int>>& children, int from, int to) {
    std::vector<int> stack{from};
    std::vector<char> seen(children.size(), 0);
    seen[from] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (v == to) return true;
        for (int c : children[v]) {
            if (!seen[c]) {
                seen[c] = 1;
                stack.push_back(c);
            }
        }
    }
    return false;
}

int64_t config_count(const Dataset& ds, const std::set<int>& parents) {
    int64_t q = 1;
    for (int p : parents) {
        q *= ds.cardinalities[p];
        if (q > kMaxParentConfigs) return q;
    }
    return q;
}

}  // namespace

Dag hill_climb(const Dataset& ds, const Skeleton& sk, double ess, int64_t max_iters, int threads,
               HillClimbStats* stats) {
    int m = sk.n_vars;
    ScoreCache cache(ds, ess);

    std::vector<std::set<int>> parents(m), children(m);
    std::vector<double> local_scores(m);
    double total = 0.0;
    for (int v = 0; v < m; ++v) {
        local_scores[v] = cache.local(v, {});
        total += local_scores[v];
    }

    HillClimbStats local_stats;
    local_stats.score_trace.push_back(total);

    auto parent_vec = [&](int v) { return std::vector<int>(parents[v].begin(), parents[v].end()); };

    for (int64_t iter = 0; iter < max_iters; ++iter) {
        std::vector<Operator> ops;
        for (auto [i, j] : sk.edges) {
            for (auto [from, to] : {std::pair{i, j}, std::pair{j, i}}) {
                if (parents[to].count(from) || parents[from].count(to)) continue;
                ops.push_back({OpKind::Add, from, to});
            }
        }
        for (int to = 0; to < m; ++to) {
            for (int from : parents[to]) {
                ops.push_back({OpKind::Delete, from, to});
                ops.push_back({OpKind::Reverse, from, to});
            }
        }

        parallel_for(ops.size(), threads, [&](std::size_t k) {
            Operator& op = ops[k];
            switch (op.kind) {
                case OpKind::Add: {
                    std::set<int> with = parents[op.j];
                    with.insert(op.i);
                    if (config_count(ds, with) > kMaxParentConfigs) {
                        op.feasible = false;
                        return;
                    }
                    std::vector<int> pv(with.begin(), with.end());
                    op.delta = cache.local(op.j, pv) - local_scores[op.j];
                    break;
                }
                case OpKind::Delete: {
                    std::set<int> without = parents[op.j];
                    without.erase(op.i);
                    std::vector<int> pv(without.begin(), without.end());
                    op.delta = cache.local(op.j, pv) - local_scores[op.j];
                    break;
                }
                case OpKind::Reverse: {
                    std::set<int> j_without = parents[op.j];
                    j_without.erase(op.i);
                    std::set<int> i_with = parents[op.i];
                    i_with.insert(op.j);
                    if (config_count(ds, i_with) > kMaxParentConfigs) {
                        op.feasible = false;
                        return;
                    }
                    std::vector<int> jv(j_without.begin(), j_without.end());
                    std::vector<int> iv(i_with.begin(), i_with.end());
                    op.delta = (cache.local(op.j, jv) - local_scores[op.j]) +
                               (cache.local(op.i, iv) - local_scores[op.i]);
                    break;
                }
            }
        });

        // Score-equivalent operators (e.g. the two orientations of a first
        // edge) differ only by lgamma rounding; quantizing the deltas turns
        // them into genuine ties so the documented deterministic order
        // (add > reverse > delete, then lexicographic) decides.
        auto quantized = [](double delta) { return std::llround(delta / kMinScoreDelta); };
        std::vector<std::size_t> order(ops.size());
        for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const Operator& x = ops[a];
            const Operator& y = ops[b];
            int64_t qx = quantized(x.delta), qy = quantized(y.delta);
            if (qx != qy) return qx > qy;
            if (x.kind != y.kind) return static_cast<int>(x.kind) < static_cast<int>(y.kind);
            return std::tie(x.i, x.j) < std::tie(y.i, y.j);
        });

        bool applied = false;
        for (std::size_t k : order) {
            const Operator& op = ops[k];
            if (!op.feasible || op.delta <= kMinScoreDelta) break;  // order is delta-descending
            if (op.kind == OpKind::Add && has_path(children, op.j, op.i)) continue;
            if (op.kind == OpKind::Reverse) {
                children[op.i].erase(op.j);
                bool cycle = has_path(children, op.i, op.j);
                children[op.i].insert(op.j);
                if (cycle) continue;
            }

            switch (op.kind) {
                case OpKind::Add:
                    parents[op.j].insert(op.i);
                    children[op.i].insert(op.j);
                    local_scores[op.j] = cache.local(op.j, parent_vec(op.j));
                    break;
                case OpKind::Delete:
                    parents[op.j].erase(op.i);
                    children[op.i].erase(op.j);
                    local_scores[op.j] = cache.local(op.j, parent_vec(op.j));
                    break;
                case OpKind::Reverse:
                    parents[op.j].erase(op.i);
                    children[op.i].erase(op.j);
                    parents[op.i].insert(op.j);
                    children[op.j].insert(op.i);
                    local_scores[op.j] = cache.local(op.j, parent_vec(op.j));
                    local_scores[op.i] = cache.local(op.i, parent_vec(op.i));
                    break;
            }
            total += op.delta;
            local_stats.score_trace.push_back(total);
            ++local_stats.iterations;
            applied = true;
            break;
        }
        if (!applied) break;
    }

    Dag g(m);
    for (int to = 0; to < m; ++to)
        for (int from : parents[to]) g.directed_edges.insert({from, to});
    if (stats) *stats = std::move(local_stats);
    return g;
}

}  // namespace bnsl
