#include "bnsl/pcselect.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "bnsl/parallel.hpp"

namespace bnsl {

PcSet fcbf_forward(const MiCache& mi, int target, double delta) {
    if (target < 0 || target >= mi.n_vars())
        throw std::invalid_argument("fcbf_forward: target index out of range");
    if (delta < 0.0) throw std::invalid_argument("fcbf_forward: delta must be >= 0");

    PcSet pc;
    pc.target = target;
    std::vector<std::pair<double, int>> ranked;
    for (int x = 0; x < mi.n_vars(); ++x) {
        if (x == target) continue;
        double relevance = mi.mi(target, x);
        if (relevance >= delta) ranked.push_back({relevance, x});
    }
    // Descending relevance, ascending index on exact ties.
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    pc.members.reserve(ranked.size());
    pc.relevance.reserve(ranked.size());
    for (auto [relevance, x] : ranked) {
        pc.members.push_back(x);
        pc.relevance.push_back(relevance);
    }
    return pc;
}

PcSet fcbf_backward(const MiCache& mi, PcSet candidates) {
    if (candidates.members.size() != candidates.relevance.size())
        throw std::invalid_argument("fcbf_backward: members and relevance must be parallel");
    std::size_t m = candidates.members.size();
    std::vector<char> removed(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        if (removed[i]) continue;
        for (std::size_t j = i + 1; j < m; ++j) {
            if (removed[j]) continue;
            // Y drops out when its redundancy with the stronger X exceeds
            // its own relevance to the target.
            if (mi.mi(candidates.members[i], candidates.members[j]) > candidates.relevance[j])
                removed[j] = 1;
        }
    }
    PcSet out;
    out.target = candidates.target;
    for (std::size_t i = 0; i < m; ++i) {
        if (removed[i]) continue;
        out.members.push_back(candidates.members[i]);
        out.relevance.push_back(candidates.relevance[i]);
    }
    return out;
}

PcSet learn_pc(const MiCache& mi, int target, double delta) {
    return fcbf_backward(mi, fcbf_forward(mi, target, delta));
}

std::vector<PcSet> learn_all_pc(const MiCache& mi, double delta, int threads) {
    mi.prefill(threads);
    std::vector<PcSet> out(mi.n_vars());
    parallel_for(static_cast<std::size_t>(mi.n_vars()), threads,
                 [&](std::size_t target) { out[target] = learn_pc(mi, static_cast<int>(target), delta); });
    return out;
}

std::vector<int> mrmr_select(const MiCache& mi, int target, int k) {
    int m = mi.n_vars();
    if (target < 0 || target >= m) throw std::invalid_argument("mrmr_select: target index out of range");
    if (k < 1 || k > m - 1) throw std::invalid_argument("mrmr_select: k out of range");

    std::vector<int> selected;
    selected.reserve(k);
    std::vector<char> used(m, 0);
    used[target] = 1;
    std::vector<double> redundancy(m, 0.0);  // sum of I(Vi;X) over selected Vi

    for (int step = 0; step < k; ++step) {
        int best = -1;
        double best_score = 0.0;
        for (int x = 0; x < m; ++x) {
            if (used[x]) continue;
            double score = mi.mi(target, x) - redundancy[x];
            if (best == -1 || score > best_score) {
                best = x;
                best_score = score;
            }
        }
        selected.push_back(best);
        used[best] = 1;
        for (int x = 0; x < m; ++x)
            if (!used[x]) redundancy[x] += mi.mi(best, x);
    }
    return selected;
}

}  // namespace bnsl
