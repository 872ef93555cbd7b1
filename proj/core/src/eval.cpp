#include "bnsl/eval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bnsl {

ShdCounts shd(const Pdag& learned, const Dag& truth, UndirectedPolicy policy) {
    if (learned.n_vars != truth.n_vars)
        throw std::invalid_argument("shd: variable count mismatch");

    auto learned_adj = learned.adjacency_pairs();
    ShdCounts out;

    for (auto [i, j] : truth.directed_edges) {
        auto pair = std::minmax(i, j);
        if (!learned_adj.count({pair.first, pair.second})) {
            ++out.miss;
        } else if (learned.has_directed(i, j)) {
            // correct adjacency and direction
        } else if (learned.has_directed(j, i)) {
            ++out.reverse;
        } else if (policy == UndirectedPolicy::CountAsReverse) {
            ++out.reverse;  // adjacency kept, arrowhead not committed
        }
    }
    for (auto [i, j] : learned_adj)
        if (!truth.adjacent(i, j)) ++out.extra;

    out.shd = out.miss + out.extra + out.reverse;
    return out;
}

ArrowheadMetrics arrowhead_metrics(const Pdag& learned, const Dag& truth) {
    if (learned.n_vars != truth.n_vars)
        throw std::invalid_argument("arrowhead_metrics: variable count mismatch");

    int correct = 0;
    for (auto [i, j] : learned.directed_edges)
        if (truth.has_edge(i, j)) ++correct;

    ArrowheadMetrics m;
    std::size_t predicted = learned.directed_edges.size();
    std::size_t actual = truth.directed_edges.size();
    m.precision = predicted == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(predicted);
    m.recall = actual == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(actual);
    m.f1 = (m.precision + m.recall) > 0.0 ? 2.0 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
    return m;
}

PcMetrics pc_metrics(const PcSet& learned, const std::set<int>& true_pc) {
    int overlap = 0;
    for (int v : learned.members)
        if (true_pc.count(v)) ++overlap;

    PcMetrics m;
    if (learned.members.empty() && true_pc.empty()) return {1.0, 1.0, 1.0};
    m.precision = learned.members.empty()
                      ? 0.0
                      : static_cast<double>(overlap) / static_cast<double>(learned.members.size());
    m.recall = true_pc.empty() ? 1.0 : static_cast<double>(overlap) / static_cast<double>(true_pc.size());
    m.f1 = (m.precision + m.recall) > 0.0 ? 2.0 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
    return m;
}

EvalReport evaluate(const Pdag& learned, const Dag& truth, UndirectedPolicy policy) {
    EvalReport report;
    report.counts = shd(learned, truth, policy);
    report.arrows = arrowhead_metrics(learned, truth);
    return report;
}

MeanStd mean_std(const std::vector<double>& xs) {
    MeanStd out;
    if (xs.empty()) return out;
    double sum = 0.0;
    for (double x : xs) sum += x;
    out.mean = sum / static_cast<double>(xs.size());
    if (xs.size() < 2) return out;
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    return out;
}

}  // namespace bnsl
