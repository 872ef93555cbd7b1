#ifndef BNSL_EVAL_HPP
#define BNSL_EVAL_HPP

#include <set>
#include <vector>

#include "bnsl/graph.hpp"
#include "bnsl/pcselect.hpp"

namespace bnsl {

// How a learned edge that stayed undirected over a directed true edge is
// scored. CountAsReverse (default): the adjacency is right but the
// arrowhead was not committed, so it counts as a reversal.
// CountAsCorrectAdjacency: sensitivity variant that does not penalize it.
enum class UndirectedPolicy { CountAsReverse, CountAsCorrectAdjacency };

struct ShdCounts {
    int shd = 0;
    int miss = 0;     // true edges with no learned adjacency
    int extra = 0;    // learned adjacencies absent from the truth
    int reverse = 0;  // adjacency present, direction wrong
};

// Structural Hamming distance decomposition of a learned mixed graph
// against the true DAG. Throws on a variable-count mismatch.
ShdCounts shd(const Pdag& learned, const Dag& truth,
              UndirectedPolicy policy = UndirectedPolicy::CountAsReverse);

struct ArrowheadMetrics {
    double precision = 0.0;  // correct arrowheads / learned directed edges (0 if none)
    double recall = 0.0;     // correct arrowheads / true edges (0 if none)
    double f1 = 0.0;
};

ArrowheadMetrics arrowhead_metrics(const Pdag& learned, const Dag& truth);

struct PcMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// Precision/recall/F1 of a learned PC set against the true neighbors.
// Conventions: empty output with empty truth is (1,1,1); empty output with
// nonempty truth is (0,0,0); nonempty output with empty truth has recall 1
// (vacuous) and precision 0.
PcMetrics pc_metrics(const PcSet& learned, const std::set<int>& true_pc);

struct EvalReport {
    ShdCounts counts;
    ArrowheadMetrics arrows;
    double runtime_seconds = 0.0;  // filled by callers that timed a run
};

EvalReport evaluate(const Pdag& learned, const Dag& truth,
                    UndirectedPolicy policy = UndirectedPolicy::CountAsReverse);

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;  // sample standard deviation (n - 1)
};

MeanStd mean_std(const std::vector<double>& xs);

}  // namespace bnsl

#endif  // BNSL_EVAL_HPP
