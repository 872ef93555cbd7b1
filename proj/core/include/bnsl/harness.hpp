#ifndef BNSL_HARNESS_HPP
#define BNSL_HARNESS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "bnsl/eval.hpp"
#include "bnsl/network.hpp"
#include "bnsl/pipeline.hpp"

namespace bnsl {

// One structure-learning method's aggregate quality over repeated datasets
// sampled from the same network (replicate r uses seed base_seed + r).
struct MethodSummary {
    std::string method;  // "c" or "s"
    MeanStd shd, reverse, miss, extra;
    MeanStd ar_f1, ar_precision, ar_recall;
    MeanStd time_seconds;
};

// FCBF parent-child quality pooled over every variable and replicate.
struct PcSummary {
    MeanStd f1, precision, recall;
};

struct BenchResult {
    std::string network;
    std::size_t n = 0;
    int reps = 0;
    uint64_t seed = 0;
    std::vector<MethodSummary> methods;
    PcSummary pc;
};

// Samples `reps` datasets of n rows from the model and runs the requested
// methods ("c", "s") on each, scoring against the model's DAG. Replicates
// run in parallel; aggregation order is fixed by replicate index.
BenchResult run_bench(const NetworkModel& model, std::size_t n, int reps,
                      const std::vector<std::string>& methods, uint64_t seed,
                      const PipelineOptions& opt = {},
                      UndirectedPolicy policy = UndirectedPolicy::CountAsReverse);

struct DeltaSweepPoint {
    double delta = 0.0;
    MeanStd f1, precision, recall;  // pooled over variables and replicates
};

// PC-recovery quality of learn_pc as the relevance threshold varies.
// Throws std::invalid_argument on negative deltas or reps < 1.
std::vector<DeltaSweepPoint> run_delta_sweep(const NetworkModel& model, std::size_t n,
                                             const std::vector<double>& deltas, int reps,
                                             uint64_t seed, int threads = 1);

}  // namespace bnsl

#endif  // BNSL_HARNESS_HPP
