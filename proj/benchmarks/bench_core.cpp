// Microbenchmarks for the estimator and search hot paths. Inputs are
// sampled from a ternary chain network so family sizes and value counts
// resemble the discrete benchmark regime (hundreds of variables, around a
// thousand rows).

#include <benchmark/benchmark.h>

#include "bnsl/info.hpp"
#include "bnsl/network.hpp"
#include "bnsl/orient_score.hpp"
#include "bnsl/pcselect.hpp"
#include "bnsl/pipeline.hpp"
#include "bnsl/skeleton.hpp"

namespace {

bnsl::NetworkModel chain_network(int n_vars, int card) {
    bnsl::NetworkModel m;
    m.cardinalities.assign(n_vars, card);
    for (int v = 0; v < n_vars; ++v) {
        m.variable_names.push_back("V" + std::to_string(v));
        std::vector<std::string> labels;
        for (int k = 0; k < card; ++k) labels.push_back("s" + std::to_string(k));
        m.value_labels.push_back(labels);
        m.parent_lists.push_back(v == 0 ? std::vector<int>{} : std::vector<int>{v - 1});
        int64_t q = v == 0 ? 1 : card;
        std::vector<double> cpt(static_cast<std::size_t>(q) * card);
        for (int64_t j = 0; j < q; ++j)
            for (int k = 0; k < card; ++k)
                cpt[j * card + k] = (k == j % card) ? 0.8 : 0.2 / (card - 1);
        m.cpts.push_back(std::move(cpt));
    }
    return m;
}

const bnsl::Dataset& sampled(int n_vars, std::size_t rows) {
    static std::map<std::pair<int, std::size_t>, bnsl::Dataset> cache;
    auto key = std::make_pair(n_vars, rows);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, bnsl::forward_sample(chain_network(n_vars, 3), rows, 42)).first;
    return it->second;
}

void BM_MutualInformation(benchmark::State& state) {
    const bnsl::Dataset& ds = sampled(8, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(bnsl::mutual_information(ds, 0, 7));
}
BENCHMARK(BM_MutualInformation)->Arg(1000)->Arg(10000);

void BM_CiTest(benchmark::State& state) {
    const bnsl::Dataset& ds = sampled(8, 10000);
    std::vector<int> cond;
    for (int i = 0; i < state.range(0); ++i) cond.push_back(2 + i);
    for (auto _ : state) benchmark::DoNotOptimize(bnsl::ci_test(ds, 0, 1, cond, 0.01));
}
BENCHMARK(BM_CiTest)->Arg(0)->Arg(1)->Arg(2);

void BM_LearnAllPc(benchmark::State& state) {
    const bnsl::Dataset& ds = sampled(static_cast<int>(state.range(0)), 1000);
    for (auto _ : state) {
        bnsl::MiCache mi(ds);
        benchmark::DoNotOptimize(bnsl::learn_all_pc(mi, 0.05, 1));
    }
}
BENCHMARK(BM_LearnAllPc)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_LocalBdeu(benchmark::State& state) {
    const bnsl::Dataset& ds = sampled(8, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(bnsl::local_bdeu(ds, 3, {1, 2, 4}, 10.0));
}
BENCHMARK(BM_LocalBdeu)->Arg(1000)->Arg(10000);

void BM_HillClimb(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    const bnsl::Dataset& ds = sampled(n, 1000);
    bnsl::MiCache mi(ds);
    bnsl::Skeleton sk = bnsl::build_skeleton(bnsl::learn_all_pc(mi, 0.05, 1));
    for (auto _ : state) benchmark::DoNotOptimize(bnsl::hill_climb(ds, sk, 10.0));
}
BENCHMARK(BM_HillClimb)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_PipelineConstraint(benchmark::State& state) {
    const bnsl::Dataset& ds = sampled(static_cast<int>(state.range(0)), 1000);
    for (auto _ : state) benchmark::DoNotOptimize(bnsl::learn_constraint(ds));
}
BENCHMARK(BM_PipelineConstraint)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_PipelineScore(benchmark::State& state) {
    const bnsl::Dataset& ds = sampled(static_cast<int>(state.range(0)), 1000);
    for (auto _ : state) benchmark::DoNotOptimize(bnsl::learn_score(ds));
}
BENCHMARK(BM_PipelineScore)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
