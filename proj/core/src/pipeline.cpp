#include "bnsl/pipeline.hpp"

#include <chrono>

#include "bnsl/parallel.hpp"

namespace bnsl {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

Pdag learn_constraint(const Dataset& ds, const PipelineOptions& opt, StageSeconds* timing,
                      VstructureStats* vstats, Skeleton* skeleton_out) {
    int threads = resolve_threads(opt.threads);
    StageSeconds t;

    auto start = Clock::now();
    MiCache mi(ds);
    std::vector<PcSet> pcs = learn_all_pc(mi, opt.delta, threads);
    t.pc = seconds_since(start);

    start = Clock::now();
    Skeleton sk = build_skeleton(pcs, opt.rule);
    t.skeleton = seconds_since(start);
    if (skeleton_out) *skeleton_out = sk;

    start = Clock::now();
    Pdag pdag = find_vstructures(sk, ds, pcs, opt.alpha, opt.max_cond, threads, vstats);
    pdag = meek_rules(std::move(pdag));
    t.orientation = seconds_since(start);

    if (timing) *timing = t;
    return pdag;
}

Dag learn_score(const Dataset& ds, const PipelineOptions& opt, StageSeconds* timing,
                HillClimbStats* hstats, Skeleton* skeleton_out) {
    int threads = resolve_threads(opt.threads);
    StageSeconds t;

    auto start = Clock::now();
    MiCache mi(ds);
    std::vector<PcSet> pcs = learn_all_pc(mi, opt.delta, threads);
    t.pc = seconds_since(start);

    start = Clock::now();
    Skeleton sk = build_skeleton(pcs, opt.rule);
    t.skeleton = seconds_since(start);
    if (skeleton_out) *skeleton_out = sk;

    start = Clock::now();
    Dag dag = hill_climb(ds, sk, opt.ess, opt.max_iters, threads, hstats);
    t.orientation = seconds_since(start);

    if (timing) *timing = t;
    return dag;
}

}  // namespace bnsl
