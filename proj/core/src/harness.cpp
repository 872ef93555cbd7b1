#include "bnsl/harness.hpp"

#include <chrono>
#include <stdexcept>

#include "bnsl/parallel.hpp"

namespace bnsl {

namespace {

using Clock = std::chrono::steady_clock;

struct RepOutcome {
    EvalReport c, s;
    bool ran_c = false, ran_s = false;
    std::vector<PcMetrics> pc;  // one entry per variable
};

}  // namespace

BenchResult run_bench(const NetworkModel& model, std::size_t n, int reps,
                      const std::vector<std::string>& methods, uint64_t seed,
                      const PipelineOptions& opt, UndirectedPolicy policy) {
    if (reps < 1) throw std::invalid_argument("run_bench: reps must be >= 1");
    bool want_c = false, want_s = false;
    for (const auto& mth : methods) {
        if (mth == "c")
            want_c = true;
        else if (mth == "s")
            want_s = true;
        else
            throw std::invalid_argument("run_bench: unknown method '" + mth + "'");
    }

    Dag truth = dag_from_network(model);
    std::vector<std::set<int>> true_pc = adjacency_sets(truth);

    // One replicate per worker; inner pipelines stay single-threaded so the
    // parallel split is over replicates only and results land by index.
    std::vector<RepOutcome> outcomes(reps);
    PipelineOptions inner = opt;
    inner.threads = 1;
    parallel_for(static_cast<std::size_t>(reps), opt.threads, [&](std::size_t rep) {
        Dataset ds = forward_sample(model, n, seed + rep);
        RepOutcome& out = outcomes[rep];
        if (want_c) {
            auto start = Clock::now();
            Pdag learned = learn_constraint(ds, inner);
            double secs = std::chrono::duration<double>(Clock::now() - start).count();
            out.c = evaluate(learned, truth, policy);
            out.c.runtime_seconds = secs;
            out.ran_c = true;
        }
        if (want_s) {
            auto start = Clock::now();
            Dag learned = learn_score(ds, inner);
            double secs = std::chrono::duration<double>(Clock::now() - start).count();
            out.s = evaluate(pdag_from_dag(learned), truth, policy);
            out.s.runtime_seconds = secs;
            out.ran_s = true;
        }
        MiCache mi(ds);
        std::vector<PcSet> pcs = learn_all_pc(mi, opt.delta, 1);
        out.pc.reserve(pcs.size());
        for (int v = 0; v < static_cast<int>(pcs.size()); ++v)
            out.pc.push_back(pc_metrics(pcs[v], true_pc[v]));
    });

    BenchResult result;
    result.n = n;
    result.reps = reps;
    result.seed = seed;

    auto summarize = [&](const std::string& name, bool RepOutcome::* ran, EvalReport RepOutcome::* field) {
        MethodSummary ms;
        ms.method = name;
        std::vector<double> shd_v, rev_v, miss_v, extra_v, f1_v, prec_v, rec_v, time_v;
        for (const RepOutcome& out : outcomes) {
            if (!(out.*ran)) continue;
            const EvalReport& r = out.*field;
            shd_v.push_back(r.counts.shd);
            rev_v.push_back(r.counts.reverse);
            miss_v.push_back(r.counts.miss);
            extra_v.push_back(r.counts.extra);
            f1_v.push_back(r.arrows.f1);
            prec_v.push_back(r.arrows.precision);
            rec_v.push_back(r.arrows.recall);
            time_v.push_back(r.runtime_seconds);
        }
        ms.shd = mean_std(shd_v);
        ms.reverse = mean_std(rev_v);
        ms.miss = mean_std(miss_v);
        ms.extra = mean_std(extra_v);
        ms.ar_f1 = mean_std(f1_v);
        ms.ar_precision = mean_std(prec_v);
        ms.ar_recall = mean_std(rec_v);
        ms.time_seconds = mean_std(time_v);
        return ms;
    };
    if (want_c) result.methods.push_back(summarize("c", &RepOutcome::ran_c, &RepOutcome::c));
    if (want_s) result.methods.push_back(summarize("s", &RepOutcome::ran_s, &RepOutcome::s));

    std::vector<double> pc_f1, pc_prec, pc_rec;
    for (const RepOutcome& out : outcomes) {
        for (const PcMetrics& pm : out.pc) {
            pc_f1.push_back(pm.f1);
            pc_prec.push_back(pm.precision);
            pc_rec.push_back(pm.recall);
        }
    }
    result.pc.f1 = mean_std(pc_f1);
    result.pc.precision = mean_std(pc_prec);
    result.pc.recall = mean_std(pc_rec);
    return result;
}

std::vector<DeltaSweepPoint> run_delta_sweep(const NetworkModel& model, std::size_t n,
                                             const std::vector<double>& deltas, int reps,
                                             uint64_t seed, int threads) {
    if (reps < 1) throw std::invalid_argument("run_delta_sweep: reps must be >= 1");
    for (double d : deltas)
        if (d < 0.0) throw std::invalid_argument("run_delta_sweep: delta must be >= 0");

    Dag truth = dag_from_network(model);
    std::vector<std::set<int>> true_pc = adjacency_sets(truth);
    int m = model.n_vars();

    // metrics[rep][delta][var]
    std::vector<std::vector<std::vector<PcMetrics>>> metrics(
        reps, std::vector<std::vector<PcMetrics>>(deltas.size()));
    parallel_for(static_cast<std::size_t>(reps), threads, [&](std::size_t rep) {
        Dataset ds = forward_sample(model, n, seed + rep);
        MiCache mi(ds);
        mi.prefill(1);
        for (std::size_t di = 0; di < deltas.size(); ++di) {
            auto& slot = metrics[rep][di];
            slot.reserve(m);
            for (int v = 0; v < m; ++v)
                slot.push_back(pc_metrics(learn_pc(mi, v, deltas[di]), true_pc[v]));
        }
    });

    std::vector<DeltaSweepPoint> points(deltas.size());
    for (std::size_t di = 0; di < deltas.size(); ++di) {
        std::vector<double> f1, prec, rec;
        for (int rep = 0; rep < reps; ++rep) {
            for (int v = 0; v < m; ++v) {
                const PcMetrics& pm = metrics[rep][di][v];
                f1.push_back(pm.f1);
                prec.push_back(pm.precision);
                rec.push_back(pm.recall);
            }
        }
        points[di].delta = deltas[di];
        points[di].f1 = mean_std(f1);
        points[di].precision = mean_std(prec);
        points[di].recall = mean_std(rec);
    }
    return points;
}

}  // namespace bnsl
