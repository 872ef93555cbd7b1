// Command-line front end: sample, pc, learn, eval, bench, delta-sweep.
//
// All machine output is JSON written to --out (default stdout). Without
// --timings the bytes are a pure function of the inputs and flags, whatever
// the thread count; --timings adds wall-clock sections that naturally vary
// between runs. Exit codes: 0 success, 2 for malformed input (command line
// or file), 3 for runtime failures.

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bnsl/errors.hpp"
#include "bnsl/harness.hpp"
#include "bnsl/json_io.hpp"
#include "bnsl/network.hpp"
#include "bnsl/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitRuntime = 3;

void emit(const nlohmann::json& j, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << j.dump(2) << '\n';
    } else {
        bnsl::write_json_file(j, out_path);
    }
}

std::string stem_of(const std::string& path) {
    std::size_t slash = path.find_last_of("/\\");
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    std::size_t dot = base.find_last_of('.');
    return dot == std::string::npos ? base : base.substr(0, dot);
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

struct CommonOptions {
    double delta = bnsl::kDefaultDelta;
    double alpha = bnsl::kDefaultAlpha;
    double ess = bnsl::kDefaultEss;
    int max_cond = bnsl::kDefaultMaxCond;
    long long max_iters = bnsl::kDefaultMaxIters;
    int threads = 0;  // 0 = auto
    bool timings = false;

    bnsl::PipelineOptions pipeline() const {
        bnsl::PipelineOptions opt;
        opt.delta = delta;
        opt.alpha = alpha;
        opt.ess = ess;
        opt.max_cond = max_cond;
        opt.max_iters = max_iters;
        opt.threads = threads;
        return opt;
    }
};

void add_common_flags(CLI::App* cmd, CommonOptions& common) {
    cmd->add_option("--delta", common.delta, "FCBF relevance threshold")->capture_default_str();
    cmd->add_option("--alpha", common.alpha, "Significance level for independence tests")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd->add_option("--ess", common.ess, "BDeu equivalent sample size")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--max-cond", common.max_cond, "Conditioning-set size cap")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--max-iters", common.max_iters, "Hill-climbing iteration cap")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd->add_option("--threads", common.threads, "Worker threads (0 = auto)")
        ->envname("BNSL_THREADS")
        ->capture_default_str();
    cmd->add_flag("--timings", common.timings,
                  "Include wall-clock sections in the JSON (not byte-reproducible)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete Bayesian-network structure learning toolkit"};
    app.require_subcommand(1);
    app.set_config("--config")->description("Read key=value defaults from a file");

    CommonOptions common;

    // --- sample ---
    auto* sample_cmd = app.add_subcommand("sample", "Draw rows from a network by ancestral sampling");
    sample_cmd->fallthrough();
    std::string sample_net, sample_out;
    std::size_t sample_n = 1000;
    uint64_t sample_seed = 0;
    bool sample_no_schema = false;
    sample_cmd->add_option("--net", sample_net, "Network file (BIF)")->required();
    sample_cmd->add_option("--n", sample_n, "Number of rows")->required();
    sample_cmd->add_option("--seed", sample_seed, "RNG seed")->capture_default_str();
    sample_cmd->add_option("--out", sample_out, "Output CSV path")->required();
    sample_cmd->add_flag("--no-schema", sample_no_schema, "Skip the .schema cardinality sidecar");

    // --- pc ---
    auto* pc_cmd = app.add_subcommand("pc", "Parent-child candidates of one variable via FCBF");
    pc_cmd->fallthrough();
    std::string pc_data, pc_target, pc_out = "-";
    pc_cmd->add_option("--data", pc_data, "Dataset CSV")->required();
    pc_cmd->add_option("--target", pc_target, "Target variable name")->required();
    pc_cmd->add_option("--out", pc_out, "Output JSON path ('-' = stdout)")->capture_default_str();
    add_common_flags(pc_cmd, common);

    // --- learn ---
    auto* learn_cmd = app.add_subcommand("learn", "Learn a structure from data");
    learn_cmd->fallthrough();
    std::string learn_data, learn_method, learn_out = "-", learn_rule = "and", learn_skeleton_out;
    learn_cmd->add_option("--data", learn_data, "Dataset CSV")->required();
    learn_cmd->add_option("--method", learn_method, "Orientation method: c (tests) or s (score)")
        ->required()
        ->check(CLI::IsMember({"c", "s"}));
    learn_cmd->add_option("--rule", learn_rule, "Skeleton merge rule")
        ->check(CLI::IsMember({"and", "or"}))
        ->capture_default_str();
    learn_cmd->add_option("--out", learn_out, "Output JSON path ('-' = stdout)")->capture_default_str();
    learn_cmd->add_option("--skeleton-out", learn_skeleton_out,
                          "Also write the intermediate skeleton JSON here");
    add_common_flags(learn_cmd, common);

    // --- eval ---
    auto* eval_cmd = app.add_subcommand("eval", "Score a learned graph against the true network");
    eval_cmd->fallthrough();
    std::string eval_learned, eval_truth, eval_out = "-";
    bool eval_lenient = false;
    eval_cmd->add_option("--learned", eval_learned, "Learned graph JSON")->required();
    eval_cmd->add_option("--truth", eval_truth, "True network file (BIF)")->required();
    eval_cmd->add_option("--out", eval_out, "Output JSON path ('-' = stdout)")->capture_default_str();
    eval_cmd->add_flag("--undirected-lenient", eval_lenient,
                       "Do not count an undirected edge over a true edge as a reversal");

    // --- bench ---
    auto* bench_cmd = app.add_subcommand("bench", "Sample repeated datasets and score both methods");
    bench_cmd->fallthrough();
    std::string bench_net, bench_methods = "c,s", bench_out = "-";
    std::size_t bench_n = 1000;
    int bench_reps = 10;
    uint64_t bench_seed = 0;
    bench_cmd->add_option("--net", bench_net, "Network file (BIF)")->required();
    bench_cmd->add_option("--n", bench_n, "Rows per replicate")->capture_default_str();
    bench_cmd->add_option("--reps", bench_reps, "Number of replicate datasets")->capture_default_str();
    bench_cmd->add_option("--methods", bench_methods, "Comma list out of {c,s}")->capture_default_str();
    bench_cmd->add_option("--seed", bench_seed, "Base seed; replicate r uses seed+r")->capture_default_str();
    bench_cmd->add_option("--out", bench_out, "Output JSON path ('-' = stdout)")->capture_default_str();
    add_common_flags(bench_cmd, common);

    // --- delta-sweep ---
    auto* sweep_cmd = app.add_subcommand("delta-sweep", "PC quality across relevance thresholds");
    sweep_cmd->fallthrough();
    std::string sweep_net, sweep_deltas = "0,0.01,0.02,0.03,0.04,0.05,0.06,0.07,0.08,0.09,0.1";
    std::string sweep_out = "-";
    std::size_t sweep_n = 1000;
    int sweep_reps = 10;
    uint64_t sweep_seed = 0;
    sweep_cmd->add_option("--net", sweep_net, "Network file (BIF)")->required();
    sweep_cmd->add_option("--n", sweep_n, "Rows per replicate")->capture_default_str();
    sweep_cmd->add_option("--deltas", sweep_deltas, "Comma list of thresholds")->capture_default_str();
    sweep_cmd->add_option("--reps", sweep_reps, "Number of replicate datasets")->capture_default_str();
    sweep_cmd->add_option("--seed", sweep_seed, "Base seed")->capture_default_str();
    sweep_cmd->add_option("--out", sweep_out, "Output JSON path ('-' = stdout)")->capture_default_str();
    add_common_flags(sweep_cmd, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParse;
    }

    try {
        if (sample_cmd->parsed()) {
            bnsl::NetworkModel model = bnsl::parse_bif(sample_net);
            bnsl::Dataset ds = bnsl::forward_sample(model, sample_n, sample_seed);
            bnsl::write_csv(ds, sample_out, !sample_no_schema);
            return kExitOk;
        }

        if (pc_cmd->parsed()) {
            bnsl::Dataset ds = bnsl::load_csv(pc_data);
            auto it = std::find(ds.variable_names.begin(), ds.variable_names.end(), pc_target);
            if (it == ds.variable_names.end())
                throw bnsl::ParseError("unknown target variable '" + pc_target + "'");
            int target = static_cast<int>(it - ds.variable_names.begin());
            bnsl::MiCache mi(ds);
            bnsl::PcSet pc = bnsl::learn_pc(mi, target, common.delta);
            emit(bnsl::pcset_to_json(pc, ds.variable_names), pc_out);
            return kExitOk;
        }

        if (learn_cmd->parsed()) {
            bnsl::Dataset ds = bnsl::load_csv(learn_data);
            bnsl::PipelineOptions opt = common.pipeline();
            opt.rule = learn_rule == "or" ? bnsl::MergeRule::Or : bnsl::MergeRule::And;
            bnsl::StageSeconds timing;
            bnsl::Skeleton skeleton;
            nlohmann::json j;
            if (learn_method == "c") {
                bnsl::VstructureStats stats;
                bnsl::Pdag learned = bnsl::learn_constraint(ds, opt, &timing, &stats, &skeleton);
                j = bnsl::pdag_to_json(learned, ds.variable_names, stats.conflicts);
            } else {
                bnsl::Dag learned = bnsl::learn_score(ds, opt, &timing, nullptr, &skeleton);
                j = bnsl::dag_to_json(learned, ds.variable_names);
            }
            if (!learn_skeleton_out.empty())
                bnsl::write_json_file(bnsl::skeleton_to_json(skeleton, ds.variable_names),
                                      learn_skeleton_out);
            if (common.timings) {
                j["timings"] = {{"pc_seconds", timing.pc},
                                {"skeleton_seconds", timing.skeleton},
                                {"orientation_seconds", timing.orientation},
                                {"total_seconds", timing.total()}};
            }
            emit(j, learn_out);
            return kExitOk;
        }

        if (eval_cmd->parsed()) {
            std::vector<std::string> learned_names;
            bnsl::Pdag learned = bnsl::pdag_from_json(bnsl::load_json_file(eval_learned), &learned_names);
            bnsl::NetworkModel model = bnsl::parse_bif(eval_truth);
            if (learned_names != model.variable_names)
                throw bnsl::ParseError("learned graph and truth disagree on variable names");
            bnsl::Dag truth = bnsl::dag_from_network(model);
            auto policy = eval_lenient ? bnsl::UndirectedPolicy::CountAsCorrectAdjacency
                                       : bnsl::UndirectedPolicy::CountAsReverse;
            bnsl::EvalReport report = bnsl::evaluate(learned, truth, policy);
            emit(bnsl::eval_to_json(report, false), eval_out);
            return kExitOk;
        }

        if (bench_cmd->parsed()) {
            bnsl::NetworkModel model = bnsl::parse_bif(bench_net);
            bnsl::BenchResult result = bnsl::run_bench(model, bench_n, bench_reps,
                                                       split_list(bench_methods), bench_seed,
                                                       common.pipeline());
            result.network = stem_of(bench_net);
            emit(bnsl::bench_to_json(result, common.timings), bench_out);
            return kExitOk;
        }

        if (sweep_cmd->parsed()) {
            bnsl::NetworkModel model = bnsl::parse_bif(sweep_net);
            std::vector<double> deltas;
            for (const std::string& d : split_list(sweep_deltas)) deltas.push_back(std::stod(d));
            auto points = bnsl::run_delta_sweep(model, sweep_n, deltas, sweep_reps, sweep_seed,
                                                common.threads);
            emit(bnsl::delta_sweep_to_json(points, stem_of(sweep_net), sweep_n, sweep_reps, sweep_seed),
                 sweep_out);
            return kExitOk;
        }
    } catch (const bnsl::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitOk;
}
