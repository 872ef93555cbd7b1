#include "bnsl/json_io.hpp"

#include <fstream>

#include "bnsl/errors.hpp"

namespace bnsl {

namespace {

nlohmann::json edge_array(const std::set<std::pair<int, int>>& edges) {
    nlohmann::json arr = nlohmann::json::array();
    for (auto [i, j] : edges) arr.push_back({i, j});
    return arr;
}

nlohmann::json mean_std_json(const MeanStd& ms) {
    return {{"mean", ms.mean}, {"std", ms.std}};
}

}  // namespace

nlohmann::json pcset_to_json(const PcSet& pc, const std::vector<std::string>& names) {
    nlohmann::json members = nlohmann::json::array();
    for (int v : pc.members) members.push_back(names.at(v));
    return {{"target", names.at(pc.target)}, {"members", members}, {"relevance", pc.relevance}};
}

nlohmann::json skeleton_to_json(const Skeleton& sk, const std::vector<std::string>& names) {
    return {{"nodes", names}, {"undirected_edges", edge_array(sk.edges)}};
}

nlohmann::json pdag_to_json(const Pdag& p, const std::vector<std::string>& names, int64_t conflicts) {
    return {{"nodes", names},
            {"directed_edges", edge_array(p.directed_edges)},
            {"undirected_edges", edge_array(p.undirected_edges)},
            {"conflicts", conflicts}};
}

nlohmann::json dag_to_json(const Dag& g, const std::vector<std::string>& names) {
    return {{"nodes", names}, {"directed_edges", edge_array(g.directed_edges)}};
}

nlohmann::json eval_to_json(const EvalReport& report, bool include_runtime) {
    nlohmann::json j{{"shd", report.counts.shd},
                     {"miss", report.counts.miss},
                     {"extra", report.counts.extra},
                     {"reverse", report.counts.reverse},
                     {"ar_precision", report.arrows.precision},
                     {"ar_recall", report.arrows.recall},
                     {"ar_f1", report.arrows.f1}};
    if (include_runtime) j["runtime_seconds"] = report.runtime_seconds;
    return j;
}

nlohmann::json bench_to_json(const BenchResult& result, bool include_timing) {
    nlohmann::json methods = nlohmann::json::object();
    for (const MethodSummary& ms : result.methods) {
        nlohmann::json entry{{"shd", mean_std_json(ms.shd)},
                             {"reverse", mean_std_json(ms.reverse)},
                             {"miss", mean_std_json(ms.miss)},
                             {"extra", mean_std_json(ms.extra)},
                             {"ar_f1", mean_std_json(ms.ar_f1)},
                             {"ar_precision", mean_std_json(ms.ar_precision)},
                             {"ar_recall", mean_std_json(ms.ar_recall)}};
        if (include_timing) entry["time_seconds"] = mean_std_json(ms.time_seconds);
        methods[ms.method] = entry;
    }
    return {{"network", result.network},
            {"n", result.n},
            {"reps", result.reps},
            {"seed", result.seed},
            {"methods", methods},
            {"pc", nlohmann::json{{"f1", mean_std_json(result.pc.f1)},
                                  {"precision", mean_std_json(result.pc.precision)},
                                  {"recall", mean_std_json(result.pc.recall)}}}};
}

nlohmann::json delta_sweep_to_json(const std::vector<DeltaSweepPoint>& points,
                                   const std::string& network, std::size_t n, int reps,
                                   uint64_t seed) {
    nlohmann::json results = nlohmann::json::array();
    nlohmann::json deltas = nlohmann::json::array();
    for (const DeltaSweepPoint& p : points) {
        deltas.push_back(p.delta);
        results.push_back({{"delta", p.delta},
                           {"f1", mean_std_json(p.f1)},
                           {"precision", mean_std_json(p.precision)},
                           {"recall", mean_std_json(p.recall)}});
    }
    return {{"network", network}, {"n", n},      {"reps", reps},
            {"seed", seed},       {"deltas", deltas}, {"results", results}};
}

Pdag pdag_from_json(const nlohmann::json& j, std::vector<std::string>* names_out) {
    if (!j.is_object() || !j.contains("nodes") || !j.contains("directed_edges"))
        throw ParseError("graph json: expected object with 'nodes' and 'directed_edges'");
    std::vector<std::string> names;
    for (const auto& n : j.at("nodes")) names.push_back(n.get<std::string>());

    Pdag p(static_cast<int>(names.size()));
    auto read_pair = [&](const nlohmann::json& e) {
        if (!e.is_array() || e.size() != 2) throw ParseError("graph json: edge must be an [i, j] pair");
        int a = e.at(0).get<int>();
        int b = e.at(1).get<int>();
        if (a < 0 || b < 0 || a >= p.n_vars || b >= p.n_vars)
            throw ParseError("graph json: edge index out of range");
        return std::pair{a, b};
    };
    for (const auto& e : j.at("directed_edges")) p.directed_edges.insert(read_pair(e));
    if (j.contains("undirected_edges")) {
        for (const auto& e : j.at("undirected_edges")) {
            auto [a, b] = read_pair(e);
            p.add_undirected(a, b);
        }
    }
    if (names_out) *names_out = std::move(names);
    return p;
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_json_file(const nlohmann::json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

}  // namespace bnsl
