#ifndef BNSL_JSON_IO_HPP
#define BNSL_JSON_IO_HPP

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bnsl/eval.hpp"
#include "bnsl/graph.hpp"
#include "bnsl/harness.hpp"
#include "bnsl/pcselect.hpp"

namespace bnsl {

// Wire formats. Graphs carry a "nodes" array of names; edges are index
// pairs into it. Keys serialize in sorted order, so a given value always
// produces the same bytes.
//
//   pc set:   {"target": name, "members": [names], "relevance": [numbers]}
//   skeleton: {"nodes": [...], "undirected_edges": [[i,j], ...]}
//   pdag:     {"nodes": [...], "directed_edges": [[i,j], ...],
//              "undirected_edges": [[i,j], ...], "conflicts": int}
//   dag:      {"nodes": [...], "directed_edges": [[i,j], ...]}

nlohmann::json pcset_to_json(const PcSet& pc, const std::vector<std::string>& names);
nlohmann::json skeleton_to_json(const Skeleton& sk, const std::vector<std::string>& names);
nlohmann::json pdag_to_json(const Pdag& p, const std::vector<std::string>& names,
                            int64_t conflicts = 0);
nlohmann::json dag_to_json(const Dag& g, const std::vector<std::string>& names);
nlohmann::json eval_to_json(const EvalReport& report, bool include_runtime);
nlohmann::json bench_to_json(const BenchResult& result, bool include_timing);
nlohmann::json delta_sweep_to_json(const std::vector<DeltaSweepPoint>& points,
                                   const std::string& network, std::size_t n, int reps,
                                   uint64_t seed);

// Accepts both the pdag and dag wire formats (absent undirected_edges means
// a fully directed graph). Throws ParseError on malformed documents.
Pdag pdag_from_json(const nlohmann::json& j, std::vector<std::string>* names_out = nullptr);

nlohmann::json load_json_file(const std::string& path);
void write_json_file(const nlohmann::json& j, const std::string& path);

}  // namespace bnsl

#endif  // BNSL_JSON_IO_HPP
