#ifndef BNSL_NETWORK_HPP
#define BNSL_NETWORK_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "bnsl/dataset.hpp"
#include "bnsl/graph.hpp"

namespace bnsl {

// Ground-truth discrete Bayesian network: a DAG plus one conditional
// probability table per variable.
//
// cpts[i] stores rows contiguously: row j (one parent configuration) holds
// the distribution over the r_i states of variable i, i.e.
// cpts[i][j * r_i + k] = P(V_i = k | parents(V_i) = config j). Parent
// configurations are indexed in row-major order over parent_lists[i], the
// last listed parent varying fastest. Each row is a probability vector.
struct NetworkModel {
    std::vector<std::string> variable_names;
    std::vector<int> cardinalities;
    std::vector<std::vector<int>> parent_lists;
    std::vector<std::vector<std::string>> value_labels;  // one label per state
    std::vector<std::vector<double>> cpts;

    int n_vars() const { return static_cast<int>(variable_names.size()); }
    int n_edges() const;
    int64_t parent_config_count(int var) const;

    // Checks acyclicity, CPT row counts and row sums (1e-9); throws
    // std::invalid_argument on violation.
    void validate() const;
};

// Topological order with ascending-index tie-breaking. Throws
// std::invalid_argument when the parent structure has a cycle.
std::vector<int> topological_order(const std::vector<std::vector<int>>& parent_lists);

// Reads the standard interchange format for discrete networks (variable
// blocks with `type discrete`, probability blocks with either `table` or
// per-parent-configuration rows). Value labels map to codes in declaration
// order. Rows are checked to sum to 1 within 1e-6, then normalized exactly.
NetworkModel parse_bif(const std::string& path);

void write_bif(const NetworkModel& model, const std::string& path);

// Ancestral sampling: n rows drawn variable-by-variable in topological
// order. Bit-identical output for identical (model, n, seed); the returned
// Dataset carries the model's names and cardinalities.
Dataset forward_sample(const NetworkModel& model, std::size_t n, uint64_t seed);

Dag dag_from_network(const NetworkModel& model);

}  // namespace bnsl

#endif  // BNSL_NETWORK_HPP
