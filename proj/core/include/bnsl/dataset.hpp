#ifndef BNSL_DATASET_HPP
#define BNSL_DATASET_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace bnsl {

// Columnar, integer-coded discrete samples. Every value v stored for
// variable i satisfies 0 <= v < cardinalities[i], every column has length
// n_samples, and cardinalities[i] >= 1. Immutable by convention once built,
// so it can be shared freely across threads.
struct Dataset {
    std::vector<std::string> variable_names;
    std::vector<int> cardinalities;
    std::vector<std::vector<int32_t>> columns;  // columns[i][row]
    std::size_t n_samples = 0;

    int n_vars() const { return static_cast<int>(variable_names.size()); }

    // Throws std::invalid_argument when an invariant is broken.
    void validate() const;
};

// Dense joint counts over an ordered tuple of variables. Cells are laid out
// row-major: the last variable in variable_indices varies fastest. With an
// empty tuple the table has a single cell holding n_samples.
struct ContingencyTable {
    std::vector<int> variable_indices;
    std::vector<int> dims;
    std::vector<int64_t> counts;
    int64_t total = 0;

    std::size_t n_cells() const { return counts.size(); }
};

// Refuse to allocate joint tables beyond this many cells; conditioning-set
// caps in the independence tests keep practical queries far below it.
inline constexpr int64_t kMaxContingencyCells = int64_t{1} << 26;

// CSV with a header row of variable names and an integer-coded body.
// Cardinalities are inferred as (max observed code + 1) per column unless a
// sidecar file `path + ".schema"` exists with one `name:cardinality` line
// per overridden column. Malformed rows, non-integer cells and an empty
// body raise ParseError with the offending line in the message.
Dataset load_csv(const std::string& path);

// Writes the CSV body plus, by default, the full `name:cardinality` sidecar
// so that a later load_csv sees the exact cardinalities (rare states may not
// appear in a small sample).
void write_csv(const Dataset& ds, const std::string& path, bool write_schema_sidecar = true);

ContingencyTable contingency_counts(const Dataset& ds, const std::vector<int>& vars);

}  // namespace bnsl

#endif  // BNSL_DATASET_HPP
