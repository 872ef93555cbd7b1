#include "bnsl/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <sys/stat.h>

#include "bnsl/errors.hpp"

namespace bnsl {

void Dataset::validate() const {
    std::size_t m = variable_names.size();
    if (cardinalities.size() != m || columns.size() != m)
        throw std::invalid_argument("dataset: names, cardinalities and columns must align");
    for (std::size_t i = 0; i < m; ++i) {
        if (cardinalities[i] < 1)
            throw std::invalid_argument("dataset: cardinality of " + variable_names[i] + " must be >= 1");
        if (columns[i].size() != n_samples)
            throw std::invalid_argument("dataset: column " + variable_names[i] + " has wrong length");
        for (int32_t v : columns[i]) {
            if (v < 0 || v >= cardinalities[i])
                throw std::invalid_argument("dataset: value out of range in column " + variable_names[i]);
        }
    }
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(trim(field));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

bool file_exists(const std::string& path) {
    struct stat st;
    return ::stat(path.c_str(), &st) == 0;
}

// Overrides inferred cardinalities from a `name:cardinality` sidecar.
void apply_schema(const std::string& schema_path, Dataset& ds) {
    std::ifstream in(schema_path);
    if (!in) throw ParseError("cannot open schema file " + schema_path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto colon = t.find(':');
        if (colon == std::string::npos)
            throw ParseError(schema_path + " line " + std::to_string(lineno) + ": expected name:cardinality");
        std::string name = trim(t.substr(0, colon));
        std::string card_text = trim(t.substr(colon + 1));
        int card = 0;
        auto [p, ec] = std::from_chars(card_text.data(), card_text.data() + card_text.size(), card);
        if (ec != std::errc() || p != card_text.data() + card_text.size() || card < 1)
            throw ParseError(schema_path + " line " + std::to_string(lineno) + ": bad cardinality '" + card_text + "'");
        auto it = std::find(ds.variable_names.begin(), ds.variable_names.end(), name);
        if (it == ds.variable_names.end())
            throw ParseError(schema_path + " line " + std::to_string(lineno) + ": unknown variable '" + name + "'");
        std::size_t idx = static_cast<std::size_t>(it - ds.variable_names.begin());
        for (int32_t v : ds.columns[idx]) {
            if (v >= card)
                throw ParseError(schema_path + ": variable '" + name + "' has observed code " +
                                 std::to_string(v) + " >= declared cardinality " + std::to_string(card));
        }
        ds.cardinalities[idx] = card;
    }
}

}  // namespace

Dataset load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) throw ParseError(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    Dataset ds;
    ds.variable_names = split_csv_line(line);
    if (ds.variable_names.empty() || (ds.variable_names.size() == 1 && ds.variable_names[0].empty()))
        throw ParseError(path + ": header row has no variable names");
    std::size_t m = ds.variable_names.size();
    ds.columns.assign(m, {});
    ds.cardinalities.assign(m, 1);

    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != m)
            throw ParseError(path + " line " + std::to_string(lineno) + ": expected " +
                             std::to_string(m) + " fields, got " + std::to_string(fields.size()));
        for (std::size_t i = 0; i < m; ++i) {
            const std::string& f = fields[i];
            int32_t v = 0;
            auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
            if (ec != std::errc() || p != f.data() + f.size())
                throw ParseError(path + " line " + std::to_string(lineno) + ": non-integer cell '" + f +
                                 "' in column " + ds.variable_names[i]);
            if (v < 0)
                throw ParseError(path + " line " + std::to_string(lineno) + ": negative code in column " +
                                 ds.variable_names[i]);
            ds.columns[i].push_back(v);
            if (v + 1 > ds.cardinalities[i]) ds.cardinalities[i] = v + 1;
        }
        ++ds.n_samples;
    }
    if (ds.n_samples == 0) throw ParseError(path + ": no data rows");

    std::string schema_path = path + ".schema";
    if (file_exists(schema_path)) apply_schema(schema_path, ds);

    ds.validate();
    return ds;
}

void write_csv(const Dataset& ds, const std::string& path, bool write_schema_sidecar) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    for (std::size_t i = 0; i < ds.variable_names.size(); ++i) {
        if (i) out << ',';
        out << ds.variable_names[i];
    }
    out << '\n';
    for (std::size_t row = 0; row < ds.n_samples; ++row) {
        for (std::size_t i = 0; i < ds.columns.size(); ++i) {
            if (i) out << ',';
            out << ds.columns[i][row];
        }
        out << '\n';
    }
    if (write_schema_sidecar) {
        std::ofstream schema(path + ".schema");
        if (!schema) throw std::runtime_error("cannot write " + path + ".schema");
        for (std::size_t i = 0; i < ds.variable_names.size(); ++i)
            schema << ds.variable_names[i] << ':' << ds.cardinalities[i] << '\n';
    }
}

ContingencyTable contingency_counts(const Dataset& ds, const std::vector<int>& vars) {
    std::set<int> seen;
    for (int v : vars) {
        if (v < 0 || v >= ds.n_vars())
            throw std::invalid_argument("contingency_counts: variable index " + std::to_string(v) + " out of range");
        if (!seen.insert(v).second)
            throw std::invalid_argument("contingency_counts: duplicate variable index " + std::to_string(v));
    }

    ContingencyTable table;
    table.variable_indices = vars;
    table.dims.reserve(vars.size());
    int64_t cells = 1;
    for (int v : vars) {
        int card = ds.cardinalities[v];
        table.dims.push_back(card);
        cells *= card;
        if (cells > kMaxContingencyCells)
            throw std::invalid_argument("contingency_counts: joint space exceeds cell cap");
    }

    table.counts.assign(static_cast<std::size_t>(cells), 0);
    // Row-major strides: last variable varies fastest.
    std::vector<int64_t> strides(vars.size(), 1);
    for (int i = static_cast<int>(vars.size()) - 2; i >= 0; --i)
        strides[i] = strides[i + 1] * table.dims[i + 1];

    for (std::size_t row = 0; row < ds.n_samples; ++row) {
        int64_t idx = 0;
        for (std::size_t i = 0; i < vars.size(); ++i)
            idx += strides[i] * ds.columns[vars[i]][row];
        ++table.counts[static_cast<std::size_t>(idx)];
    }
    table.total = static_cast<int64_t>(ds.n_samples);
    return table;
}

}  // namespace bnsl
