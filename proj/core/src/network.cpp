#include "bnsl/network.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "bnsl/errors.hpp"
#include "bnsl/rng.hpp"

namespace bnsl {

int NetworkModel::n_edges() const {
    int total = 0;
    for (const auto& pl : parent_lists) total += static_cast<int>(pl.size());
    return total;
}

int64_t NetworkModel::parent_config_count(int var) const {
    int64_t q = 1;
    for (int p : parent_lists[var]) q *= cardinalities[p];
    return q;
}

void NetworkModel::validate() const {
    std::size_t m = variable_names.size();
    if (cardinalities.size() != m || parent_lists.size() != m || cpts.size() != m ||
        value_labels.size() != m)
        throw std::invalid_argument("network: field sizes must align");
    topological_order(parent_lists);  // throws on cycles
    for (std::size_t i = 0; i < m; ++i) {
        int r = cardinalities[i];
        if (r < 1) throw std::invalid_argument("network: cardinality must be >= 1");
        std::set<int> distinct(parent_lists[i].begin(), parent_lists[i].end());
        if (distinct.size() != parent_lists[i].size() || distinct.count(static_cast<int>(i)))
            throw std::invalid_argument("network: repeated or self-referencing parent for " +
                                        variable_names[i]);
        if (static_cast<int>(value_labels[i].size()) != r)
            throw std::invalid_argument("network: label count mismatch for " + variable_names[i]);
        int64_t q = parent_config_count(static_cast<int>(i));
        if (static_cast<int64_t>(cpts[i].size()) != q * r)
            throw std::invalid_argument("network: CPT size mismatch for " + variable_names[i]);
        for (int64_t j = 0; j < q; ++j) {
            double sum = 0.0;
            for (int k = 0; k < r; ++k) {
                double p = cpts[i][j * r + k];
                if (p < 0.0) throw std::invalid_argument("network: negative probability for " + variable_names[i]);
                sum += p;
            }
            if (std::fabs(sum - 1.0) > 1e-9)
                throw std::invalid_argument("network: CPT row of " + variable_names[i] + " does not sum to 1");
        }
    }
}

std::vector<int> topological_order(const std::vector<std::vector<int>>& parent_lists) {
    int m = static_cast<int>(parent_lists.size());
    std::vector<int> indegree(m, 0);
    std::vector<std::vector<int>> children(m);
    for (int v = 0; v < m; ++v) {
        for (int p : parent_lists[v]) {
            if (p < 0 || p >= m) throw std::invalid_argument("topological_order: parent index out of range");
            ++indegree[v];
            children[p].push_back(v);
        }
    }
    // Min-heap over a sorted set gives ascending-index tie-breaking.
    std::set<int> ready;
    for (int v = 0; v < m; ++v)
        if (indegree[v] == 0) ready.insert(v);
    std::vector<int> order;
    order.reserve(m);
    while (!ready.empty()) {
        int v = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(v);
        for (int c : children[v])
            if (--indegree[c] == 0) ready.insert(c);
    }
    if (static_cast<int>(order.size()) != m)
        throw std::invalid_argument("topological_order: cycle detected");
    return order;
}

Dag dag_from_network(const NetworkModel& model) {
    Dag g(model.n_vars());
    for (int v = 0; v < model.n_vars(); ++v)
        for (int p : model.parent_lists[v]) g.directed_edges.insert({p, v});
    return g;
}

// ---------------------------------------------------------------------------
// BIF-style network files.
// ---------------------------------------------------------------------------

namespace {

struct Token {
    std::string text;
    int line = 0;
};

// Splits on whitespace and the punctuation {}()[],;| with // and /* */
// comments removed. Quoted strings become single tokens without quotes.
std::vector<Token> tokenize_bif(const std::string& text, const std::string& path) {
    std::vector<Token> tokens;
    int line = 1;
    std::size_t i = 0;
    const std::string punct = "{}()[],;|";
    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') {
            ++line;
            ++i;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
            while (i < text.size() && text[i] != '\n') ++i;
        } else if (c == '/' && i + 1 < text.size() && text[i + 1] == '*') {
            i += 2;
            while (i + 1 < text.size() && !(text[i] == '*' && text[i + 1] == '/')) {
                if (text[i] == '\n') ++line;
                ++i;
            }
            if (i + 1 >= text.size()) throw ParseError(path + ": unterminated comment");
            i += 2;
        } else if (c == '"') {
            std::size_t end = text.find('"', i + 1);
            if (end == std::string::npos) throw ParseError(path + ": unterminated string");
            tokens.push_back({text.substr(i + 1, end - i - 1), line});
            i = end + 1;
        } else if (punct.find(c) != std::string::npos) {
            tokens.push_back({std::string(1, c), line});
            ++i;
        } else {
            std::size_t start = i;
            while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
                   punct.find(text[i]) == std::string::npos && text[i] != '"')
                ++i;
            tokens.push_back({text.substr(start, i - start), line});
        }
    }
    return tokens;
}

class BifParser {
public:
    BifParser(std::vector<Token> tokens, std::string path)
        : tokens_(std::move(tokens)), path_(std::move(path)) {}

    NetworkModel parse();

private:
    std::vector<Token> tokens_;
    std::string path_;
    std::size_t pos_ = 0;
    NetworkModel model_;
    std::vector<bool> has_cpt_;

    [[noreturn]] void fail(const std::string& msg) {
        int line = pos_ < tokens_.size() ? tokens_[pos_].line
                                         : (tokens_.empty() ? 0 : tokens_.back().line);
        throw ParseError(path_ + " line " + std::to_string(line) + ": " + msg);
    }

    bool done() const { return pos_ >= tokens_.size(); }
    const std::string& peek() {
        if (done()) fail("unexpected end of file");
        return tokens_[pos_].text;
    }
    std::string next() {
        if (done()) fail("unexpected end of file");
        return tokens_[pos_++].text;
    }
    void expect(const std::string& t) {
        if (next() != t) {
            --pos_;
            fail("expected '" + t + "', got '" + peek() + "'");
        }
    }
    bool accept(const std::string& t) {
        if (!done() && peek() == t) {
            ++pos_;
            return true;
        }
        return false;
    }

    int variable_index(const std::string& name) {
        auto it = std::find(model_.variable_names.begin(), model_.variable_names.end(), name);
        if (it == model_.variable_names.end()) fail("unknown variable '" + name + "'");
        return static_cast<int>(it - model_.variable_names.begin());
    }

    int parse_int(const std::string& t) {
        int v = 0;
        auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc() || p != t.data() + t.size()) fail("expected integer, got '" + t + "'");
        return v;
    }

    double parse_double(const std::string& t) {
        try {
            std::size_t used = 0;
            double v = std::stod(t, &used);
            if (used != t.size()) fail("expected number, got '" + t + "'");
            return v;
        } catch (const std::exception&) {
            fail("expected number, got '" + t + "'");
        }
    }

    void skip_block() {  // consumes a brace-balanced block, '{' pending
        expect("{");
        int depth = 1;
        while (depth > 0) {
            std::string t = next();
            if (t == "{") ++depth;
            if (t == "}") --depth;
        }
    }

    void skip_property() {  // 'property' already consumed
        while (next() != ";") {
        }
    }

    void parse_variable_block();
    void parse_probability_block();
};

void BifParser::parse_variable_block() {
    std::string name = next();
    if (std::find(model_.variable_names.begin(), model_.variable_names.end(), name) !=
        model_.variable_names.end())
        fail("duplicate variable '" + name + "'");
    expect("{");
    int card = -1;
    std::vector<std::string> labels;
    while (!accept("}")) {
        std::string t = next();
        if (t == "property") {
            skip_property();
        } else if (t == "type") {
            expect("discrete");
            expect("[");
            card = parse_int(next());
            expect("]");
            expect("{");
            while (!accept("}")) {
                std::string label = next();
                if (label == ",") continue;
                labels.push_back(label);
            }
            accept(";");
        } else {
            fail("unexpected token '" + t + "' in variable block");
        }
    }
    if (card < 1) fail("variable '" + name + "' has no discrete type");
    if (static_cast<int>(labels.size()) != card)
        fail("variable '" + name + "' declares " + std::to_string(card) + " values but lists " +
             std::to_string(labels.size()) + " labels");
    model_.variable_names.push_back(name);
    model_.cardinalities.push_back(card);
    model_.value_labels.push_back(std::move(labels));
    model_.parent_lists.emplace_back();
    model_.cpts.emplace_back();
    has_cpt_.push_back(false);
}

void BifParser::parse_probability_block() {
    expect("(");
    int child = variable_index(next());
    std::vector<int> parents;
    if (accept("|")) {
        while (peek() != ")") {
            if (accept(",")) continue;
            int p = variable_index(next());
            if (p == child || std::find(parents.begin(), parents.end(), p) != parents.end())
                fail("repeated or self-referencing parent in probability block");
            parents.push_back(p);
        }
    }
    expect(")");

    if (has_cpt_[child]) fail("duplicate probability block for '" + model_.variable_names[child] + "'");

    int r = model_.cardinalities[child];
    int64_t q = 1;
    for (int p : parents) q *= model_.cardinalities[p];
    // Strides over the parent list, last parent fastest.
    std::vector<int64_t> strides(parents.size(), 1);
    for (int i = static_cast<int>(parents.size()) - 2; i >= 0; --i)
        strides[i] = strides[i + 1] * model_.cardinalities[parents[i + 1]];

    std::vector<double> cpt(static_cast<std::size_t>(q) * r, -1.0);
    std::vector<double> default_row;

    auto read_numbers_until_semicolon = [&] {
        std::vector<double> nums;
        while (true) {
            std::string t = next();
            if (t == ";") break;
            if (t == ",") continue;
            nums.push_back(parse_double(t));
        }
        return nums;
    };

    auto label_code = [&](int var, const std::string& label) {
        const auto& labels = model_.value_labels[var];
        auto it = std::find(labels.begin(), labels.end(), label);
        if (it == labels.end())
            fail("variable '" + model_.variable_names[var] + "' has no value '" + label + "'");
        return static_cast<int>(it - labels.begin());
    };

    expect("{");
    while (!accept("}")) {
        if (accept("property")) {
            skip_property();
            continue;
        }
        if (accept("table")) {
            std::vector<double> nums = read_numbers_until_semicolon();
            if (static_cast<int64_t>(nums.size()) != q * r)
                fail("table for '" + model_.variable_names[child] + "' has " +
                     std::to_string(nums.size()) + " entries, expected " + std::to_string(q * r));
            // Flat tables list the child value slowest: entry (k*q + j) is
            // P(child=k | parent config j).
            for (int64_t j = 0; j < q; ++j)
                for (int k = 0; k < r; ++k) cpt[j * r + k] = nums[static_cast<std::size_t>(k) * q + j];
            continue;
        }
        if (accept("default")) {
            default_row = read_numbers_until_semicolon();
            if (static_cast<int>(default_row.size()) != r)
                fail("default row for '" + model_.variable_names[child] + "' has wrong arity");
            continue;
        }
        expect("(");
        std::vector<int> config;
        while (peek() != ")") {
            if (accept(",")) continue;
            std::string label = next();
            std::size_t slot = config.size();
            if (slot >= parents.size()) fail("too many values in parent configuration");
            config.push_back(label_code(parents[slot], label));
        }
        expect(")");
        if (config.size() != parents.size()) fail("parent configuration has wrong arity");
        std::vector<double> nums = read_numbers_until_semicolon();
        if (static_cast<int>(nums.size()) != r)
            fail("probability row for '" + model_.variable_names[child] + "' has wrong arity");
        int64_t j = 0;
        for (std::size_t i = 0; i < parents.size(); ++i) j += strides[i] * config[i];
        if (cpt[j * r] >= 0.0) fail("duplicate probability row for '" + model_.variable_names[child] + "'");
        for (int k = 0; k < r; ++k) cpt[j * r + k] = nums[k];
    }

    for (int64_t j = 0; j < q; ++j) {
        if (cpt[j * r] < 0.0) {
            if (default_row.empty())
                fail("missing probability row " + std::to_string(j) + " for '" +
                     model_.variable_names[child] + "'");
            for (int k = 0; k < r; ++k) cpt[j * r + k] = default_row[k];
        }
        double sum = 0.0;
        for (int k = 0; k < r; ++k) sum += cpt[j * r + k];
        if (std::fabs(sum - 1.0) > 1e-6)
            fail("probability row of '" + model_.variable_names[child] + "' sums to " +
                 std::to_string(sum) + ", not 1");
        // Normalize, but leave rows already summing to 1 within 1e-12
        // untouched so parse(write(parse(f))) is bit-stable.
        if (std::fabs(sum - 1.0) > 1e-12)
            for (int k = 0; k < r; ++k) cpt[j * r + k] /= sum;
    }

    model_.parent_lists[child] = parents;
    model_.cpts[child] = std::move(cpt);
    has_cpt_[child] = true;
}

NetworkModel BifParser::parse() {
    while (!done()) {
        std::string t = next();
        if (t == "network") {
            while (peek() != "{") next();  // name tokens
            skip_block();
        } else if (t == "variable") {
            parse_variable_block();
        } else if (t == "probability") {
            parse_probability_block();
        } else if (t == "property") {
            skip_property();
        } else {
            --pos_;
            fail("unexpected token '" + t + "'");
        }
    }
    if (model_.n_vars() == 0) throw ParseError(path_ + ": no variables declared");
    for (int i = 0; i < model_.n_vars(); ++i)
        if (!has_cpt_[i])
            throw ParseError(path_ + ": missing probability block for '" + model_.variable_names[i] + "'");
    try {
        topological_order(model_.parent_lists);
    } catch (const std::invalid_argument&) {
        throw ParseError(path_ + ": cycle detected in parent structure");
    }
    return model_;
}

std::string format_probability(double p) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", p);
    return buf;
}

}  // namespace

NetworkModel parse_bif(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    BifParser parser(tokenize_bif(buffer.str(), path), path);
    NetworkModel model = parser.parse();
    model.validate();
    return model;
}

void write_bif(const NetworkModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "network unknown {\n}\n";
    for (int i = 0; i < model.n_vars(); ++i) {
        out << "variable " << model.variable_names[i] << " {\n";
        out << "  type discrete [ " << model.cardinalities[i] << " ] { ";
        for (int k = 0; k < model.cardinalities[i]; ++k) {
            if (k) out << ", ";
            out << model.value_labels[i][k];
        }
        out << " };\n}\n";
    }
    for (int i = 0; i < model.n_vars(); ++i) {
        const auto& parents = model.parent_lists[i];
        int r = model.cardinalities[i];
        out << "probability ( " << model.variable_names[i];
        if (!parents.empty()) {
            out << " | ";
            for (std::size_t k = 0; k < parents.size(); ++k) {
                if (k) out << ", ";
                out << model.variable_names[parents[k]];
            }
        }
        out << " ) {\n";
        int64_t q = model.parent_config_count(i);
        if (parents.empty()) {
            out << "  table ";
            for (int k = 0; k < r; ++k) {
                if (k) out << ", ";
                out << format_probability(model.cpts[i][k]);
            }
            out << ";\n";
        } else {
            std::vector<int64_t> strides(parents.size(), 1);
            for (int k = static_cast<int>(parents.size()) - 2; k >= 0; --k)
                strides[k] = strides[k + 1] * model.cardinalities[parents[k + 1]];
            for (int64_t j = 0; j < q; ++j) {
                out << "  ( ";
                for (std::size_t k = 0; k < parents.size(); ++k) {
                    if (k) out << ", ";
                    int code = static_cast<int>((j / strides[k]) % model.cardinalities[parents[k]]);
                    out << model.value_labels[parents[k]][code];
                }
                out << " ) ";
                for (int k = 0; k < r; ++k) {
                    if (k) out << ", ";
                    out << format_probability(model.cpts[i][j * r + k]);
                }
                out << ";\n";
            }
        }
        out << "}\n";
    }
}

Dataset forward_sample(const NetworkModel& model, std::size_t n, uint64_t seed) {
    model.validate();
    int m = model.n_vars();
    std::vector<int> order = topological_order(model.parent_lists);

    Dataset ds;
    ds.variable_names = model.variable_names;
    ds.cardinalities = model.cardinalities;
    ds.columns.assign(m, std::vector<int32_t>(n));
    ds.n_samples = n;

    // Per-variable strides into the CPT row index, computed once.
    std::vector<std::vector<int64_t>> strides(m);
    for (int v = 0; v < m; ++v) {
        const auto& parents = model.parent_lists[v];
        strides[v].assign(parents.size(), 1);
        for (int k = static_cast<int>(parents.size()) - 2; k >= 0; --k)
            strides[v][k] = strides[v][k + 1] * model.cardinalities[parents[k + 1]];
    }

    Rng rng(seed);
    std::vector<int32_t> row(m, 0);
    for (std::size_t s = 0; s < n; ++s) {
        for (int v : order) {
            const auto& parents = model.parent_lists[v];
            int64_t j = 0;
            for (std::size_t k = 0; k < parents.size(); ++k) j += strides[v][k] * row[parents[k]];
            int r = model.cardinalities[v];
            row[v] = draw_categorical(rng, model.cpts[v].data() + j * r, r);
        }
        for (int v = 0; v < m; ++v) ds.columns[v][s] = row[v];
    }
    return ds;
}

}  // namespace bnsl
