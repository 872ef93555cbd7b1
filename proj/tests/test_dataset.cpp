#include <doctest.h>

#include "bnsl/dataset.hpp"
#include "bnsl/errors.hpp"
#include "test_util.hpp"

using namespace bnsl;
using testutil::TempFile;

TEST_SUITE("dataset") {

TEST_CASE("load_csv parses a minimal file") {
    TempFile f("min.csv", "A,B\n0,1\n1,0\n");
    Dataset ds = load_csv(f.path);
    CHECK(ds.n_samples == 2);
    CHECK(ds.variable_names == std::vector<std::string>{"A", "B"});
    CHECK(ds.cardinalities == std::vector<int>{2, 2});
    CHECK(ds.columns[0] == std::vector<int32_t>{0, 1});
    CHECK(ds.columns[1] == std::vector<int32_t>{1, 0});
}

TEST_CASE("load_csv names the line of a malformed row") {
    TempFile f("arity.csv", "A,B\n0,1\n0\n");
    CHECK_THROWS_WITH_AS(load_csv(f.path), doctest::Contains("line 3"), ParseError);
}

TEST_CASE("load_csv rejects non-integer cells") {
    TempFile f("nonint.csv", "A,B\n0,x\n");
    CHECK_THROWS_WITH_AS(load_csv(f.path), doctest::Contains("non-integer"), ParseError);
}

TEST_CASE("load_csv rejects an empty body") {
    TempFile f("empty.csv", "A,B\n");
    CHECK_THROWS_WITH_AS(load_csv(f.path), doctest::Contains("no data rows"), ParseError);
}

TEST_CASE("load_csv rejects negative codes") {
    TempFile f("neg.csv", "A\n-1\n");
    CHECK_THROWS_AS(load_csv(f.path), ParseError);
}

TEST_CASE("schema sidecar overrides inferred cardinalities") {
    TempFile f("schema.csv", "A,B\n0,0\n1,0\n");
    {
        std::ofstream schema(f.path + ".schema");
        schema << "B:3\n";
    }
    Dataset ds = load_csv(f.path);
    CHECK(ds.cardinalities == std::vector<int>{2, 3});

    SUBCASE("declared cardinality below observed codes fails") {
        std::ofstream schema(f.path + ".schema");
        schema << "A:1\n";
        schema.close();
        CHECK_THROWS_AS(load_csv(f.path), ParseError);
    }
}

TEST_CASE("csv round trip preserves a 35-variable, 500-row sample") {
    Rng rng(7);
    NetworkModel model = testutil::random_network(rng, 35, 46, 3, testutil::CptStyle::Random);
    Dataset ds = forward_sample(model, 500, 11);
    TempFile f("sample35.csv");
    write_csv(ds, f.path);
    Dataset loaded = load_csv(f.path);
    CHECK(loaded.n_samples == 500);
    CHECK(loaded.n_vars() == 35);
    CHECK(loaded.cardinalities == ds.cardinalities);  // via the sidecar
    CHECK(loaded.columns == ds.columns);
}

TEST_CASE("contingency over no variables is a single cell with N") {
    Dataset ds = testutil::make_dataset({{0, 1, 1}, {1, 0, 1}});
    ContingencyTable t = contingency_counts(ds, {});
    REQUIRE(t.counts.size() == 1);
    CHECK(t.counts[0] == 3);
    CHECK(t.total == 3);
}

TEST_CASE("contingency counts match hand counts on two binary columns") {
    Dataset ds = testutil::make_dataset({{0, 0, 1}, {0, 0, 1}});
    ContingencyTable t = contingency_counts(ds, {0, 1});
    CHECK(t.counts == std::vector<int64_t>{2, 0, 0, 1});
}

TEST_CASE("contingency rejects duplicate and out-of-range indices") {
    Dataset ds = testutil::make_dataset({{0, 1}, {1, 0}});
    CHECK_THROWS_AS(contingency_counts(ds, {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(contingency_counts(ds, {0, 5}), std::invalid_argument);
}

// Marginalizing the k-variable table over its last axis must equal the
// (k-1)-variable table computed directly, and every cell must agree with an
// independent map-based count.
TEST_CASE("contingency marginalization consistency on random datasets") {
    Rng rng(123);
    for (int trial = 0; trial < 20; ++trial) {
        int m = 4 + static_cast<int>(rng() % 2);
        Dataset ds = testutil::random_dataset(rng, m, 60, 3);
        std::vector<int> vars;
        for (int i = 0; i < m; ++i) vars.push_back(i);
        std::shuffle(vars.begin(), vars.end(), rng);
        int k = 2 + static_cast<int>(rng() % 3);  // 2..4 variables
        vars.resize(k);

        ContingencyTable full = contingency_counts(ds, vars);
        std::vector<int> reduced_vars(vars.begin(), vars.end() - 1);
        ContingencyTable reduced = contingency_counts(ds, reduced_vars);

        int last_card = full.dims.back();
        REQUIRE(full.counts.size() == reduced.counts.size() * last_card);
        for (std::size_t cell = 0; cell < reduced.counts.size(); ++cell) {
            int64_t sum = 0;
            for (int v = 0; v < last_card; ++v) sum += full.counts[cell * last_card + v];
            CHECK(sum == reduced.counts[cell]);
        }

        auto oracle = testutil::joint_counts(ds, vars);
        int64_t nonzero = 0;
        for (const auto& [key, count] : oracle) {
            int64_t idx = 0;
            for (std::size_t i = 0; i < vars.size(); ++i) idx = idx * full.dims[i] + key[i];
            CHECK(full.counts[static_cast<std::size_t>(idx)] == count);
            ++nonzero;
        }
        int64_t table_nonzero = 0;
        for (int64_t c : full.counts)
            if (c > 0) ++table_nonzero;
        CHECK(table_nonzero == nonzero);
    }
}

TEST_CASE("validate flags out-of-range values") {
    Dataset ds = testutil::make_dataset({{0, 1}});
    ds.cardinalities[0] = 1;
    CHECK_THROWS_AS(ds.validate(), std::invalid_argument);
}

}  // TEST_SUITE
