#include <doctest.h>

#include <cmath>

#include "bnsl/errors.hpp"
#include "bnsl/network.hpp"
#include "test_util.hpp"

using namespace bnsl;
using testutil::TempFile;

namespace {

const char* kTwoNodeBif = R"(network two {
}
variable A {
  type discrete [ 2 ] { a0, a1 };
}
variable B {
  type discrete [ 2 ] { b0, b1 };
}
probability ( A ) {
  table 0.3, 0.7;
}
probability ( B | A ) {
  ( a0 ) 0.9, 0.1;
  ( a1 ) 0.2, 0.8;
}
)";

}  // namespace

TEST_SUITE("network") {

TEST_CASE("parse_bif reads a two-node network") {
    TempFile f("two.bif", kTwoNodeBif);
    NetworkModel model = parse_bif(f.path);
    CHECK(model.n_vars() == 2);
    CHECK(model.n_edges() == 1);
    CHECK(model.parent_lists[1] == std::vector<int>{0});
    CHECK(model.cpts[0][0] == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(model.cpts[1][0 * 2 + 0] == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(model.cpts[1][1 * 2 + 1] == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(model.value_labels[0] == std::vector<std::string>{"a0", "a1"});
}

TEST_CASE("parse_bif accepts the flat table form for conditioned variables") {
    // Child value varies slowest in the flat form.
    TempFile f("flat.bif",
               "network n { }\n"
               "variable A { type discrete [ 2 ] { a0, a1 }; }\n"
               "variable B { type discrete [ 2 ] { b0, b1 }; }\n"
               "probability ( A ) { table 0.3, 0.7; }\n"
               "probability ( B | A ) { table 0.9, 0.2, 0.1, 0.8; }\n");
    NetworkModel model = parse_bif(f.path);
    CHECK(model.cpts[1][0 * 2 + 0] == doctest::Approx(0.9).epsilon(1e-12));  // P(b0|a0)
    CHECK(model.cpts[1][1 * 2 + 0] == doctest::Approx(0.2).epsilon(1e-12));  // P(b0|a1)
    CHECK(model.cpts[1][1 * 2 + 1] == doctest::Approx(0.8).epsilon(1e-12));  // P(b1|a1)
}

TEST_CASE("parse_bif rejects a row that does not sum to one") {
    TempFile f("badsum.bif",
               "network n { }\n"
               "variable A { type discrete [ 2 ] { a0, a1 }; }\n"
               "probability ( A ) { table 0.3, 0.6; }\n");
    CHECK_THROWS_WITH_AS(parse_bif(f.path), doctest::Contains("sums to"), ParseError);
}

TEST_CASE("parse_bif rejects unknown variable references") {
    TempFile f("unknown.bif",
               "network n { }\n"
               "variable A { type discrete [ 2 ] { a0, a1 }; }\n"
               "probability ( A | Z ) { ( z0 ) 0.5, 0.5; }\n");
    CHECK_THROWS_WITH_AS(parse_bif(f.path), doctest::Contains("unknown variable"), ParseError);
}

TEST_CASE("parse_bif rejects cyclic parent structures") {
    TempFile f("cycle.bif",
               "network n { }\n"
               "variable A { type discrete [ 2 ] { a0, a1 }; }\n"
               "variable B { type discrete [ 2 ] { b0, b1 }; }\n"
               "probability ( A | B ) { ( b0 ) 0.5, 0.5; ( b1 ) 0.5, 0.5; }\n"
               "probability ( B | A ) { ( a0 ) 0.5, 0.5; ( a1 ) 0.5, 0.5; }\n");
    CHECK_THROWS_WITH_AS(parse_bif(f.path), doctest::Contains("cycle"), ParseError);
}

TEST_CASE("bif round trip reproduces the model") {
    Rng rng(99);
    NetworkModel model = testutil::random_network(rng, 12, 18, 3, testutil::CptStyle::Random);
    TempFile f1("round1.bif"), f2("round2.bif");
    write_bif(model, f1.path);
    NetworkModel once = parse_bif(f1.path);
    write_bif(once, f2.path);
    NetworkModel twice = parse_bif(f2.path);

    REQUIRE(once.n_vars() == model.n_vars());
    CHECK(once.variable_names == model.variable_names);
    CHECK(once.cardinalities == model.cardinalities);
    CHECK(once.parent_lists == model.parent_lists);
    CHECK(once.value_labels == model.value_labels);
    for (int v = 0; v < model.n_vars(); ++v) {
        REQUIRE(once.cpts[v].size() == model.cpts[v].size());
        for (std::size_t i = 0; i < model.cpts[v].size(); ++i)
            CHECK(std::fabs(once.cpts[v][i] - model.cpts[v][i]) < 1e-12);
    }
    CHECK(twice.parent_lists == once.parent_lists);
    CHECK(twice.cpts == once.cpts);  // normalization is idempotent
}

TEST_CASE("deterministic tables force a unique sample") {
    NetworkModel model;
    model.variable_names = {"A", "B"};
    model.cardinalities = {2, 2};
    model.parent_lists = {{}, {0}};
    model.value_labels = {{"a0", "a1"}, {"b0", "b1"}};
    model.cpts = {{0.0, 1.0}, {1.0, 0.0, 0.0, 1.0}};  // A=1 always, B copies A
    Dataset ds = forward_sample(model, 50, 3);
    for (std::size_t row = 0; row < ds.n_samples; ++row) {
        CHECK(ds.columns[0][row] == 1);
        CHECK(ds.columns[1][row] == 1);
    }
}

TEST_CASE("forward_sample is bit-identical for identical seeds") {
    Rng rng(4);
    NetworkModel model = testutil::random_network(rng, 8, 10, 3, testutil::CptStyle::Random);
    Dataset a = forward_sample(model, 400, 17);
    Dataset b = forward_sample(model, 400, 17);
    Dataset c = forward_sample(model, 400, 18);
    CHECK(a.columns == b.columns);
    CHECK(a.columns != c.columns);
}

TEST_CASE("law of large numbers on a single binary root") {
    NetworkModel model;
    model.variable_names = {"A"};
    model.cardinalities = {2};
    model.parent_lists = {{}};
    model.value_labels = {{"a0", "a1"}};
    model.cpts = {{0.7, 0.3}};
    Dataset ds = forward_sample(model, 100000, 5);
    double ones = 0;
    for (int32_t v : ds.columns[0]) ones += v;
    CHECK(std::fabs(ones / 100000.0 - 0.3) <= 0.01);
}

// Empirical joint frequencies converge to the product decomposition of the
// model: total-variation distance below 0.02 at n = 1e5 on small networks.
TEST_CASE("sampling consistency against the factored joint") {
    Rng rng(21);
    for (int trial = 0; trial < 3; ++trial) {
        NetworkModel model = testutil::random_network(rng, 4, 4, 2, testutil::CptStyle::Random);
        Dataset ds = forward_sample(model, 100000, 100 + trial);

        std::vector<int> all_vars{0, 1, 2, 3};
        auto counts = testutil::joint_counts(ds, all_vars);
        double tv = 0.0;
        std::vector<int32_t> config(4, 0);
        for (config[0] = 0; config[0] < 2; ++config[0])
            for (config[1] = 0; config[1] < 2; ++config[1])
                for (config[2] = 0; config[2] < 2; ++config[2])
                    for (config[3] = 0; config[3] < 2; ++config[3]) {
                        double truth = 1.0;
                        for (int v = 0; v < 4; ++v) {
                            int64_t j = 0;
                            for (int p : model.parent_lists[v])
                                j = j * model.cardinalities[p] + config[p];
                            truth *= model.cpts[v][j * 2 + config[v]];
                        }
                        auto it = counts.find(config);
                        double freq = it == counts.end() ? 0.0 : static_cast<double>(it->second) / 1e5;
                        tv += std::fabs(freq - truth);
                    }
        tv *= 0.5;
        CHECK(tv < 0.02);
    }
}

TEST_CASE("topological order breaks ties by index and rejects cycles") {
    CHECK(topological_order({{}, {0}, {0}}) == std::vector<int>{0, 1, 2});
    CHECK_THROWS_AS(topological_order({{1}, {0}}), std::invalid_argument);
}

}  // TEST_SUITE
