#include <doctest.h>

#include <set>

#include "bnsl/pcselect.hpp"
#include "test_util.hpp"

using namespace bnsl;

namespace {

// Noisy-or style model over a tiny fixed structure; flip holds the noise.
NetworkModel two_parent_collider(double flip) {
    // A -> C <- Y: C is (A or Y) with flip noise. Faithful and strongly
    // dependent, unlike an xor parameterization.
    NetworkModel m;
    m.variable_names = {"A", "C", "Y"};
    m.cardinalities = {2, 2, 2};
    m.parent_lists = {{}, {0, 2}, {}};
    m.value_labels = {{"0", "1"}, {"0", "1"}, {"0", "1"}};
    double p1 = 1.0 - flip;
    m.cpts = {{0.5, 0.5},
              {p1, flip,      // A=0, Y=0 -> C mostly 0
               flip, p1,      // A=0, Y=1 -> C mostly 1
               flip, p1,      // A=1, Y=0
               flip, p1},     // A=1, Y=1
              {0.5, 0.5}};
    m.validate();
    return m;
}

NetworkModel three_chain(double flip) {
    // Y -> X -> C with symmetric noise on each hop.
    NetworkModel m;
    m.variable_names = {"Y", "X", "C"};
    m.cardinalities = {2, 2, 2};
    m.parent_lists = {{}, {0}, {1}};
    m.value_labels = {{"0", "1"}, {"0", "1"}, {"0", "1"}};
    double p1 = 1.0 - flip;
    m.cpts = {{0.5, 0.5}, {p1, flip, flip, p1}, {p1, flip, flip, p1}};
    m.validate();
    return m;
}

}  // namespace

TEST_SUITE("pcselect") {

TEST_CASE("forward step with an unreachable threshold is empty") {
    Rng rng(50);
    Dataset ds = testutil::random_dataset(rng, 5, 100, 2);
    MiCache mi(ds);
    PcSet pc = fcbf_forward(mi, 0, 10.0);
    CHECK(pc.members.empty());
    CHECK(pc.target == 0);
}

TEST_CASE("forward step keeps the copy and drops the independent column") {
    Rng rng(51);
    std::vector<int32_t> c(1000), a(1000), b(1000);
    for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] = static_cast<int32_t>(rng() % 2);
        a[i] = c[i];
        b[i] = static_cast<int32_t>(rng() % 2);
    }
    Dataset ds = testutil::make_dataset({c, a, b});
    MiCache mi(ds);
    PcSet pc = fcbf_forward(mi, 0, kDefaultDelta);
    CHECK(pc.members == std::vector<int>{1});
    CHECK(pc.relevance[0] == doctest::Approx(0.6931).epsilon(1e-2));
}

TEST_CASE("forward step output is sorted by relevance with index tie-breaks") {
    Rng rng(52);
    Dataset ds = testutil::random_dataset(rng, 8, 300, 2);
    MiCache mi(ds);
    PcSet pc = fcbf_forward(mi, 3, 0.0);
    CHECK(pc.members.size() == 7);
    for (std::size_t i = 1; i < pc.relevance.size(); ++i) {
        CHECK(pc.relevance[i - 1] >= pc.relevance[i]);
        if (pc.relevance[i - 1] == pc.relevance[i]) CHECK(pc.members[i - 1] < pc.members[i]);
    }
}

TEST_CASE("shrinking delta never removes forward members") {
    Rng rng(53);
    for (int trial = 0; trial < 10; ++trial) {
        Dataset ds = testutil::random_dataset(rng, 6, 200, 2);
        MiCache mi(ds);
        PcSet wide = fcbf_forward(mi, 0, 0.002);
        PcSet narrow = fcbf_forward(mi, 0, 0.01);
        std::set<int> wide_set(wide.members.begin(), wide.members.end());
        for (int v : narrow.members) CHECK(wide_set.count(v) == 1);
    }
}

TEST_CASE("backward step keeps a single member untouched") {
    Rng rng(54);
    Dataset ds = testutil::random_dataset(rng, 3, 100, 2);
    MiCache mi(ds);
    PcSet single;
    single.target = 0;
    single.members = {2};
    single.relevance = {mi.mi(0, 2)};
    PcSet out = fcbf_backward(mi, single);
    CHECK(out.members == std::vector<int>{2});
}

TEST_CASE("spouse of the target is removed at the backward step") {
    // Target A in A -> C <- Y: forward at delta 0 admits Y (noise-level
    // relevance); C ranks first and evicts it since I(C;Y) > I(Y;A).
    NetworkModel model = two_parent_collider(0.05);
    Dataset ds = forward_sample(model, 50000, 60);
    MiCache mi(ds);

    PcSet forward = fcbf_forward(mi, 0, 0.0);
    CHECK(forward.members.front() == 1);  // child C leads
    PcSet pc = fcbf_backward(mi, forward);
    CHECK(pc.members == std::vector<int>{1});

    // At the default threshold the spouse never even enters.
    PcSet direct = learn_pc(mi, 0, kDefaultDelta);
    CHECK(direct.members == std::vector<int>{1});
}

TEST_CASE("grandparent is removed at the backward step") {
    NetworkModel model = three_chain(0.1);
    Dataset ds = forward_sample(model, 50000, 61);
    MiCache mi(ds);
    // Target C (index 2): forward admits X then Y; backward drops Y because
    // I(X;Y) > I(Y;C) on a noisy chain.
    PcSet forward = fcbf_forward(mi, 2, 0.0);
    REQUIRE(forward.members.size() == 2);
    CHECK(forward.members[0] == 1);
    PcSet pc = fcbf_backward(mi, forward);
    CHECK(pc.members == std::vector<int>{1});
}

TEST_CASE("backward removals replay exactly") {
    Rng rng(55);
    for (int trial = 0; trial < 10; ++trial) {
        Dataset ds = testutil::random_dataset(rng, 7, 150, 2);
        MiCache mi(ds);
        PcSet forward = fcbf_forward(mi, 0, 0.0);
        PcSet kept = fcbf_backward(mi, forward);
        std::set<int> survivors(kept.members.begin(), kept.members.end());

        for (std::size_t j = 0; j < forward.members.size(); ++j) {
            int y = forward.members[j];
            bool has_earlier_dominator = false;
            for (std::size_t i = 0; i < j; ++i) {
                int x = forward.members[i];
                if (survivors.count(x) && mi.mi(x, y) > forward.relevance[j]) {
                    has_earlier_dominator = true;
                    break;
                }
            }
            CHECK(survivors.count(y) == (has_earlier_dominator ? 0u : 1u));
        }
    }
}

TEST_CASE("fully independent data gives empty PC sets at the default delta") {
    Rng rng(56);
    Dataset ds = testutil::random_dataset(rng, 6, 2000, 2);
    MiCache mi(ds);
    std::vector<PcSet> pcs = learn_all_pc(mi, kDefaultDelta, 2);
    for (const PcSet& pc : pcs) CHECK(pc.members.empty());
}

TEST_CASE("star center recovers all four leaves") {
    // C at index 0 with children 1..4.
    Dag star(5);
    for (int leaf = 1; leaf < 5; ++leaf) star.directed_edges.insert({0, leaf});
    Rng rng(57);
    NetworkModel model = testutil::random_network(rng, star, 2, testutil::CptStyle::NearDeterministic);
    Dataset ds = forward_sample(model, 20000, 62);
    MiCache mi(ds);
    PcSet pc = learn_pc(mi, 0, kDefaultDelta);
    std::set<int> found(pc.members.begin(), pc.members.end());
    CHECK(found == std::set<int>{1, 2, 3, 4});
}

TEST_CASE("learn_all_pc is schedule independent") {
    Rng rng(58);
    Dataset ds = testutil::random_dataset(rng, 10, 400, 2);
    MiCache mi_serial(ds), mi_parallel(ds);
    std::vector<PcSet> serial = learn_all_pc(mi_serial, 0.01, 1);
    std::vector<PcSet> parallel = learn_all_pc(mi_parallel, 0.01, 4);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].members == parallel[i].members);
        CHECK(serial[i].relevance == parallel[i].relevance);
    }
}

TEST_CASE("mrmr with k = 1 picks the single most relevant feature") {
    NetworkModel model = three_chain(0.1);
    Dataset ds = forward_sample(model, 20000, 63);
    MiCache mi(ds);
    std::vector<int> picks = mrmr_select(mi, 2, 1);
    CHECK(picks == std::vector<int>{1});
}

TEST_CASE("mrmr avoids a duplicated feature on the second pick") {
    Rng rng(59);
    std::vector<int32_t> c(20000), x1(c.size()), x2(c.size()), w(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] = static_cast<int32_t>(rng() % 2);
        x1[i] = rng() % 10 == 0 ? 1 - c[i] : c[i];  // strong signal
        x2[i] = x1[i];                              // exact duplicate
        w[i] = rng() % 3 == 0 ? 1 - c[i] : c[i];    // weaker signal
    }
    Dataset ds = testutil::make_dataset({c, x1, x2, w});
    MiCache mi(ds);

    std::vector<int> picks = mrmr_select(mi, 0, 2);
    REQUIRE(picks.size() == 2);
    CHECK(picks[0] == 1);  // x1 (ties with x2 break by index)
    CHECK(picks[1] == 3);  // the duplicate scores I - I(x1;x2) << score of w

    // Exhaustive check of the greedy objective at step 2.
    double dup_score = mi.mi(0, 2) - mi.mi(1, 2);
    double w_score = mi.mi(0, 3) - mi.mi(1, 3);
    CHECK(w_score > dup_score);
}

TEST_CASE("mrmr with k = n-1 returns a permutation of all features") {
    Rng rng(60);
    Dataset ds = testutil::random_dataset(rng, 6, 100, 2);
    MiCache mi(ds);
    std::vector<int> picks = mrmr_select(mi, 2, 5);
    std::set<int> unique(picks.begin(), picks.end());
    CHECK(unique == std::set<int>{0, 1, 3, 4, 5});
}

TEST_CASE("mrmr rejects out-of-range k") {
    Rng rng(61);
    Dataset ds = testutil::random_dataset(rng, 4, 50, 2);
    MiCache mi(ds);
    CHECK_THROWS_AS(mrmr_select(mi, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(mrmr_select(mi, 0, 4), std::invalid_argument);
}

// Canonical three-way structures: parents and children stay, spouses and
// remote ancestors/descendants are excluded, across sampling seeds.
TEST_CASE("canonical structures recover the exact true PC across seeds") {
    struct Case {
        const char* name;
        NetworkModel model;
        int target;
        std::set<int> truth;
    };
    NetworkModel chain_mid = three_chain(0.1);  // target X: PC = {Y, C}
    std::vector<Case> cases;
    cases.push_back({"parent+child", chain_mid, 1, {0, 2}});
    cases.push_back({"two parents", two_parent_collider(0.05), 1, {0, 2}});
    cases.push_back({"spouse excluded", two_parent_collider(0.05), 0, {1}});
    cases.push_back({"ancestor excluded", three_chain(0.1), 2, {1}});

    for (const Case& c : cases) {
        CAPTURE(c.name);
        int hits = 0;
        for (uint64_t seed = 0; seed < 10; ++seed) {
            Dataset ds = forward_sample(c.model, 50000, 7000 + seed);
            MiCache mi(ds);
            PcSet pc = learn_pc(mi, c.target, kDefaultDelta);
            std::set<int> found(pc.members.begin(), pc.members.end());
            hits += found == c.truth;
        }
        CHECK(hits >= 9);
    }
}

}  // TEST_SUITE
