#include <doctest.h>

#include "bnsl/skeleton.hpp"
#include "test_util.hpp"

using namespace bnsl;

namespace {

PcSet make_pc(int target, std::vector<int> members) {
    PcSet pc;
    pc.target = target;
    pc.members = std::move(members);
    pc.relevance.assign(pc.members.size(), 1.0);
    return pc;
}

}  // namespace

TEST_SUITE("skeleton") {

TEST_CASE("all-empty PC sets give an edgeless skeleton") {
    std::vector<PcSet> pcs{make_pc(0, {}), make_pc(1, {}), make_pc(2, {})};
    Skeleton sk = build_skeleton(pcs);
    CHECK(sk.edges.empty());
    CHECK(sk.n_vars == 3);
}

TEST_CASE("asymmetric membership: AND drops, OR keeps") {
    std::vector<PcSet> pcs{make_pc(0, {1}), make_pc(1, {})};
    CHECK(build_skeleton(pcs, MergeRule::And).edges.empty());
    Skeleton either = build_skeleton(pcs, MergeRule::Or);
    CHECK(either.edges == std::set<std::pair<int, int>>{{0, 1}});

    SUBCASE("asymmetry visible only from the higher index behaves the same") {
        std::vector<PcSet> rev{make_pc(0, {}), make_pc(1, {0})};
        CHECK(build_skeleton(rev, MergeRule::And).edges.empty());
        CHECK(build_skeleton(rev, MergeRule::Or).edges == std::set<std::pair<int, int>>{{0, 1}});
    }
}

TEST_CASE("perfect PC sets reproduce the undirected edge set of the DAG") {
    Rng rng(70);
    Dag dag = testutil::random_dag(rng, 6, 8);
    auto adj = adjacency_sets(dag);
    std::vector<PcSet> pcs;
    for (int v = 0; v < 6; ++v) pcs.push_back(make_pc(v, {adj[v].begin(), adj[v].end()}));
    Skeleton sk = build_skeleton(pcs);
    CHECK(sk.edges == skeleton_of(dag).edges);
}

TEST_CASE("AND skeleton is a subset of the OR skeleton") {
    Rng rng(71);
    for (int trial = 0; trial < 10; ++trial) {
        Dataset ds = testutil::random_dataset(rng, 6, 150, 2);
        MiCache mi(ds);
        std::vector<PcSet> pcs = learn_all_pc(mi, 0.005, 1);
        Skeleton anded = build_skeleton(pcs, MergeRule::And);
        Skeleton ored = build_skeleton(pcs, MergeRule::Or);
        for (const auto& e : anded.edges) CHECK(ored.edges.count(e) == 1);
    }
}

TEST_CASE("rebuilding from the same PC sets is idempotent") {
    Rng rng(72);
    Dataset ds = testutil::random_dataset(rng, 5, 100, 2);
    MiCache mi(ds);
    std::vector<PcSet> pcs = learn_all_pc(mi, 0.01, 1);
    CHECK(build_skeleton(pcs).edges == build_skeleton(pcs).edges);
}

TEST_CASE("misplaced and duplicate targets are rejected") {
    std::vector<PcSet> swapped{make_pc(1, {}), make_pc(0, {})};
    CHECK_THROWS_AS(build_skeleton(swapped), std::invalid_argument);
    std::vector<PcSet> duplicated{make_pc(0, {}), make_pc(0, {})};
    CHECK_THROWS_AS(build_skeleton(duplicated), std::invalid_argument);
}

}  // TEST_SUITE
