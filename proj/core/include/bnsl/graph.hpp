#ifndef BNSL_GRAPH_HPP
#define BNSL_GRAPH_HPP

#include <set>
#include <utility>
#include <vector>

namespace bnsl {

// Undirected graph over variables 0..n_vars-1 with canonical (min,max)
// edge pairs and no self loops.
struct Skeleton {
    int n_vars = 0;
    std::set<std::pair<int, int>> edges;

    Skeleton() = default;
    explicit Skeleton(int n) : n_vars(n) {}

    bool has_edge(int i, int j) const;
    void add_edge(int i, int j);
    std::vector<std::vector<int>> neighbor_lists() const;
};

// Mixed graph: oriented arcs plus still-undirected skeleton edges. A pair of
// variables appears in at most one of the two sets, and never directed in
// both directions.
struct Pdag {
    int n_vars = 0;
    std::set<std::pair<int, int>> directed_edges;    // (from, to)
    std::set<std::pair<int, int>> undirected_edges;  // canonical (min,max)

    Pdag() = default;
    explicit Pdag(int n) : n_vars(n) {}

    bool adjacent(int i, int j) const;
    bool has_directed(int i, int j) const;
    bool has_undirected(int i, int j) const;
    void add_undirected(int i, int j);
    // Turns the undirected edge {i,j} into i->j; returns false when {i,j}
    // is not currently undirected.
    bool orient(int i, int j);
    std::size_t n_adjacencies() const { return directed_edges.size() + undirected_edges.size(); }
    // All adjacencies as canonical pairs (direction dropped).
    std::set<std::pair<int, int>> adjacency_pairs() const;

    bool operator==(const Pdag&) const = default;
};

struct Dag {
    int n_vars = 0;
    std::set<std::pair<int, int>> directed_edges;  // (from, to)

    Dag() = default;
    explicit Dag(int n) : n_vars(n) {}

    bool has_edge(int i, int j) const { return directed_edges.count({i, j}) > 0; }
    bool adjacent(int i, int j) const { return has_edge(i, j) || has_edge(j, i); }
    int n_edges() const { return static_cast<int>(directed_edges.size()); }
    std::vector<std::vector<int>> parent_lists() const;
    std::vector<std::vector<int>> children_lists() const;

    bool operator==(const Dag&) const = default;
};

bool is_acyclic(const Dag& g);

// Every directed edge becomes an arc of the Pdag; nothing is undirected.
Pdag pdag_from_dag(const Dag& g);

Skeleton skeleton_of(const Dag& g);

// Parents-and-children neighbor sets per variable.
std::vector<std::set<int>> adjacency_sets(const Dag& g);

}  // namespace bnsl

#endif  // BNSL_GRAPH_HPP
