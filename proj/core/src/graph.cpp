#include "bnsl/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace bnsl {

namespace {
std::pair<int, int> canonical(int i, int j) { return {std::min(i, j), std::max(i, j)}; }
}  // namespace

bool Skeleton::has_edge(int i, int j) const { return edges.count(canonical(i, j)) > 0; }

void Skeleton::add_edge(int i, int j) {
    if (i == j) throw std::invalid_argument("skeleton: self loop");
    edges.insert(canonical(i, j));
}

std::vector<std::vector<int>> Skeleton::neighbor_lists() const {
    std::vector<std::vector<int>> nbrs(n_vars);
    for (auto [i, j] : edges) {
        nbrs[i].push_back(j);
        nbrs[j].push_back(i);
    }
    for (auto& v : nbrs) std::sort(v.begin(), v.end());
    return nbrs;
}

bool Pdag::adjacent(int i, int j) const {
    return has_undirected(i, j) || has_directed(i, j) || has_directed(j, i);
}

bool Pdag::has_directed(int i, int j) const { return directed_edges.count({i, j}) > 0; }

bool Pdag::has_undirected(int i, int j) const { return undirected_edges.count(canonical(i, j)) > 0; }

void Pdag::add_undirected(int i, int j) {
    if (i == j) throw std::invalid_argument("pdag: self loop");
    if (has_directed(i, j) || has_directed(j, i))
        throw std::invalid_argument("pdag: pair already directed");
    undirected_edges.insert(canonical(i, j));
}

bool Pdag::orient(int i, int j) {
    auto it = undirected_edges.find(canonical(i, j));
    if (it == undirected_edges.end()) return false;
    undirected_edges.erase(it);
    directed_edges.insert({i, j});
    return true;
}

std::set<std::pair<int, int>> Pdag::adjacency_pairs() const {
    std::set<std::pair<int, int>> pairs = undirected_edges;
    for (auto [i, j] : directed_edges) pairs.insert(canonical(i, j));
    return pairs;
}

std::vector<std::vector<int>> Dag::parent_lists() const {
    std::vector<std::vector<int>> parents(n_vars);
    for (auto [i, j] : directed_edges) parents[j].push_back(i);
    for (auto& v : parents) std::sort(v.begin(), v.end());
    return parents;
}

std::vector<std::vector<int>> Dag::children_lists() const {
    std::vector<std::vector<int>> children(n_vars);
    for (auto [i, j] : directed_edges) children[i].push_back(j);
    for (auto& v : children) std::sort(v.begin(), v.end());
    return children;
}

bool is_acyclic(const Dag& g) {
    std::vector<int> indegree(g.n_vars, 0);
    std::vector<std::vector<int>> children(g.n_vars);
    for (auto [i, j] : g.directed_edges) {
        ++indegree[j];
        children[i].push_back(j);
    }
    std::vector<int> frontier;
    for (int i = 0; i < g.n_vars; ++i)
        if (indegree[i] == 0) frontier.push_back(i);
    int removed = 0;
    while (!frontier.empty()) {
        int v = frontier.back();
        frontier.pop_back();
        ++removed;
        for (int c : children[v])
            if (--indegree[c] == 0) frontier.push_back(c);
    }
    return removed == g.n_vars;
}

Pdag pdag_from_dag(const Dag& g) {
    Pdag p(g.n_vars);
    p.directed_edges = g.directed_edges;
    return p;
}

Skeleton skeleton_of(const Dag& g) {
    Skeleton sk(g.n_vars);
    for (auto [i, j] : g.directed_edges) sk.add_edge(i, j);
    return sk;
}

std::vector<std::set<int>> adjacency_sets(const Dag& g) {
    std::vector<std::set<int>> adj(g.n_vars);
    for (auto [i, j] : g.directed_edges) {
        adj[i].insert(j);
        adj[j].insert(i);
    }
    return adj;
}

}  // namespace bnsl
