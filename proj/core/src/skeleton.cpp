#include "bnsl/skeleton.hpp"

#include <stdexcept>
#include <unordered_set>

namespace bnsl {

Skeleton build_skeleton(const std::vector<PcSet>& pc_sets, MergeRule rule) {
    int m = static_cast<int>(pc_sets.size());
    for (int i = 0; i < m; ++i) {
        if (pc_sets[i].target != i)
            throw std::invalid_argument("build_skeleton: expected PC set for variable " + std::to_string(i) +
                                        " at position " + std::to_string(i) + ", got target " +
                                        std::to_string(pc_sets[i].target));
    }

    std::vector<std::unordered_set<int>> membership(m);
    for (int i = 0; i < m; ++i)
        membership[i] = std::unordered_set<int>(pc_sets[i].members.begin(), pc_sets[i].members.end());

    Skeleton sk(m);
    for (int i = 0; i < m; ++i) {
        for (int j : pc_sets[i].members) {
            if (j < 0 || j >= m) throw std::invalid_argument("build_skeleton: member index out of range");
            if (j == i) throw std::invalid_argument("build_skeleton: PC set contains its own target");
            if (j < i) continue;  // each unordered pair handled once
            bool forward = true;                      // j in PC(i) by construction
            bool backward = membership[j].count(i);   // i in PC(j)
            bool edge = (rule == MergeRule::And) ? (forward && backward) : (forward || backward);
            if (edge) sk.add_edge(i, j);
        }
    }
    // The Or rule can also create an edge from the lower-index side only.
    if (rule == MergeRule::Or) {
        for (int i = 0; i < m; ++i)
            for (int j : pc_sets[i].members)
                if (j < i) sk.add_edge(i, j);
    }
    return sk;
}

}  // namespace bnsl
