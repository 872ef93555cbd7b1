#ifndef BNSL_SKELETON_HPP
#define BNSL_SKELETON_HPP

#include <vector>

#include "bnsl/graph.hpp"
#include "bnsl/pcselect.hpp"

namespace bnsl {

// And (default): edge iff each endpoint lists the other (the symmetry
// constraint stated conjunctively). Or: edge on either listing, kept as a
// diagnostic for ablation.
enum class MergeRule { And, Or };

// Merges per-variable PC sets into the undirected skeleton. Expects exactly
// one PcSet per variable with pc_sets[i].target == i; throws
// std::invalid_argument on missing or duplicate targets.
Skeleton build_skeleton(const std::vector<PcSet>& pc_sets, MergeRule rule = MergeRule::And);

}  // namespace bnsl

#endif  // BNSL_SKELETON_HPP
