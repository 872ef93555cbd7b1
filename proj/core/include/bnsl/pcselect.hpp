#ifndef BNSL_PCSELECT_HPP
#define BNSL_PCSELECT_HPP

#include <vector>

#include "bnsl/info.hpp"

namespace bnsl {

// Candidate parents-and-children of one target variable, ordered by
// non-increasing relevance I(target; member). members are distinct, never
// contain the target, and every relevance is >= the delta used to build it.
struct PcSet {
    int target = -1;
    std::vector<int> members;
    std::vector<double> relevance;  // parallel to members
};

inline constexpr double kDefaultDelta = 0.05;

// Max-relevance step: every X != target with I(target;X) >= delta, sorted
// by relevance descending, ties broken by ascending variable index.
PcSet fcbf_forward(const MiCache& mi, int target, double delta);

// Min-redundancy step: scan members front to back; each surviving X removes
// every later Y with I(X;Y) > I(Y;target). Comparison is strict and uses
// the cached values without an epsilon band. Order is preserved.
PcSet fcbf_backward(const MiCache& mi, PcSet candidates);

// fcbf_backward after fcbf_forward.
PcSet learn_pc(const MiCache& mi, int target, double delta);

// One PcSet per variable; targets are processed in parallel and stored by
// index, so the result does not depend on the schedule.
std::vector<PcSet> learn_all_pc(const MiCache& mi, double delta, int threads = 1);

// Greedy selection of exactly k features maximizing
//   I(X;target) - sum_{V in selected} I(V;X)
// at each step, ties broken by ascending index. Throws when k is out of
// range (k < 1 or k > n_vars - 1).
std::vector<int> mrmr_select(const MiCache& mi, int target, int k);

}  // namespace bnsl

#endif  // BNSL_PCSELECT_HPP
