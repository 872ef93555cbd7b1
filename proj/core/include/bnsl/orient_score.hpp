#ifndef BNSL_ORIENT_SCORE_HPP
#define BNSL_ORIENT_SCORE_HPP

#include <cstdint>
#include <map>
#include <mutex>
#include <vector>

#include "bnsl/dataset.hpp"
#include "bnsl/graph.hpp"

namespace bnsl {

inline constexpr double kDefaultEss = 10.0;
inline constexpr int64_t kMaxParentConfigs = int64_t{1} << 20;
inline constexpr int64_t kDefaultMaxIters = int64_t{1} << 20;
// Deltas at or below this are rounding noise between score-equivalent
// structures, not improvements; accepting them would stall the strictly
// increasing score contract.
inline constexpr double kMinScoreDelta = 1e-9;

// BDeu local score of variable x with the given parent set:
//   sum_j [ lnG(a_j) - lnG(a_j + N_j) + sum_k ( lnG(a_jk + N_jk) - lnG(a_jk) ) ]
// with a_jk = ess/(q r), a_j = ess/q, q = number of parent configurations,
// r = cardinality(x). Parent configurations absent from the data contribute
// zero, so only observed configurations are touched. Throws on an empty
// dataset, x in parents, or q exceeding kMaxParentConfigs.
double local_bdeu(const Dataset& ds, int x, const std::vector<int>& parents, double ess);

double total_bdeu(const Dataset& ds, const Dag& g, double ess);

// Memoized local scores keyed by (variable, sorted parent set). Reads and
// writes are mutex-protected; values equal a fresh local_bdeu exactly.
class ScoreCache {
public:
    ScoreCache(const Dataset& ds, double ess) : ds_(&ds), ess_(ess) {}

    double local(int x, const std::vector<int>& parents) const;
    double ess() const { return ess_; }

private:
    const Dataset* ds_;
    double ess_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<int, std::vector<int>>, double> table_;
};

struct HillClimbStats {
    int64_t iterations = 0;
    // Total score after each accepted operator; front is the empty graph.
    std::vector<double> score_trace;
};

// Greedy BDeu search from the empty graph. Operators per iteration: add
// i->j only when {i,j} is a skeleton edge, delete any existing arc, reverse
// any existing arc. The largest delta above kMinScoreDelta wins subject to
// acyclicity; ties prefer add over reverse over delete, then lexicographic
// (i,j). Deltas touch only the local scores of affected variables. An
// operator whose new parent set would exceed kMaxParentConfigs is rejected,
// not the run.
Dag hill_climb(const Dataset& ds, const Skeleton& sk, double ess,
               int64_t max_iters = kDefaultMaxIters, int threads = 1,
               HillClimbStats* stats = nullptr);

}  // namespace bnsl

#endif  // BNSL_ORIENT_SCORE_HPP
