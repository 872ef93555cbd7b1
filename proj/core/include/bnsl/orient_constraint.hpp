#ifndef BNSL_ORIENT_CONSTRAINT_HPP
#define BNSL_ORIENT_CONSTRAINT_HPP

#include <cstdint>
#include <functional>

#include "bnsl/graph.hpp"
#include "bnsl/pcselect.hpp"
#include "bnsl/skeleton.hpp"

namespace bnsl {

// Verdict used by the v-structure search: true when x and y are judged
// independent given s. Lets callers swap the data-driven G-test for the
// exact d-separation oracle.
using IndependenceFn = std::function<bool(int x, int y, const std::vector<int>& s)>;

// G-test at significance alpha; unreliable tests count as independent.
IndependenceFn g_test_independence(const Dataset& ds, double alpha, int max_cond = kDefaultMaxCond);

// Exact graphical oracle on a known model.
IndependenceFn dsep_independence(const NetworkModel& model);

struct VstructureStats {
    int64_t triples = 0;          // unshielded triples examined
    int64_t rejected_step1 = 0;   // A _||_ D | C: not a collider
    int64_t oriented_step2 = 0;   // A _||_ D and A /||_ D | C
    int64_t oriented_step3 = 0;   // separating set found inside PC(A) or PC(D)
    int64_t unresolved = 0;       // subset search exhausted, left undirected
    int64_t conflicts = 0;        // arrowheads vetoed by first-writer-wins
};

// Identifies v-structures among the skeleton's unshielded triples A-C-D:
//   step 1: A _||_ D | {C}        -> not a v-structure
//   step 2: A _||_ D | {}         -> orient A->C<-D (dependence given C known)
//   step 3: first S within PC(A)\{C,D}, then PC(D)\{C,A}, sizes ascending and
//           combinations in index order, with A _||_ D | S and
//           A /||_ D | S u {C}    -> orient A->C<-D
// Subset sizes stay below max_cond so the augmented test is always legal.
// Triples are evaluated in parallel but committed in sorted (A,C,D) order;
// an arrowhead contradicting an earlier commitment is dropped and counted.
Pdag find_vstructures(const Skeleton& sk, const std::vector<PcSet>& pc_sets,
                      const IndependenceFn& independent, int max_cond = kDefaultMaxCond,
                      int threads = 1, VstructureStats* stats = nullptr);

// Convenience overload wiring the G-test on a dataset.
Pdag find_vstructures(const Skeleton& sk, const Dataset& ds, const std::vector<PcSet>& pc_sets,
                      double alpha, int max_cond = kDefaultMaxCond, int threads = 1,
                      VstructureStats* stats = nullptr);

// Meek rules R1-R4 applied to a fixpoint. Orients undirected edges only;
// adjacencies are never added or removed, so the call is idempotent.
Pdag meek_rules(Pdag p);

}  // namespace bnsl

#endif  // BNSL_ORIENT_CONSTRAINT_HPP
