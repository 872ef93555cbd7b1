#ifndef BNSL_PIPELINE_HPP
#define BNSL_PIPELINE_HPP

#include "bnsl/orient_constraint.hpp"
#include "bnsl/orient_score.hpp"
#include "bnsl/skeleton.hpp"

namespace bnsl {

struct PipelineOptions {
    double delta = kDefaultDelta;  // FCBF relevance threshold
    double alpha = kDefaultAlpha;  // significance level for G-tests
    double ess = kDefaultEss;      // BDeu equivalent sample size
    int max_cond = kDefaultMaxCond;
    int64_t max_iters = kDefaultMaxIters;
    MergeRule rule = MergeRule::And;
    int threads = 1;  // <= 0 resolves to hardware concurrency
};

struct StageSeconds {
    double pc = 0.0;
    double skeleton = 0.0;
    double orientation = 0.0;
    double total() const { return pc + skeleton + orientation; }
};

// Constraint-based pipeline: FCBF parent-child discovery for every
// variable, AND-rule skeleton, v-structure identification, Meek rules.
// The output adjacencies equal the skeleton's (orientation only).
// skeleton_out, when given, receives the intermediate skeleton.
Pdag learn_constraint(const Dataset& ds, const PipelineOptions& opt = {},
                      StageSeconds* timing = nullptr, VstructureStats* vstats = nullptr,
                      Skeleton* skeleton_out = nullptr);

// Score-based pipeline: FCBF parent-child discovery, AND-rule skeleton,
// BDeu hill climbing constrained to the skeleton (deletions allowed, so the
// result may keep only a subset of skeleton adjacencies).
Dag learn_score(const Dataset& ds, const PipelineOptions& opt = {},
                StageSeconds* timing = nullptr, HillClimbStats* hstats = nullptr,
                Skeleton* skeleton_out = nullptr);

}  // namespace bnsl

#endif  // BNSL_PIPELINE_HPP
