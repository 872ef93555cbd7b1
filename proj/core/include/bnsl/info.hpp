#ifndef BNSL_INFO_HPP
#define BNSL_INFO_HPP

#include <atomic>
#include <cstdint>
#include <memory>
#include <vector>

#include "bnsl/dataset.hpp"
#include "bnsl/network.hpp"

namespace bnsl {

// Plug-in Shannon entropy of one column in nats, with 0 log 0 := 0.
double entropy(const Dataset& ds, int x);

// Plug-in mutual information in nats. Tiny negative rounding residue is
// clamped to zero; the _raw variant returns the unclamped estimate. The
// computation is canonicalized in (x, y) so symmetry holds exactly.
double mutual_information(const Dataset& ds, int x, int y);
double mutual_information_raw(const Dataset& ds, int x, int y);

// Plug-in conditional mutual information I(x; y | z) in nats. Strata with
// zero count contribute nothing. With empty z this is exactly
// mutual_information (same kernel, same float operations).
double conditional_mutual_information(const Dataset& ds, int x, int y, const std::vector<int>& z);
double conditional_mutual_information_raw(const Dataset& ds, int x, int y, const std::vector<int>& z);

// Upper tail of the chi-squared distribution with `dof` degrees of freedom.
double chi_squared_sf(double x, double dof);

struct CITestResult {
    double statistic = 0.0;  // G = 2 N CMI(x;y|s), nats
    int64_t dof = 1;
    double p_value = 1.0;
    bool independent = true;
    bool reliable = true;  // sample-adequacy flag: N >= 5 dof
};

inline constexpr double kDefaultAlpha = 0.01;
inline constexpr int kDefaultMaxCond = 8;

// G-test of x _||_ y | s with dof = (|X|-1)(|Y|-1) prod |Z|. Tests with
// N < 5 dof are not evaluated: they return reliable=false and the
// conservative verdict independent=true with p = 1 (never asserting
// dependence from inadequate data). This short-circuit also bounds the
// contingency table by O(N) cells whenever one is actually built.
// Throws std::invalid_argument on argument overlap, |s| > max_cond, or a
// dof product that overflows.
CITestResult ci_test(const Dataset& ds, int x, int y, const std::vector<int>& s, double alpha,
                     int max_cond = kDefaultMaxCond);

// Exact d-separation on the model graph: true iff s blocks every path
// between x and y (chain/fork blocked by conditioning, collider open only
// when it or a descendant is conditioned on). Reachability formulation.
bool d_separated(const NetworkModel& model, int x, int y, const std::vector<int>& s);

// Lazily filled pairwise mutual-information and univariate entropy cache.
// Entries are pure functions of the immutable dataset, stored in atomics,
// so concurrent fills from any schedule produce identical values.
class MiCache {
public:
    explicit MiCache(const Dataset& ds);

    const Dataset& data() const { return *ds_; }
    int n_vars() const { return n_; }

    double mi(int i, int j) const;    // I(Vi;Vj), i != j
    double entropy(int i) const;      // H(Vi)

    // Computes every pair up front (deterministic static partition).
    void prefill(int threads) const;

private:
    const Dataset* ds_;
    int n_;
    mutable std::unique_ptr<std::atomic<double>[]> cells_;  // triangular, H on diagonal

    std::size_t cell_index(int i, int j) const;
    double fill(int i, int j) const;
};

}  // namespace bnsl

#endif  // BNSL_INFO_HPP
