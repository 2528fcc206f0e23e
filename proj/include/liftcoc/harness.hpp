#pragma once

// Scripted experiment suites and verification batteries.  Every reported
// scalar is evaluated twice (depth and depth+slack) and flagged stable only
// when both runs agree exactly.

#include "liftcoc/ce.hpp"
#include "liftcoc/report.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace liftcoc {

struct HarnessOptions {
    int depth = 8;
    int slack = 2;
    int jobs = 1;
};

// Frame evaluations of the 3-cocycle (value, leading/curvature split) and
// the matrix-cycle law including the brute-force trace oracle.
std::vector<ExperimentReport> run_suite_434(const HarnessOptions &opts = {});

// Twisted frame: psi_3(Id d, Id(x^2 d - lambda x), E_11) against
// -3(lambda+1) for each lambda.
std::vector<ExperimentReport> run_suite_435(const std::vector<Rat> &lambdas,
                                            const HarnessOptions &opts = {});

struct Suite44Options {
    HarnessOptions base;
    bool lambda_fit = true;
};

// Grouped-term values on the standard x/d assignment for n variables:
// leading term, interval classes, sign coherence, lambda scaling, and the
// lambda-polynomial interpolation.
std::vector<ExperimentReport> run_suite_44(int n, const Suite44Options &opts = {});

// Trace and derivation identities on seeded random symbols, the curvature
// series against the commutator, and the triple-alternation condition.
std::vector<ExperimentReport> verify_algebra(int nvars, int trials, uint64_t seed,
                                             const HarnessOptions &opts = {});

struct CocycleVerifyOptions {
    int trials = 5;
    uint64_t seed = 1;
    int window = 2;
    int maxdeg = 2;
    HarnessOptions base;
};

// delta psi == 0 on seeded random tuples of finite matrices.
std::vector<ExperimentReport> verify_cocycle(int nvars, int k, int s, Formula f,
                                             const CocycleVerifyOptions &opts = {});
std::vector<ExperimentReport> verify_cocycle_spec(
    const std::function<CocycleSpec(const TruncationPolicy &)> &make_spec, int nvars, Formula f,
    const CocycleVerifyOptions &opts, const std::string &tag);

// Plain matrix trace of sum_sigma sgn(sigma) M_{sigma(1)} ... M_{sigma(p)};
// the independent oracle for matrix-cycle values.
Rat alt_product_trace(const std::vector<std::map<std::pair<int, int>, Rat>> &mats);

// Frame (Id (x) d_1, Id (x) x_1^2 d_1).
std::vector<AugmentedOp> frame_ops(int depth);

// The 3-cycle e ^ f ^ h over constant 2x2 matrices, in the given space
// (window >= 2, coefficient basis containing the constant 1 first).
ChainElement sl2_cycle(const ChainSpace &space, int window = 2);

} // namespace liftcoc
