#ifndef NAREP_REDUCTION_HPP
#define NAREP_REDUCTION_HPP

#include <cstddef>
#include <vector>

#include "narep/bignat.hpp"
#include "narep/hpreal.hpp"

namespace narep {

// One inhomogeneous approximation inequality 0 < |tau q - p + mu| < A B^-w
// with integer coefficient bounded by M.
struct ReductionProblem {
    HPReal tau;
    HPReal mu;
    HPReal A;
    HPReal B;
    BigNat M;
};

struct ReductionOutcome {
    std::size_t convergent_index = 0; // 1-based
    BigNat q;
    HPReal epsilon; // certified lower bound on ||mu q|| - M ||tau q||
    long w_bound = 0;
};

// Walks convergents of tau and returns the first with q > 6M whose epsilon
// is certifiably positive, together with w_bound = ceil(log(A q / eps) /
// log B). Throws inconclusive_error when the certified expansion runs out
// or a sign/ceiling cannot be resolved at the input precision.
ReductionOutcome dujella_petho(const ReductionProblem& problem,
                               std::size_t max_terms = 400);

enum class ConvergentSelection {
    // per instance, minimize ceil(V) over all usable convergents
    bound_minimizing,
    // per instance, first convergent with positive epsilon
    first_fit,
};

struct ReduceOptions {
    ConvergentSelection selection = ConvergentSelection::bound_minimizing;
    // carried caps for the exponents bounded in earlier steps
    long l_cap = 257;
    long m_cap = 265;
    long n_cap = 271;
    long digits = 0; // working precision; 0 picks max(default, 460)
    int threads = 0; // 0 picks hardware concurrency
};

struct StepResult {
    int g = 0;
    int step = 0;           // 1..4
    HPReal min_epsilon;     // smallest accepted epsilon, exact-rechecked
    std::size_t used_index = 0; // 1-based convergent index where it occurred
    long variable_bound = 0;    // max over instances of ceil(V)
};

// Bounds one exponent for one base: step 1 bounds the largest-repdigit
// exponent l, steps 2..4 bound m, n, t with the previously bounded
// exponents ranging over their caps. The instance set runs over all
// distinct four-digit products and all ordered exponent tuples.
StepResult reduce_step(int g, int step, const BigNat& M,
                       const ReduceOptions& opts = {});

struct FullReductionResult {
    std::vector<StepResult> steps; // (g, step) ascending
    long l_max = 0;
    long m_max = 0;
    long n_max = 0;
    long t_max = 0;
    long k_max = 0; // max over g of the per-base index cap
};

// Runs all four steps for every base in [g_min, g_max]. On an
// inconclusive step the working precision is doubled (twice) before
// giving up.
FullReductionResult full_reduction(int g_min, int g_max, const BigNat& M,
                                   const ReduceOptions& opts = {});

// 3.5 * 10^73, the coefficient cap used throughout
BigNat reduction_default_M();

} // namespace narep

#endif
