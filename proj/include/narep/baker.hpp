#ifndef NAREP_BAKER_HPP
#define NAREP_BAKER_HPP

#include <vector>

#include "narep/hpreal.hpp"

namespace narep {

// Inputs to the lower bound for a nonzero linear form in s logarithms over
// a degree-d_K field: B caps the integer coefficients, A holds the
// per-logarithm height parameters.
struct MatveevInput {
    long s = 1;
    long d_K = 1;
    HPReal B;
    std::vector<HPReal> A;
};

// -1.4 * 30^(s+3) * s^4.5 * d_K^2 * (1+log d_K) * (1+log B) * A_1...A_s,
// a proven lower bound for log|Lambda|. Rounded so the reported bound is
// never optimistic.
HPReal matveev_log_lower_bound(const MatveevInput& in);

// h(a) <= (1/3) log 31 for the leading Binet coefficient, rounded up.
HPReal height_binet_a(long digits = HPReal::default_digits());

// Height cap for the aggregated algebraic factor entering stage 1..4:
// (7 + sum of the exponents already bounded) * log g. exps must carry
// stage-1 entries.
HPReal height_eta1(int stage, int g, const std::vector<long>& exps,
                   long digits = HPReal::default_digits());

// floor(12 * t * log g), the index cap implied by a length bound t.
long lemma4_k_bound(long t, int g);

// 2^l * H * (log H)^l; valid for any L with H > L/(log L)^l.
// Requires H > (4 l^2)^l.
HPReal guzman_luca_absorb(long l, const HPReal& H);

// One stage of the four-stage bound chain: variable < coefficient *
// (log t)^t_power * (log g)^g_power.
struct StageBound {
    int stage = 0;
    HPReal coefficient;
    int t_power = 0;
    int g_power = 0;
    // the stage's Matveev product before absorbing (1 + log B)
    HPReal matveev_constant;
    // frozen comparison values the derivation is checked against
    double reference_coefficient = 0;
    double reference_matveev = 0;
};

// Recomputes the four stage coefficients from the lower-bound formula, the
// height choices, and the absorption 1 + log(12 t log g) < 12 log t log g
// (validated for the given g at t = 2, its worst case).
std::vector<StageBound> derive_stage_bounds(int g, long digits = HPReal::default_digits());

struct AbsoluteBounds {
    HPReal t_bound; // closed form in log^12 g
    HPReal k_bound; // 12 * t_bound * log g
};

// Composes the stage chain with the absorption of log H < 186 log g into
// closed-form bounds on the largest repdigit length and on the sequence
// index, for a single base.
AbsoluteBounds theorem1_bounds(int g, long digits = HPReal::default_digits());

} // namespace narep

#endif
