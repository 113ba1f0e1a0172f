#ifndef NAREP_NARAYANA_HPP
#define NAREP_NARAYANA_HPP

#include <vector>

#include "narep/bignat.hpp"
#include "narep/hpreal.hpp"

namespace narep {

// N_0 = 0, N_1 = N_2 = 1, N_k = N_{k-1} + N_{k-3}. Memoized, thread-safe.
BigNat narayana(unsigned long k);

struct BinetCoefficients {
    HPReal alpha; // dominant root of x^3 - x^2 - 1
    HPReal a;     // alpha^2 / (alpha^3 + 2)
    HPReal abs_b; // modulus of the conjugate-pair coefficients, 1/sqrt(31 a)
};

BinetCoefficients binet_coefficients(long digits = HPReal::default_digits());

// a*alpha^n; the residual N_n - a*alpha^n stays below alpha^(-n/2).
// Throws precision_error when the working precision cannot resolve that
// residual scale against the magnitude of the estimate itself.
HPReal binet_estimate(unsigned long n, long digits = HPReal::default_digits());

struct GrowthReport {
    unsigned long n_max = 0;
    // n in [1, n_max] where alpha^(n-2) <= N_n fails
    std::vector<unsigned long> lower_violations;
    // alpha^(n-3) <= N_n for all n in [1, n_max]
    bool corrected_lower_holds = false;
    // N_n <= alpha^(n-1) for all n in [1, n_max]
    bool upper_holds = false;
};

// Checks the claimed growth envelope of N_n against exact values, with
// directed rounding on both sides of every comparison.
GrowthReport growth_bounds_check(unsigned long n_max, long digits = HPReal::default_digits());

} // namespace narep

#endif
