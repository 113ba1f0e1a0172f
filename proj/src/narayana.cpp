#include "narep/narayana.hpp"

#include <deque>
#include <mutex>

#include "narep/errors.hpp"
#include "narep/numerics.hpp"

namespace narep {

BigNat narayana(unsigned long k) {
    static std::deque<BigNat> table{0, 1, 1};
    static std::mutex guard;
    std::lock_guard<std::mutex> lock(guard);
    while (table.size() <= k)
        table.push_back(table[table.size() - 1] + table[table.size() - 3]);
    return table[k];
}

BinetCoefficients binet_coefficients(long digits) {
    HPReal alpha = dominant_root(digits);
    HPReal one = HPReal::from_int(1, digits);
    HPReal a = alpha * alpha / (alpha * alpha * alpha + HPReal::from_int(2, digits));
    HPReal abs_b = one / hp_sqrt(hp_mul_long(a, 31, MPFR_RNDN));
    return {alpha, a, abs_b};
}

HPReal binet_estimate(unsigned long n, long digits) {
    if (n < 1)
        throw std::invalid_argument("index must be >= 1");
    BinetCoefficients c = binet_coefficients(digits);
    HPReal est = c.a * hp_pow_si(c.alpha, static_cast<long>(n), MPFR_RNDN);

    // the estimate's own rounding must sit far below the alpha^(-n/2)
    // residual scale, or the value is useless for locating N_n
    HPReal slack(digits);
    mpfr_set_ui_2exp(slack.raw(), 64, mpfr_get_exp(est.raw()) - mpfr_get_prec(est.raw()), MPFR_RNDN);
    HPReal residual_scale = hp_sqrt(hp_pow_si(c.alpha, -static_cast<long>(n), MPFR_RNDD), MPFR_RNDD);
    if (slack >= residual_scale)
        throw precision_error("cannot resolve the residual of n=" + std::to_string(n) +
                              " at " + std::to_string(digits) + " digits");
    return est;
}

GrowthReport growth_bounds_check(unsigned long n_max, long digits) {
    GrowthReport report;
    report.n_max = n_max;
    report.corrected_lower_holds = true;
    report.upper_holds = true;

    HPReal alpha_d = dominant_root(digits); // compare through both rounding directions
    for (unsigned long n = 1; n <= n_max; ++n) {
        HPReal value = HPReal::from_bignat(narayana(n), digits);
        long e = static_cast<long>(n);

        HPReal lit_lo = hp_pow_si(alpha_d, e - 2, MPFR_RNDD);
        HPReal lit_hi = hp_pow_si(alpha_d, e - 2, MPFR_RNDU);
        if (lit_lo > value)
            report.lower_violations.push_back(n);
        else if (lit_hi > value)
            throw precision_error("growth comparison undecided at n=" + std::to_string(n));

        if (hp_pow_si(alpha_d, e - 3, MPFR_RNDU) > value)
            report.corrected_lower_holds = false;
        if (hp_pow_si(alpha_d, e - 1, MPFR_RNDD) < value)
            report.upper_holds = false;
    }
    return report;
}

} // namespace narep
