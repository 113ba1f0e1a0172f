#include "narep/contfrac.hpp"

#include <mpfr.h>

namespace narep {

namespace {

mpq_class from_z_2exp(const mpz_class& m, long e) {
    mpq_class r(m);
    if (e >= 0) {
        mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(e));
    } else {
        mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(-e));
    }
    return r;
}

mpz_class floor_q(const mpq_class& x) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return f;
}

} // namespace

ContinuedFraction cf_expand(const HPReal& target, std::size_t max_terms) {
    ContinuedFraction out;
    out.target = target;
    if (max_terms == 0) return out;
    if (target.sign() == 0) {
        out.partial_quotients.emplace_back(0);
        out.convergents.emplace_back(mpz_class(0), mpz_class(1));
        return out;
    }

    mpz_class m;
    mpfr_exp_t e2 = mpfr_get_z_2exp(m.get_mpz_t(), target.raw());
    mpq_class val = from_z_2exp(m, static_cast<long>(e2));

    // expand the whole one-ulp interval around the stored value; a quotient
    // is emitted only when it holds across the interval
    long ulp_exp = static_cast<long>(mpfr_get_exp(target.raw()) - mpfr_get_prec(target.raw()));
    mpq_class ulp = from_z_2exp(mpz_class(1), ulp_exp);
    mpq_class lo = val - ulp;
    mpq_class hi = val + ulp;

    mpz_class p_prev(1), p_prev2(0), q_prev(0), q_prev2(1);
    while (out.partial_quotients.size() < max_terms) {
        mpz_class a = floor_q(lo);
        if (a != floor_q(hi)) break;

        mpz_class p = a * p_prev + p_prev2;
        mpz_class q = a * q_prev + q_prev2;
        out.partial_quotients.push_back(a);
        out.convergents.emplace_back(p, q);
        p_prev2 = p_prev; p_prev = p;
        q_prev2 = q_prev; q_prev = q;

        mpq_class fa(a);
        lo -= fa;
        hi -= fa;
        if (sgn(lo) == 0 || sgn(hi) == 0) break;
        mpq_class new_lo = 1 / hi;
        mpq_class new_hi = 1 / lo;
        lo = new_lo;
        hi = new_hi;
    }
    return out;
}

} // namespace narep
