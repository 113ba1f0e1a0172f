#include "narep/baker.hpp"

#include <stdexcept>

#include "narep/errors.hpp"
#include "narep/numerics.hpp"

namespace narep {

namespace {

long join_digits(const MatveevInput& in) {
    long d = in.B.digits();
    for (const auto& a : in.A) {
        if (a.digits() > d) d = a.digits();
    }
    return d;
}

void check_base(int g) {
    if (g < 2 || g > 12) throw std::invalid_argument("base must be in 2..12");
}

// upper bound on log of the dominant root, padded past the root-finding
// tolerance
HPReal log_alpha_upper(long wd) {
    HPReal alpha = dominant_root(wd);
    HPReal pad = hp_exp(hp_mul_long(hp_log(HPReal::from_int(10, wd), MPFR_RNDU),
                                    -(wd - 10), MPFR_RNDU),
                        MPFR_RNDU);
    return hp_log(hp_add(alpha, pad, MPFR_RNDU), MPFR_RNDU);
}

} // namespace

HPReal matveev_log_lower_bound(const MatveevInput& in) {
    if (in.s < 1) throw std::invalid_argument("need at least one logarithm");
    if (in.d_K < 1) throw std::invalid_argument("field degree must be positive");
    if (static_cast<long>(in.A.size()) != in.s)
        throw std::invalid_argument("A must have one height per logarithm");
    if (in.B.cmp(1) < 0) throw std::invalid_argument("coefficient cap B must be >= 1");

    long wd = join_digits(in);
    HPReal floor016("0.16", wd);
    for (const auto& a : in.A) {
        if (a < floor016) throw std::invalid_argument("heights must be >= 0.16");
    }

    HPReal one = HPReal::from_int(1, wd);
    HPReal s_hp = HPReal::from_int(in.s, wd);
    HPReal d_hp = HPReal::from_int(in.d_K, wd);

    // 1.4 * 30^(s+3) * s^4.5 * d^2 * (1+log d) * (1+log B) * prod A_i,
    // every factor rounded up so the negated result stays a true lower bound
    HPReal x = hp_div_long(HPReal::from_int(7, wd), 5, MPFR_RNDU);
    x = hp_mul(x, hp_pow_si(HPReal::from_int(30, wd), in.s + 3, MPFR_RNDU), MPFR_RNDU);
    x = hp_mul(x, hp_pow_si(s_hp, 4, MPFR_RNDU), MPFR_RNDU);
    x = hp_mul(x, hp_sqrt(s_hp, MPFR_RNDU), MPFR_RNDU);
    x = hp_mul(x, hp_pow_si(d_hp, 2, MPFR_RNDU), MPFR_RNDU);
    x = hp_mul(x, hp_add(one, hp_log(d_hp, MPFR_RNDU), MPFR_RNDU), MPFR_RNDU);
    x = hp_mul(x, hp_add(one, hp_log(in.B, MPFR_RNDU), MPFR_RNDU), MPFR_RNDU);
    for (const auto& a : in.A) {
        x = hp_mul(x, a, MPFR_RNDU);
    }
    return -x;
}

HPReal height_binet_a(long digits) {
    return hp_div_long(hp_log(HPReal::from_int(31, digits), MPFR_RNDU), 3, MPFR_RNDU);
}

HPReal height_eta1(int stage, int g, const std::vector<long>& exps, long digits) {
    if (stage < 1 || stage > 4) throw std::invalid_argument("stage must be in 1..4");
    check_base(g);
    if (static_cast<long>(exps.size()) != stage - 1)
        throw std::invalid_argument("stage s needs s-1 bounded exponents");
    long sum = 7;
    for (long e : exps) {
        if (e < 1) throw std::invalid_argument("exponents must be positive");
        sum += e;
    }
    return hp_mul_long(hp_log(HPReal::from_int(g, digits), MPFR_RNDU), sum, MPFR_RNDU);
}

long lemma4_k_bound(long t, int g) {
    if (t < 1) throw std::invalid_argument("length bound must be positive");
    check_base(g);
    long wd = HPReal::default_digits();
    HPReal g_hp = HPReal::from_int(g, wd);
    HPReal lo = hp_mul_long(hp_log(g_hp, MPFR_RNDD), 12 * t, MPFR_RNDD);
    HPReal hi = hp_mul_long(hp_log(g_hp, MPFR_RNDU), 12 * t, MPFR_RNDU);
    BigNat f_lo = to_bignat_floor(lo);
    BigNat f_hi = to_bignat_floor(hi);
    if (f_lo != f_hi)
        throw inconclusive_error("12*t*log g straddles an integer at working precision");
    return f_lo.get_si();
}

HPReal guzman_luca_absorb(long l, const HPReal& H) {
    if (l < 1) throw std::invalid_argument("exponent must be positive");
    BigNat threshold;
    mpz_ui_pow_ui(threshold.get_mpz_t(), static_cast<unsigned long>(4 * l * l),
                  static_cast<unsigned long>(l));
    if (H <= HPReal::from_bignat(threshold, H.digits()))
        throw std::invalid_argument("H must exceed (4 l^2)^l");
    HPReal two_l = hp_pow_si(HPReal::from_int(2, H.digits()), l, MPFR_RNDU);
    HPReal logH_l = hp_pow_si(hp_log(H, MPFR_RNDU), l, MPFR_RNDU);
    return hp_mul(hp_mul(two_l, H, MPFR_RNDU), logH_l, MPFR_RNDU);
}

std::vector<StageBound> derive_stage_bounds(int g, long digits) {
    check_base(g);
    long wd = digits + 30;

    // the absorbed form 1 + log(12 t log g) < 12 log t log g must hold for
    // this g; t = 2 is the worst case and the margin grows with t
    {
        HPReal g_hp = HPReal::from_int(g, wd);
        HPReal one = HPReal::from_int(1, wd);
        HPReal inner = hp_mul_long(hp_log(g_hp, MPFR_RNDU), 24, MPFR_RNDU);
        HPReal lhs = hp_add(one, hp_log(inner, MPFR_RNDU), MPFR_RNDU);
        HPReal rhs = hp_mul(hp_mul_long(hp_log(HPReal::from_int(2, wd), MPFR_RNDD), 12, MPFR_RNDD),
                            hp_log(g_hp, MPFR_RNDD), MPFR_RNDD);
        if (!(lhs < rhs))
            throw std::domain_error("coefficient-cap absorption fails for this base");
    }

    // s=3 logarithms over the degree-3 field; B=1 strips the (1+log B)
    // factor, which the absorption above replaces by 12 log t log g
    MatveevInput raw;
    raw.s = 3;
    raw.d_K = 3;
    raw.B = HPReal::from_int(1, wd);
    raw.A = {HPReal::from_int(1, wd), HPReal::from_int(1, wd), HPReal::from_int(1, wd)};
    HPReal C = -matveev_log_lower_bound(raw);

    HPReal ln_alpha = log_alpha_upper(wd);
    HPReal ln2_d = hp_log(HPReal::from_int(2, wd), MPFR_RNDD);
    auto pad = [&](long num_log_arg, int pow) {
        // num / (log 2)^pow rounded up; num = log(num_log_arg), or 2 when
        // the argument is 0
        HPReal num = num_log_arg > 0
                         ? hp_log(HPReal::from_int(num_log_arg, wd), MPFR_RNDU)
                         : HPReal::from_int(2, wd);
        return hp_div(num, hp_pow_si(ln2_d, pow, MPFR_RNDD), MPFR_RNDU);
    };
    auto over = [&](const HPReal& x, int pow) {
        return hp_div(x, hp_pow_si(ln2_d, pow, MPFR_RNDD), MPFR_RNDU);
    };
    auto times12_plus = [&](const HPReal& K, const HPReal& p) {
        return hp_add(hp_mul_long(K, 12, MPFR_RNDU), p, MPFR_RNDU);
    };

    // stage 1: heights 21 log g, log alpha, 3 log g; the two g-dependent
    // heights contribute the (log g)^2 and 21*3 = 63
    HPReal K1 = hp_mul(hp_mul_long(C, 63, MPFR_RNDU), ln_alpha, MPFR_RNDU);
    HPReal l_coeff = times12_plus(K1, pad(16, 4));

    // stages 2..4 aggregate the previously bounded variables into one
    // height 3*h_s, keeping heights log alpha and 3 log g
    HPReal seven_over4 = over(HPReal::from_int(7, wd), 4);
    HPReal h2 = hp_add(l_coeff, seven_over4, MPFR_RNDU);
    HPReal K2 = hp_mul(hp_mul(hp_mul_long(C, 9, MPFR_RNDU), h2, MPFR_RNDU), ln_alpha, MPFR_RNDU);
    HPReal m_coeff = times12_plus(K2, pad(8, 7));

    HPReal h3 = hp_add(hp_add(m_coeff, over(l_coeff, 3), MPFR_RNDU),
                       over(HPReal::from_int(7, wd), 7), MPFR_RNDU);
    HPReal K3 = hp_mul(hp_mul(hp_mul_long(C, 9, MPFR_RNDU), h3, MPFR_RNDU), ln_alpha, MPFR_RNDU);
    HPReal n_coeff = times12_plus(K3, pad(4, 10));

    HPReal h4 = hp_add(hp_add(n_coeff, over(m_coeff, 3), MPFR_RNDU),
                       hp_add(over(l_coeff, 6), over(HPReal::from_int(7, wd), 10), MPFR_RNDU),
                       MPFR_RNDU);
    HPReal K4 = hp_mul(hp_mul(hp_mul_long(C, 9, MPFR_RNDU), h4, MPFR_RNDU), ln_alpha, MPFR_RNDU);
    HPReal t_coeff = times12_plus(K4, pad(0, 12));

    std::vector<StageBound> out;
    const double ref_matveev[4] = {6.5e13, 7.26e27, 8.1e41, 9.1e55};
    const double ref_coeff[4] = {7.8e14, 8.7e28, 9.72e42, 1.1e57};
    const HPReal* Ks[4] = {&K1, &K2, &K3, &K4};
    const HPReal* coeffs[4] = {&l_coeff, &m_coeff, &n_coeff, &t_coeff};
    for (int i = 0; i < 4; ++i) {
        StageBound sb;
        sb.stage = i + 1;
        sb.coefficient = *coeffs[i];
        sb.t_power = i + 1;
        sb.g_power = 2 * (i + 1);
        sb.matveev_constant = *Ks[i];
        sb.reference_coefficient = ref_coeff[i];
        sb.reference_matveev = ref_matveev[i];
        out.push_back(sb);
    }
    return out;
}

AbsoluteBounds theorem1_bounds(int g, long digits) {
    auto stages = derive_stage_bounds(g, digits);
    const HPReal& t_coeff = stages[3].coefficient;
    long wd = t_coeff.digits();
    HPReal ln_g = hp_log(HPReal::from_int(g, wd), MPFR_RNDU);

    // t < 2^4 H (log H)^4 with H = t_coeff (log g)^8; absorbing
    // log H < 186 log g closes the recursion in t
    HPReal H = hp_mul(t_coeff, hp_pow_si(ln_g, 8, MPFR_RNDU), MPFR_RNDU);
    HPReal sharp = guzman_luca_absorb(4, H);
    {
        HPReal lhs = hp_log(H, MPFR_RNDU);
        HPReal rhs = hp_mul_long(hp_log(HPReal::from_int(g, wd), MPFR_RNDD), 186, MPFR_RNDD);
        if (!(lhs < rhs))
            throw std::domain_error("log H < 186 log g fails for this base");
    }

    AbsoluteBounds out;
    HPReal c186 = hp_mul_long(hp_pow_si(HPReal::from_int(186, wd), 4, MPFR_RNDU), 16, MPFR_RNDU);
    out.t_bound = hp_mul(hp_mul(c186, t_coeff, MPFR_RNDU),
                         hp_pow_si(ln_g, 12, MPFR_RNDU), MPFR_RNDU);
    if (out.t_bound < sharp)
        throw std::domain_error("absorbed bound fell below the sharp form");
    out.k_bound = hp_mul(hp_mul_long(out.t_bound, 12, MPFR_RNDU), ln_g, MPFR_RNDU);
    return out;
}

} // namespace narep
