#include "narep/numerics.hpp"

#include "narep/errors.hpp"

namespace narep {

namespace {

HPReal cubic(const HPReal& x) {
    // x^3 - x^2 - 1
    HPReal x2 = x * x;
    return x2 * x - x2 - HPReal::from_int(1, x.digits());
}

} // namespace

HPReal dominant_root(long digits) {
    const long work = digits + 10;
    HPReal x("1.4655712318767680", work);
    HPReal two = HPReal::from_int(2, work);
    HPReal three = HPReal::from_int(3, work);

    HPReal tol(work);
    mpfr_set_ui_2exp(tol.raw(), 1, static_cast<mpfr_exp_t>(-(digits * 10 / 3 + 8)), MPFR_RNDN);

    for (int iter = 0; iter < 200; ++iter) {
        HPReal f = cubic(x);
        HPReal fp = three * x * x - two * x;
        HPReal step = f / fp;
        x = x - step;
        if (hp_abs(step) < tol)
            break;
    }

    HPReal lo = x - tol;
    HPReal hi = x + tol;
    if (!(cubic(lo).sign() < 0 && cubic(hi).sign() > 0))
        throw precision_error("root bracket failed to certify at " + std::to_string(digits) + " digits");

    HPReal out(digits);
    mpfr_set(out.raw(), x.raw(), MPFR_RNDN);
    return out;
}

HPReal complex_root_magnitude(long digits) {
    HPReal alpha = dominant_root(digits);
    HPReal one = HPReal::from_int(1, digits);
    return one / hp_sqrt(alpha);
}

} // namespace narep
