#include "narep/hpreal.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace narep {

namespace {

mpfr_prec_t bits_for(long digits) {
    // 3.33 bits per decimal digit plus slack so the last tracked digit is honest
    return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873626)) + 32;
}

long checked_digits(long digits) {
    if (digits < HPReal::min_digits)
        throw std::invalid_argument("precision below the 50 digit floor: " + std::to_string(digits));
    return digits;
}

} // namespace

long HPReal::default_digits() {
    static const long value = [] {
        const char* env = std::getenv("NAREP_PRECISION");
        if (!env || !*env)
            return 400L;
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0')
            throw std::invalid_argument("NAREP_PRECISION is not an integer");
        return checked_digits(v);
    }();
    return value;
}

void HPReal::init(long digits) {
    digits_ = checked_digits(digits);
    mpfr_init2(v_, bits_for(digits_));
    mpfr_set_zero(v_, 1);
}

HPReal::HPReal(long digits) {
    init(digits);
}

HPReal::HPReal(const std::string& decimal, long digits) {
    init(digits);
    if (mpfr_set_str(v_, decimal.c_str(), 10, MPFR_RNDN) != 0 && mpfr_nan_p(v_))
        throw std::invalid_argument("not a decimal number: " + decimal);
}

HPReal::HPReal(const HPReal& other) {
    digits_ = other.digits_;
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
}

HPReal::HPReal(HPReal&& other) noexcept {
    digits_ = other.digits_;
    v_[0] = other.v_[0];
    mpfr_init2(other.v_, MPFR_PREC_MIN);
    other.digits_ = 0;
}

HPReal& HPReal::operator=(const HPReal& other) {
    if (this != &other) {
        mpfr_set_prec(v_, mpfr_get_prec(other.v_));
        mpfr_set(v_, other.v_, MPFR_RNDN);
        digits_ = other.digits_;
    }
    return *this;
}

HPReal& HPReal::operator=(HPReal&& other) noexcept {
    if (this != &other) {
        mpfr_swap(v_, other.v_);
        std::swap(digits_, other.digits_);
    }
    return *this;
}

HPReal::~HPReal() {
    mpfr_clear(v_);
}

HPReal HPReal::from_int(long v, long digits) {
    HPReal r(digits);
    mpfr_set_si(r.v_, v, MPFR_RNDN);
    return r;
}

HPReal HPReal::from_bignat(const BigNat& v, long digits) {
    HPReal r(digits);
    mpfr_set_z(r.v_, v.get_mpz_t(), MPFR_RNDN);
    return r;
}

double HPReal::to_double() const {
    return mpfr_get_d(v_, MPFR_RNDN);
}

std::string HPReal::str(int significant) const {
    std::vector<char> buf(static_cast<std::size_t>(significant) + 64);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", significant, v_);
    return std::string(buf.data());
}

int HPReal::sign() const {
    return mpfr_sgn(v_);
}

int HPReal::cmp(long v) const {
    return mpfr_cmp_si(v_, v);
}

HPReal HPReal::operator-() const {
    HPReal r(digits_);
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
}

bool operator<(const HPReal& a, const HPReal& b) { return mpfr_cmp(a.raw(), b.raw()) < 0; }
bool operator>(const HPReal& a, const HPReal& b) { return mpfr_cmp(a.raw(), b.raw()) > 0; }
bool operator<=(const HPReal& a, const HPReal& b) { return mpfr_cmp(a.raw(), b.raw()) <= 0; }
bool operator>=(const HPReal& a, const HPReal& b) { return mpfr_cmp(a.raw(), b.raw()) >= 0; }
bool operator==(const HPReal& a, const HPReal& b) { return mpfr_cmp(a.raw(), b.raw()) == 0; }
bool operator!=(const HPReal& a, const HPReal& b) { return mpfr_cmp(a.raw(), b.raw()) != 0; }

namespace {

long join_digits(const HPReal& a, const HPReal& b) {
    return std::max(a.digits(), b.digits());
}

template <typename F>
HPReal binary_op(const HPReal& a, const HPReal& b, F&& f) {
    HPReal r(join_digits(a, b));
    f(r.raw(), a.raw(), b.raw());
    return r;
}

} // namespace

HPReal operator+(const HPReal& a, const HPReal& b) { return hp_add(a, b, MPFR_RNDN); }
HPReal operator-(const HPReal& a, const HPReal& b) { return hp_sub(a, b, MPFR_RNDN); }
HPReal operator*(const HPReal& a, const HPReal& b) { return hp_mul(a, b, MPFR_RNDN); }
HPReal operator/(const HPReal& a, const HPReal& b) { return hp_div(a, b, MPFR_RNDN); }

HPReal hp_add(const HPReal& a, const HPReal& b, mpfr_rnd_t rnd) {
    return binary_op(a, b, [rnd](mpfr_ptr r, mpfr_srcptr x, mpfr_srcptr y) { mpfr_add(r, x, y, rnd); });
}

HPReal hp_sub(const HPReal& a, const HPReal& b, mpfr_rnd_t rnd) {
    return binary_op(a, b, [rnd](mpfr_ptr r, mpfr_srcptr x, mpfr_srcptr y) { mpfr_sub(r, x, y, rnd); });
}

HPReal hp_mul(const HPReal& a, const HPReal& b, mpfr_rnd_t rnd) {
    return binary_op(a, b, [rnd](mpfr_ptr r, mpfr_srcptr x, mpfr_srcptr y) { mpfr_mul(r, x, y, rnd); });
}

HPReal hp_div(const HPReal& a, const HPReal& b, mpfr_rnd_t rnd) {
    if (b.sign() == 0)
        throw std::domain_error("division by zero");
    return binary_op(a, b, [rnd](mpfr_ptr r, mpfr_srcptr x, mpfr_srcptr y) { mpfr_div(r, x, y, rnd); });
}

HPReal hp_mul_long(const HPReal& a, long b, mpfr_rnd_t rnd) {
    HPReal r(a.digits());
    mpfr_mul_si(r.raw(), a.raw(), b, rnd);
    return r;
}

HPReal hp_div_long(const HPReal& a, long b, mpfr_rnd_t rnd) {
    if (b == 0)
        throw std::domain_error("division by zero");
    HPReal r(a.digits());
    mpfr_div_si(r.raw(), a.raw(), b, rnd);
    return r;
}

HPReal hp_log(const HPReal& x, mpfr_rnd_t rnd) {
    if (x.sign() <= 0)
        throw std::domain_error("log of a non-positive value");
    HPReal r(x.digits());
    mpfr_log(r.raw(), x.raw(), rnd);
    return r;
}

HPReal hp_log1p(const HPReal& x, mpfr_rnd_t rnd) {
    if (x.cmp(-1) <= 0)
        throw std::domain_error("log1p of a value <= -1");
    HPReal r(x.digits());
    mpfr_log1p(r.raw(), x.raw(), rnd);
    return r;
}

HPReal hp_exp(const HPReal& x, mpfr_rnd_t rnd) {
    HPReal r(x.digits());
    mpfr_exp(r.raw(), x.raw(), rnd);
    return r;
}

HPReal hp_sqrt(const HPReal& x, mpfr_rnd_t rnd) {
    if (x.sign() < 0)
        throw std::domain_error("sqrt of a negative value");
    HPReal r(x.digits());
    mpfr_sqrt(r.raw(), x.raw(), rnd);
    return r;
}

HPReal hp_pow_si(const HPReal& x, long e, mpfr_rnd_t rnd) {
    HPReal r(x.digits());
    mpfr_pow_si(r.raw(), x.raw(), e, rnd);
    return r;
}

HPReal hp_abs(const HPReal& x) {
    HPReal r(x.digits());
    mpfr_abs(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

HPReal hp_floor(const HPReal& x) {
    HPReal r(x.digits());
    mpfr_floor(r.raw(), x.raw());
    return r;
}

HPReal hp_ceil(const HPReal& x) {
    HPReal r(x.digits());
    mpfr_ceil(r.raw(), x.raw());
    return r;
}

HPReal hp_frac(const HPReal& x) {
    HPReal r(x.digits());
    mpfr_floor(r.raw(), x.raw());
    mpfr_sub(r.raw(), x.raw(), r.raw(), MPFR_RNDN);
    return r;
}

BigNat to_bignat_floor(const HPReal& x) {
    BigNat r;
    HPReal f = hp_floor(x);
    mpfr_get_z(r.get_mpz_t(), f.raw(), MPFR_RNDZ);
    return r;
}

BigNat to_bignat_ceil(const HPReal& x) {
    BigNat r;
    HPReal c = hp_ceil(x);
    mpfr_get_z(r.get_mpz_t(), c.raw(), MPFR_RNDZ);
    return r;
}

} // namespace narep
