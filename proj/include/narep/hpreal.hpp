#ifndef NAREP_HPREAL_HPP
#define NAREP_HPREAL_HPP

#include <mpfr.h>
#include <string>

#include "narep/bignat.hpp"

namespace narep {

// Arbitrary-precision real that tracks the decimal precision it was created
// at. Precision is counted in decimal digits, floor 50. Operations whose
// rounding direction matters for a bound take an explicit mpfr_rnd_t; the
// overloaded operators round to nearest.
class HPReal {
public:
    static long default_digits(); // NAREP_PRECISION env override, else 400
    static constexpr long min_digits = 50;

    explicit HPReal(long digits = default_digits());
    HPReal(const std::string& decimal, long digits = default_digits());
    HPReal(const HPReal& other);
    HPReal(HPReal&& other) noexcept;
    HPReal& operator=(const HPReal& other);
    HPReal& operator=(HPReal&& other) noexcept;
    ~HPReal();

    static HPReal from_int(long v, long digits = default_digits());
    static HPReal from_bignat(const BigNat& v, long digits = default_digits());

    long digits() const { return digits_; }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    double to_double() const;
    std::string str(int significant = 17) const;
    int sign() const;
    int cmp(long v) const;

    HPReal operator-() const;

private:
    void init(long digits);

    mpfr_t v_;
    long digits_ = 0;
};

bool operator<(const HPReal& a, const HPReal& b);
bool operator>(const HPReal& a, const HPReal& b);
bool operator<=(const HPReal& a, const HPReal& b);
bool operator>=(const HPReal& a, const HPReal& b);
bool operator==(const HPReal& a, const HPReal& b);
bool operator!=(const HPReal& a, const HPReal& b);

HPReal operator+(const HPReal& a, const HPReal& b);
HPReal operator-(const HPReal& a, const HPReal& b);
HPReal operator*(const HPReal& a, const HPReal& b);
HPReal operator/(const HPReal& a, const HPReal& b);

HPReal hp_add(const HPReal& a, const HPReal& b, mpfr_rnd_t rnd);
HPReal hp_sub(const HPReal& a, const HPReal& b, mpfr_rnd_t rnd);
HPReal hp_mul(const HPReal& a, const HPReal& b, mpfr_rnd_t rnd);
HPReal hp_div(const HPReal& a, const HPReal& b, mpfr_rnd_t rnd);
HPReal hp_mul_long(const HPReal& a, long b, mpfr_rnd_t rnd);
HPReal hp_div_long(const HPReal& a, long b, mpfr_rnd_t rnd);

// throws std::domain_error for x <= 0
HPReal hp_log(const HPReal& x, mpfr_rnd_t rnd = MPFR_RNDN);
// log(1+x), throws std::domain_error for x <= -1
HPReal hp_log1p(const HPReal& x, mpfr_rnd_t rnd = MPFR_RNDN);
HPReal hp_exp(const HPReal& x, mpfr_rnd_t rnd = MPFR_RNDN);
// throws std::domain_error for x < 0
HPReal hp_sqrt(const HPReal& x, mpfr_rnd_t rnd = MPFR_RNDN);
HPReal hp_pow_si(const HPReal& x, long e, mpfr_rnd_t rnd = MPFR_RNDN);

HPReal hp_abs(const HPReal& x);
HPReal hp_floor(const HPReal& x);
HPReal hp_ceil(const HPReal& x);
// x - floor(x), in [0, 1)
HPReal hp_frac(const HPReal& x);

BigNat to_bignat_floor(const HPReal& x);
BigNat to_bignat_ceil(const HPReal& x);

} // namespace narep

#endif
