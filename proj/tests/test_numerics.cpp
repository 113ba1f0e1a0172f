#include <doctest.h>

#include <stdexcept>

#include <narep/hpreal.hpp>
#include <narep/numerics.hpp>

using namespace narep;

namespace {
HPReal abs_diff(const HPReal& a, const HPReal& b) { return hp_abs(a - b); }
}

TEST_CASE("dominant root matches pinned digits") {
    HPReal alpha = dominant_root(100);
    HPReal pinned("1.46557123187676802665673122521993910802557756847228570164318", 100);
    CHECK(abs_diff(alpha, pinned) < HPReal("1e-58", 100));
}

TEST_CASE("dominant root satisfies its cubic") {
    HPReal alpha = dominant_root(120);
    HPReal res = alpha * alpha * alpha - alpha * alpha - HPReal::from_int(1, 120);
    CHECK(hp_abs(res) < HPReal("1e-110", 120));
}

TEST_CASE("dominant root is stable under precision escalation") {
    HPReal lo = dominant_root(100);
    HPReal hi = dominant_root(200);
    CHECK(abs_diff(lo, hi) < HPReal("1e-97", 200));
}

TEST_CASE("conjugate root modulus") {
    const long d = 100;
    HPReal beta = complex_root_magnitude(d);
    CHECK(beta < HPReal::from_int(1, d));
    // product of all three roots is 1, so beta^2 * alpha = 1
    HPReal prod = beta * beta * dominant_root(d);
    CHECK(abs_diff(prod, HPReal::from_int(1, d)) < HPReal("1e-95", d));
    CHECK(abs_diff(beta, HPReal("0.82603135765418695596", d)) < HPReal("1e-19", d));
}

TEST_CASE("directed rounding gives a true bracket") {
    const long d = 60;
    HPReal one = HPReal::from_int(1, d);
    HPReal three = HPReal::from_int(3, d);
    CHECK(hp_div(one, three, MPFR_RNDD) < hp_div(one, three, MPFR_RNDU));

    HPReal two = HPReal::from_int(2, d);
    CHECK(hp_log(two, MPFR_RNDD) < HPReal("0.69314718055994530942", d));
    CHECK(hp_log(two, MPFR_RNDU) > HPReal("0.69314718055994530941", d));
}

TEST_CASE("precision floor") {
    CHECK_THROWS_AS(HPReal(10), std::invalid_argument);
    CHECK(HPReal(50).digits() == 50);
    CHECK(HPReal::from_int(7, 80).digits() == 80);
}

TEST_CASE("floor ceil frac") {
    const long d = 60;
    HPReal x("2.75", d);
    CHECK(hp_floor(x).to_double() == 2.0);
    CHECK(hp_ceil(x).to_double() == 3.0);
    CHECK(hp_frac(x).to_double() == 0.75);

    HPReal neg("-1.25", d);
    CHECK(hp_floor(neg).to_double() == -2.0);
    CHECK(hp_frac(neg).to_double() == 0.75);

    CHECK(to_bignat_floor(HPReal("123.25", d)) == 123);
    CHECK(to_bignat_ceil(HPReal("123.25", d)) == 124);
}

TEST_CASE("log rejects nonpositive input") {
    CHECK_THROWS_AS(hp_log(HPReal::from_int(0, 60)), std::domain_error);
    CHECK_THROWS_AS(hp_log(HPReal::from_int(-3, 60)), std::domain_error);
    CHECK_THROWS_AS(hp_sqrt(HPReal::from_int(-1, 60)), std::domain_error);
}

TEST_CASE("pow and exp round trip") {
    const long d = 80;
    HPReal alpha = dominant_root(d);
    HPReal p = hp_pow_si(alpha, 12);
    HPReal q = hp_exp(hp_mul_long(hp_log(alpha), 12, MPFR_RNDN));
    CHECK(abs_diff(p, q) < HPReal("1e-70", d));
    CHECK(abs_diff(hp_pow_si(alpha, -12) * p, HPReal::from_int(1, d)) < HPReal("1e-70", d));
}
