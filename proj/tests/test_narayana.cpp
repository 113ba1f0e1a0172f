#include <doctest.h>

#include <algorithm>
#include <array>
#include <thread>
#include <vector>

#include <narep/hpreal.hpp>
#include <narep/narayana.hpp>
#include <narep/numerics.hpp>

using namespace narep;

TEST_CASE("base cases and pinned values") {
    CHECK(narayana(0) == 0);
    CHECK(narayana(1) == 1);
    CHECK(narayana(2) == 1);
    CHECK(narayana(3) == 1);
    CHECK(narayana(4) == 2);
    CHECK(narayana(10) == 19);
    CHECK(narayana(16) == 189);
    CHECK(narayana(30) == 39865);
}

TEST_CASE("recurrence holds at depth") {
    CHECK(narayana(500) == narayana(499) + narayana(497));
    CHECK(narayana(8051) == narayana(8050) + narayana(8048));
}

TEST_CASE("index 8051 has about 1337 digits") {
    std::string s = narayana(8051).get_str();
    CHECK(s.size() >= 1335);
    CHECK(s.size() <= 1339);
}

TEST_CASE("memoization is consistent across threads") {
    std::array<BigNat, 4> out;
    std::vector<std::thread> ts;
    for (int i = 0; i < 4; ++i)
        ts.emplace_back([&out, i] { out[i] = narayana(2000 + static_cast<unsigned long>(i)); });
    for (auto& t : ts) t.join();
    for (int i = 0; i < 4; ++i)
        CHECK(out[static_cast<std::size_t>(i)] == narayana(2000 + static_cast<unsigned long>(i)));
}

TEST_CASE("closed-form coefficients") {
    auto bc = binet_coefficients(80);
    CHECK(hp_abs(bc.a - HPReal("0.41723798792621877762", 80)) < HPReal("1e-19", 80));
    CHECK(hp_abs(bc.alpha - dominant_root(80)) < HPReal("1e-75", 80));
    // abs_b = 1/sqrt(31 a)
    HPReal prod = bc.abs_b * bc.abs_b * HPReal::from_int(31, 80) * bc.a;
    CHECK(hp_abs(prod - HPReal::from_int(1, 80)) < HPReal("1e-75", 80));
}

TEST_CASE("estimate error stays below the conjugate-pair scale") {
    const long d = 100;
    HPReal alpha = dominant_root(d);
    HPReal e10 = binet_estimate(10, d);
    CHECK(hp_abs(e10 - HPReal::from_int(19, d)) < hp_pow_si(alpha, -5, MPFR_RNDU));
    HPReal e16 = binet_estimate(16, d);
    CHECK(hp_abs(e16 - HPReal::from_int(189, d)) < hp_pow_si(alpha, -8, MPFR_RNDU));
    HPReal e100 = binet_estimate(100, d);
    HPReal n100 = HPReal::from_bignat(narayana(100), d);
    CHECK(hp_abs(e100 - n100) < hp_pow_si(alpha, -50, MPFR_RNDU));
}

TEST_CASE("growth envelope to 200") {
    auto rep = growth_bounds_check(200, 120);
    CHECK(rep.n_max == 200);
    CHECK(rep.corrected_lower_holds);
    CHECK(rep.upper_holds);
    // alpha^(n-2) overshoots N_n from n = 3 on, with no exceptions
    CHECK(rep.lower_violations.size() == 198);
    CHECK(rep.lower_violations.front() == 3);
    CHECK(std::find(rep.lower_violations.begin(), rep.lower_violations.end(), 10ul) !=
          rep.lower_violations.end());
}
