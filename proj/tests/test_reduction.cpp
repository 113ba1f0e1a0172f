#include <doctest.h>

#include <cmath>

#include <narep/errors.hpp>
#include <narep/hpreal.hpp>
#include <narep/reduction.hpp>

#include "expected.hpp"

using namespace narep;
namespace nt = narep::testing;

namespace {

void check_cell(const StepResult& r, int g, int step) {
    const auto& cell = nt::reduction_expected.at(g).step[step - 1];
    CHECK(r.g == g);
    CHECK(r.step == step);
    CHECK(r.variable_bound == cell.bound);
    CHECK(r.used_index == cell.index);
    CHECK(r.min_epsilon.to_double() ==
          doctest::Approx(cell.epsilon).epsilon(1e-9));
    CHECK(r.min_epsilon.sign() > 0);
}

} // namespace

TEST_CASE("single-inequality reduction, checkable by hand") {
    const long d = 120;
    ReductionProblem prob;
    prob.tau = hp_sqrt(HPReal::from_int(2, d));
    prob.mu = HPReal("0.5", d);
    prob.A = HPReal::from_int(10, d);
    prob.B = HPReal::from_int(10, d);
    prob.M = 100;

    auto out = dujella_petho(prob);
    // denominators 1,2,5,12,29,70,169,408,985: the first past 600 is 985
    CHECK(out.convergent_index == 9);
    CHECK(out.q == 985);
    // ||0.5 * 985|| = 0.5, 100 * ||sqrt(2) * 985|| ~ 0.0359
    CHECK(out.epsilon.to_double() == doctest::Approx(0.464106).epsilon(1e-4));
    // ceil(log10(10 * 985 / eps)) = ceil(4.3268) = 5
    CHECK(out.w_bound == 5);
}

TEST_CASE("reduction outcome is stable under precision doubling") {
    for (long d : {200L, 400L}) {
        ReductionProblem prob;
        prob.tau = hp_sqrt(HPReal::from_int(2, d));
        prob.mu = HPReal("0.5", d);
        prob.A = HPReal::from_int(10, d);
        prob.B = HPReal::from_int(10, d);
        prob.M = 100;
        auto out = dujella_petho(prob);
        CHECK(out.q == 985);
        CHECK(out.w_bound == 5);
    }
}

TEST_CASE("first exponent bound per base") {
    BigNat M = reduction_default_M();
    check_cell(reduce_step(2, 1, M), 2, 1);
    check_cell(reduce_step(12, 1, M), 12, 1);
}

TEST_CASE("later steps on small instance spaces") {
    BigNat M = reduction_default_M();
    check_cell(reduce_step(6, 2, M), 6, 2);
    check_cell(reduce_step(3, 3, M), 3, 3);
    check_cell(reduce_step(3, 4, M), 3, 4);
    check_cell(reduce_step(2, 4, M), 2, 4);
}

TEST_CASE("first-fit selection accepts earlier, weaker convergents") {
    BigNat M = reduction_default_M();
    ReduceOptions ff;
    ff.selection = ConvergentSelection::first_fit;

    auto r = reduce_step(2, 4, M, ff);
    CHECK(r.variable_bound == 277);
    CHECK(r.used_index == 153);
    CHECK(r.min_epsilon.to_double() == doctest::Approx(2.5345373956e-08).epsilon(1e-6));

    auto s = reduce_step(5, 1, M, ff);
    CHECK(s.variable_bound == 112);
    CHECK(s.variable_bound >= nt::reduction_expected.at(5).step[0].bound);
}

TEST_CASE("epsilon survives precision doubling") {
    BigNat M = reduction_default_M();
    ReduceOptions lo, hi;
    lo.digits = 460;
    hi.digits = 920;
    auto a = reduce_step(5, 1, M, lo);
    auto b = reduce_step(5, 1, M, hi);
    CHECK(a.variable_bound == b.variable_bound);
    CHECK(a.used_index == b.used_index);
    double da = a.min_epsilon.to_double(), db = b.min_epsilon.to_double();
    CHECK(std::abs(da - db) / db < 1e-10);
}

TEST_CASE("results do not depend on the worker count") {
    BigNat M = reduction_default_M();
    ReduceOptions one, four;
    one.threads = 1;
    four.threads = 4;
    auto a = reduce_step(7, 2, M, one);
    auto b = reduce_step(7, 2, M, four);
    CHECK(a.variable_bound == b.variable_bound);
    CHECK(a.used_index == b.used_index);
    CHECK(a.min_epsilon.to_double() == b.min_epsilon.to_double());
    check_cell(a, 7, 2);
}

TEST_CASE("full run over a base range aggregates the caps") {
    BigNat M = reduction_default_M();
    auto full = full_reduction(2, 3, M);
    REQUIRE(full.steps.size() == 8);
    for (int g : {2, 3})
        for (int s = 1; s <= 4; ++s)
            check_cell(full.steps[static_cast<std::size_t>((g - 2) * 4 + s - 1)], g, s);
    CHECK(full.l_max == 257);
    CHECK(full.m_max == 261);
    CHECK(full.n_max == 266);
    CHECK(full.t_max == 274);
    // max over g of floor(12 t_g log g)
    CHECK(full.k_max == 2279);
}

TEST_CASE("input validation") {
    BigNat M = reduction_default_M();
    CHECK_THROWS_AS(reduce_step(1, 1, M), std::invalid_argument);
    CHECK_THROWS_AS(reduce_step(13, 1, M), std::invalid_argument);
    CHECK_THROWS_AS(reduce_step(2, 0, M), std::invalid_argument);
    CHECK_THROWS_AS(reduce_step(2, 5, M), std::invalid_argument);
    CHECK(reduction_default_M() == BigNat("35") * [] {
        BigNat t = 1;
        for (int i = 0; i < 72; ++i) t *= 10;
        return t;
    }());
}
