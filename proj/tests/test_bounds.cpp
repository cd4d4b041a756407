#include <doctest.h>

#include <cmath>

#include "fgap/bounds.hpp"
#include "fgap/dual.hpp"
#include "fgap/errors.hpp"
#include "fgap/special.hpp"

using namespace fgap;

TEST_CASE("lambda(A) against high-precision roots") {
    CHECK(lambda_of_A(2.0) == doctest::Approx(0.7655295060766003).epsilon(1e-12));
    CHECK(lambda_of_A(4.0) == doctest::Approx(0.892422329958409).epsilon(1e-12));
    CHECK(lambda_of_A(1.1) == doctest::Approx(0.41888656824512).epsilon(1e-11));
    CHECK(lambda_of_A(10.0) == doctest::Approx(0.95858565520948).epsilon(1e-11));
    CHECK(lambda_of_A(100.0) == doctest::Approx(0.99593887884177).epsilon(1e-11));
    CHECK(lambda_of_A(Penalty::parse("36/11")) == doctest::Approx(0.86635050320831).epsilon(1e-11));
    CHECK(lambda_of_A(Penalty::infinite()) == 1.0);
    CHECK_THROWS_AS(lambda_of_A(1.0), DomainError);
    double prev = 0.0;
    for (double A : {1.1, 2.0, 4.0, 10.0, 100.0}) {
        const double l = lambda_of_A(A);
        CHECK(l > prev);
        prev = l;
    }
}

TEST_CASE("lower bounds for C") {
    const auto b4 = lower_bound_C(Penalty::finite(4.0));
    CHECK(b4.cosine_branch == doctest::Approx(1.141186944696351).epsilon(1e-11));
    CHECK(b4.value >= b4.fejer_branch);
    const auto b2 = lower_bound_C(Penalty::finite(2.0));
    CHECK(b2.fejer_branch == doctest::Approx(4.0 - 2.0 * std::sqrt(2.0)).epsilon(1e-14));
    CHECK(b2.fejer_branch == doctest::Approx(1.1715728752538).epsilon(1e-12));
    const auto binf = lower_bound_C(Penalty::infinite());
    CHECK(binf.value == doctest::Approx(1.0799503135698).epsilon(1e-12));
    const auto b = lower_bound_C(Penalty::parse("36/11"));
    CHECK(b.cosine_branch == doctest::Approx(1.156979993999).epsilon(1e-11));
    CHECK(b.fejer_branch == doctest::Approx(12.0 / 11.0).epsilon(1e-14));
    CHECK(b.value == doctest::Approx(b.cosine_branch));
    CHECK(lower_bound_C(Penalty::finite(1.0)).value == doctest::Approx(2.0));
}

TEST_CASE("upper bounds") {
    const double d0 = gorbachev_d0();
    CHECK(upper_bound_C(Penalty::finite(2.6)).value == doctest::Approx(2.0));
    CHECK(upper_bound_C(Penalty::finite(5.0)).value == doctest::Approx(d0 / 0.9).epsilon(1e-12));
    CHECK(upper_bound_C(Penalty::finite(5.0)).value == doctest::Approx(1.21966).epsilon(1e-5));
    CHECK(upper_bound_C(Penalty::infinite()).value == doctest::Approx(1.09769).epsilon(1e-5));
    CHECK(upper_bound_C(Penalty::finite(2.59)).value == 2.0);
    CHECK(upper_bound_Cplus(Penalty::infinite()).value == doctest::Approx(1.2));
    CHECK(upper_bound_Cplus(Penalty::parse("36/11")).value ==
          doctest::Approx(1.2 / (1.0 - 0.222 / (25.0 / 11.0))).epsilon(1e-14));
    CHECK(upper_bound_Cplus(Penalty::finite(1.2)).value == 2.0);
    CHECK(upper_bound_Cplus(Penalty::finite(1.222)).value == 2.0);
}

TEST_CASE("bound invariants") {
    double prev_c = 3.0, prev_p = 3.0;
    for (double A : {1.1, 1.5, 2.0, 2.6, 3.0, 36.0 / 11.0, 4.0, 10.0, 100.0, 1e6}) {
        CAPTURE(A);
        const auto pa = Penalty::finite(A);
        const double lc = lower_bound_C(pa).value;
        const double uc = upper_bound_C(pa).value;
        const double up = upper_bound_Cplus(pa).value;
        CHECK(lc <= uc);
        CHECK(lc <= bound_record(pa, Target::Cplus).lower);
        CHECK(uc <= prev_c + 1e-15);
        CHECK(up <= prev_p + 1e-15);
        prev_c = uc;
        prev_p = up;
    }
    CHECK(upper_bound_C(Penalty::finite(1e6)).value == doctest::Approx(gorbachev_d0()).epsilon(1e-6));
    CHECK(upper_bound_Cplus(Penalty::finite(1e6)).value == doctest::Approx(1.2).epsilon(1e-6));
}

TEST_CASE("bounds table and csv") {
    const auto rows = bounds_table({Penalty::infinite(), Penalty::finite(1.0)}, Target::C);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].lower == doctest::Approx(1.07995).epsilon(1e-5));
    CHECK(rows[0].upper == doctest::Approx(1.09769).epsilon(1e-5));
    CHECK(rows[1].lower == doctest::Approx(2.0));
    CHECK(rows[1].upper == doctest::Approx(2.0));
    const auto p = bounds_table({Penalty::parse("36/11")}, Target::Cplus);
    CHECK(p[0].lower >= 25.0 / 21.0);
    CHECK(p[0].upper < 2.0);
    const auto csv = bounds_csv(rows);
    CHECK(csv.rfind("A,target,lower,upper,lower_witness,upper_witness\n", 0) == 0);
    CHECK(csv.find("inf,C,1.07995") != std::string::npos);
    CHECK(to_json(rows[0])["target"] == "C");
}

TEST_CASE("mixture search never loses ground") {
    OptimizerConfig cfg;
    cfg.max_evaluations = 200;
    cfg.restarts = 2;
    const auto A = Penalty::parse("36/11");
    const auto r = optimize_mixture(A, Mode::Jplus, reference_mixture(), cfg);
    CHECK(r.report.functional_value >= 1.1943);
    CHECK(r.report.functional_value >= r.initial_value);
    const auto again = optimize_mixture(A, Mode::Jplus, reference_mixture(), cfg);
    CHECK(again.report.functional_value == r.report.functional_value);

    GaussianMixture single;
    single.terms = {{1.0, 0, 3.0}};
    const auto s = optimize_mixture(A, Mode::Jplus, single, cfg);
    CHECK(s.report.functional_value >= s.initial_value);

    CHECK_THROWS_AS(optimize_mixture(Penalty::infinite(), Mode::J, single, cfg), DomainError);
}
