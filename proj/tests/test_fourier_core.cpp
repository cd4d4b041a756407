#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fgap/errors.hpp"
#include "fgap/families.hpp"
#include "fgap/fourier_pair.hpp"
#include "fgap/special.hpp"

using namespace fgap;
using std::numbers::pi;

namespace {
FourierPair unit_gaussian() { return make_gaussian_mixture({{{1.0, 0, pi}}}); }
}

TEST_CASE("penalty parsing keeps infinity distinct") {
    CHECK(Penalty::parse("inf").is_infinite());
    CHECK(Penalty::parse(" Inf ").is_infinite());
    CHECK(Penalty::parse("36/11").value() == doctest::Approx(36.0 / 11.0));
    CHECK(Penalty::parse("4").value() == 4.0);
    CHECK_THROWS_AS(Penalty::parse("0.5"), DomainError);
    CHECK_THROWS_AS(Penalty::parse("abc"), DomainError);
    CHECK_THROWS_AS(Penalty::parse("4x"), DomainError);
    CHECK_THROWS_AS(Penalty::infinite().value(), DomainError);
}

TEST_CASE("l1 norms of the reference kernels") {
    auto h = l1_norm(make_dilated_cosine(1.0));
    CHECK(std::abs(h.value - 0.925968525991233085) < 1e-14);
    CHECK(std::abs(l1_norm(make_fejer(1.0)).value - 1.0) < 1e-14);
    auto g = l1_norm(unit_gaussian());
    CHECK(std::abs(g.value - 1.0) < 1e-10);
    CHECK(g.error <= 1e-9);
}

TEST_CASE("numeric l1 of H on a wide window is consistent with 1/c0") {
    QuadratureSpec q;
    q.truncation_radius = 2000;
    q.abs_tol = 1e-3;
    auto e = l1_norm_numeric(make_dilated_cosine(1.0), q);
    CHECK(std::abs(e.value - 1.0 / c0()) <= e.error);
    CHECK(e.error < 1e-4);
}

TEST_CASE("truncation shortfall is reported, not hidden") {
    // H decays like x^-2 so radius 60 cannot give 1e-10.
    CHECK_THROWS_AS(l1_norm_numeric(make_dilated_cosine(1.0)), ToleranceError);
}

TEST_CASE("tail integrals") {
    CHECK(tail_abs_integral(make_dilated_cosine(1.0)).value == 0.0);
    for (double lambda : {0.5, 0.7, 0.9}) {
        auto h = make_dilated_cosine(lambda);
        CHECK(std::abs(tail_abs_integral(h).value - (1.0 - std::sin(pi * lambda / 2))) < 1e-9);
        auto k = make_fejer(lambda);
        // lambda * int_{1<=|t|<=1/lambda} (1 - lambda|t|) dt; divided by ||F||_1 = lambda it is 1/lambda + lambda - 2
        const double tail = (1.0 - lambda) * (1.0 - lambda);
        CHECK(std::abs(tail_abs_integral(k).value - tail) < 1e-9);
        CHECK(std::abs(tail_pos_integral(k).value - tail) < 1e-9);
        // Fejer ratio 1/lambda - A(1/lambda + lambda - 2) at A = 3
        auto r = functional(k, Penalty::finite(3.0), Mode::J);
        CHECK(std::abs(r.functional_value - (1.0 / lambda - 3.0 * (1.0 / lambda + lambda - 2.0))) < 1e-9);
    }
}

TEST_CASE("functional examples") {
    auto r = functional(make_dilated_cosine(1.0), Penalty::infinite(), Mode::J);
    CHECK(std::abs(r.functional_value - c0()) < 1e-12);
    auto s = functional(make_dilated_cosine(0.9), Penalty::finite(4.0), Mode::J);
    // mpmath: (1 - 4(1 - sin(0.45 pi))) c0 / 0.9
    CHECK(std::abs(s.functional_value - 1.14085154647824448) < 1e-9);
    CHECK(std::abs(functional(make_fejer(1.0), Penalty::infinite(), Mode::J).functional_value - 1.0) < 1e-12);
    CHECK_THROWS_AS(functional(make_fejer(0.5), Penalty::infinite(), Mode::J), DomainError);
    CHECK_THROWS_AS(functional(make_fejer(0.5), Penalty::infinite(), Mode::Jplus), DomainError);
}

TEST_CASE("report invariant: value = (F0 - A tail)/l1 within error") {
    auto f = make_gaussian_mixture(reference_mixture());
    for (double A : {1.0, 2.0, 36.0 / 11.0, 10.0}) {
        for (Mode m : {Mode::J, Mode::Jplus}) {
            auto r = functional(f, Penalty::finite(A), m);
            CHECK(r.l1_norm > 0);
            CHECK(std::abs(r.functional_value - (r.value_at_zero - A * r.tail_integral) / r.l1_norm) <=
                  r.error_estimate + 1e-15);
        }
    }
}

TEST_CASE("numeric transform reproduces closed forms") {
    auto h = make_dilated_cosine(1.0);
    CHECK(std::abs(numeric_transform(h, 0.0).value - pi / 4) < 1e-10);
    CHECK(std::abs(numeric_transform(h, 2.0).value) < 1e-10);
    CHECK(std::abs(numeric_transform(unit_gaussian(), 1.0).value - std::exp(-pi)) < 1e-12);
}

TEST_CASE("dilation covariance") {
    for (double lambda : {0.5, 0.9, 2.0}) {
        auto base = make_gaussian_mixture(reference_mixture());
        auto d = dilate(base, lambda);
        const double l1b = l1_norm(base).value, l1d = l1_norm(d).value;
        CHECK(std::abs(l1d / (lambda * l1b) - 1.0) < 1e-8);
        for (double t : {0.0, 0.3, 0.77, 1.4}) {
            const double nd = numeric_transform(d, t).value;
            CHECK(std::abs(nd - lambda * base.eval_fhat(lambda * t)) <= 1e-8 * std::max(1.0, std::abs(nd)));
        }
    }
    auto k = make_fejer(1.0);
    auto k2 = dilate(k, 0.5);
    CHECK(std::abs(numeric_transform(k2, 0.7).value - 0.5 * k.eval_fhat(0.35)) < 1e-9);
}

TEST_CASE("functional is non-increasing in A and Jplus dominates J") {
    const FourierPair pairs[] = {make_gaussian_mixture(reference_mixture()), make_dilated_cosine(0.8), make_fejer(0.7)};
    for (const auto& f : pairs) {
        double prev = 1e300;
        for (double A : {1.0, 1.5, 2.0, 3.0, 5.0, 10.0, 100.0}) {
            auto j = functional(f, Penalty::finite(A), Mode::J);
            auto jp = functional(f, Penalty::finite(A), Mode::Jplus);
            CHECK(j.functional_value <= prev + 1e-12);
            CHECK(jp.functional_value >= j.functional_value - 1e-12);
            prev = j.functional_value;
        }
    }
}
