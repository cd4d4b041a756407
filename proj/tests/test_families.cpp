#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fgap/errors.hpp"
#include "fgap/families.hpp"
#include "fgap/special.hpp"

using namespace fgap;
using std::numbers::pi;

TEST_CASE("cosine kernel near its removable points") {
    // mpmath at 30 digits: H(1/4 + d)
    const std::pair<double, double> ref[] = {{-1e-4, 0.78555522276487450408}, {-3e-5, 0.78544528546363463391},
                                             {-1e-9, 0.78539816496824463438}, {1e-9, 0.78539816182665198079},
                                             {3e-5, 0.78535103768424576109},  {1e-4, 0.78524106350762000518}};
    for (auto [d, v] : ref) {
        CHECK(std::abs(cosine_kernel(0.25 + d) - v) < 1e-15);
        CHECK(std::abs(cosine_kernel(-0.25 - d) - v) < 1e-15);
        // H'(1/4) = -pi/2, so the distance to pi/4 is |d| pi/2 to first order.
        CHECK(std::abs(cosine_kernel(0.25 + d) - pi / 4) <= std::abs(d) * (pi / 2) * 1.01 + 1e-15);
    }
    CHECK(cosine_kernel(0.25) == doctest::Approx(pi / 4).epsilon(1e-15));
    for (double lambda : {0.9, 0.5}) {
        auto f = make_dilated_cosine(lambda);
        CHECK(std::abs(f.eval_f(lambda * 0.25) - pi / 4) < 1e-15);
        CHECK(std::abs(f.eval_f(lambda * (0.25 + 1e-4)) - 0.78524106350762000518) < 1e-14);
    }
    // Guard boundary agrees with the direct formula.
    for (double x : {0.25 + 0.0100001, 0.25 - 0.0100001}) {
        CHECK(std::abs(cosine_kernel(x) - std::cos(2 * pi * x) / (1 - 16 * x * x)) < 1e-14);
    }
}

TEST_CASE("cosine kernel derivative matches central differences") {
    for (double x : {0.0, 0.1, 0.2499, 0.25, 0.2501, 0.26, 0.4, 1.3, -0.25, -0.7}) {
        const double h = 1e-6;
        const double fd = (cosine_kernel(x + h) - cosine_kernel(x - h)) / (2 * h);
        CHECK(std::abs(cosine_kernel_prime(x) - fd) < 1e-7);
    }
}

TEST_CASE("closed-form examples") {
    auto h = make_dilated_cosine(1.0);
    CHECK(h.eval_f(0.0) == 1.0);
    CHECK(*h.l1_closed_form == doctest::Approx(1.0 / c0()));
    auto h9 = make_dilated_cosine(0.9);
    CHECK(std::abs(*h9.l1_closed_form - 0.83337) < 1e-5);
    CHECK(std::abs(*h9.support_radius - 1.0 / 0.9) < 1e-15);
    auto h5 = make_dilated_cosine(0.5);
    CHECK(std::abs(h5.eval_fhat(1.0) - 0.5 * (pi / 4) * std::cos(pi / 4)) < 1e-15);
    CHECK(h5.eval_fhat(2.0001) == 0.0);
    auto k = make_fejer(0.6);
    CHECK(k.eval_fhat(0.5) == doctest::Approx(0.6 * 0.7));
    CHECK(*k.l1_closed_form == doctest::Approx(0.6));
    CHECK_THROWS_AS(make_dilated_cosine(0.0), DomainError);
    CHECK_THROWS_AS(make_fejer(1.5), DomainError);
}

TEST_CASE("Fejer at A=2 with the optimal dilation gives 4 - 2 sqrt 2") {
    const double A = 2.0;
    auto k = make_fejer(std::sqrt((A - 1) / A));
    auto r = functional(k, Penalty::finite(A), Mode::J);
    CHECK(std::abs(r.functional_value - (4 - 2 * std::sqrt(2.0))) < 1e-9);
}

TEST_CASE("support and symmetry invariants by sampling") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-30, 30);
    const FourierPair pairs[] = {make_dilated_cosine(0.75), make_fejer(0.4), make_gaussian_mixture(reference_mixture())};
    for (const auto& p : pairs) {
        for (int i = 0; i < 200; ++i) {
            const double x = u(rng);
            CHECK(p.eval_f(x) == p.eval_f(-x));
            CHECK(p.eval_fhat(x) == p.eval_fhat(-x));
            if (p.support_radius && std::abs(x) > *p.support_radius) CHECK(p.eval_fhat(x) == 0.0);
        }
    }
}

TEST_CASE("each family's transform agrees with the quadrature oracle at 50 points") {
    const FourierPair pairs[] = {make_dilated_cosine(1.0), make_dilated_cosine(0.9), make_fejer(1.0), make_fejer(0.5),
                                 make_gaussian_mixture(reference_mixture())};
    for (const auto& p : pairs) {
        for (int i = 0; i < 50; ++i) {
            const double t = -0.3 + 3.0 * i / 49.0 + 1e-3;
            const auto e = numeric_transform(p, t);
            INFO(p.description << " t=" << t);
            CHECK(std::abs(e.value - p.eval_fhat(t)) < 1e-9);
        }
    }
}

TEST_CASE("reference mixture values (mpmath oracle)") {
    auto f = make_gaussian_mixture(reference_mixture());
    CHECK(f.eval_f(0.0) == doctest::Approx(1.48).epsilon(1e-15));
    CHECK(std::abs(f.eval_fhat(0.0) - 0.991977075570257581) < 1e-14);
    CHECK(std::abs(f.eval_fhat(1.0) - 0.205300785353078362) < 1e-14);
    CHECK(std::abs(f.eval_fhat(1.5) - -0.0103194061969186822) < 1e-14);
    CHECK(std::abs(f.eval_fhat(3.0) - -0.0000397801685450912) < 1e-15);
    CHECK(std::abs(l1_norm(f).value - 1.096684443130582416) < 1e-9);
    CHECK(std::abs(tail_pos_integral(f).value - 0.052014060237069107) < 1e-10);
    CHECK(std::abs(tail_abs_integral(f).value - 0.060196292494698534) < 1e-10);
    auto r = functional(f, Penalty::parse("36/11"), Mode::Jplus);
    CHECK(std::abs(r.functional_value - 1.194301765381119690) < 1e-8);
    CHECK(r.functional_value > 25.0 / 21.0);
}

TEST_CASE("Hermite closed form agrees with finite differences of the Gaussian transform") {
    // (-1/(4 pi^2))^m d^{2m}/dt^{2m} of sqrt(pi/s) e^{-pi^2 t^2/s}; long double stencils plus
    // three Richardson levels.
    const long double s = 2.3L;
    const long double pil = 3.14159265358979323846264338327950288L;
    auto base = [&](long double t) { return std::sqrt(pil / s) * std::exp(-pil * pil * t * t / s); };
    auto stencil = [&](int m, long double t, long double h) {
        long double d = 0.0L, binom = 1.0L;
        for (int k = 0; k <= 2 * m; ++k) {
            d += ((k % 2) ? -1.0L : 1.0L) * binom * base(t + (m - k) * h);
            binom = binom * (2 * m - k) / (k + 1);
        }
        return d / std::pow(h, 2 * m);
    };
    for (int m = 1; m <= 4; ++m) {
        for (double t : {0.0, 0.2, 0.45, 0.9}) {
            const long double h = 0.1L;
            const long double d1 = stencil(m, t, h), d2 = stencil(m, t, h / 2), d3 = stencil(m, t, h / 4),
                              d4 = stencil(m, t, h / 8);
            const long double r1 = (4 * d2 - d1) / 3, r2 = (4 * d3 - d2) / 3, r3 = (4 * d4 - d3) / 3;
            const long double q1 = (16 * r2 - r1) / 15, q2 = (16 * r3 - r2) / 15;
            const long double rich = (64 * q2 - q1) / 63;
            const double fd = static_cast<double>(std::pow(-1.0L / (4 * pil * pil), m) * rich);
            const double closed = gaussian_term_transform({1.0, m, static_cast<double>(s)}, t);
            INFO("m=" << m << " t=" << t << " fd=" << fd << " closed=" << closed);
            CHECK(std::abs(fd - closed) <= 1e-6 * std::abs(closed));
        }
    }
}

TEST_CASE("mixture config parsing") {
    auto m = parse_mixture_terms("# reference\n-4.8 1 3.3\n\n1.5 1 7.4 # second\n");
    REQUIRE(m.terms.size() == 2);
    CHECK(m.terms[1].rate == 7.4);
    CHECK_THROWS_AS(parse_mixture_terms("1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_mixture_terms("1 0.5 2\n"), ParseError);
    CHECK_THROWS_AS(parse_mixture_terms("# nothing\n"), ParseError);
    CHECK_THROWS_AS(make_gaussian_mixture({}), DomainError);
    CHECK_THROWS_AS(make_gaussian_mixture({{{1.0, 0, -1.0}}}), DomainError);
}
