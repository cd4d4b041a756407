#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fgap/bounds.hpp"
#include "fgap/dual.hpp"
#include "fgap/errors.hpp"
#include "fgap/families.hpp"
#include "test_functions.hpp"

using namespace fgap;
using std::numbers::pi;

namespace {

const FourierCoefficients& coeffs() {
    static const FourierCoefficients c = fourier_coeffs(gorbachev_profile(), 2000);
    return c;
}

const DualWitness& psi() {
    static const DualWitness w = build_psi(gorbachev_profile(), coeffs(), 2000);
    return w;
}

const DualWitness& psi_example() {
    static const DualWitness w = build_psi_example();
    return w;
}

QuadratureSpec pairing_spec() {
    QuadratureSpec q;
    q.abs_tol = 1e-9;
    q.rel_tol = 1e-10;
    q.truncation_radius = 600.0;
    return q;
}

}  // namespace

TEST_CASE("alpha profile shape") {
    const auto p = make_alpha_profile(0.43, kTau);
    CHECK(p.epsilon == doctest::Approx(epsilon_of(0.43, kTau)));
    CHECK(p(0.0) == doctest::Approx(-1.0));
    CHECK(p(kTau) == doctest::Approx(2 * kTau - 1));
    CHECK(p(kTau + p.epsilon) == doctest::Approx(1.0));
    CHECK(p(0.5 - p.epsilon) == doctest::Approx(1.0 - 0.43));
    CHECK(p(0.5) == doctest::Approx(1.0));
    CHECK(p(0.3) == doctest::Approx(p(-0.3)));
    CHECK(p(1.2) == doctest::Approx(p(0.2)));
    CHECK_THROWS_AS(make_alpha_profile(-2.0, kTau), DomainError);
}

TEST_CASE("orthogonality solve") {
    const auto& p = gorbachev_profile();
    // oracle: 60-digit root of the first moment
    CHECK(p.y == doctest::Approx(0.4305648278935048).epsilon(2e-10));
    CHECK(p.epsilon == doctest::Approx(5.3884727208e-6).epsilon(1e-9));
    CHECK(std::abs(orthogonality_residual(p)) < 1e-12);
    CHECK(gorbachev_d0() == doctest::Approx(1.0976933237).epsilon(1e-9));
}

TEST_CASE("fourier coefficients") {
    const auto& c = coeffs();
    CHECK(c.d0 == doctest::Approx(1.09769332).epsilon(1e-8));
    CHECK(c.alpha[1] == doctest::Approx(-0.5622).epsilon(1e-4));
    CHECK(c.alpha[2] == doctest::Approx(0.06845).epsilon(1e-3));
    CHECK(c.alpha[3] == doctest::Approx(0.10051).epsilon(1e-3));
    CHECK(c.alpha_l2_sq == doctest::Approx(0.7238).epsilon(1e-4));
    CHECK(c.b_abs_integral == doctest::Approx(0.8283).epsilon(1e-4));
    const double b[] = {0.1972, -0.4047, 0.4364, -0.3150, 0.2529, -0.3009};
    for (int n = 2; n <= 7; ++n) CHECK(c.b[n] == doctest::Approx(b[n - 2]).epsilon(1e-3));
    CHECK(std::abs(c.b[0]) < 1e-12);
    CHECK(std::abs(c.b[1]) < 1e-12);
    CHECK(c.b01_vanish);
    // The discretised profile leaves a tiny constant term.
    CHECK(c.a[0] == doctest::Approx(-3.465e-6).epsilon(1e-3));
    CHECK(c.phi_hat_sup == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t n = 0; n < c.b.size(); ++n) CHECK(std::abs(c.b[n]) <= c.b_abs_integral + 1e-12);
}

TEST_CASE("analytic alpha coefficients agree with quadrature and Parseval") {
    const auto& p = gorbachev_profile();
    const auto breaks = p.nodes();
    const std::vector<double> nodes(breaks.begin(), breaks.end());
    for (int n : {0, 1, 2, 7, 50}) {
        const auto e = integrate([&](double x) { return 2.0 * p(x) * std::cos(2 * pi * n * x); }, nodes,
                                 QuadratureSpec{1e-14, 1e-13, 10000, 0});
        CHECK(alpha_coefficient(p, n) == doctest::Approx(e.value).epsilon(1e-10));
    }
    const auto& c = coeffs();
    double s = c.alpha[0] * c.alpha[0];
    for (std::size_t n = 1; n < c.alpha.size(); ++n) s += 2 * c.alpha[n] * c.alpha[n];
    // alpha has near-jumps of width eps, so its coefficients decay like 1/n up to n ~ 1/eps
    CHECK(s <= c.alpha_l2_sq);
    CHECK(s == doctest::Approx(c.alpha_l2_sq).epsilon(2e-4));
}

TEST_CASE("a(x) series converges to d0 alpha") {
    const auto& c = coeffs();
    const auto& p = gorbachev_profile();
    for (double x : {0.05, 0.2, 0.4, 0.47}) {
        double s = c.a[0];
        for (std::size_t n = 1; n < c.a.size(); ++n) s += 2 * c.a[n] * std::cos(2 * pi * n * x);
        CHECK(s == doctest::Approx(c.d0 * p(x)).epsilon(1e-3));
    }
}

TEST_CASE("psi closed form") {
    const auto& w = psi();
    const double d0 = gorbachev_d0();
    CHECK(w(0.0) == doctest::Approx(d0));
    CHECK(w(0.3) == doctest::Approx(d0));
    for (double k : {1.0, 2.0, -3.0, 17.0}) CHECK(w(k) == doctest::Approx(-d0).epsilon(1e-12));
    // continuity across the half-integers (slope there is about d0 y / eps)
    for (double k : {0.5, 1.5, -2.5})
        CHECK(w(k - 1e-14) == doctest::Approx(w(k + 1e-14)).epsilon(1e-8));
    CHECK(w.sup_norm.value == doctest::Approx(d0).epsilon(1e-4));
    CHECK(w.sup_norm.refined_max <= d0 + 1e-12);
    CHECK(w.sup_norm.tail_allowance <= d0 + 1e-12);
    CHECK(w.sup_norm.series_allowance == 0.0);
    CHECK(w.delta_atoms.size() == 1 + 2 * 2000);
    CHECK_FALSE(w.transform_on_core);
    CHECK(w.core_deviation == doctest::Approx(std::abs(coeffs().a[0])).epsilon(1e-6));
    const auto j = to_json(w);
    CHECK(j.contains("continuous_terms"));
    CHECK(j["delta_atoms"].size() == w.delta_atoms.size());
    CHECK(j["certificate"]["grid_step"].get<double>() == doctest::Approx(1e-4));
}

TEST_CASE("psi pairing with a dilated cosine kernel") {
    // H(0.9 x): transform supported in |t| <= 0.9
    const auto F = dilate(make_dilated_cosine(1.0), 1.0 / 0.9);
    REQUIRE(*F.support_radius == doctest::Approx(0.9));
    const auto r = pairing(psi(), F, pairing_spec());
    const double a0 = coeffs().a[0];
    CHECK(r.numeric == doctest::Approx(r.predicted).epsilon(1e-6));
    CHECK(std::abs(r.numeric - r.predicted) < 1e-6);
    CHECK(std::abs(r.predicted - (F.eval_f(0.0) + a0 * F.eval_fhat(0.0))) < 1e-9);
}

TEST_CASE("pairing identity for random bandlimited functions") {
    std::mt19937_64 rng(20240613);
    const auto& c = coeffs();
    const auto mol_psi = mollify(psi(), Penalty::finite(5.0), Target::C);
    const auto mol_ex = mollify(psi_example(), Penalty::parse("36/11"), Target::Cplus);
    const auto tilde = build_tilde_psi();
    for (int trial = 0; trial < 10; ++trial) {
        const auto F = testing::bandlimited_pair(testing::random_band_terms(rng, 0.95));
        const double l1 = l1_norm_numeric(F, QuadratureSpec{1e-5, 1e-5, 50000, 600}).value;
        const double f0 = F.eval_f(0.0), fh0 = F.eval_fhat(0.0);
        CAPTURE(trial);
        const auto rp = pairing(psi(), F, pairing_spec());
        CHECK(std::abs(rp.numeric - (f0 + c.a[0] * fh0)) <= 1e-6 * l1);
        const auto re = pairing(psi_example(), F, pairing_spec());
        CHECK(std::abs(re.numeric - f0) <= 1e-6 * l1);
        const auto rt = pairing(tilde, F, pairing_spec());
        CHECK(std::abs(rt.numeric - f0) <= 1e-6 * l1);
        const auto rm = pairing(mol_ex.witness, F, pairing_spec());
        CHECK(std::abs(rm.numeric - f0) <= 1e-6 * l1);
        const auto rmp = pairing(mol_psi.witness, F, pairing_spec());
        CHECK(std::abs(rmp.numeric - rmp.predicted) <= 1e-6 * l1);
    }
}

TEST_CASE("tilde psi") {
    const auto a = tilde_psi_a0();
    CHECK(a.value == doctest::Approx(1.16624).epsilon(1e-5));
    CHECK(a.value == doctest::Approx(4.0 * 0.915965594177219015 / pi).epsilon(1e-12));  // 4G/pi
    CHECK(a.error_bound <= 1e-12);
    CHECK((4.0 / pi) == doctest::Approx(1.2732).epsilon(1e-4));
    const auto w = build_tilde_psi();
    CHECK(w.sup_norm.value == doctest::Approx(a.value).epsilon(1e-10));
    for (double t : {0.0, 0.3, -0.7, 0.99}) CHECK(w.transform_at(t) == doctest::Approx(1.0).epsilon(1e-12));
    // outside the core: profile (2 sin(pi t/2)/(pi t)) P(t) with P 2-periodic
    CHECK(w.transform_at(1.5) == doctest::Approx(2 * std::sin(0.75 * pi) / (1.5 * pi) * (-0.25 * pi) / std::sin(-0.25 * pi)));
}

TEST_CASE("Psi example") {
    const auto& w = psi_example();
    CHECK(w(0.0) == doctest::Approx(2 + 2 * 0.018 + 2 * 0.027 + 2 * 0.002 - 0.888 - 0.01).epsilon(1e-12));
    CHECK(w(0.0) == doctest::Approx(1.196).epsilon(1e-12));
    CHECK(w.sup_norm.value < 1.2);
    CHECK(w.sup_norm.sampled_max >= w(0.0) - 1e-12);
    CHECK(w.sup_norm.lipschitz_allowance < 1e-3);
    CHECK(w.transform_on_core);
    // The factor-2 convention between cosine and atom coefficients: pairing against a Gaussian,
    // whose transform sees the atoms at +-1 and +-3.
    GaussianMixture g;
    g.terms = {{1.0, 0, pi}};
    const auto G = make_gaussian_mixture(g);
    QuadratureSpec q = pairing_spec();
    q.truncation_radius = 12.0;
    const auto r = pairing(w, G, q);
    CHECK(r.numeric == doctest::Approx(r.predicted).epsilon(1e-9));
}

TEST_CASE("sup certification is stable under grid refinement") {
    const auto& w = psi_example();
    SupOptions coarse;
    coarse.range = 20.0;
    coarse.step = 2e-4;
    coarse.lipschitz = 12.5;
    SupOptions fine = coarse;
    fine.step = 1e-4;
    const auto a = certify_sup(w.continuous_part, coarse);
    const auto b = certify_sup(w.continuous_part, fine);
    CHECK(b.value >= a.value - a.lipschitz_allowance);
    CHECK(b.refined_max >= a.refined_max - 1e-12);
    CHECK(a.refined_max >= a.sampled_max);
}

TEST_CASE("mollification") {
    const double d0 = gorbachev_d0();
    const auto m5 = mollify(psi(), Penalty::finite(5.0), Target::C);
    CHECK(m5.gamma == doctest::Approx(1.0 / 0.9).epsilon(1e-14));
    CHECK(m5.sup_bound == doctest::Approx(d0 / 0.9).epsilon(1e-10));
    CHECK(m5.gamma - 1.0 == doctest::Approx(0.5 * m5.lambda_m).epsilon(1e-14));
    CHECK(m5.transform_in_range);
    CHECK(m5.witness.sup_norm.sampled_max <= m5.sup_bound + 1e-9);
    // largest psi atom is 0.6171, above the 0.6 entering the formula
    CHECK(m5.max_atom == doctest::Approx(0.6171).epsilon(1e-3));
    CHECK_FALSE(m5.atoms_within_bound);

    const auto me = mollify(psi_example(), Penalty::parse("36/11"), Target::Cplus);
    CHECK(me.gamma == doctest::Approx(1.0 / (1.0 - 0.222 * 11.0 / 25.0)).epsilon(1e-14));
    CHECK(me.gamma - 1.0 == doctest::Approx(0.5 * me.lambda_m).epsilon(1e-14));
    CHECK(me.atoms_within_bound);
    CHECK(me.transform_in_range);
    CHECK(me.transform_max <= 1.0 + 1e-12);
    CHECK(me.witness.transform_on_core);

    for (double A : {2.6, 3.0, 10.0, 40.0, 100.0}) {
        const auto m = mollify(psi(), Penalty::finite(A), Target::C);
        CHECK(m.gamma - 1.0 == doctest::Approx(0.5 * m.lambda_m).epsilon(1e-13));
        // with c = max atom the smoothed atoms always fit under A - 1
        CHECK(mollify(psi(), Penalty::finite(A), Target::C, m.max_atom).transform_in_range);
    }
    // With c = 0.6 the atom 0.6171 outgrows A - 1 once A is large (crossover near 43.94).
    CHECK(mollify(psi(), Penalty::finite(40.0), Target::C).transform_in_range);
    CHECK_FALSE(mollify(psi(), Penalty::finite(50.0), Target::C).transform_in_range);
    const auto inf = mollify(psi_example(), Penalty::infinite(), Target::Cplus);
    CHECK(inf.gamma == 1.0);
    CHECK(inf.sup_bound == psi_example().sup_norm.value);
    const auto big = mollify(psi_example(), Penalty::finite(1e8), Target::Cplus);
    CHECK(big.gamma == doctest::Approx(1.0).epsilon(1e-8));

    CHECK_THROWS_AS(mollify(psi(), Penalty::finite(2.5), Target::C), DomainError);
    CHECK_THROWS_AS(mollify(psi_example(), Penalty::finite(1.222), Target::Cplus), DomainError);
    CHECK_NOTHROW(mollify(psi(), Penalty::finite(2.6), Target::C));
    const auto j = to_json(me);
    CHECK(j["gamma"].get<double>() == doctest::Approx(me.gamma));
}
