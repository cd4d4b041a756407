#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "fgap/errors.hpp"
#include "fgap/explicit_formula.hpp"
#include "fgap/families.hpp"
#include "fgap/special.hpp"

using namespace fgap;
using std::numbers::pi;

namespace {

// The zero table is produced by the generate_zero_table fixture and located through FOURIER_GAP_ZEROS.
const ZetaZeroTable& table() {
    static const ZetaZeroTable t = [] {
        const std::string path = resolve_zero_path("");
        REQUIRE_MESSAGE(!path.empty(), "FOURIER_GAP_ZEROS is not set");
        return load_zeros(path);
    }();
    return t;
}

// Lambda(n) by trial division.
double mangoldt(long n) {
    if (n < 2) return 0.0;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        long m = n;
        while (m % p == 0) m /= p;
        return m == 1 ? std::log(static_cast<double>(p)) : 0.0;
    }
    return std::log(static_cast<double>(n));
}

double brute_lhs(double a, double theta) {
    const double d = 0.5 * pi / theta;
    double s = 0.0;
    for (long n = static_cast<long>(std::ceil(a * std::exp(-d))); n <= static_cast<long>(std::floor(a * std::exp(d))); ++n)
        s += mangoldt(n) / std::sqrt(static_cast<double>(n)) * std::cos(theta * std::log(a / static_cast<double>(n)));
    return s;
}

// Composite Simpson on [0, R] with step h, doubled for the even extension.
template <class G>
double simpson_even(G g, double R, double h) {
    const long n = static_cast<long>(std::llround(R / h));
    double s = g(0.0) + g(R);
    for (long i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * g(i * h);
    return 2.0 * s * h / 3.0;
}

}  // namespace

TEST_CASE("parsing") {
    const auto t = parse_zeros("14.134725141734693\n");
    REQUIRE(t.size() == 1);
    CHECK(std::abs(t.ordinates[0] - 14.134725141734693790) < 1e-9);
    CHECK(t.max_height == t.ordinates[0]);

    const auto c = parse_zeros("# header\n\n  14.1347  # trailing\n21.0220\r\n\n25.0108\n");
    CHECK(c.size() == 3);
    CHECK(c.count_below(21.022) == 2);
    CHECK(c.count_below(14.0) == 0);

    CHECK_THROWS_AS(parse_zeros(""), ParseError);
    CHECK_THROWS_AS(parse_zeros("# only a comment\n\n"), ParseError);
    try {
        parse_zeros("14.13\n25.01\n21.02\n");
        FAIL("expected a monotonicity error");
    } catch (const MonotonicityError& e) {
        CHECK(e.line == 3);
    }
    try {
        parse_zeros("14.13\n# c\n2x.5\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
    }
    CHECK_THROWS_AS(parse_zeros("-3.0\n"), ParseError);
    CHECK_THROWS_AS(parse_zeros("0\n"), ParseError);
    CHECK_THROWS_AS(parse_zeros("14.13\n14.13\n"), MonotonicityError);
    CHECK_THROWS_AS(load_zeros("/nonexistent/zeros.txt"), Error);
}

TEST_CASE("zero path resolution") {
    CHECK(resolve_zero_path("given.txt") == "given.txt");
    CHECK(resolve_zero_path("") == std::string(std::getenv("FOURIER_GAP_ZEROS")));
}

TEST_CASE("ingested table") {
    const auto& t = table();
    REQUIRE(t.size() == 100000);
    CHECK(std::abs(t.ordinates[0] - 14.134725141734693790) < 1e-9);
    // mpmath zetazero
    CHECK(std::abs(t.ordinates[999] - 1419.422480945995686) < 1e-9);
    CHECK(std::abs(t.ordinates[9999] - 9877.782654005501143) < 1e-9);
    CHECK(std::abs(t.ordinates[99999] - 74920.827498994186795) < 1e-9);
}

TEST_CASE("zero counting") {
    const auto& t = table();
    const auto c100 = zero_count_check(t, 100.0);
    CHECK(c100.count == 29);
    CHECK(c100.pass);
    const auto ce = zero_count_check(t, std::numbers::e);
    CHECK(ce.count == 0);
    CHECK(ce.pass);
    const auto c1000 = zero_count_check(t, 1000.0);
    CHECK(c1000.count == 649);  // mpmath nzeros(1000)
    CHECK(c1000.pass);
    CHECK_THROWS_AS(zero_count_check(t, t.max_height + 1.0), RangeError);
    CHECK_THROWS_AS(zero_count_check(t, 2.0), DomainError);

    // band at 20 heights spread over the table
    for (int i = 1; i <= 20; ++i) {
        const double x = std::min(t.max_height, std::exp(std::log(10.0) + (std::log(t.max_height) - std::log(10.0)) * i / 20.0));
        INFO("x = " << x);
        CHECK(zero_count_check(t, x).pass);
    }
}

TEST_CASE("windowed explicit formula residual") {
    const auto& t = table();
    SUBCASE("a = 1000, theta = 5 pi") {
        const auto r = explicit_formula_eval(t, 1000.0, 5.0 * pi);
        CHECK(r.delta == doctest::Approx(0.1).epsilon(1e-15));
        CHECK(std::abs(r.lhs - brute_lhs(1000.0, 5.0 * pi)) < 1e-12);
        CHECK(std::abs(r.residual) <= r.tail_estimate);
        CHECK(r.tail_estimate < 1e-2);
        CHECK(r.zeros_used == 100000);
        CHECK(r.trivial_sum > 0.0);
        CHECK(r.trivial_sum < r.trivial_bound);
    }
    SUBCASE("empty window") {
        const auto r = explicit_formula_eval(t, 10.0, 20.0 * pi);
        CHECK(r.prime_power_terms == 0);
        CHECK(r.lhs == 0.0);
        CHECK(std::abs(r.residual) <= r.tail_estimate);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(explicit_formula_eval(t, t.ordinates[0] > 0 ? 1000.0 : 0.0, t.ordinates[0]), PoleError);
        CHECK_THROWS_AS(explicit_formula_eval(t, 1000.0, t.ordinates[5] * (1.0 + 2e-10)), PoleError);
        CHECK_NOTHROW(explicit_formula_eval(t, 1000.0, t.ordinates[5] + 1e-3));
        CHECK_THROWS_AS(explicit_formula_eval(t, 1.01, 5.0 * pi), DomainError);
        CHECK_THROWS_AS(explicit_formula_eval(t, 1000.0, -1.0), DomainError);
        CHECK_THROWS_AS(explicit_formula_eval(t, 1e19, 5.0 * pi), RangeError);
        CHECK_THROWS_AS(explicit_formula_eval(t, 1000.0, 5e5), RangeError);
    }
}

TEST_CASE("residual against truncation height") {
    const auto& t = table();
    const std::pair<double, double> samples[] = {{1000.0, 5.0 * pi}, {5000.0, 3.3}, {20000.0, 7.1}, {123456.0, 11.0}, {777.0, 2.5}};
    for (auto [a, th] : samples) {
        INFO("a = " << a << ", theta = " << th);
        const auto r4 = explicit_formula_eval(t, a, th, 10000);
        const auto r5 = explicit_formula_eval(t, a, th, 100000);
        CHECK(std::abs(r4.lhs - brute_lhs(a, th)) < 1e-11 * std::max(1.0, std::abs(r4.lhs)));
        CHECK(std::abs(r5.residual) <= std::abs(r4.residual) + r4.tail_estimate);
        CHECK(std::abs(r4.residual) <= r4.tail_estimate);
        CHECK(std::abs(r5.residual) <= r5.tail_estimate);
        // the zeros between the two heights are covered by the tail estimate at 10^4
        CHECK(std::abs(r5.zero_sum - r4.zero_sum) <= r4.tail_estimate);
        CHECK(r5.tail_estimate < r4.tail_estimate);
    }
}

TEST_CASE("zero sum symmetry and determinism") {
    const auto& t = table();
    for (auto [a, th] : {std::pair{1000.0, 5.0 * pi}, std::pair{20000.0, 7.1}}) {
        const auto z = zero_sum_complex(t, a, th);
        const auto r = explicit_formula_eval(t, a, th, 0, 1);
        CHECK(std::abs(z.imag()) < 1e-12);
        CHECK(std::abs(z.real() - r.zero_sum) < 1e-12);
        const auto r4 = explicit_formula_eval(t, a, th, 0, 4);
        CHECK(r4.zero_sum == r.zero_sum);
        CHECK(r4.residual == r.residual);
    }
}

TEST_CASE("trivial zero series") {
    for (auto [a, th] : {std::pair{1000.0, 5.0 * pi}, std::pair{10.0, 20.0 * pi}, std::pair{3.0, 2.0}, std::pair{50.0, 0.8}}) {
        INFO("a = " << a << ", theta = " << th);
        const double d = 0.5 * pi / th;
        const auto terms = trivial_zero_terms(a, th);
        const double bound = 3.0 / th * std::pow(std::exp(d) / a, 2.5);
        double s = 0.0;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            CHECK(terms[i] > 0.0);
            if (i > 0) {
                CHECK(terms[i] < terms[i - 1]);
                CHECK(terms[i] <= terms[i - 1] * std::exp(2.0 * d) / (a * a) * (1.0 + 1e-12));
            }
            s += terms[i];
            CHECK(s < bound);
        }
    }
    CHECK_THROWS_AS(trivial_zero_terms(3.0, 1.0), DomainError);
}

TEST_CASE("tail estimate") {
    // integral part against a direct midpoint sum of the density bound
    const double theta = 5.0 * pi, T = 5000.0;
    const std::size_t N = 4520;
    double integral = 0.0;
    const double h = 0.01;
    for (double t = T + 0.5 * h; t < 5.0e6; t += h * std::max(1.0, t / 5000.0)) {
        const double step = h * std::max(1.0, t / 5000.0);
        const double d = t * t - theta * theta;
        integral += (zero_count_main(t) + zero_count_band(t)) * 2.0 * t / (d * d) * step;
    }
    const double expected = 4.0 * theta * (-static_cast<double>(N) / (T * T - theta * theta) + integral);
    CHECK(zero_tail_estimate(theta, T, N) == doctest::Approx(expected).epsilon(1e-4));
    CHECK_THROWS_AS(zero_tail_estimate(10.0, 5.0, 0), RangeError);
}

TEST_CASE("constants audit") {
    const auto r = audit_zero_sum_constants(0.9);
    CHECK(r.assembled < 0.070);
    CHECK(r.pass);
    CHECK(r.l1_f == doctest::Approx(0.83337).epsilon(2e-5));
    CHECK(std::abs(r.l1_f - r.l1_f_closed) <= r.error_estimate);

    // independent Simpson oracle over [0, R] (the same truncation radius; tails are bounded separately)
    const double lam = 0.9, R = r.truncation_radius;
    auto F = [&](double y) { return cosine_kernel(y / lam); };
    auto Fp = [&](double y) { return cosine_kernel_prime(y / lam) / lam; };
    auto lp = [](double y) { return y > 1.0 ? std::log(y) : 0.0; };
    const double h = 2e-3;
    const double log_f = simpson_even([&](double y) { return lp(y) * std::abs(F(y)); }, R, h);
    const double fp = simpson_even([&](double y) { return std::abs(Fp(y)); }, R, h);
    const double log_fp = simpson_even([&](double y) { return lp(y) * std::abs(Fp(y)); }, R, h);
    // the report adds tail bounds on top of the truncated integrals
    CHECK(r.l1_log_f >= log_f - 1e-6);
    CHECK(r.l1_log_f - log_f < 2.5e-3);
    CHECK(r.l1_fprime >= fp - 1e-6);
    CHECK(r.l1_fprime - fp < 2e-3);
    CHECK(r.l1_log_fprime >= log_fp - 1e-6);
    CHECK(r.l1_log_fprime - log_fp < 2e-2);

    const auto r1 = audit_zero_sum_constants(1.0);
    CHECK(std::isfinite(r1.assembled));
    CHECK(r1.l1_f == doctest::Approx(1.0 / c0()).epsilon(1e-5));
    CHECK_THROWS_AS(audit_zero_sum_constants(0.0), DomainError);
    CHECK_THROWS_AS(audit_zero_sum_constants(1.2), DomainError);
}

TEST_CASE("edge value") {
    const auto r = edge_value_check(0.9);
    CHECK(r.eight_fhat_one == doctest::Approx(8.0 * 0.9 * (pi / 4.0) * std::cos(0.45 * pi)).epsilon(1e-15));
    CHECK(r.eight_fhat_one == doctest::Approx(0.88461606).epsilon(1e-8));
    CHECK(r.eight_fhat_one <= 0.885);
    CHECK(r.edge_pass);
    // sqrt(a)(2 pi Delta)^2 at x = 4e18, c = 1 exceeds 1e-7; the correction still stays below 0.001
    CHECK(r.sqrt_a_delta_sq > r.stated_bound);
    CHECK(r.sqrt_a_delta_sq <= r.sqrt_a_delta_sq_bound);
    CHECK(r.correction < 0.001);
    CHECK(r.assembled <= 0.886);
    CHECK(r.assembled_pass);

    CHECK(edge_value_check(1.0 - 1e-9).fhat_one < 1e-8);
    CHECK(edge_value_check(0.5).fhat_one == doctest::Approx(0.5 * (pi / 4.0) * std::cos(pi / 4.0)).epsilon(1e-15));
    CHECK_THROWS_AS(edge_value_check(1.0), DomainError);
}

TEST_CASE("reports serialize every term") {
    const auto j = to_json(explicit_formula_eval(table(), 1000.0, 5.0 * pi));
    for (const char* k : {"a", "theta", "delta", "lhs", "main_term", "zero_sum", "trivial_sum", "truncation_height",
                          "residual", "tail_estimate"})
        CHECK(j.contains(k));
    CHECK(to_json(zero_count_check(table(), 100.0))["count"] == 29);
}
