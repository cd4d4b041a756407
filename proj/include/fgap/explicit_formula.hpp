#pragma once

#include <complex>
#include <cstddef>
#include <json.hpp>
#include <string>
#include <vector>

namespace fgap {

// Positive ordinates of nontrivial zeta zeros, strictly increasing.
struct ZetaZeroTable {
    std::vector<double> ordinates;
    double max_height = 0.0;  // the table is taken to be complete up to this height
    std::string source;

    std::size_t size() const { return ordinates.size(); }
    std::size_t count_below(double x) const;  // ordinates <= x
};

// One ordinate per line, '#' starts a comment; blank lines are ignored.
ZetaZeroTable parse_zeros(const std::string& text, const std::string& source = "<memory>");
ZetaZeroTable load_zeros(const std::string& path);
// --zeros value if non-empty, else FOURIER_GAP_ZEROS, else empty.
std::string resolve_zero_path(const std::string& flag);

// N(x) = M(x) + R(x) with M(x) = (x/2pi) log(x/(2 pi e)) + 7/8 and |R(x)| <= 0.15 log x + 3.
double zero_count_main(double x);
double zero_count_band(double x);

struct ZeroCountCheck {
    double x = 0.0;
    std::size_t count = 0;
    double main_term = 0.0;
    double band_lo = 0.0, band_hi = 0.0;
    bool pass = false;
};
ZeroCountCheck zero_count_check(const ZetaZeroTable& table, double x);

struct FormulaEvaluation {
    double a = 0.0, theta = 0.0, delta = 0.0;
    double lhs = 0.0;
    std::size_t prime_power_terms = 0;
    double main_term = 0.0;
    double zero_sum = 0.0;  // 2 theta sum_gamma a^{i gamma} cos(delta gamma)/(theta^2 - gamma^2), both signs of gamma
    std::size_t zeros_used = 0;
    double truncation_height = 0.0;
    double trivial_sum = 0.0;
    double trivial_bound = 0.0;  // (3/theta)(e^delta/a)^{5/2}
    double residual = 0.0;       // lhs - (main_term - zero_sum - trivial_sum)
    double tail_estimate = 0.0;
    bool within_tail = false;
};

// Evaluates both sides of
//   sum_{a e^-d <= n <= a e^d} Lambda(n)/sqrt(n) cos(theta log(a/n))
//     = theta sqrt(a)(e^{d/2} + e^{-d/2})/(1/4 + theta^2) - zero_sum - trivial_sum,   theta d = pi/2,
// using the first max_zeros ordinates (0 = all).
FormulaEvaluation explicit_formula_eval(const ZetaZeroTable& table, double a, double theta, std::size_t max_zeros = 0,
                              unsigned threads = 0);

// sum over +gamma and -gamma separately, as a complex number (imaginary part cancels).
std::complex<double> zero_sum_complex(const ZetaZeroTable& table, double a, double theta, std::size_t max_zeros = 0);
// Terms of the trivial-zero series, n = 1, 2, ..., until they drop below machine precision.
std::vector<double> trivial_zero_terms(double a, double theta);
// Bound for |2 theta sum_{|gamma| > T} a^{i gamma} cos(delta gamma)/(theta^2 - gamma^2)| given N(T).
double zero_tail_estimate(double theta, double T, std::size_t count_at_T);

struct AuditReport {
    double lambda = 0.0;
    double truncation_radius = 0.0;
    double l1_f = 0.0;         // ||F||_1
    double l1_f_closed = 0.0;  // lambda / c0
    double l1_log_f = 0.0;     // ||log+|y| F||_1
    double l1_fprime = 0.0;
    double l1_log_fprime = 0.0;
    double error_estimate = 0.0;  // quadrature plus truncated tails, summed over the four norms
    double assembled = 0.0;       // ||log+ F||_1 + 2 pi (0.15e-8 ||log+ F'||_1 + (3e-8 + 0.15 * 2e-7) ||F'||_1)
    double threshold = 0.070;
    bool pass = false;
};
// Norms of F = H(./lambda), 0 < lambda <= 1.
AuditReport audit_zero_sum_constants(double lambda, double truncation_radius = 4000.0);

struct EdgeReport {
    double lambda = 0.0;
    double fhat_one = 0.0;  // lambda (pi/4) cos(pi lambda/2)
    double eight_fhat_one = 0.0;
    double edge_threshold = 0.885;
    bool edge_pass = false;
    double x = 0.0, c = 0.0;
    double sqrt_a_delta_sq = 0.0;      // sqrt(a)(2 pi Delta)^2 from the window parameters at (x, c)
    double sqrt_a_delta_sq_bound = 0.0;  // c^2 log^2 x / sqrt x
    double stated_bound = 1e-7;
    double correction = 0.0;  // 24 sqrt(a)(2 pi Delta)^2 Fhat(1)(1/lambda - 1)
    double assembled = 0.0;   // 8 Fhat(1) + correction
    double assembled_threshold = 0.886;
    bool assembled_pass = false;
};
EdgeReport edge_value_check(double lambda, double x = 4e18, double c = 1.0);

nlohmann::json to_json(const ZeroCountCheck& r);
nlohmann::json to_json(const FormulaEvaluation& r);
nlohmann::json to_json(const AuditReport& r);
nlohmann::json to_json(const EdgeReport& r);

}  // namespace fgap
