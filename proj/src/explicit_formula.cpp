#include "fgap/explicit_formula.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "fgap/errors.hpp"
#include "fgap/families.hpp"
#include "fgap/parallel.hpp"
#include "fgap/primes.hpp"
#include "fgap/quadrature.hpp"
#include "fgap/special.hpp"

namespace fgap {

using std::numbers::pi;

std::size_t ZetaZeroTable::count_below(double x) const {
    return static_cast<std::size_t>(std::upper_bound(ordinates.begin(), ordinates.end(), x) - ordinates.begin());
}

ZetaZeroTable parse_zeros(const std::string& text, const std::string& source) {
    ZetaZeroTable t;
    t.source = source;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        const char* first = line.data() + b;
        const char* last = line.data() + e + 1;
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last || !std::isfinite(v))
            throw ParseError("zero table: cannot parse '" + std::string(first, last) + "'", line_no);
        if (!(v > 0.0)) throw ParseError("zero table: ordinates must be positive", line_no);
        if (!t.ordinates.empty() && !(v > t.ordinates.back()))
            throw MonotonicityError("zero table: ordinates must be strictly increasing", line_no);
        t.ordinates.push_back(v);
    }
    if (t.ordinates.empty()) throw ParseError("zero table: no ordinates", line_no);
    t.max_height = t.ordinates.back();
    return t;
}

ZetaZeroTable load_zeros(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open zero table " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_zeros(ss.str(), path);
}

std::string resolve_zero_path(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("FOURIER_GAP_ZEROS")) return env;
    return {};
}

double zero_count_main(double x) { return x / (2.0 * pi) * std::log(x / (2.0 * pi * std::numbers::e)) + 0.875; }
double zero_count_band(double x) { return 0.15 * std::log(x) + 3.0; }

ZeroCountCheck zero_count_check(const ZetaZeroTable& table, double x) {
    if (!(x >= std::numbers::e)) throw DomainError("zero_count_check: x must be at least e");
    if (x > table.max_height) throw RangeError("zero_count_check: x exceeds the table height");
    ZeroCountCheck r;
    r.x = x;
    r.count = table.count_below(x);
    r.main_term = zero_count_main(x);
    const double band = zero_count_band(x);
    r.band_lo = r.main_term - band;
    r.band_hi = r.main_term + band;
    const double n = static_cast<double>(r.count);
    r.pass = n >= r.band_lo && n <= r.band_hi;
    return r;
}

namespace {

std::size_t zeros_in_use(const ZetaZeroTable& table, std::size_t max_zeros) {
    return max_zeros == 0 ? table.size() : std::min(max_zeros, table.size());
}

void check_pole(const ZetaZeroTable& table, std::size_t used, double theta) {
    const auto end = table.ordinates.begin() + static_cast<std::ptrdiff_t>(used);
    const auto it = std::lower_bound(table.ordinates.begin(), end, theta);
    const double tol = 1e-9 * std::max(1.0, theta);
    if ((it != end && std::abs(*it - theta) < tol) || (it != table.ordinates.begin() && std::abs(*(it - 1) - theta) < tol))
        throw PoleError("explicit_formula_eval: theta coincides with a zero ordinate");
}

}  // namespace

std::complex<double> zero_sum_complex(const ZetaZeroTable& table, double a, double theta, std::size_t max_zeros) {
    const std::size_t used = zeros_in_use(table, max_zeros);
    const double delta = 0.5 * pi / theta;
    const double la = std::log(a);
    std::complex<double> s = 0.0;
    for (std::size_t i = 0; i < used; ++i) {
        const double g = table.ordinates[i];
        const double w = std::cos(delta * g) / (theta * theta - g * g);
        s += std::polar(w, g * la) + std::polar(w, -g * la);
    }
    return 2.0 * theta * s;
}

std::vector<double> trivial_zero_terms(double a, double theta) {
    if (!(theta > 0.0)) throw DomainError("trivial_zero_terms: theta must be positive");
    const double delta = 0.5 * pi / theta;
    if (!(a > std::exp(delta))) throw DomainError("trivial_zero_terms: need a > e^delta");
    std::vector<double> terms;
    double sum = 0.0;
    for (int n = 1; n <= 100000; ++n) {
        const double m = 2.0 * n + 0.5;
        const double t = theta * std::exp(-m * std::log(a)) * (std::exp(m * delta) + std::exp(-m * delta)) / (m * m + theta * theta);
        terms.push_back(t);
        sum += t;
        if (t <= 1e-18 * sum || t == 0.0) break;
    }
    return terms;
}

double zero_tail_estimate(double theta, double T, std::size_t count_at_T) {
    if (!(T > theta)) throw RangeError("zero_tail_estimate: truncation height must exceed theta");
    // sum_{gamma > T} 1/(gamma^2 - theta^2) = -N(T)/(T^2 - theta^2) + int_T^inf N(t) 2t/(t^2 - theta^2)^2 dt,
    // with N(t) <= M(t) + 0.15 log t + 3; substitute t = T/u.
    auto f = [&](double u) {
        if (u <= 0.0) return 0.0;
        const double t = T / u;
        const double d = t * t - theta * theta;
        return (zero_count_main(t) + zero_count_band(t)) * 2.0 * t / (d * d) * T / (u * u);
    };
    QuadratureSpec q;
    q.abs_tol = 1e-18;
    q.rel_tol = 1e-10;
    const double integral = integrate(f, 0.0, 1.0, q).value;
    const double one_side = -static_cast<double>(count_at_T) / (T * T - theta * theta) + integral;
    return 4.0 * theta * std::max(one_side, 0.0);
}

FormulaEvaluation explicit_formula_eval(const ZetaZeroTable& table, double a, double theta, std::size_t max_zeros,
                              unsigned threads) {
    if (!(theta > 0.0)) throw DomainError("explicit_formula_eval: theta must be positive");
    FormulaEvaluation r;
    r.a = a;
    r.theta = theta;
    r.delta = 0.5 * pi / theta;
    if (!(a > std::exp(r.delta))) throw DomainError("explicit_formula_eval: need a > e^delta");
    const double lo = a * std::exp(-r.delta), hi = a * std::exp(r.delta);
    if (!(hi < static_cast<double>(kSieveMax))) throw RangeError("explicit_formula_eval: window beyond sieve range");

    const std::size_t used = zeros_in_use(table, max_zeros);
    if (used == 0) throw DomainError("explicit_formula_eval: empty zero table");
    check_pole(table, used, theta);
    r.zeros_used = used;
    r.truncation_height = table.ordinates[used - 1];

    // prime-power side; cos vanishes at both window ends since theta delta = pi/2
    KahanSum lhs;
    for (const auto& pp : prime_powers(static_cast<u64>(std::ceil(lo)), static_cast<u64>(std::floor(hi)))) {
        const double n = static_cast<double>(pp.n);
        lhs += std::log(static_cast<double>(pp.p)) / std::sqrt(n) * std::cos(theta * std::log(a / n));
        ++r.prime_power_terms;
    }
    r.lhs = lhs.value();

    r.main_term = theta * std::sqrt(a) * (std::exp(0.5 * r.delta) + std::exp(-0.5 * r.delta)) / (0.25 + theta * theta);

    // zero side: fixed chunks, ordered reduction
    constexpr std::size_t kChunk = 4096;
    const std::size_t chunks = (used + kChunk - 1) / kChunk;
    std::vector<double> partial(chunks, 0.0);
    const double la = std::log(a);
    parallel_for(
        chunks,
        [&](std::size_t c) {
            KahanSum s;
            const std::size_t end = std::min(used, (c + 1) * kChunk);
            for (std::size_t i = c * kChunk; i < end; ++i) {
                const double g = table.ordinates[i];
                s += 2.0 * std::cos(g * la) * std::cos(r.delta * g) / (theta * theta - g * g);
            }
            partial[c] = s.value();
        },
        threads == 0 ? default_threads() : threads);
    KahanSum zs;
    for (double p : partial) zs += p;
    r.zero_sum = 2.0 * theta * zs.value();

    KahanSum ts;
    for (double t : trivial_zero_terms(a, theta)) ts += t;
    r.trivial_sum = ts.value();
    r.trivial_bound = 3.0 / theta * std::pow(std::exp(r.delta) / a, 2.5);

    r.residual = r.lhs - (r.main_term - r.zero_sum - r.trivial_sum);
    r.tail_estimate = zero_tail_estimate(theta, r.truncation_height, used);
    r.within_tail = std::abs(r.residual) <= r.tail_estimate;
    return r;
}

namespace {

// Bounds for |F| and |F'| beyond R, F = H(./lambda): with x = y/lambda,
// |H(x)| <= 1/(16x^2 - 1), |H'(x)| <= 2 pi/(16x^2 - 1) + 32x/(16x^2 - 1)^2.
struct TailBounds {
    double f, log_f, fp, log_fp;
};

TailBounds audit_tails(double lambda, double R) {
    const double k = 1.0 / (1.0 - lambda * lambda / (16.0 * R * R));
    const double c2 = lambda * lambda / 16.0 * k;           // |F(y)| <= c2 / y^2
    const double d2 = 2.0 * pi * lambda / 16.0 * k;         // |F'(y)| <= d2 / y^2 + d3 / y^3
    const double d3 = 32.0 * std::pow(lambda, 2) / 256.0 * k * k;
    const double lr = std::log(R);
    TailBounds t;
    t.f = c2 / R;
    t.log_f = c2 * (lr + 1.0) / R;
    t.fp = d2 / R + d3 / (2.0 * R * R);
    t.log_fp = d2 * (lr + 1.0) / R + d3 * (2.0 * lr + 1.0) / (4.0 * R * R);
    return t;
}

}  // namespace

AuditReport audit_zero_sum_constants(double lambda, double truncation_radius) {
    if (!(lambda > 0.0 && lambda <= 1.0)) throw DomainError("audit_zero_sum_constants: lambda must lie in (0,1]");
    if (!(truncation_radius >= 10.0)) throw DomainError("audit_zero_sum_constants: truncation radius too small");
    AuditReport r;
    r.lambda = lambda;
    r.truncation_radius = truncation_radius;
    const double R = truncation_radius;
    auto F = [lambda](double y) { return cosine_kernel(y / lambda); };
    auto Fp = [lambda](double y) { return cosine_kernel_prime(y / lambda) / lambda; };
    auto logp = [](double y) { return y > 1.0 ? std::log(y) : 0.0; };

    std::vector<double> nodes = uniform_nodes(0.0, R, 0.5 * lambda);
    nodes.push_back(1.0);
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    QuadratureSpec q;
    q.abs_tol = 1e-11;
    q.rel_tol = 1e-11;
    q.max_subdivisions = 400000;

    // even integrands: ||g||_1 = 2 int_0^inf |g|
    auto norm = [&](const RealFn& g, double tail, double& err) {
        const Estimate e = integrate_part(g, nodes, q, Part::abs, 8);
        err += 2.0 * (e.error + tail);
        return 2.0 * (e.value + tail);
    };
    const TailBounds tb = audit_tails(lambda, R);
    double err = 0.0;
    r.l1_f = norm(F, tb.f, err);
    r.l1_log_f = norm([&](double y) { return logp(y) * F(y); }, tb.log_f, err);
    r.l1_fprime = norm(Fp, tb.fp, err);
    r.l1_log_fprime = norm([&](double y) { return logp(y) * Fp(y); }, tb.log_fp, err);
    r.error_estimate = err;
    r.l1_f_closed = lambda / c0();
    r.assembled = r.l1_log_f + 2.0 * pi * (0.15e-8 * r.l1_log_fprime + (3e-8 + 0.15 * 2e-7) * r.l1_fprime);
    r.pass = r.assembled < r.threshold;
    return r;
}

EdgeReport edge_value_check(double lambda, double x, double c) {
    if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("edge_value_check: lambda must lie in (0,1)");
    EdgeReport r;
    r.lambda = lambda;
    r.fhat_one = lambda * 0.25 * pi * std::cos(0.5 * pi * lambda);
    r.eight_fhat_one = 8.0 * r.fhat_one;
    r.edge_pass = r.eight_fhat_one <= r.edge_threshold;
    r.x = x;
    r.c = c;
    const WindowParameters w = window_parameters(x, c);
    r.sqrt_a_delta_sq = std::sqrt(w.a) * w.delta * w.delta;
    r.sqrt_a_delta_sq_bound = c * c * std::pow(std::log(x), 2) / std::sqrt(x);
    r.correction = 24.0 * r.sqrt_a_delta_sq * r.fhat_one * (1.0 / lambda - 1.0);
    r.assembled = r.eight_fhat_one + r.correction;
    r.assembled_pass = r.assembled <= r.assembled_threshold;
    return r;
}

nlohmann::json to_json(const ZeroCountCheck& r) {
    return {{"x", r.x}, {"count", r.count}, {"main_term", r.main_term}, {"band_lo", r.band_lo}, {"band_hi", r.band_hi},
            {"pass", r.pass}};
}

nlohmann::json to_json(const FormulaEvaluation& r) {
    return {{"a", r.a},
            {"theta", r.theta},
            {"delta", r.delta},
            {"lhs", r.lhs},
            {"prime_power_terms", r.prime_power_terms},
            {"main_term", r.main_term},
            {"zero_sum", r.zero_sum},
            {"zeros_used", r.zeros_used},
            {"truncation_height", r.truncation_height},
            {"trivial_sum", r.trivial_sum},
            {"trivial_bound", r.trivial_bound},
            {"residual", r.residual},
            {"tail_estimate", r.tail_estimate},
            {"within_tail", r.within_tail}};
}

nlohmann::json to_json(const AuditReport& r) {
    return {{"lambda", r.lambda},
            {"truncation_radius", r.truncation_radius},
            {"l1_f", r.l1_f},
            {"l1_f_closed", r.l1_f_closed},
            {"l1_log_f", r.l1_log_f},
            {"l1_fprime", r.l1_fprime},
            {"l1_log_fprime", r.l1_log_fprime},
            {"error_estimate", r.error_estimate},
            {"assembled", r.assembled},
            {"threshold", r.threshold},
            {"pass", r.pass}};
}

nlohmann::json to_json(const EdgeReport& r) {
    return {{"lambda", r.lambda},
            {"fhat_one", r.fhat_one},
            {"eight_fhat_one", r.eight_fhat_one},
            {"edge_threshold", r.edge_threshold},
            {"edge_pass", r.edge_pass},
            {"x", r.x},
            {"c", r.c},
            {"sqrt_a_delta_sq", r.sqrt_a_delta_sq},
            {"sqrt_a_delta_sq_bound", r.sqrt_a_delta_sq_bound},
            {"stated_bound", r.stated_bound},
            {"correction", r.correction},
            {"assembled", r.assembled},
            {"assembled_threshold", r.assembled_threshold},
            {"assembled_pass", r.assembled_pass}};
}

}  // namespace fgap
