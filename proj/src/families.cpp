#include "fgap/families.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "fgap/errors.hpp"
#include "fgap/special.hpp"

namespace fgap {

using std::numbers::pi;

namespace {
constexpr double kGuard = 1e-2;
}

double cosine_kernel(double x) {
    x = std::abs(x);
    const double h = x - 0.25;
    if (std::abs(h) < kGuard) {
        // 1 - 16x^2 = -4h(2 + 4h) and cos(2 pi x) = -sin(2 pi h)
        return 0.25 * pi * sin_over(2.0 * pi * h) / (1.0 + 2.0 * h);
    }
    return std::cos(2.0 * pi * x) / (1.0 - 16.0 * x * x);
}

double cosine_kernel_prime(double x) {
    const double sign = x < 0 ? -1.0 : 1.0;
    x = std::abs(x);
    const double h = x - 0.25;
    if (std::abs(h) < kGuard) {
        const double z = 2.0 * pi * h;
        const double d = 1.0 + 2.0 * h;
        return sign * 0.25 * pi * (2.0 * pi * sin_over_prime(z) * d - 2.0 * sin_over(z)) / (d * d);
    }
    const double den = 1.0 - 16.0 * x * x;
    return sign * (-2.0 * pi * std::sin(2.0 * pi * x) * den + 32.0 * x * std::cos(2.0 * pi * x)) / (den * den);
}

FourierPair make_dilated_cosine(double lambda) {
    if (!(lambda > 0.0 && lambda <= 1.0)) throw DomainError("make_dilated_cosine: lambda must lie in (0,1]");
    FourierPair h;
    h.eval_f = cosine_kernel;
    h.eval_fhat = [](double t) { return std::abs(t) <= 1.0 ? 0.25 * pi * std::cos(0.5 * pi * t) : 0.0; };
    h.support_radius = 1.0;
    h.l1_closed_form = 1.0 / c0();
    // |H(x)| <= 1/(16x^2 - 1) <= (16/15)/(16 x^2) for x >= 1
    h.f_decay = {{(1.0 / 16.0) * (16.0 / 15.0), -2.0, 0.0, 1.0}};
    // H(x) = -cos(2 pi x) sum_{k>=1} (16x^2)^{-k}; keep four terms, x >= 2.
    AsymptoticTail as;
    for (int k = 1; k <= 4; ++k) as.terms.push_back({-std::pow(16.0, -k), 2.0 * k, 1.0});
    as.radius = 2.0;
    as.remainder_constant = std::pow(16.0, -5) / (1.0 - 1.0 / 64.0);
    as.remainder_power = 10.0;
    h.f_asymptotic = as;
    h.f_feature_scale = 1.0 / 16.0;
    h.fhat_feature_scale = 1.0 / 64.0;
    h.description = "H(x)=cos(2pi x)/(1-16x^2)";
    if (lambda == 1.0) return h;
    FourierPair d = dilate(h, lambda);
    std::ostringstream os;
    os << "H(x/" << lambda << ")";
    d.description = os.str();
    return d;
}

FourierPair make_fejer(double lambda) {
    if (!(lambda > 0.0 && lambda <= 1.0)) throw DomainError("make_fejer: lambda must lie in (0,1]");
    FourierPair k;
    k.eval_f = [](double x) {
        const double s = sinc(x);
        return s * s;
    };
    k.eval_fhat = [](double t) { return std::max(0.0, 1.0 - std::abs(t)); };
    k.support_radius = 1.0;
    k.l1_closed_form = 1.0;
    k.f_decay = {{1.0 / (pi * pi), -2.0, 0.0, 1.0}};
    AsymptoticTail as;
    as.terms = {{0.5 / (pi * pi), 2.0, 0.0}, {-0.5 / (pi * pi), 2.0, 1.0}};
    as.radius = 1.0;
    k.f_asymptotic = as;
    k.f_feature_scale = 1.0 / 16.0;
    k.fhat_feature_scale = 1.0 / 64.0;
    k.description = "K(x)=(sin(pi x)/(pi x))^2";
    if (lambda == 1.0) return k;
    FourierPair d = dilate(k, lambda);
    std::ostringstream os;
    os << "K(x/" << lambda << ")";
    d.description = os.str();
    return d;
}

double gaussian_term_transform(const GaussianTerm& term, double t) {
    const double s = term.rate;
    const double u = pi * t / std::sqrt(s);
    const double scale = std::sqrt(pi / s) * std::pow(-1.0 / (4.0 * s), term.power);
    return term.coefficient * scale * hermite(2 * term.power, u) * std::exp(-u * u);
}

FourierPair make_gaussian_mixture(const GaussianMixture& mix) {
    if (mix.terms.empty()) throw DomainError("make_gaussian_mixture: no terms");
    for (const auto& t : mix.terms) {
        if (!(t.rate > 0.0)) throw DomainError("make_gaussian_mixture: rates must be positive");
        if (t.power < 0) throw DomainError("make_gaussian_mixture: powers must be nonnegative");
    }
    FourierPair p;
    const auto terms = mix.terms;
    p.eval_f = [terms](double x) {
        KahanSum s;
        const double x2 = x * x;
        for (const auto& t : terms) s += t.coefficient * std::pow(x2, t.power) * std::exp(-t.rate * x2);
        return s.value();
    };
    p.eval_fhat = [terms](double t) {
        KahanSum s;
        for (const auto& term : terms) s += gaussian_term_transform(term, t);
        return s.value();
    };
    p.transform_kind = TransformKind::closed_form;
    p.is_even = true;
    // Cramer: |H_n(u)| e^{-u^2/2} <= 1.086435 * 2^{n/2} sqrt(n!)
    constexpr double kCramer = 1.086435;
    double min_rate = terms.front().rate;
    for (const auto& t : terms) {
        p.f_decay.push_back({std::abs(t.coefficient), 2.0 * t.power, t.rate, 0.0});
        const int n = 2 * t.power;
        const double c = std::abs(t.coefficient) * std::sqrt(pi / t.rate) * std::pow(4.0 * t.rate, -t.power) * kCramer *
                         std::pow(2.0, 0.5 * n) * std::sqrt(std::tgamma(n + 1.0));
        p.fhat_decay.push_back({c, 0.0, pi * pi / (2.0 * t.rate), 0.0});
        min_rate = std::min(min_rate, t.rate);
    }
    double max_rate = 0.0;
    for (const auto& t : terms) max_rate = std::max(max_rate, t.rate);
    p.f_feature_scale = std::min(1.0 / 16.0, 0.25 / std::sqrt(max_rate));
    p.fhat_feature_scale = std::min(1.0 / 64.0, 0.1 * std::sqrt(min_rate) / pi);
    std::ostringstream os;
    os << "gaussian mixture [" << format_mixture(mix) << "]";
    p.description = os.str();
    return p;
}

GaussianMixture reference_mixture() {
    return {{{-4.8, 1, 3.3}, {1.5, 1, 7.4}, {520.0, 12, 9.7}, {1.3, 0, 2.8}, {0.18, 0, 2.0}}};
}

GaussianMixture parse_mixture_terms(const std::string& text) {
    GaussianMixture mix;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double c, m, s;
        if (!(ls >> c)) continue;  // blank or comment-only
        if (!(ls >> m >> s)) throw ParseError("expected 'c m s'", line_no);
        std::string extra;
        if (ls >> extra) throw ParseError("trailing text '" + extra + "'", line_no);
        if (m < 0 || m != std::floor(m)) throw ParseError("power must be a nonnegative integer", line_no);
        if (!(s > 0)) throw ParseError("rate must be positive", line_no);
        mix.terms.push_back({c, static_cast<int>(m), s});
    }
    if (mix.terms.empty()) throw ParseError("no mixture terms", line_no);
    return mix;
}

GaussianMixture load_mixture_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open mixture file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_mixture_terms(ss.str());
}

std::string format_mixture(const GaussianMixture& mix) {
    std::ostringstream os;
    os.precision(10);
    for (std::size_t i = 0; i < mix.terms.size(); ++i) {
        if (i) os << "; ";
        os << mix.terms[i].coefficient << ' ' << mix.terms[i].power << ' ' << mix.terms[i].rate;
    }
    return os.str();
}

}  // namespace fgap
