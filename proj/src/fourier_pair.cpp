#include "fgap/fourier_pair.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "fgap/errors.hpp"
#include "fgap/special.hpp"

namespace fgap {

using std::numbers::pi;

// ---------------------------------------------------------------------------
// Penalty

Penalty Penalty::finite(double a) {
    if (!(a >= 1.0) || !std::isfinite(a)) throw DomainError("penalty A must be a finite number >= 1");
    return Penalty(a);
}

namespace {
double parse_number(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw DomainError("cannot parse number '" + s + "'");
    }
    if (used != s.size()) throw DomainError("cannot parse number '" + s + "'");
    return v;
}
}  // namespace

Penalty Penalty::parse(const std::string& raw) {
    std::string s;
    for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += static_cast<char>(std::tolower(ch));
    if (s == "inf" || s == "infinity" || s == "+inf") return infinite();
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
        const double num = parse_number(s.substr(0, slash));
        const double den = parse_number(s.substr(slash + 1));
        if (den == 0.0) throw DomainError("zero denominator in '" + raw + "'");
        return finite(num / den);
    }
    return finite(parse_number(s));
}

double Penalty::value() const {
    if (!value_) throw DomainError("penalty is infinite");
    return *value_;
}

std::string Penalty::str() const {
    if (!value_) return "inf";
    std::ostringstream os;
    os.precision(17);
    os << *value_;
    return os.str();
}

const char* to_string(Mode m) { return m == Mode::J ? "J" : "Jplus"; }

Mode parse_mode(const std::string& text) {
    if (text == "J" || text == "C") return Mode::J;
    if (text == "Jplus" || text == "Cplus" || text == "J+") return Mode::Jplus;
    throw DomainError("unknown mode '" + text + "'");
}

// ---------------------------------------------------------------------------
// Tail envelopes

double DecayTerm::tail(double r) const {
    if (r < valid_from) throw DomainError("decay envelope used below its validity radius");
    if (constant == 0.0) return 0.0;
    if (rate == 0.0) {
        if (!(power < -1.0)) throw DomainError("power-law envelope needs power < -1");
        return constant * std::pow(r, power + 1.0) / (-power - 1.0);
    }
    if (!(power > -1.0)) throw DomainError("gaussian envelope needs power > -1");
    const double a = 0.5 * (power + 1.0);
    return constant * boost::math::tgamma(a, rate * r * r) / (2.0 * std::pow(rate, a));
}

double DecayTerm::log_weighted_tail(double r) const {
    if (r < std::max(valid_from, 1.0)) throw DomainError("log-weighted tail needs r >= max(1, valid_from)");
    if (constant == 0.0) return 0.0;
    if (rate == 0.0) {
        if (!(power < -1.0)) throw DomainError("power-law envelope needs power < -1");
        const double q = -power - 1.0;
        return constant * std::pow(r, -q) * (std::log(r) / q + 1.0 / (q * q));
    }
    // log x <= x
    DecayTerm up = *this;
    up.power += 1.0;
    return up.tail(r);
}

double tail_bound(const std::vector<DecayTerm>& terms, double r) {
    double s = 0.0;
    for (const auto& t : terms) s += t.tail(r);
    return s;
}

double log_weighted_tail_bound(const std::vector<DecayTerm>& terms, double r) {
    double s = 0.0;
    for (const auto& t : terms) s += t.log_weighted_tail(r);
    return s;
}

double power_cosine_tail(double p, double w, double r) {
    w = std::abs(w);
    if (w == 0.0) {
        if (!(p > 1.0)) throw DomainError("power_cosine_tail: divergent");
        return std::pow(r, 1.0 - p) / (p - 1.0);
    }
    constexpr double kSwitch = 40.0;
    double start = r;
    KahanSum head;
    if (w * r < kSwitch) {
        const double stop = kSwitch / w;
        std::vector<double> nodes{r};
        while (nodes.back() < stop) nodes.push_back(std::min(stop, std::max(nodes.back() * 1.5, nodes.back() + 0.5)));
        std::vector<double> fine;
        for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
            auto seg = uniform_nodes(nodes[i], nodes[i + 1], pi / w);
            fine.insert(fine.end(), seg.begin(), seg.end() - 1);
        }
        fine.push_back(stop);
        QuadratureSpec q{1e-17, 1e-14, 100000, 0.0};
        head += integrate_best_effort([&](double x) { return std::pow(x, -p) * std::cos(w * x); }, fine, q).value;
        start = stop;
    }
    // -e^{iwR} sum_k (p)_k R^{-p-k} (-i)^{k+1} / w^{k+1}
    std::complex<double> sum = 0.0, phase(0.0, -1.0);
    double z = std::pow(start, -p) / w;
    for (int k = 0; k < 200; ++k) {
        sum += z * phase;
        const double ratio = (p + k) / (w * start);
        if (ratio >= 1.0 || std::abs(z) < 1e-20 * std::abs(sum)) break;
        z *= ratio;
        phase *= std::complex<double>(0.0, -1.0);
    }
    const std::complex<double> tail = -std::exp(std::complex<double>(0.0, w * start)) * sum;
    head += tail.real();
    return head.value();
}

// ---------------------------------------------------------------------------
// Integrals

namespace {

int samples_for(double panel, double feature) {
    return std::max(4, static_cast<int>(std::ceil(panel / feature)));
}

Estimate tail_integral(const FourierPair& fp, const QuadratureSpec& q, Part part) {
    const double top = fp.support_radius ? std::min(*fp.support_radius, q.truncation_radius) : q.truncation_radius;
    if (fp.support_radius && *fp.support_radius <= 1.0) return {0.0, 0.0};
    Estimate out{0.0, 0.0};
    if (top > 1.0) {
        const auto nodes = uniform_nodes(1.0, top, 1.0);
        const int samples = samples_for(1.0, fp.fhat_feature_scale);
        out = integrate_part(fp.eval_fhat, nodes, q, part, samples);
        if (!fp.is_even) {
            RealFn mirrored = [&fp](double t) { return fp.eval_fhat(-t); };
            out += integrate_part(mirrored, nodes, q, part, samples);
        } else {
            out = 2.0 * out;
        }
    }
    if (!fp.support_radius || *fp.support_radius > q.truncation_radius) {
        if (fp.fhat_decay.empty()) throw DomainError("transform tail needs a decay envelope: " + fp.description);
        out.error += 2.0 * tail_bound(fp.fhat_decay, std::max(top, 1.0));
    }
    if (out.error > q.target(out.value))
        throw ToleranceError("tail integral: error estimate above tolerance", out.value, out.error);
    return out;
}

}  // namespace

Estimate l1_norm_numeric(const FourierPair& fp, const QuadratureSpec& q) {
    const double R = q.truncation_radius;
    const int samples = samples_for(1.0, fp.f_feature_scale);
    Estimate out;
    if (fp.is_even) {
        out = 2.0 * integrate_part(fp.eval_f, uniform_nodes(0.0, R, 1.0), q, Part::abs, samples);
    } else {
        out = integrate_part(fp.eval_f, uniform_nodes(-R, R, 1.0), q, Part::abs, samples);
    }
    if (fp.f_decay.empty()) throw DomainError("l1 norm needs a decay envelope: " + fp.description);
    out.error += 2.0 * tail_bound(fp.f_decay, R);
    if (out.error > q.target(out.value))
        throw ToleranceError("l1 norm: error estimate above tolerance", out.value, out.error);
    return out;
}

Estimate l1_norm(const FourierPair& fp, const QuadratureSpec& q) {
    if (!fp.l1_closed_form) return l1_norm_numeric(fp, q);
    // Cross-check the closed form against quadrature on a wide window.
    QuadratureSpec wide = q;
    wide.truncation_radius = std::max(q.truncation_radius, 400.0);
    wide.abs_tol = std::max(q.abs_tol, 1e-9);
    Estimate numeric;
    try {
        numeric = l1_norm_numeric(fp, wide);
    } catch (const ToleranceError& e) {
        numeric = {e.best_estimate, e.error_estimate};
    }
    const double closed = *fp.l1_closed_form;
    if (std::abs(closed - numeric.value) > numeric.error + wide.target(closed))
        throw CertificationError("l1 closed form disagrees with quadrature for " + fp.description);
    return {closed, 0.0};
}

Estimate tail_abs_integral(const FourierPair& fp, const QuadratureSpec& q) {
    return tail_integral(fp, q, Part::abs);
}

Estimate tail_pos_integral(const FourierPair& fp, const QuadratureSpec& q) {
    return tail_integral(fp, q, Part::positive);
}

FunctionalReport functional(const FourierPair& fp, const Penalty& A, Mode mode, const QuadratureSpec& q) {
    FunctionalReport r;
    r.A = A.str();
    r.A_infinite = A.is_infinite();
    r.A_value = A.is_infinite() ? std::numeric_limits<double>::infinity() : A.value();
    r.mode = mode;
    const double f0 = fp.eval_f(0.0);
    r.value_at_zero = mode == Mode::J ? std::abs(f0) : f0;

    Estimate tail{0.0, 0.0};
    if (A.is_infinite()) {
        if (mode == Mode::J) {
            if (!fp.support_radius || *fp.support_radius > 1.0)
                throw DomainError("A = inf with mode J needs support_radius <= 1");
        } else {
            const Estimate pos = tail_pos_integral(fp, q);
            if (pos.value > pos.error + q.abs_tol)
                throw DomainError("A = inf with mode Jplus needs Fhat <= 0 outside [-1,1]");
        }
    } else {
        tail = mode == Mode::J ? tail_abs_integral(fp, q) : tail_pos_integral(fp, q);
    }
    const Estimate l1 = l1_norm(fp, q);
    if (!(l1.value > 0.0)) throw DegenerateError("functional: zero l1 norm");
    r.l1_norm = l1.value;
    r.l1_error = l1.error;
    r.tail_integral = tail.value;
    r.tail_error = tail.error;
    const double a = A.is_infinite() ? 0.0 : A.value();
    r.functional_value = (r.value_at_zero - a * tail.value) / l1.value;
    r.error_estimate = (a * tail.error + std::abs(r.functional_value) * l1.error) / l1.value;
    return r;
}

Estimate numeric_transform(const FourierPair& fp, double t, const QuadratureSpec& q) {
    const double R = q.truncation_radius;
    const double w = 2.0 * pi * t;
    const double step = std::min(0.25, 0.25 / std::abs(t)) * std::min(1.0, 16.0 * fp.f_feature_scale);
    RealFn g = [&](double x) { return fp.eval_f(x) * std::cos(w * x); };
    Estimate out;
    if (fp.is_even) {
        out = 2.0 * integrate(g, uniform_nodes(0.0, R, step), q);
    } else {
        out = integrate(g, uniform_nodes(-R, R, step), q);
    }
    if (fp.is_even && fp.f_asymptotic && R >= fp.f_asymptotic->radius) {
        const auto& as = *fp.f_asymptotic;
        KahanSum tail;
        for (const auto& term : as.terms) {
            // cos(2 pi nu x) cos(2 pi t x) = (cos(2 pi (nu - t) x) + cos(2 pi (nu + t) x)) / 2
            tail += term.coef * (power_cosine_tail(term.power, 2.0 * pi * (term.freq - t), R) +
                                 power_cosine_tail(term.power, 2.0 * pi * (term.freq + t), R));
        }
        out.value += tail.value();
        if (as.remainder_constant > 0.0)
            out.error += 2.0 * as.remainder_constant * std::pow(R, 1.0 - as.remainder_power) / (as.remainder_power - 1.0);
    } else {
        if (fp.f_decay.empty()) throw DomainError("transform needs a decay envelope: " + fp.description);
        out.error += 2.0 * tail_bound(fp.f_decay, R);
    }
    if (out.error > q.target(out.value))
        throw ToleranceError("numeric_transform: error estimate above tolerance", out.value, out.error);
    return out;
}

FourierPair dilate(const FourierPair& fp, double lambda) {
    if (!(lambda > 0.0)) throw DomainError("dilate: lambda must be positive");
    FourierPair d = fp;
    auto f = fp.eval_f;
    auto fh = fp.eval_fhat;
    d.eval_f = [f, lambda](double x) { return f(x / lambda); };
    d.eval_fhat = [fh, lambda](double t) { return lambda * fh(lambda * t); };
    if (fp.support_radius) d.support_radius = *fp.support_radius / lambda;
    if (fp.l1_closed_form) d.l1_closed_form = *fp.l1_closed_form * lambda;
    for (auto& t : d.f_decay) {
        t.constant *= std::pow(lambda, -t.power);
        t.rate /= lambda * lambda;
        t.valid_from *= lambda;
    }
    for (auto& t : d.fhat_decay) {
        t.constant *= std::pow(lambda, 1.0 + t.power);
        t.rate *= lambda * lambda;
        t.valid_from /= lambda;
    }
    if (d.f_asymptotic) {
        auto& as = *d.f_asymptotic;
        for (auto& term : as.terms) {
            term.coef *= std::pow(lambda, term.power);
            term.freq /= lambda;
        }
        as.radius *= lambda;
        as.remainder_constant *= std::pow(lambda, as.remainder_power);
    }
    d.f_feature_scale *= lambda;
    d.fhat_feature_scale /= lambda;
    d.description = fp.description + " dilated by " + std::to_string(lambda);
    return d;
}

}  // namespace fgap
