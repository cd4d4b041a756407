#include "fgap/dual.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

#include "fgap/errors.hpp"
#include "fgap/parallel.hpp"
#include "fgap/roots.hpp"
#include "fgap/special.hpp"

namespace fgap {

using std::numbers::pi;

// ---------------------------------------------------------------------------
// alpha profile

double epsilon_of(double y, double tau) { return (tau * tau - 2.0 * tau + 0.5) / (1.0 + y - 2.0 * tau); }

AlphaProfile make_alpha_profile(double y, double tau) {
    AlphaProfile p;
    p.tau = tau;
    p.y = y;
    p.epsilon = epsilon_of(y, tau);
    if (!(p.epsilon > 0.0) || tau + 4.0 * p.epsilon >= 0.5) throw DomainError("alpha profile: invalid (tau, y)");
    return p;
}

std::array<double, 6> AlphaProfile::nodes() const {
    return {0.0, tau, tau + epsilon, 0.5 - 2.0 * epsilon, 0.5 - epsilon, 0.5};
}

std::array<double, 6> AlphaProfile::values() const { return {-1.0, 2.0 * tau - 1.0, 1.0, 1.0, 1.0 - y, 1.0}; }

double AlphaProfile::operator()(double x) const {
    double u = std::abs(x - std::round(x));
    const auto xs = nodes();
    const auto vs = values();
    if (u >= 0.5) u = 0.5;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        if (u <= xs[i + 1]) return vs[i] + (vs[i + 1] - vs[i]) * (u - xs[i]) / (xs[i + 1] - xs[i]);
    }
    return vs.back();
}

namespace {

// The four non-trivial pieces of (1 - alpha)/j on [0, 1/2], each parametrised by s in [0,1]
// (the plateau, where 1 - alpha = 0, is left out). x(s) is the position, jac = dx/ds, and
// `mirrored` marks pieces written in v = 1/2 - x, where cos(2 pi n x) = (-1)^n cos(2 pi n v).
struct Piece {
    double jac;
    std::function<double(double)> ratio;  // (1 - alpha)/j at x(s)
    std::function<double(double)> pos;    // x(s), or v(s) when mirrored
    bool mirrored;
};

std::vector<Piece> pieces(const AlphaProfile& p) {
    const double tau = p.tau, eps = p.epsilon, y = p.y;
    std::vector<Piece> out;
    out.push_back({tau, [tau](double s) { const double x = tau * s; return (2.0 - 2.0 * x) / sin_over(2.0 * pi * x); },
                   [tau](double s) { return tau * s; }, false});
    out.push_back({eps,
                   [tau, eps](double s) {
                       const double x = tau + eps * s;
                       return (2.0 - 2.0 * tau) * (1.0 - s) / sin_over(2.0 * pi * x);
                   },
                   [tau, eps](double s) { return tau + eps * s; }, false});
    // v in [eps, 2 eps]: 1 - alpha = y(2 eps - v)/eps and 1/j = (1/2 - v)/(v S(2 pi v))
    out.push_back({eps,
                   [eps, y](double s) {
                       const double v = eps * (1.0 + s);
                       return y * (1.0 - s) * (0.5 - v) / (eps * (1.0 + s) * sin_over(2.0 * pi * v));
                   },
                   [eps](double s) { return eps * (1.0 + s); }, true});
    // v in [0, eps]: 1 - alpha = y v/eps
    out.push_back({eps,
                   [eps, y](double s) {
                       const double v = eps * s;
                       return (y / eps) * (0.5 - v) / sin_over(2.0 * pi * v);
                   },
                   [eps](double s) { return eps * s; }, true});
    return out;
}

double plateau_length(const AlphaProfile& p) { return 0.5 - 3.0 * p.epsilon - p.tau; }

}  // namespace

Estimate profile_moment(const AlphaProfile& p, int n, const QuadratureSpec& q) {
    Estimate total;
    const double sign = (n % 2) ? -1.0 : 1.0;
    // Rounding in the phase 2 pi n x limits attainable accuracy to about n * 1e-15.
    QuadratureSpec qn = q;
    qn.abs_tol = std::max(q.abs_tol, 4e-15 * n);
    for (const auto& pc : pieces(p)) {
        const double span = pc.jac;  // length of the x-interval
        const double step = std::min(1.0, 0.25 / ((n + 1) * span));
        auto g = [&](double s) {
            const double x = pc.pos(s);
            const double w = pc.mirrored ? sign * std::cos(2.0 * pi * n * x) : std::cos(2.0 * pi * n * x);
            return pc.ratio(s) * w;
        };
        total += pc.jac * integrate(g, uniform_nodes(0.0, 1.0, step), qn);
    }
    return total;
}

double orthogonality_residual(const AlphaProfile& p) { return profile_moment(p, 1).value; }

AlphaProfile solve_alpha(double y_lo, double y_hi, double tau) {
    auto g = [tau](double y) { return orthogonality_residual(make_alpha_profile(y, tau)); };
    const double y = brent(g, y_lo, y_hi, 1e-15);
    return make_alpha_profile(y, tau);
}

double compute_d0(const AlphaProfile& p) {
    const double g0 = profile_moment(p, 0).value;
    if (!(g0 > 0.0) || !std::isfinite(g0)) throw DegenerateError("compute_d0: integral of (1-alpha)/j is not positive");
    return 1.0 / g0;
}

const AlphaProfile& gorbachev_profile() {
    static const AlphaProfile p = solve_alpha();
    return p;
}

double gorbachev_d0() {
    static const double d0 = compute_d0(gorbachev_profile());
    return d0;
}

double alpha_coefficient(const AlphaProfile& p, int n) {
    const auto xs = p.nodes();
    const auto vs = p.values();
    if (n == 0) {
        double s = 0.0;
        for (std::size_t i = 0; i + 1 < xs.size(); ++i) s += (xs[i + 1] - xs[i]) * 0.5 * (vs[i] + vs[i + 1]);
        return 2.0 * s;
    }
    // 2 int_0^{1/2} alpha cos(kx) = -(2/k) sum dv_i sin(k mid_i) S(k dx_i / 2)
    const double k = 2.0 * pi * n;
    KahanSum s;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const double dx = xs[i + 1] - xs[i], dv = vs[i + 1] - vs[i];
        s += dv * std::sin(k * 0.5 * (xs[i] + xs[i + 1])) * sin_over(0.5 * k * dx);
    }
    return -2.0 / k * s.value();
}

FourierCoefficients fourier_coeffs(const AlphaProfile& p, int n_max) {
    if (n_max < 3) throw DomainError("fourier_coeffs: n_max must be at least 3");
    FourierCoefficients c;
    c.d0 = compute_d0(p);
    const auto N = static_cast<std::size_t>(n_max) + 1;
    c.alpha.resize(N);
    c.a.resize(N);
    c.b.resize(N);
    std::vector<double> moments(N);
    parallel_for(N, [&](std::size_t n) { moments[n] = profile_moment(p, static_cast<int>(n)).value; });
    for (std::size_t n = 0; n < N; ++n) {
        c.alpha[n] = alpha_coefficient(p, static_cast<int>(n));
        c.a[n] = c.d0 * c.alpha[n];
        c.b[n] = c.d0 * moments[n] - (n == 0 ? 1.0 : 0.0);
    }
    // Exact L2 norm of a piecewise linear function.
    const auto xs = p.nodes();
    const auto vs = p.values();
    double l2 = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
        l2 += (xs[i + 1] - xs[i]) * (vs[i] * vs[i] + vs[i] * vs[i + 1] + vs[i + 1] * vs[i + 1]) / 3.0;
    c.alpha_l2_sq = 2.0 * l2;

    // int over a period of |b|, b = d0 (1 - alpha)/(2 j) - 1; the plateau contributes its length.
    QuadratureSpec q{1e-13, 1e-12, 200000, 0.0};
    Estimate babs{plateau_length(p), 0.0};
    for (const auto& pc : pieces(p)) {
        RealFn bfun = [&](double s) { return 0.5 * c.d0 * pc.ratio(s) - 1.0; };
        babs += pc.jac * integrate_part(bfun, uniform_nodes(0.0, 1.0, 0.125), q, Part::abs, 16);
    }
    c.b_abs_integral = 2.0 * babs.value;
    c.b_abs_error = 2.0 * babs.error;

    double sup = std::max(std::abs(1.0 + c.b[1]), std::abs(c.b[1] + c.b[2]));
    for (std::size_t m = 2; m + 1 < N; ++m) sup = std::max(sup, std::abs(c.b[m] + c.b[m + 1]));
    c.phi_hat_sup = sup;
    c.a0_vanishes = std::abs(c.a[0]) <= 1e-9;
    c.b01_vanish = std::abs(c.b[0]) <= 1e-9 && std::abs(c.b[1]) <= 1e-9;
    return c;
}

// ---------------------------------------------------------------------------
// witnesses: shared pieces

double DualWitness::transform_at(double t) const {
    KahanSum s;
    const double ws = smoothing_width;
    for (const auto& b : transform_blocks) {
        const double lo = b.center - 0.5 * b.width, hi = b.center + 0.5 * b.width;
        if (ws == 0.0) {
            if (t > lo && t < hi) s += b.height;
        } else {
            const double overlap = std::min(hi, t + 0.5 * ws) - std::max(lo, t - 0.5 * ws);
            if (overlap > 0.0) s += b.height * overlap / ws;
        }
    }
    if (ws > 0.0)
        for (const auto& a : delta_atoms)
            if (std::abs(t - a.location) < 0.5 * ws) s += a.coefficient / ws;
    if (transform_profile) s += transform_profile(t);
    return s.value();
}

std::vector<double> DualWitness::transform_breakpoints(double lo, double hi) const {
    std::vector<double> v;
    const double h = 0.5 * smoothing_width;
    auto add = [&](double x) {
        if (x >= lo && x <= hi) v.push_back(x);
    };
    for (const auto& b : transform_blocks) {
        for (double e : {b.center - 0.5 * b.width, b.center + 0.5 * b.width}) {
            add(e - h);
            add(e + h);
        }
    }
    for (const auto& a : delta_atoms) {
        add(a.location - h);
        add(a.location + h);
    }
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

SupCertificate certify_sup(const RealFn& f, const SupOptions& opt) {
    SupCertificate cert;
    cert.grid_step = opt.step;
    cert.range = opt.range;
    cert.refinement_depth = opt.refinement_depth;
    const auto n = static_cast<std::size_t>(std::ceil(opt.range / opt.step));
    std::vector<double> xs(n + 1);
    for (std::size_t i = 0; i <= n; ++i) xs[i] = std::min(opt.range, static_cast<double>(i) * opt.step);
    for (double e : opt.extra_points)
        if (e >= 0.0 && e <= opt.range) xs.push_back(e);
    std::vector<double> vals(xs.size());
    const std::size_t chunk = 1 << 14;
    parallel_for((xs.size() + chunk - 1) / chunk, [&](std::size_t c) {
        for (std::size_t i = c * chunk; i < std::min(xs.size(), (c + 1) * chunk); ++i) vals[i] = std::abs(f(xs[i]));
    });
    cert.samples = xs.size();
    std::vector<std::size_t> idx(xs.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(opt.top_k), idx.size());
    std::partial_sort(idx.begin(), idx.begin() + static_cast<long>(k), idx.end(), [&](std::size_t a, std::size_t b) {
        return vals[a] > vals[b] || (vals[a] == vals[b] && xs[a] < xs[b]);
    });
    cert.sampled_max = vals[idx[0]];
    cert.argmax = xs[idx[0]];
    double best = cert.sampled_max;
    // Golden-section search for a local maximum of |f| around each top sample.
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    for (std::size_t r = 0; r < k; ++r) {
        double lo = std::max(0.0, xs[idx[r]] - opt.step), hi = std::min(opt.range, xs[idx[r]] + opt.step);
        double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
        double f1 = std::abs(f(x1)), f2 = std::abs(f(x2));
        for (int it = 0; it < opt.refinement_depth; ++it) {
            if (f1 > f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - g * (hi - lo);
                f1 = std::abs(f(x1));
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + g * (hi - lo);
                f2 = std::abs(f(x2));
            }
        }
        for (auto [x, v] : {std::pair{x1, f1}, std::pair{x2, f2}}) {
            if (v > best) {
                best = v;
                cert.argmax = x;
            }
        }
    }
    cert.refined_points = static_cast<int>(k);
    cert.refined_max = best;
    cert.lipschitz_allowance = opt.lipschitz > 0.0 ? 0.5 * opt.lipschitz * opt.step : 0.0;
    cert.tail_allowance = opt.tail_allowance;
    cert.value = std::max({cert.refined_max, cert.sampled_max + cert.lipschitz_allowance, cert.tail_allowance});
    return cert;
}

// ---------------------------------------------------------------------------
// psi

DualWitness build_psi(const AlphaProfile& p, const FourierCoefficients& c, int n_max, const SupOptions& opt_in) {
    if (n_max < 3 || static_cast<std::size_t>(n_max) >= c.b.size() + 0) {
        if (static_cast<std::size_t>(n_max) + 1 > c.b.size())
            throw DomainError("build_psi: n_max exceeds the computed coefficients");
    }
    DualWitness w;
    w.name = "psi";
    const double d0 = c.d0;
    const AlphaProfile prof = p;
    // x = k + u with |u| <= 1/2: psi = d0 u/x + a(u)(1 - u/x), a = d0 alpha.
    w.continuous_part = [prof, d0](double x) {
        const double k = std::round(x);
        if (k == 0.0) return d0;
        const double u = x - k;
        const double r = u / x;
        return d0 * r + d0 * prof(u) * (1.0 - r);
    };
    const double tau = p.tau, eps = p.epsilon;
    w.kinks = [tau, eps](double lo, double hi) {
        std::vector<double> v;
        const double offs[] = {tau, tau + eps, 0.5 - 2 * eps, 0.5 - eps, 0.5};
        for (double k = std::floor(lo) - 1; k <= std::ceil(hi) + 1; k += 1.0) {
            for (double o : offs) {
                for (double x : {k + o, k - o})
                    if (x >= lo && x <= hi) v.push_back(x);
            }
        }
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    };
    w.feature_scale = 0.05;
    w.transform_blocks.push_back({0.0, 2.0, 1.0});
    for (int n = 1; n <= n_max; ++n) {
        w.transform_blocks.push_back({static_cast<double>(n), 2.0, c.b[n]});
        w.transform_blocks.push_back({-static_cast<double>(n), 2.0, c.b[n]});
    }
    w.delta_atoms.push_back({0.0, c.a[0]});
    for (int n = 1; n <= n_max; ++n) {
        w.delta_atoms.push_back({static_cast<double>(n), c.a[n]});
        w.delta_atoms.push_back({-static_cast<double>(n), c.a[n]});
    }
    w.core_deviation = std::abs(c.a[0]) + std::abs(c.b[1]);
    w.transform_on_core = w.core_deviation <= 1e-9;
    w.declared_atom_bound = kPsiAtomBound;
    w.continuous_terms = {{"form", "psi(k+u) = d0*u/x + a(u)*(1-u/x), a = d0*alpha"},
                          {"d0", d0},
                          {"tau", p.tau},
                          {"epsilon", p.epsilon},
                          {"y", p.y},
                          {"n_max", n_max}};

    SupOptions opt = opt_in;
    auto extra = w.kinks(0.0, opt.range);
    opt.extra_points.insert(opt.extra_points.end(), extra.begin(), extra.end());
    // Beyond |x| = X: psi = a(u) + w (d0 - a(u)) with |w| <= |u|/X, linear in w.
    {
        const double X = opt.range;
        double env = 0.0;
        auto check = [&](double u) {
            const double a = d0 * prof(u);
            const double wmax = std::abs(u) / X;
            env = std::max({env, std::abs(a + wmax * (d0 - a)), std::abs(a - wmax * (d0 - a))});
        };
        for (double u = 0.0; u <= 0.5; u += 1e-5) check(u);
        for (double u : w.kinks(0.0, 0.5)) check(u);
        opt.tail_allowance = std::max(opt.tail_allowance, env);
    }
    w.sup_norm = certify_sup(w.continuous_part, opt);
    return w;
}

DualWitness build_psi_default(int n_max) {
    const auto& p = gorbachev_profile();
    return build_psi(p, fourier_coeffs(p, n_max), n_max);
}

// ---------------------------------------------------------------------------
// tilde psi

TildeA0 tilde_psi_a0(double tol) {
    TildeA0 r;
    KahanSum s;
    long j = 0;
    for (;; ++j) {
        const double bound = (4.0 / pi) / ((2.0 * j + 1.0) * (2.0 * j + 1.0));
        if (bound < tol) break;
        s += ((j % 2) ? -1.0 : 1.0) * bound;
    }
    r.value = s.value();
    r.terms = j;
    r.error_bound = (4.0 / pi) / ((2.0 * j + 1.0) * (2.0 * j + 1.0));
    return r;
}

namespace {

// a~_n for n = 0..count-1 by backward summation with an averaged start.
std::vector<double> tilde_coefficients(std::size_t count) {
    const long N = 1L << 21;
    auto term = [](long j) { return ((j % 2) ? -1.0 : 1.0) / ((2.0 * j + 1.0) * (2.0 * j + 1.0)); };
    double s = 0.5 * term(N);
    KahanSum acc;
    acc += s;
    std::vector<double> out(count);
    for (long j = N - 1; j >= 0; --j) {
        acc += term(j);
        if (static_cast<std::size_t>(j) < count) out[static_cast<std::size_t>(j)] = (4.0 / pi) * acc.value();
    }
    return out;
}

}  // namespace

DualWitness build_tilde_psi() {
    DualWitness w;
    w.name = "tilde";
    const std::size_t M = 4096;
    const auto at = std::make_shared<std::vector<double>>(tilde_coefficients(M));
    const double a0 = (*at)[0];
    auto coeff = [at, M](long m) {
        m = std::labs(m);
        if (static_cast<std::size_t>(m) < M) return (*at)[static_cast<std::size_t>(m)];
        const double q = 2.0 * m + 1.0;
        return (4.0 / pi) * ((m % 2) ? -1.0 : 1.0) * (0.5 / (q * q) + 1.0 / (q * q * q));
    };
    // 2 a~_{|m|} on the box around m/2, minus a~_0 sgn(cos 2 pi x); that sign is (-1)^m on the box.
    w.continuous_part = [coeff, a0](double x) {
        const long m = std::lround(2.0 * x);
        return 2.0 * coeff(m) - a0 * ((m % 2) ? -1.0 : 1.0);
    };
    w.kinks = [](double lo, double hi) {
        std::vector<double> v;
        for (double k = std::floor(4 * lo); k <= std::ceil(4 * hi); k += 1.0) {
            const double x = k / 4.0;
            if (std::fmod(std::abs(k), 2.0) == 1.0 && x >= lo && x <= hi) v.push_back(x);
        }
        return v;
    };
    w.feature_scale = 0.05;
    // (2 sin(pi t/2)/(pi t)) P(t), P the 2-periodic extension of (pi t/2)/sin(pi t/2) from [-1,1)
    w.transform_profile = [](double t) {
        double r = std::fmod(t + 1.0, 2.0);
        if (r < 0) r += 2.0;
        r -= 1.0;
        const double P = 1.0 / sin_over(0.5 * pi * r);
        return sin_over(0.5 * pi * t) * P;
    };
    // sgn(cos 2 pi x) = (4/pi) sum_k (-1)^k cos(2 pi (2k+1) x)/(2k+1)
    for (int k = 0; k < 50; ++k) {
        const double coef = -a0 * (2.0 / pi) * ((k % 2) ? -1.0 : 1.0) / (2.0 * k + 1.0);
        w.delta_atoms.push_back({2.0 * k + 1.0, coef});
        w.delta_atoms.push_back({-(2.0 * k + 1.0), coef});
    }
    w.core_deviation = 0.0;
    w.transform_on_core = true;
    w.declared_atom_bound = a0 * 2.0 / pi;
    w.continuous_terms = {{"form", "2*a_|m| on |x - m/2| < 1/4, minus a0*sgn(cos 2 pi x)"},
                          {"a0", a0},
                          {"atoms_listed", 50}};
    // For |m| large the box value is (-1)^m (2|a~_m| - a~_0), below a~_0 in size, so a~_0 bounds the tail.
    SupOptions opt;
    opt.range = 50.0;
    opt.step = 1e-3;
    opt.tail_allowance = a0;
    for (double m = 0; m <= 100; m += 1.0) opt.extra_points.push_back(m / 2.0);
    w.sup_norm = certify_sup(w.continuous_part, opt);
    return w;
}

// ---------------------------------------------------------------------------
// Psi example

DualWitness build_psi_example(const PsiExampleParams& prm) {
    DualWitness w;
    w.name = "psi-example";
    const double a = prm.a, b = prm.b, c = prm.c;
    // The cosine coefficients are twice the atom coefficients of the transform.
    const double cos1 = 2.0 * prm.atom1, cos3 = 2.0 * prm.atom3;
    auto windowed = [](double width, double x) { return width * sinc(width * x); };  // sin(w pi x)/(pi x)
    w.continuous_part = [=](double x) {
        return windowed(2.0, x) + 2.0 * windowed(a, x) * std::cos(3.0 * pi * x) +
               2.0 * windowed(b, x) * std::cos(4.0 * pi * x) + 2.0 * windowed(c, x) * std::cos(10.0 * pi * x) +
               cos1 * std::cos(2.0 * pi * x) + cos3 * std::cos(6.0 * pi * x);
    };
    w.kinks = [](double, double) { return std::vector<double>{}; };
    w.feature_scale = 0.02;
    w.transform_blocks = {{0.0, 2.0, 1.0}, {1.5, a, 1.0}, {-1.5, a, 1.0}, {2.0, b, 1.0},
                          {-2.0, b, 1.0},  {5.0, c, 1.0}, {-5.0, c, 1.0}};
    w.delta_atoms = {{1.0, prm.atom1}, {-1.0, prm.atom1}, {3.0, prm.atom3}, {-3.0, prm.atom3}};
    w.core_deviation = 0.0;
    w.transform_on_core = true;
    w.declared_atom_bound = kPsiExampleAtom;
    w.continuous_terms = nlohmann::json::array(
        {{{"term", "sin(2 pi x)/(pi x)"}},
         {{"term", "2 sin(w pi x)/(pi x) cos(3 pi x)"}, {"w", a}},
         {{"term", "2 sin(w pi x)/(pi x) cos(4 pi x)"}, {"w", b}},
         {{"term", "2 sin(w pi x)/(pi x) cos(10 pi x)"}, {"w", c}},
         {{"term", "k cos(2 pi x)"}, {"k", cos1}},
         {{"term", "k cos(6 pi x)"}, {"k", cos3}}});

    // Lipschitz constant: |d/dz sin z / z| <= 0.4365
    constexpr double kSincSlope = 0.4365;
    auto win_slope = [&](double width, double freq) {
        return 2.0 * (kSincSlope * pi * width * width + width * freq * pi);
    };
    const double L = kSincSlope * pi * 4.0 + win_slope(a, 3) + win_slope(b, 4) + win_slope(c, 10) +
                     std::abs(cos1) * 2.0 * pi + std::abs(cos3) * 6.0 * pi;
    SupOptions opt;
    opt.range = 20.0;
    opt.step = 1e-4;
    opt.lipschitz = L;
    // |x| > X: each sin(.)/(pi x) term is at most 1/(pi X)
    opt.tail_allowance = std::abs(cos1) + std::abs(cos3) + 7.0 / (pi * opt.range);
    w.sup_norm = certify_sup(w.continuous_part, opt);
    return w;
}

// ---------------------------------------------------------------------------
// mollification

MollifiedWitness mollify(const DualWitness& base, const Penalty& A, Target mode, double c) {
    if (base.smoothing_width != 0.0) throw DomainError("mollify: base witness is already smoothed");
    if (base.transform_profile) throw DomainError("mollify: base transform must be a block sum");
    MollifiedWitness m;
    m.base = base;
    m.mode = mode;
    m.A = A.str();
    m.c = c > 0.0 ? c : base.declared_atom_bound;
    for (const auto& at : base.delta_atoms) m.max_atom = std::max(m.max_atom, std::abs(at.coefficient));
    m.atoms_within_bound = m.max_atom <= m.c + 1e-12;
    if (A.is_infinite()) {
        m.gamma = 1.0;
        m.lambda_m = 0.0;
        m.witness = base;
        m.sup_bound = base.sup_norm.value;
        m.transform_min = m.transform_max = 1.0;
        m.transform_in_range = true;
        return m;
    }
    const double a = A.value();
    const double shift = mode == Target::C ? 2.0 : 1.0;
    if (mode == Target::C && !(a >= kThresholdC)) throw DomainError("mollify: mode C needs A >= 2.6");
    if (mode == Target::Cplus && !(a > kThresholdCplus)) throw DomainError("mollify: mode Cplus needs A > 1.222");
    m.lambda_m = 2.0 / ((2.0 / m.c) * (a - shift) - 1.0);
    m.gamma = 1.0 / (1.0 - m.c / (2.0 * (a - shift)));
    const double g = m.gamma, l = m.lambda_m;

    DualWitness w;
    w.name = "mollified " + base.name;
    auto f = base.continuous_part;
    w.continuous_part = [f, g, l](double x) { return g * f(g * x) * sinc(l * x); };
    auto kinks = base.kinks;
    w.kinks = [kinks, g](double lo, double hi) {
        auto v = kinks(g * lo, g * hi);
        for (auto& x : v) x /= g;
        return v;
    };
    w.feature_scale = base.feature_scale / g;
    for (const auto& b : base.transform_blocks) w.transform_blocks.push_back({g * b.center, g * b.width, b.height});
    for (const auto& at : base.delta_atoms) w.delta_atoms.push_back({g * at.location, g * at.coefficient});
    w.smoothing_width = l;
    w.declared_atom_bound = m.c;
    w.continuous_terms = {{"form", "gamma * base(gamma x) * sin(pi lambda x)/(pi lambda x)"},
                          {"gamma", g},
                          {"lambda", l},
                          {"base", base.name}};
    // Deviation from 1 on (-1,1): atoms whose boxes reach inside, blocks other than the core.
    double dev = 0.0;
    for (const auto& at : w.delta_atoms)
        if (std::abs(at.location) - 0.5 * l < 1.0) dev += std::abs(at.coefficient) / l;
    for (std::size_t i = 1; i < w.transform_blocks.size(); ++i) {
        const auto& b = w.transform_blocks[i];
        if (std::abs(b.center) - 0.5 * b.width - 0.5 * l < 1.0) dev += std::abs(b.height);
    }
    w.core_deviation = dev;
    w.transform_on_core = dev <= 1e-9;
    m.sup_bound = g * base.sup_norm.value;

    // Sampled sup as a consistency check on the analytic bound.
    SupOptions opt;
    opt.range = base.sup_norm.range / g;
    opt.step = 1e-4;
    opt.extra_points = w.kinks(0.0, opt.range);
    w.sup_norm = certify_sup(w.continuous_part, opt);
    w.sup_norm.value = m.sup_bound;
    w.sup_norm.analytic = true;
    w.sup_norm.tail_allowance = m.sup_bound;

    // Transform range: linear between breakpoints with jumps at box edges, so the extremes are
    // one-sided limits taken just inside each piece.
    double tmax = 0.0;
    for (const auto& b : w.transform_blocks) tmax = std::max(tmax, std::abs(b.center) + b.width);
    for (const auto& at : w.delta_atoms) tmax = std::max(tmax, std::abs(at.location));
    tmax += l;
    auto pts = w.transform_breakpoints(0.0, tmax);
    pts.insert(pts.begin(), 0.0);
    pts.push_back(tmax + 1.0);
    m.transform_min = m.transform_max = w.transform_at(0.0);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double d = 1e-9 * (pts[i + 1] - pts[i]);
        if (!(d > 0.0)) continue;
        for (double t : {pts[i] + d, pts[i + 1] - d}) {
            const double v = w.transform_at(t);
            m.transform_min = std::min(m.transform_min, v);
            m.transform_max = std::max(m.transform_max, v);
        }
    }
    if (mode == Target::C)
        m.transform_in_range = std::max(std::abs(m.transform_min), std::abs(m.transform_max)) <= a - 1.0 + 1e-12;
    else
        m.transform_in_range = m.transform_min >= 1.0 - a - 1e-12 && m.transform_max <= 1.0 + 1e-12;
    m.witness = std::move(w);
    return m;
}

// ---------------------------------------------------------------------------
// pairing

PairingResult pairing(const DualWitness& w, const FourierPair& F, const QuadratureSpec& q) {
    if (!F.is_even) throw DomainError("pairing: test function must be even");
    PairingResult r;
    r.value_at_zero = F.eval_f(0.0);
    const double R = q.truncation_radius;
    auto nodes = uniform_nodes(0.0, R, std::min({w.feature_scale, 0.25 * F.f_feature_scale * 16.0, 0.05}));
    if (w.kinks) {
        auto k = w.kinks(0.0, R);
        nodes.insert(nodes.end(), k.begin(), k.end());
        std::sort(nodes.begin(), nodes.end());
        nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    }
    auto e = 2.0 * integrate([&](double x) { return F.eval_f(x) * w.continuous_part(x); }, nodes, q);
    e.error += 2.0 * w.sup_norm.value * tail_bound(F.f_decay, R);
    r.numeric = e.value;
    r.numeric_error = e.error;

    const double T = F.support_radius ? *F.support_radius : q.truncation_radius;
    auto tn = uniform_nodes(-T, T, 0.05);
    auto bp = w.transform_breakpoints(-T, T);
    tn.insert(tn.end(), bp.begin(), bp.end());
    std::sort(tn.begin(), tn.end());
    tn.erase(std::unique(tn.begin(), tn.end()), tn.end());
    KahanSum pred;
    pred += integrate([&](double t) { return F.eval_fhat(t) * w.transform_at(t); }, tn, q).value;
    if (w.smoothing_width == 0.0)
        for (const auto& a : w.delta_atoms)
            if (std::abs(a.location) <= T) pred += a.coefficient * F.eval_fhat(a.location);
    r.predicted = pred.value();
    return r;
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json to_json(const DualWitness& w) {
    auto atoms = nlohmann::json::array();
    for (const auto& a : w.delta_atoms) atoms.push_back({a.location, a.coefficient});
    const auto& s = w.sup_norm;
    return {{"name", w.name},
            {"continuous_terms", w.continuous_terms},
            {"delta_atoms", atoms},
            {"sup_norm", s.value},
            {"transform_on_core", w.transform_on_core},
            {"core_deviation", w.core_deviation},
            {"certificate",
             {{"grid_step", s.grid_step},
              {"range", s.range},
              {"samples", s.samples},
              {"refinement_depth", s.refinement_depth},
              {"refined_points", s.refined_points},
              {"sampled_max", s.sampled_max},
              {"refined_max", s.refined_max},
              {"argmax", s.argmax},
              {"lipschitz_allowance", s.lipschitz_allowance},
              {"tail_allowance", s.tail_allowance},
              {"series_allowance", s.series_allowance},
              {"analytic", s.analytic}}}};
}

nlohmann::json to_json(const MollifiedWitness& m) {
    return {{"A", m.A},
            {"mode", to_string(m.mode)},
            {"gamma", m.gamma},
            {"lambda", m.lambda_m},
            {"c", m.c},
            {"sup_bound", m.sup_bound},
            {"max_atom", m.max_atom},
            {"atoms_within_bound", m.atoms_within_bound},
            {"transform_min", m.transform_min},
            {"transform_max", m.transform_max},
            {"transform_in_range", m.transform_in_range},
            {"witness", to_json(m.witness)}};
}

nlohmann::json to_json(const FourierCoefficients& c, int max_listed) {
    auto head = [&](const std::vector<double>& v) {
        auto arr = nlohmann::json::array();
        for (std::size_t i = 0; i < v.size() && static_cast<int>(i) <= max_listed; ++i) arr.push_back(v[i]);
        return arr;
    };
    return {{"d0", c.d0},
            {"alpha_n", head(c.alpha)},
            {"a_n", head(c.a)},
            {"b_n", head(c.b)},
            {"n_max", static_cast<int>(c.b.size()) - 1},
            {"alpha_l2_squared", c.alpha_l2_sq},
            {"b_abs_integral", c.b_abs_integral},
            {"b_abs_error", c.b_abs_error},
            {"phi_hat_sup", c.phi_hat_sup},
            {"a0_vanishes", c.a0_vanishes},
            {"b0_b1_vanish", c.b01_vanish}};
}

}  // namespace fgap
