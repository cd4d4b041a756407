#include "fgap/zeta.hpp"

#include <array>
#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/lambert_w.hpp>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "fgap/errors.hpp"
#include "fgap/roots.hpp"

namespace fgap {

using std::numbers::pi;
using cplx = std::complex<double>;

double rs_theta(double t) {
    const double t2 = t * t;
    double s = 0.5 * t * std::log(t / (2.0 * pi)) - 0.5 * t - pi / 8.0;
    double p = t;
    s += 1.0 / (48.0 * p);
    p *= t2;
    s += 7.0 / (5760.0 * p);
    p *= t2;
    s += 31.0 / (80640.0 * p);
    p *= t2;
    s += 127.0 / (430080.0 * p);
    p *= t2;
    s += 511.0 / (1216512.0 * p);
    return s;
}

cplx zeta_em(cplx s) {
    const double t = std::abs(s.imag());
    const int N = static_cast<int>(std::ceil(t / 3.0)) + 12;
    cplx sum = 0.0;
    for (int n = 1; n < N; ++n) sum += std::exp(-s * std::log(static_cast<double>(n)));
    const double lN = std::log(static_cast<double>(N));
    const cplx Ns = std::exp(-s * lN);  // N^{-s}
    sum += Ns * static_cast<double>(N) / (s - 1.0) + 0.5 * Ns;
    // sum_k B_2k/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}
    cplx rising = s;
    double fact = 2.0;  // (2k)!
    double Npow = 1.0 / N;  // N^{1-2k}
    for (int k = 1; k <= 30; ++k) {
        const cplx term = boost::math::bernoulli_b2n<double>(k) / fact * rising * Ns * Npow;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
        rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
        fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
        Npow /= static_cast<double>(N) * N;
    }
    return sum;
}

double hardy_z_em(double t) {
    const cplx z = zeta_em(cplx(0.5, t));
    return (std::exp(cplx(0.0, rs_theta(t))) * z).real();
}

namespace {

// Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p), entire in p.
cplx psi_rs(cplx p) { return std::cos(2.0 * pi * (p * p - p - 1.0 / 16.0)) / std::cos(2.0 * pi * p); }

// Correction coefficients C0..C4 as Chebyshev series on p in [0, 1]. Derivatives of Psi come from
// Cauchy integrals on a circle whose nodes avoid the real axis, so the removable singularities at
// p = 1/4, 3/4 never enter.
struct RsCorrection {
    static constexpr int kDeg = 48;
    std::array<std::array<double, kDeg>, 5> cheb{};

    RsCorrection() {
        constexpr int M = 96;
        const double r = 0.5;
        std::array<std::array<double, kDeg>, 5> at_nodes{};
        for (int j = 0; j < kDeg; ++j) {
            const double x = std::cos(pi * (j + 0.5) / kDeg);
            const double p0 = 0.5 + 0.5 * x;
            std::array<double, 13> d{};  // Psi^(k)(p0)
            for (int m = 0; m < M; ++m) {
                const double phi = 2.0 * pi * (m + 0.5) / M;
                const cplx w = std::polar(1.0, phi);
                const cplx f = psi_rs(p0 + r * w);
                cplx wk = 1.0;
                for (int k = 0; k <= 12; ++k) {
                    d[k] += (f / wk).real();
                    wk *= w;
                }
            }
            double fk = 1.0;
            for (int k = 0; k <= 12; ++k) {
                if (k > 0) fk *= k;
                d[k] *= fk / (M * std::pow(r, k));
            }
            const double p2 = pi * pi, p4 = p2 * p2, p6 = p4 * p2, p8 = p4 * p4;
            at_nodes[0][j] = d[0];
            at_nodes[1][j] = -d[3] / (96.0 * p2);
            at_nodes[2][j] = d[2] / (64.0 * p2) + d[6] / (18432.0 * p4);
            at_nodes[3][j] = -d[1] / (64.0 * p2) - d[5] / (3840.0 * p4) - d[9] / (5308416.0 * p6);
            at_nodes[4][j] = d[0] / (128.0 * p2) + 19.0 * d[4] / (24576.0 * p4) + 11.0 * d[8] / (5898240.0 * p6) +
                             d[12] / (2038431744.0 * p8);
        }
        for (int c = 0; c < 5; ++c) {
            for (int k = 0; k < kDeg; ++k) {
                double s = 0.0;
                for (int j = 0; j < kDeg; ++j) s += at_nodes[c][j] * std::cos(pi * k * (j + 0.5) / kDeg);
                cheb[c][k] = 2.0 * s / kDeg;
            }
            cheb[c][0] *= 0.5;
        }
    }

    double eval(int c, double p) const {
        const double x = 2.0 * p - 1.0;
        double b1 = 0.0, b2 = 0.0;
        for (int k = kDeg - 1; k >= 1; --k) {
            const double b0 = 2.0 * x * b1 - b2 + cheb[c][k];
            b2 = b1;
            b1 = b0;
        }
        return x * b1 - b2 + cheb[c][0];
    }
};

const RsCorrection& rs_correction() {
    static const RsCorrection c;
    return c;
}

}  // namespace

double hardy_z_rs(double t) {
    const double a = std::sqrt(t / (2.0 * pi));
    const long N = static_cast<long>(std::floor(a));
    const double p = a - static_cast<double>(N);
    const double th = rs_theta(t);
    double s = 0.0;
    for (long n = 1; n <= N; ++n) {
        const double ln = std::log(static_cast<double>(n));
        s += std::cos(th - t * ln) / std::sqrt(static_cast<double>(n));
    }
    s *= 2.0;
    const auto& rc = rs_correction();
    const double u = 1.0 / a;  // (2 pi / t)^{1/2}
    double corr = 0.0, up = 1.0;
    for (int k = 0; k < 5; ++k) {
        corr += rc.eval(k, p) * up;
        up *= u;
    }
    const double sign = (N % 2 == 1) ? 1.0 : -1.0;  // (-1)^{N-1}
    return s + sign * std::sqrt(u) * corr;
}

double hardy_z(double t) { return t < 2000.0 ? hardy_z_em(t) : hardy_z_rs(t); }

double gram_point(long n) {
    if (n < -1) throw DomainError("gram_point: n must be at least -1");
    const double target = pi * static_cast<double>(n);
    // asymptotic start: theta(t) ~ (t/2) log(t/(2 pi e)) - pi/8
    double t = 2.0 * pi * std::exp(1.0 + boost::math::lambert_w0((static_cast<double>(n) + 0.125) / std::numbers::e));
    for (int i = 0; i < 60; ++i) {
        const double f = rs_theta(t) - target;
        const double d = 0.5 * std::log(t / (2.0 * pi));
        const double step = f / d;
        t -= step;
        if (t < 7.0) t = 7.0;
        if (std::abs(step) < 1e-13 * t) break;
    }
    return t;
}

ZeroSearchReport compute_zeta_zeros(std::size_t count) {
    ZeroSearchReport rep;
    auto& zeros = rep.zeros;
    zeros.reserve(count);
    auto sgn = [](long n) { return (n % 2 == 0) ? 1.0 : -1.0; };
    // good Gram point: (-1)^n Z(g_n) > 0
    long a = -1;
    double ga = gram_point(a);
    double za = hardy_z(ga);
    if (!(sgn(a) * za > 0.0)) throw Error("compute_zeta_zeros: g_{-1} is not a good Gram point");
    while (zeros.size() < count) {
        // extend to the next good Gram point
        std::vector<double> ts{ga}, zs{za};
        long b = a;
        for (;;) {
            ++b;
            const double g = gram_point(b);
            const double z = hardy_z(g);
            ts.push_back(g);
            zs.push_back(z);
            if (sgn(b) * z > 0.0) break;
            if (b - a > 50) throw Error("compute_zeta_zeros: Gram block too long");
        }
        ++rep.gram_blocks;
        const long expected = b - a;
        auto changes = [&]() {
            long c = 0;
            for (std::size_t i = 0; i + 1 < zs.size(); ++i)
                if ((zs[i] > 0) != (zs[i + 1] > 0)) ++c;
            return c;
        };
        int depth = 0;
        while (changes() < expected) {
            if (++depth > 12) throw Error("compute_zeta_zeros: missing zeros near t = " + std::to_string(ga));
            if (depth == 1) ++rep.refined_blocks;
            std::vector<double> nt, nz;
            for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
                nt.push_back(ts[i]);
                nz.push_back(zs[i]);
                const double m = 0.5 * (ts[i] + ts[i + 1]);
                nt.push_back(m);
                nz.push_back(hardy_z(m));
            }
            nt.push_back(ts.back());
            nz.push_back(zs.back());
            ts.swap(nt);
            zs.swap(nz);
        }
        for (std::size_t i = 0; i + 1 < zs.size() && zeros.size() < count; ++i) {
            if ((zs[i] > 0) == (zs[i + 1] > 0)) continue;
            zeros.push_back(brent([](double t) { return hardy_z(t); }, ts[i], ts[i + 1], 1e-11));
        }
        a = b;
        ga = ts.back();
        za = zs.back();
    }
    return rep;
}

std::string format_zero_table(const std::vector<double>& zeros, const std::string& comment) {
    std::ostringstream os;
    if (!comment.empty()) os << "# " << comment << '\n';
    char buf[64];
    for (double g : zeros) {
        std::snprintf(buf, sizeof buf, "%.10f\n", g);
        os << buf;
    }
    return os.str();
}

}  // namespace fgap
