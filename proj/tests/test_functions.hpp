#pragma once

// Random even bandlimited test functions with closed-form transforms:
// F(x) = sum c_k sinc(w_k x)^m_k cos(2 pi s_k x), F-hat supported in |t| <= max(s_k + m_k w_k / 2).

#include <cmath>
#include <random>
#include <vector>

#include "fgap/fourier_pair.hpp"
#include "fgap/special.hpp"

namespace fgap::testing {

// Centered cardinal B-spline of order m (support [-m/2, m/2], unit integral).
inline double bspline(int m, double x) {
    double s = 0.0, binom = 1.0, fact = 1.0;
    for (int k = 1; k < m; ++k) fact *= k;
    for (int j = 0; j <= m; ++j) {
        const double u = x + 0.5 * m - j;
        if (u > 0.0) s += ((j % 2) ? -1.0 : 1.0) * binom * std::pow(u, m - 1);
        binom = binom * (m - j) / (j + 1);
    }
    return s / fact;
}

struct BandTerm {
    double c, w, s;
    int m;
};

inline FourierPair bandlimited_pair(const std::vector<BandTerm>& terms) {
    FourierPair fp;
    double radius = 0.0, env = 0.0;
    int min_power = 100;
    double min_w = 1e300;
    for (const auto& t : terms) {
        radius = std::max(radius, t.s + 0.5 * t.m * t.w);
        min_power = std::min(min_power, t.m);
        min_w = std::min(min_w, t.w);
    }
    fp.eval_f = [terms](double x) {
        double v = 0.0;
        for (const auto& t : terms) v += t.c * std::pow(sinc(t.w * x), t.m) * std::cos(2.0 * std::numbers::pi * t.s * x);
        return v;
    };
    fp.eval_fhat = [terms](double y) {
        double v = 0.0;
        for (const auto& t : terms)
            v += t.c / (2.0 * t.w) * (bspline(t.m, (y - t.s) / t.w) + bspline(t.m, (y + t.s) / t.w));
        return v;
    };
    fp.support_radius = radius;
    // |F(x)| <= sum |c| (pi w |x|)^{-m}; for |x| >= 1/min_w each term is below |c| (pi w_min |x|)^{-m_min}.
    for (const auto& t : terms) env += std::abs(t.c);
    fp.f_decay = {{env * std::pow(std::numbers::pi * min_w, -min_power), static_cast<double>(-min_power), 0.0,
                   1.0 / min_w}};
    fp.f_feature_scale = 1.0 / 16.0;
    fp.description = "random bandlimited";
    return fp;
}

inline std::vector<BandTerm> random_band_terms(std::mt19937_64& rng, double max_radius) {
    std::uniform_int_distribution<int> count(1, 3), power(4, 8);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<BandTerm> terms;
    const int n = count(rng);
    for (int k = 0; k < n; ++k) {
        BandTerm t;
        t.m = power(rng);
        t.w = 0.05 + 0.15 * unit(rng);
        const double room = max_radius - 0.5 * t.m * t.w;
        t.s = room > 0.0 ? room * unit(rng) : 0.0;
        if (room <= 0.0) t.w = max_radius / (0.5 * t.m);
        t.c = 0.2 + unit(rng);
        terms.push_back(t);
    }
    return terms;
}

}  // namespace fgap::testing
